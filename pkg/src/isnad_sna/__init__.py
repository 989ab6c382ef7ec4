"""Social-network analysis of hadith narrator chains."""

__version__ = "0.1.0"

from .centrality import (
    BetweennessConfig,
    PageRankConfig,
    ScoreTable,
    betweenness,
    pagerank,
    top_k,
    weighted_degree,
)
from .community import LouvainConfig, Partition, louvain, modularity, symmetrize
from .corpus_model import Chain, HadithRecord, Narrator, NarratorTable, era_of_generation
from .era_locality import EraCityTable, era_city_table, per_era_counts
from .errors import DomainError, IsnadError, ParseError, UnknownNarratorError, ValidationError
from .graph_build import (
    DegreeStats,
    NarratorGraph,
    Snapshot,
    SummaryStats,
    build_graph,
    corpus_summary,
    degree_profile,
    load_snapshot,
    save_snapshot,
)
from .ingest import (
    ChainOrder,
    ValidationReport,
    accepted_records,
    parse_hadith_records,
    parse_narrators,
    validate_corpus,
)
from .layout_export import LayoutConfig, export_dot, export_edgelist, export_gexf, fr_layout
from .topology import (
    DegreeHistogram,
    PowerLawFit,
    avg_path_length,
    degree_distribution,
    fit_power_law,
    global_clustering,
)
