"""
From sanad lists to a narrator graph
====================================

Two hadith from Sahih Bukhari are bundled with the package: Book of
Revelation no. 1 (one chain) and Book of Jihad no. 133 (two chains that
merge at Hmam -> Qatada -> Anas). This script walks them through ingestion,
validation and graph building.
"""

from isnad_sna import (
    ChainOrder,
    accepted_records,
    build_graph,
    corpus_summary,
    degree_profile,
    parse_hadith_records,
    parse_narrators,
    validate_corpus,
)
from isnad_sna.datasets import sample_corpus
from isnad_sna.layout_export import export_edgelist

narrators_csv, hadith_jsonl = sample_corpus()

# %%
# Chains in the file are written the way the sanad reads, compiler's teacher
# first. Ingestion flips them so that edges run teacher -> student.
table = parse_narrators(narrators_csv)
records = parse_hadith_records(hadith_jsonl, ChainOrder.COMPILER_FIRST)
for rec in records:
    for chain in rec.chains:
        print(rec.book, rec.number, " -> ".join(table[n].name for n in chain))

# %%
# Validation never raises; it lists defects and the records to quarantine.
report = validate_corpus(records, table)
print(report.render())

# %%
# Edge weight counts distinct hadith, so the two Jihad chains add 1, not 2,
# to the shared pairs.
graph = build_graph(accepted_records(records, report), table)
print(graph)
print(export_edgelist(graph))

umar = degree_profile(graph, "umar_khattab")
print("Umar ibn al-Khattab: in", umar.indegree, "out", umar.outdegree)

summary = corpus_summary(graph, records, table)
print("narrators per era:", summary.per_era_narrator_counts)
print("acyclic:", summary.is_dag)
