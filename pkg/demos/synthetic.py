"""Synthetic corpus used by the demos: generation-ordered chains with preferential attachment."""

import random

from isnad_sna import HadithRecord, Narrator, NarratorTable
from isnad_sna.corpus_model import Chain

CITIES = {
    1: ["Madinah", "Makkah", "Madinah", "Hijaz"],
    2: ["Madinah", "Kufa", "Basra", "Makkah"],
    3: ["Kufa", "Basra", "Madinah", "Damascus"],
    4: ["Basra", "Kufa", "Baghdad", "Merv", "Bukhara"],
}


def synthetic_corpus(n_narrators=400, n_hadith=2000, seed=0):
    rng = random.Random(seed)
    narrators = []
    for i in range(n_narrators):
        generation = rng.randint(0, 12)
        narrator = Narrator(f"{20000 + i}", f"Narrator {i}", generation)
        narrators.append(Narrator(narrator.id, narrator.name, generation,
                                  rng.choice(CITIES[narrator.era])))
    by_generation = {}
    for n in narrators:
        by_generation.setdefault(n.generation, []).append(n.id)
    popularity = {n.id: 1.0 for n in narrators}

    records = []
    for k in range(n_hadith):
        chains = []
        for _ in range(2 if rng.random() < 0.03 else 1):
            start = rng.randint(0, 2)
            chain = []
            for g in range(start, 13, rng.choice([1, 2, 2, 3])):
                pool = by_generation.get(g)
                if pool:
                    pick = rng.choices(pool, weights=[popularity[p] for p in pool])[0]
                    popularity[pick] += 1.0
                    chain.append(pick)
            chains.append(Chain(tuple(chain)))
        records.append(HadithRecord("synthetic", f"Book {k % 40}", str(k), tuple(chains)))
    return NarratorTable(narrators), records
