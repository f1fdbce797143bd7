"""Builders shared by several test modules."""

import random

from normcite import BaselineTable, DocType, DocTypeGroup, Publication, SourceDb


def make_instance(raw, base, source=SourceDb.WOS):
    """Turn oracle-style raw data into package objects."""
    pubs = [
        Publication(f"P{i}", year, DocType.ARTICLE, cites, tuple(cats), source)
        for i, (year, cites, cats) in enumerate(raw)
    ]
    table = BaselineTable.from_means(source, DocTypeGroup.AR, base)
    return pubs, table


CATEGORY_POOL = ["ALPHA", "BETA", "GAMMA", "DELTA", "EPSILON"]


def random_raw_instance(rng: random.Random, n_min=1, n_max=50, years=(2012, 2015), max_cats=3,
                        cite_max=200, base_range=(0.1, 50.0)):
    """Random ``(raw items, grouped baseline dict)`` with a baseline for every (year, category)."""
    n = rng.randint(n_min, n_max)
    year_list = list(range(years[0], years[1] + 1))
    raw = []
    for _ in range(n):
        k = rng.randint(1, max_cats)
        cats = rng.sample(CATEGORY_POOL, k)
        raw.append((rng.choice(year_list), rng.randint(0, cite_max), cats))
    base = {(y, c): rng.uniform(*base_range) for y in year_list for c in CATEGORY_POOL}
    return raw, base
