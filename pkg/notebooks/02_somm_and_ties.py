# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Per-year SO/MM and dominant-category ties
#
# SO/MM groups works by year, divides each year's mean citations by the
# baseline of that year's dominant category and weights the ratio by the
# year's share of all works.

# %%
import warnings
from pathlib import Path

import numpy as np

from normcite import (
    TieBreak,
    TieBreakPolicy,
    TieBreakWarning,
    compute,
    load_baselines,
    load_publications,
    somm_category_range,
)
from normcite.render import render_indicator

try:
    DATA = Path(__file__).resolve().parent.parent / "data"
except NameError:
    DATA = Path("..").resolve() / "data"

pubs = load_publications(DATA / "four_years_publications.csv")
table = load_baselines(DATA / "four_years_baselines.csv")
result = compute("somm", pubs, table)
print(render_indicator(result, "text"))

# %%
weights = np.array([r.weight for r in result.rows])
contrib = np.array([r.contribution for r in result.rows])
print("weights", weights, "sum", weights.sum())
print("contributions", contrib.round(4))

# %% [markdown]
# ## Ties
#
# When two categories are equally frequent in a year the dominant category
# is ambiguous. Here three works all list both categories.

# %%
tie_pubs = load_publications(DATA / "tied_year_publications.csv")
tie_table = load_baselines(DATA / "tied_year_baselines.csv")

with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    default = compute("somm", tie_pubs, tie_table)
print(round(default.value, 4), [str(w.message) for w in caught if w.category is TieBreakWarning])

# %%
for rule in (TieBreak.MIN, TieBreak.MAX):
    r = compute("somm", tie_pubs, tie_table, tiebreak=TieBreakPolicy(rule))
    print(rule.value, r.rows[0].chosen_category, round(r.value, 4))

# %% [markdown]
# The full range over every admissible choice:

# %%
rng = somm_category_range(tie_pubs, tie_table)
print(f"min {rng.min_value:.4f}  max {rng.max_value:.4f}  spread {rng.spread:.4f}")
for choice, value in rng.choices:
    print(dict(choice), round(value, 4))
