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
# # Sensitivity and source comparison
#
# How much does one citation matter, how stable is the value under
# resampling, and does switching the citation database change the verdict?

# %%
from pathlib import Path

import numpy as np

from normcite import SourceDb, bootstrap, compare_sources, load_baselines, load_publications, perturb
from normcite.render import render_comparison, render_sensitivity

try:
    DATA = Path(__file__).resolve().parent.parent / "data"
except NameError:
    DATA = Path("..").resolve() / "data"

pubs = load_publications(DATA / "four_years_publications.csv")
table = load_baselines(DATA / "four_years_baselines.csv")

pert = perturb(pubs, table, "somm")
boot, values = bootstrap(pubs, table, "somm", replicates=1000, seed=42, return_values=True)
print(render_sensitivity(pert, boot, "text"))

# %%
hist, edges = np.histogram(values, bins=10)
for n, lo in zip(hist, edges):
    print(f"{lo:6.3f} {'#' * int(n // 5)}")

# %% [markdown]
# ## Two databases
#
# The same researcher, counted once in each database against that
# database's own baselines.

# %%
both = load_publications(DATA / "dual_flip_publications.csv")
wos = [p for p in both if p.source is SourceDb.WOS]
scopus = [p for p in both if p.source is SourceDb.SCOPUS]
cmp = compare_sources(wos, scopus,
                      load_baselines(DATA / "dual_flip_baselines_wos.csv"),
                      load_baselines(DATA / "dual_flip_baselines_scopus.csv"), "somm")
print(render_comparison(cmp, "text"))
