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
# # Eligibility checks
#
# A candidate passes when the chosen indicator reaches the threshold and
# the set holds enough works. h-index and the highly-cited count are
# reported alongside but never decide the verdict.

# %%
from pathlib import Path

from normcite import EligibilityPolicy, check_guarantor, compare_reference, load_baselines, load_publications, load_references
from normcite.render import render_eligibility

try:
    DATA = Path(__file__).resolve().parent.parent / "data"
except NameError:
    DATA = Path("..").resolve() / "data"

pubs = load_publications(DATA / "four_years_publications.csv")
table = load_baselines(DATA / "four_years_baselines.csv")

report = check_guarantor(pubs, table, EligibilityPolicy(), references=load_references())
print(render_eligibility(report, "text"))

# %% [markdown]
# The same works judged by each method:

# %%
for method in ("crown", "mncs", "somm"):
    r = check_guarantor(pubs, table, EligibilityPolicy(method=method))
    print(f"{method:6s} {r.value:.4f} eligible={r.eligible}")

# %% [markdown]
# The report places the candidate's value against the bundled reference
# values. The same comparison applied to the threshold itself shows that a
# single cut-off is demanding in some fields and lenient in others.

# %%
for cmp in compare_reference(1.5, load_references()):
    print(f"{cmp.category:32s} {cmp.reference:.2f}  threshold 1.50 is {cmp.status}")
