import itertools
import math
import statistics

import pytest

from oracles import oracle_mncs
from normcite import (
    BaselineTable,
    DocType,
    DocTypeGroup,
    EmptySetError,
    PolicyError,
    Publication,
    SourceDb,
    TooFewItemsError,
    bootstrap,
    compare_sources,
    compute,
    load_baselines,
    load_publications,
    perturb,
)

W = SourceDb.WOS


def table_of(means):
    return BaselineTable.from_means(W, DocTypeGroup.AR, means)


def test_perturb_single_item():
    table = table_of({(2013, "X"): 4.0})
    rep = perturb([Publication("A", 2013, DocType.ARTICLE, 2, ("X",), W)], table, "mncs")
    assert rep.base_value == 0.5
    (d,) = rep.deltas
    assert d.plus_one == pytest.approx(0.25, abs=1e-15)
    assert d.minus_one == pytest.approx(-0.25, abs=1e-15)


def test_perturb_large_expected():
    table = table_of({(2013, "X"): 100.0})
    rep = perturb([Publication("A", 2013, DocType.ARTICLE, 0, ("X",), W)], table, "mncs")
    assert rep.deltas[0].plus_one == pytest.approx(0.01, abs=1e-15)
    assert rep.deltas[0].minus_one is None


def test_perturb_trio_item_c(trio):
    pubs, table = trio
    rep = perturb(pubs, table, "mncs")
    by_id = {d.pub_id: d for d in rep.deltas}
    # (1.5 + 1.0 + 0.75) / 3 - 1.0
    assert by_id["C"].plus_one == pytest.approx(1 / 12, abs=1e-12)
    assert rep.most_influential == "C"       # smallest expected, largest swing
    assert rep.max_abs_delta == pytest.approx(1 / 12, abs=1e-12)


@pytest.mark.parametrize("method", ["crown", "mncs", "somm"])
def test_perturb_matches_recomputation(four_years, method):
    pubs, table = four_years
    rep = perturb(pubs, table, method)
    base = compute(method, pubs, table).value
    for i, d in enumerate(rep.deltas):
        bumped = pubs[:i] + [pubs[i].with_citations(pubs[i].citations + 1)] + pubs[i + 1:]
        assert d.plus_one == compute(method, bumped, table).value - base


def test_perturb_empty():
    with pytest.raises(EmptySetError):
        perturb([], table_of({(2013, "X"): 1.0}), "mncs")


# -- bootstrap ---------------------------------------------------------------------

def test_bootstrap_constant_set():
    table = table_of({(2013, "X"): 4.0})
    pubs = [Publication(f"P{i}", 2013, DocType.ARTICLE, 6, ("X",), W) for i in range(5)]
    for method in ("crown", "mncs"):
        rep = bootstrap(pubs, table, method, replicates=200, seed=1)
        assert rep.std == 0.0
        assert rep.ci_low == rep.ci_high == rep.mean == 1.5


def test_bootstrap_against_exhaustive_enumeration(trio):
    pubs, table = trio
    raw = [(p.year, p.citations, list(p.categories)) for p in pubs]
    # trio is per-type; every item here is the only one of its (year, category, type)
    base = {(p.year, p.categories[0]): table.lookup(p.year, p.categories[0], p.doc_type) for p in pubs}
    exhaustive = [oracle_mncs([raw[i] for i in idx], base) for idx in itertools.product(range(3), repeat=3)]
    mean = statistics.fmean(exhaustive)
    sd = statistics.pstdev(exhaustive)
    replicates = 2000
    rep = bootstrap(pubs, table, "mncs", replicates=replicates, seed=42)
    assert abs(rep.mean - mean) <= 3 * sd / math.sqrt(replicates)


def test_bootstrap_deterministic(four_years):
    pubs, table = four_years
    a = bootstrap(pubs, table, "somm", replicates=300, seed=42)
    b = bootstrap(pubs, table, "somm", replicates=300, seed=42)
    assert a == b
    assert a.seed == 42 and a.replicates == 300 and a.prng == "PCG64"
    assert bootstrap(pubs, table, "somm", replicates=300, seed=43) != a


def test_bootstrap_replicate_streams_fixed_by_index(four_years):
    pubs, table = four_years
    _, short = bootstrap(pubs, table, "crown", replicates=100, seed=5, return_values=True)
    _, long = bootstrap(pubs, table, "crown", replicates=400, seed=5, return_values=True)
    # spawning more children never changes the earlier ones
    assert list(long[:100]) == list(short)


def test_bootstrap_report_invariants(four_years):
    pubs, table = four_years
    rep, values = bootstrap(pubs, table, "mncs", replicates=500, seed=3, return_values=True)
    assert (values >= 0).all()
    assert rep.ci_low <= rep.ci_high


def test_bootstrap_preconditions(trio):
    pubs, table = trio
    with pytest.raises(TooFewItemsError):
        bootstrap(pubs[:1], table, "mncs")
    with pytest.raises(EmptySetError):
        bootstrap([], table, "mncs")
    with pytest.raises(PolicyError):
        bootstrap(pubs, table, "mncs", replicates=50)


# -- source comparison ----------------------------------------------------------------

@pytest.fixture
def dual(data_dir):
    def load(name):
        pubs = load_publications(data_dir / f"{name}_publications.csv")
        wos = load_baselines(data_dir / f"{name}_baselines_wos.csv")
        scopus = load_baselines(data_dir / f"{name}_baselines_scopus.csv")
        split = {s: [p for p in pubs if p.source is s] for s in SourceDb}
        return split[SourceDb.WOS], split[SourceDb.SCOPUS], wos, scopus
    return load


def test_dual_flip_pattern_flips(dual):
    pw, ps, tw, ts = dual("dual_flip")
    cmp = compare_sources(pw, ps, tw, ts, "somm")
    assert round(cmp.first.value, 2) == 0.91
    assert cmp.second.value >= 1.5
    assert cmp.verdict_flip


def test_dual_gap_gap(dual):
    pw, ps, tw, ts = dual("dual_gap")
    cmp = compare_sources(pw, ps, tw, ts, "somm")
    assert round(cmp.gap, 1) == 1.2 and cmp.gap > 1
    assert cmp.verdict_flip          # 1.36 fails, 2.58 passes


def test_identical_sides_zero_gap(four_years):
    pubs, table = four_years
    cmp = compare_sources(pubs, pubs, table, table, "mncs")
    assert cmp.gap == 0 and cmp.signed_gap == 0 and not cmp.verdict_flip


def test_swap_negates_signed_gap(dual):
    pw, ps, tw, ts = dual("dual_flip")
    for method in ("crown", "mncs", "somm"):
        a = compare_sources(pw, ps, tw, ts, method)
        b = compare_sources(ps, pw, ts, tw, method)
        assert a.signed_gap == -b.signed_gap
        assert a.gap == b.gap == abs(a.first.value - a.second.value)
