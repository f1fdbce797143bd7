"""Normalized citation impact: Crown (CPP/FCSM), MNCS and the SO/MM per-year formula.

All arithmetic stays at full double precision; rounding for display is left
to :mod:`normcite.render`.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .baselines import BaselineTable, CategoryShare, expected_for_publication
from .errors import (
    ChoiceSpaceTooLargeError,
    EmptySetError,
    PolicyError,
    SourceMismatchError,
    ZeroExpectedError,
)
from .policies import Multicat, MulticategoryPolicy, TieBreakPolicy
from .records import DocType, DocTypeGroup, Publication, YearWindow

CHOICE_CAP = 4096
METHODS = ("crown", "mncs", "somm")


@dataclass(frozen=True)
class ItemScore:
    pub_id: str
    observed: int
    expected: float
    ratio: float
    weight: float = 1.0
    category: str | None = None
    """Set only for fractional sub-items."""


@dataclass(frozen=True)
class SommYearRow:
    year: int
    n_works: int            # A
    n_citations: int        # B
    mean_citations: float   # C = B / A
    chosen_category: str    # D1
    baseline_value: float   # D
    ratio: float            # E = C / D
    weight: float           # F = A / total works
    contribution: float     # G = E * F
    candidates: tuple[str, ...] = ()

    @property
    def tied(self) -> bool:
        return len(self.candidates) > 1


@dataclass(frozen=True)
class IndicatorResult:
    method: str
    value: float
    items: tuple[ItemScore, ...] = ()
    rows: tuple[SommYearRow, ...] = ()
    provenance: Mapping[str, str] = field(default_factory=dict)

    def recompute(self) -> float:
        """Value rebuilt from the breakdown alone."""
        if self.method == "somm":
            return math.fsum(r.contribution for r in self.rows)
        if self.method == "crown":
            total = math.fsum(i.expected for i in self.items)
            return math.fsum(i.ratio * i.expected for i in self.items) / total
        return math.fsum(i.weight * i.ratio for i in self.items) / math.fsum(i.weight for i in self.items)


def _nonempty(pubs: Iterable[Publication]) -> list[Publication]:
    pubs = list(pubs)
    if not pubs:
        raise EmptySetError()
    return pubs


def _check_positive(pub: Publication, category: str | None, value: float) -> None:
    if value <= 0:
        raise ZeroExpectedError(category or ",".join(pub.categories), pub.year)


def _expected_parts(table: BaselineTable, pub: Publication, policy: MulticategoryPolicy) -> list[CategoryShare]:
    """Per-category shares actually used for ``pub``, each checked for a zero mean."""
    if policy.mode is Multicat.AVERAGE:
        # every category enters the denominator, so each one must be non-zero
        values = expected_for_publication(table, pub, MulticategoryPolicy.fractional())
        for share in values:
            _check_positive(pub, share.category, share.expected)
        return values
    got = expected_for_publication(table, pub, policy)
    if isinstance(got, list):
        for share in got:
            _check_positive(pub, share.category, share.expected)
        return got
    _check_positive(pub, None, got)
    return [CategoryShare("", got, 1.0)]


def item_scores(
    pubs: Iterable[Publication],
    table: BaselineTable,
    policy: MulticategoryPolicy | None = None,
    *,
    fractional_subitems: bool = False,
) -> list[ItemScore]:
    """Observed, expected and observed/expected per publication.

    Under the fractional policy each publication's expected value is the
    weight-averaged expected across its categories. With
    ``fractional_subitems`` the publication is instead split into one
    weighted sub-item per category.
    """
    policy = policy or MulticategoryPolicy()
    scores: list[ItemScore] = []
    for pub in pubs:
        shares = _expected_parts(table, pub, policy)
        if policy.mode is Multicat.FRACTIONAL and fractional_subitems:
            for s in shares:
                scores.append(ItemScore(pub.id, pub.citations, s.expected, pub.citations / s.expected,
                                        s.weight, s.category))
            continue
        if policy.mode is Multicat.AVERAGE:
            expected = math.fsum(s.expected for s in shares) / len(shares)
        else:
            expected = math.fsum(s.weight * s.expected for s in shares)
        scores.append(ItemScore(pub.id, pub.citations, expected, pub.citations / expected))
    return scores


def crown(
    pubs: Iterable[Publication],
    table: BaselineTable,
    policy: MulticategoryPolicy | None = None,
) -> IndicatorResult:
    """Sum of observed citations over sum of expected citations."""
    policy = policy or MulticategoryPolicy()
    items = item_scores(_nonempty(pubs), table, policy)
    value = math.fsum(i.observed for i in items) / math.fsum(i.expected for i in items)
    return IndicatorResult("crown", value, items=tuple(items), provenance=_provenance(table, policy))


def mncs(
    pubs: Iterable[Publication],
    table: BaselineTable,
    policy: MulticategoryPolicy | None = None,
    *,
    fractional_subitems: bool = False,
) -> IndicatorResult:
    """Mean of per-publication observed/expected ratios."""
    policy = policy or MulticategoryPolicy()
    items = item_scores(_nonempty(pubs), table, policy, fractional_subitems=fractional_subitems)
    value = math.fsum(i.weight * i.ratio for i in items) / math.fsum(i.weight for i in items)
    prov = _provenance(table, policy)
    if fractional_subitems and policy.mode is Multicat.FRACTIONAL:
        prov["fractional_subitems"] = "true"
    return IndicatorResult("mncs", value, items=tuple(items), provenance=prov)


def _provenance(table: BaselineTable, policy: MulticategoryPolicy | None = None, **extra) -> dict[str, str]:
    prov = {"source": table.source.value, "group": table.group.value}
    if policy is not None:
        prov["multicategory"] = policy.describe()
    prov.update({k: str(v) for k, v in extra.items()})
    return prov


# -- SO/MM -------------------------------------------------------------------

def _require_grouped(table: BaselineTable) -> None:
    if table.group not in (DocTypeGroup.AR, DocTypeGroup.ARP):
        raise PolicyError("the SO/MM indicator needs an aggregated (ar or arp) baseline table")


def _by_year(pubs: Sequence[Publication], table: BaselineTable, window: YearWindow) -> dict[int, list[Publication]]:
    years: dict[int, list[Publication]] = defaultdict(list)
    for p in pubs:
        if p.source is not table.source:
            raise SourceMismatchError(p.id, p.source.value, table.source.value)
        if p.year not in window:
            raise PolicyError(f"publication {p.id!r} ({p.year}) lies outside window {window}")
        if not table.group.covers(p.doc_type):
            raise PolicyError(f"publication {p.id!r} is a {p.doc_type.value}, not covered by group {table.group.value}")
        years[p.year].append(p)
    return dict(sorted(years.items()))


def dominant_candidates(year_pubs: Iterable[Publication]) -> tuple[str, ...]:
    """Categories tied for the most publications in a year, alphabetically.

    Whole counting: a publication counts once for each category it lists.
    """
    counts = Counter(c for p in year_pubs for c in p.categories)
    top = max(counts.values())
    return tuple(sorted(c for c, n in counts.items() if n == top))


def _year_rows(
    years: Mapping[int, list[Publication]],
    table: BaselineTable,
    chosen: Mapping[int, str],
    candidates: Mapping[int, tuple[str, ...]],
) -> list[SommYearRow]:
    total = sum(len(v) for v in years.values())
    rows = []
    for year, year_pubs in years.items():
        a = len(year_pubs)
        b = sum(p.citations for p in year_pubs)
        c = b / a
        d1 = chosen[year]
        d = table.lookup(year, d1, DocType.ARTICLE)  # grouped tables: one mean per (year, category)
        if d <= 0:
            raise ZeroExpectedError(d1, year)
        e = c / d
        f = a / total
        rows.append(SommYearRow(year, a, b, c, d1, d, e, f, e * f, candidates[year]))
    return rows


def somm(
    pubs: Iterable[Publication],
    table: BaselineTable,
    tiebreak: TieBreakPolicy | None = None,
    window: YearWindow | None = None,
) -> IndicatorResult:
    """Per-year SO/MM normalized impact.

    For each year: mean citations of the year's works divided by the baseline
    of the year's dominant category, weighted by the year's share of all
    works, summed over years.
    """
    tiebreak = tiebreak or TieBreakPolicy()
    pubs = _nonempty(pubs)
    _require_grouped(table)
    window = window or YearWindow.spanning(pubs)
    years = _by_year(pubs, table, window)

    candidates = {y: dominant_candidates(ps) for y, ps in years.items()}
    chosen = {}
    for y in years:
        chosen[y] = tiebreak.choose(y, candidates[y], lambda c, y=y: table.lookup(y, c, DocType.ARTICLE))
    rows = _year_rows(years, table, chosen, candidates)
    value = math.fsum(r.contribution for r in rows)
    return IndicatorResult("somm", value, rows=tuple(rows),
                           provenance=_provenance(table, tiebreak=tiebreak.describe(), window=window))


@dataclass(frozen=True)
class CategoryRange:
    min_value: float
    max_value: float
    choices: tuple[tuple[Mapping[int, str], float], ...]
    """Every enumerated ``(year -> category assignment, somm value)``."""

    @property
    def spread(self) -> float:
        return self.max_value - self.min_value


def somm_category_range(
    pubs: Iterable[Publication],
    table: BaselineTable,
    window: YearWindow | None = None,
    *,
    cap: int = CHOICE_CAP,
) -> CategoryRange:
    """Extremes of the SO/MM value over every admissible dominant-category choice.

    Only years with a tie for the dominant category offer a choice. The full
    cartesian product is enumerated; more than ``cap`` combinations raises
    :class:`ChoiceSpaceTooLargeError`.
    """
    pubs = _nonempty(pubs)
    _require_grouped(table)
    window = window or YearWindow.spanning(pubs)
    years = _by_year(pubs, table, window)
    candidates = {y: dominant_candidates(ps) for y, ps in years.items()}

    size = math.prod(len(c) for c in candidates.values())
    if size > cap:
        raise ChoiceSpaceTooLargeError(size, cap)

    year_list = list(years)
    results = []
    for combo in itertools.product(*(candidates[y] for y in year_list)):
        chosen = dict(zip(year_list, combo))
        rows = _year_rows(years, table, chosen, candidates)
        results.append((chosen, math.fsum(r.contribution for r in rows)))
    values = [v for _, v in results]
    return CategoryRange(min(values), max(values), tuple(results))


def compute(
    method: str,
    pubs: Iterable[Publication],
    table: BaselineTable,
    *,
    policy: MulticategoryPolicy | None = None,
    tiebreak: TieBreakPolicy | None = None,
    window: YearWindow | None = None,
) -> IndicatorResult:
    """Dispatch on ``method`` (``crown``, ``mncs`` or ``somm``)."""
    if method == "crown":
        return crown(pubs, table, policy)
    if method == "mncs":
        return mncs(pubs, table, policy)
    if method == "somm":
        return somm(pubs, table, tiebreak, window)
    raise PolicyError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
