"""Fragility of the indicators: single-citation perturbation, bootstrap dispersion, source divergence."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .baselines import BaselineTable
from .errors import EmptySetError, PolicyError, TieBreakWarning, TooFewItemsError
from .indicators import compute
from .policies import MulticategoryPolicy, TieBreakPolicy
from .records import Publication, YearWindow

PRNG = "PCG64"
MIN_REPLICATES = 100


@dataclass(frozen=True)
class ItemDelta:
    pub_id: str
    citations: int
    plus_one: float
    minus_one: float | None  # None when the item has no citation to remove


@dataclass(frozen=True)
class PerturbationReport:
    method: str
    base_value: float
    deltas: tuple[ItemDelta, ...]
    max_abs_delta: float
    most_influential: str


@dataclass(frozen=True)
class BootstrapReport:
    method: str
    replicates: int
    seed: int
    prng: str
    base_value: float
    mean: float
    std: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class SourceValue:
    source: str
    value: float
    passes: bool


@dataclass(frozen=True)
class SourceComparison:
    first: SourceValue
    second: SourceValue
    threshold: float
    gap: float
    signed_gap: float
    relative_gap: float | None  # gap relative to the first value; None if that is 0

    @property
    def verdict_flip(self) -> bool:
        return self.first.passes != self.second.passes


def perturb(
    pubs: Sequence[Publication],
    table: BaselineTable,
    method: str,
    *,
    policy: MulticategoryPolicy | None = None,
    tiebreak: TieBreakPolicy | None = None,
    window: YearWindow | None = None,
) -> PerturbationReport:
    """Recompute the indicator with each item's citations moved by +1 and -1.

    Every delta is a full recomputation, not a derivative.
    """
    pubs = list(pubs)
    if not pubs:
        raise EmptySetError()

    def value(ps):
        return compute(method, ps, table, policy=policy, tiebreak=tiebreak, window=window).value

    base = value(pubs)
    deltas = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TieBreakWarning)
        for i, p in enumerate(pubs):
            up = pubs[:i] + [p.with_citations(p.citations + 1)] + pubs[i + 1:]
            plus = value(up) - base
            minus = None
            if p.citations > 0:
                down = pubs[:i] + [p.with_citations(p.citations - 1)] + pubs[i + 1:]
                minus = value(down) - base
            deltas.append(ItemDelta(p.id, p.citations, plus, minus))

    def biggest(d: ItemDelta) -> float:
        return max(abs(d.plus_one), abs(d.minus_one) if d.minus_one is not None else 0.0)

    top = max(deltas, key=biggest)  # first wins on ties
    return PerturbationReport(method, base, tuple(deltas), biggest(top), top.pub_id)


def replicate_generators(seed: int, replicates: int) -> list[np.random.Generator]:
    """One independent stream per replicate index, fixed by ``seed``."""
    children = np.random.SeedSequence(seed).spawn(replicates)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def bootstrap(
    pubs: Sequence[Publication],
    table: BaselineTable,
    method: str,
    replicates: int = 1000,
    seed: int = 0,
    *,
    policy: MulticategoryPolicy | None = None,
    tiebreak: TieBreakPolicy | None = None,
    window: YearWindow | None = None,
    return_values: bool = False,
):
    """Case-resampling bootstrap of the indicator.

    Publications are drawn with replacement at the original set size.
    Replicate ``i`` always uses the ``i``-th child stream of ``seed``, so the
    report is reproducible whatever order replicates are evaluated in.
    Returns the report, or ``(report, values)`` with ``return_values``.
    """
    pubs = list(pubs)
    if not pubs:
        raise EmptySetError()
    if len(pubs) < 2:
        raise TooFewItemsError(f"bootstrap needs at least 2 publications, got {len(pubs)}")
    if replicates < MIN_REPLICATES:
        raise PolicyError(f"replicates must be >= {MIN_REPLICATES}, got {replicates}")
    if seed < 0:
        raise PolicyError("seed must be non-negative")

    window = window or YearWindow.spanning(pubs)
    base = compute(method, pubs, table, policy=policy, tiebreak=tiebreak, window=window).value
    n = len(pubs)
    values = np.empty(replicates)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TieBreakWarning)
        for i, rng in enumerate(replicate_generators(seed, replicates)):
            sample = [pubs[j] for j in rng.integers(0, n, size=n)]
            values[i] = compute(method, sample, table, policy=policy, tiebreak=tiebreak, window=window).value

    lo, hi = np.percentile(values, [2.5, 97.5])
    report = BootstrapReport(
        method=method,
        replicates=replicates,
        seed=seed,
        prng=PRNG,
        base_value=base,
        mean=math.fsum(values) / replicates,
        std=float(np.std(values, ddof=1)),
        ci_low=float(lo),
        ci_high=float(hi),
    )
    return (report, values) if return_values else report


def compare_sources(
    pubs_first: Sequence[Publication],
    pubs_second: Sequence[Publication],
    table_first: BaselineTable,
    table_second: BaselineTable,
    method: str,
    *,
    threshold: float = 1.5,
    strict: bool = False,
    policy: MulticategoryPolicy | None = None,
    tiebreak: TieBreakPolicy | None = None,
    window: YearWindow | None = None,
) -> SourceComparison:
    """Same researcher, two citation databases: both values, the gap and whether the verdict flips."""

    def side(pubs, table):
        v = compute(method, pubs, table, policy=policy, tiebreak=tiebreak, window=window).value
        passes = v > threshold if strict else v >= threshold
        return SourceValue(table.source.value, v, passes)

    first = side(pubs_first, table_first)
    second = side(pubs_second, table_second)
    signed = first.value - second.value
    return SourceComparison(
        first=first,
        second=second,
        threshold=threshold,
        gap=abs(signed),
        signed_gap=signed,
        relative_gap=abs(signed) / first.value if first.value else None,
    )
