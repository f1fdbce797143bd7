"""Guarantor-researcher threshold checks and the complementary indicators that go with them."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .baselines import BaselineTable
from .errors import ParseError, PolicyError, RowError
from .indicators import METHODS, ItemScore, compute, item_scores
from .policies import MulticategoryPolicy, TieBreakPolicy
from .records import Publication, YearWindow, normalize_category

EU_REFERENCE_FILE = "eu_reference_2012_2015.csv"


@dataclass(frozen=True)
class EligibilityPolicy:
    threshold: float = 1.5
    min_works: int = 10
    method: str = "somm"
    highly_cited_ratio: float = 4.0
    strict: bool = False
    """Require ``value > threshold`` instead of ``value >= threshold``."""

    def __post_init__(self):
        if not self.threshold > 0:
            raise PolicyError(f"threshold must be > 0, got {self.threshold}")
        if self.min_works < 1:
            raise PolicyError(f"min_works must be >= 1, got {self.min_works}")
        if not self.highly_cited_ratio > 1:
            raise PolicyError(f"highly_cited_ratio must be > 1, got {self.highly_cited_ratio}")
        if self.method not in METHODS:
            raise PolicyError(f"unknown method {self.method!r}")

    def passes(self, value: float) -> bool:
        return value > self.threshold if self.strict else value >= self.threshold


@dataclass(frozen=True)
class ReferenceComparison:
    category: str
    reference: float
    status: str  # "above" | "meets" | "below"

    @property
    def reached(self) -> bool:
        return self.status != "below"


@dataclass(frozen=True)
class EligibilityReport:
    method: str
    value: float
    threshold: float
    passes_threshold: bool
    works_count: int
    min_works: int
    passes_min_works: bool
    h_index: int
    highly_cited_count: int
    reference_comparisons: tuple[ReferenceComparison, ...] = ()

    @property
    def eligible(self) -> bool:
        return self.passes_threshold and self.passes_min_works

    @property
    def failed_checks(self) -> list[str]:
        failed = []
        if not self.passes_threshold:
            failed.append("threshold")
        if not self.passes_min_works:
            failed.append("min_works")
        return failed


def h_index(pubs: Iterable[Publication] | Iterable[int]) -> int:
    """Largest h such that h publications have at least h citations each."""
    cites = sorted((p if isinstance(p, int) else p.citations for p in pubs), reverse=True)
    h = 0
    for rank, c in enumerate(cites, start=1):
        if c < rank:
            break
        h = rank
    return h


def highly_cited_count(scores: Iterable[ItemScore] | Iterable[float], ratio_threshold: float = 4.0) -> int:
    """Number of items cited at least ``ratio_threshold`` times their expected value."""
    return sum(1 for s in scores if (s if isinstance(s, (int, float)) else s.ratio) >= ratio_threshold)


def compare_reference(value: float, references: Iterable[tuple[str, float]]) -> list[ReferenceComparison]:
    out = []
    for category, ref in references:
        if value > ref:
            status = "above"
        elif value == ref:
            status = "meets"
        else:
            status = "below"
        out.append(ReferenceComparison(category, ref, status))
    return out


def parse_references(text: str) -> list[tuple[str, float]]:
    """Parse a ``category,reference_value`` CSV."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header] != ["category", "reference_value"]:
        raise ParseError([RowError(1, "header", "expected category,reference_value")])
    refs, errors = [], []
    for row in reader:
        if not row:
            continue
        if len(row) != 2:
            errors.append(RowError(reader.line_num, "row", f"expected 2 columns, got {len(row)}"))
            continue
        try:
            refs.append((normalize_category(row[0]), float(row[1])))
        except ValueError:
            errors.append(RowError(reader.line_num, "reference_value", f"not a number: {row[1]!r}"))
    if errors:
        raise ParseError(errors)
    return refs


def load_references(path: str | Path | None = None) -> list[tuple[str, float]]:
    """Load reference values; with no path, the bundled EU 2012-2015 set."""
    if path is None:
        text = resources.files("normcite.data").joinpath(EU_REFERENCE_FILE).read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_references(text)


def check_guarantor(
    pubs: Sequence[Publication],
    table: BaselineTable,
    policy: EligibilityPolicy | None = None,
    tiebreak: TieBreakPolicy | None = None,
    window: YearWindow | None = None,
    *,
    multicat: MulticategoryPolicy | None = None,
    references: Iterable[tuple[str, float]] = (),
) -> EligibilityReport:
    """Evaluate one researcher against the threshold and the supplementary checks.

    Indicator errors propagate; a precondition failure is never turned into
    a negative verdict.
    """
    policy = policy or EligibilityPolicy()
    result = compute(policy.method, pubs, table, policy=multicat, tiebreak=tiebreak, window=window)
    if result.items:
        scores = result.items
    else:
        scores = item_scores(pubs, table, multicat)
    return EligibilityReport(
        method=policy.method,
        value=result.value,
        threshold=policy.threshold,
        passes_threshold=policy.passes(result.value),
        works_count=len(pubs),
        min_works=policy.min_works,
        passes_min_works=len(pubs) >= policy.min_works,
        h_index=h_index(pubs),
        highly_cited_count=highly_cited_count(scores, policy.highly_cited_ratio),
        reference_comparisons=tuple(compare_reference(result.value, references)),
    )
