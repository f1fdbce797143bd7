"""How a publication or a year with several subject categories resolves to one expected value."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping, Sequence

from .errors import PolicyError, TieBreakWarning, UnresolvedTieError


class TieBreak(enum.Enum):
    EXPLICIT = "explicit"
    MIN = "min"
    MAX = "max"
    LEX = "lex"


class Multicat(enum.Enum):
    AVERAGE = "average"
    FRACTIONAL = "fractional"
    SELECT = "select"


@dataclass(frozen=True)
class TieBreakPolicy:
    """Rule for picking one category out of several candidates.

    ``EXPLICIT`` reads the choice from ``choices`` (year -> category), the
    way an applicant names the category they find most representative. The
    other rules are deterministic: lowest baseline, highest baseline, or
    alphabetical first.
    """

    rule: TieBreak = TieBreak.LEX
    choices: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.rule is TieBreak.EXPLICIT and not self.choices:
            raise PolicyError("explicit tie-break needs a year -> category choices map")
        frozen = {int(y): c.strip().upper() for y, c in self.choices.items()}
        object.__setattr__(self, "choices", MappingProxyType(frozen))

    @classmethod
    def explicit(cls, choices: Mapping[int, str]) -> TieBreakPolicy:
        return cls(TieBreak.EXPLICIT, choices)

    def choose(self, year: int, candidates: Sequence[str], expected: Callable[[str], float]) -> str:
        """Pick among ``candidates``; ``expected`` maps a category to its baseline mean."""
        if len(candidates) == 1:
            return candidates[0]
        if self.rule is TieBreak.EXPLICIT:
            choice = self.choices.get(year)
            if choice is None:
                raise UnresolvedTieError(year, tuple(candidates), "no explicit choice for this year")
            if choice not in candidates:
                raise UnresolvedTieError(year, tuple(candidates), f"explicit choice {choice!r} is not a candidate")
            return choice
        if self.rule is TieBreak.LEX:
            choice = min(candidates)
            warnings.warn(
                f"year {year}: tie among {', '.join(sorted(candidates))} settled alphabetically as {choice}",
                TieBreakWarning,
                stacklevel=3,
            )
            return choice
        # sort by name first so equal baselines still break deterministically
        ordered = sorted(candidates)
        values = [expected(c) for c in ordered]
        pick = min if self.rule is TieBreak.MIN else max
        return ordered[values.index(pick(values))]

    def describe(self) -> str:
        if self.rule is TieBreak.EXPLICIT:
            return "explicit(" + ",".join(f"{y}={c}" for y, c in sorted(self.choices.items())) + ")"
        return self.rule.value


@dataclass(frozen=True)
class MulticategoryPolicy:
    """Per-publication handling of journals indexed in several categories.

    * ``AVERAGE``: mean of the per-category expected values.
    * ``FRACTIONAL``: each category counts with weight ``1/k``.
    * ``SELECT``: one category chosen by ``tiebreak``.
    """

    mode: Multicat = Multicat.AVERAGE
    tiebreak: TieBreakPolicy = field(default_factory=TieBreakPolicy)

    @classmethod
    def average(cls) -> MulticategoryPolicy:
        return cls(Multicat.AVERAGE)

    @classmethod
    def fractional(cls) -> MulticategoryPolicy:
        return cls(Multicat.FRACTIONAL)

    @classmethod
    def select(cls, tiebreak: TieBreakPolicy | None = None) -> MulticategoryPolicy:
        return cls(Multicat.SELECT, tiebreak or TieBreakPolicy())

    def describe(self) -> str:
        if self.mode is Multicat.SELECT:
            return f"select[{self.tiebreak.describe()}]"
        return self.mode.value
