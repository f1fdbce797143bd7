"""Exception hierarchy.

Input problems (bad files, bad flags) derive from :class:`InputError`;
problems that only show up while computing an indicator derive from
:class:`ComputationError`. The CLI maps the two families to distinct exit
codes.
"""

from __future__ import annotations


class NormciteError(Exception):
    """Base class for every error raised by this package."""


class InputError(NormciteError):
    """Malformed or inconsistent input."""


class ComputationError(NormciteError):
    """An indicator cannot be computed for otherwise well-formed input."""


class RowError(InputError):
    """One bad row in an input file, positioned by 1-based line number."""

    def __init__(self, line: int, field: str, message: str):
        self.line = line
        self.field = field
        self.message = message
        super().__init__(f"line {line}: {field}: {message}")


class ParseError(InputError):
    """A file failed to parse. ``errors`` holds every offending row."""

    def __init__(self, errors: list[RowError]):
        self.errors = list(errors)
        first = self.errors[0] if self.errors else None
        extra = f" (+{len(self.errors) - 1} more)" if len(self.errors) > 1 else ""
        super().__init__(f"{first}{extra}" if first else "parse error")


class PolicyError(InputError):
    """A policy or configuration that cannot apply to the given data."""


class SourceMismatchError(InputError):
    def __init__(self, pub_id: str, pub_source: str, table_source: str):
        self.pub_id = pub_id
        super().__init__(
            f"publication {pub_id!r} is from {pub_source} but the baseline table is {table_source}"
        )


class EmptySetError(ComputationError):
    def __init__(self, message: str = "no publications left to evaluate"):
        super().__init__(message)


class TooFewItemsError(ComputationError):
    pass


class MissingBaselineError(ComputationError):
    def __init__(self, year: int, category: str, scope: str | None = None):
        self.year = year
        self.category = category
        self.scope = scope
        where = f" [{scope}]" if scope else ""
        super().__init__(f"no baseline for year {year}, category {category!r}{where}")


class ZeroExpectedError(ComputationError):
    def __init__(self, category: str, year: int):
        self.category = category
        self.year = year
        super().__init__(f"baseline mean is 0 for year {year}, category {category!r}")


class UnresolvedTieError(ComputationError):
    def __init__(self, year: int, candidates: tuple[str, ...], detail: str = ""):
        self.year = year
        self.candidates = candidates
        msg = f"year {year}: cannot choose among {', '.join(candidates)}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


class ChoiceSpaceTooLargeError(ComputationError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} category assignments exceed the cap of {cap}")


class TieBreakWarning(UserWarning):
    """A dominant-category tie was settled by alphabetical order."""
