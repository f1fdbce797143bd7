"""Baseline tables of world-average citations per (source, year, category, doc scope)."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from .errors import MissingBaselineError, ParseError, PolicyError, RowError, SourceMismatchError
from .policies import Multicat, MulticategoryPolicy
from .records import DocType, DocTypeGroup, Publication, SourceDb, normalize_category

BASELINE_COLUMNS = ("source", "year", "category", "doc_scope", "mean_citations")

_PER_TYPE_SCOPES = {"article", "review", "proceeding"}


@dataclass(frozen=True)
class BaselineEntry:
    source: SourceDb
    year: int
    category: str
    doc_scope: str
    """``"ar"``/``"arp"`` for grouped tables, a :class:`DocType` value otherwise."""
    mean_citations: float

    @property
    def key(self) -> tuple[int, str, str]:
        return (self.year, self.category, self.doc_scope)


class CategoryShare(NamedTuple):
    category: str
    expected: float
    weight: float


class BaselineTable:
    """Immutable keyed collection of :class:`BaselineEntry`."""

    def __init__(self, source: SourceDb, group: DocTypeGroup, entries: Iterable[BaselineEntry]):
        self.source = source
        self.group = group
        index: dict[tuple[int, str, str], BaselineEntry] = {}
        for e in entries:
            if e.source is not source:
                raise PolicyError(f"entry source {e.source.value} differs from table source {source.value}")
            if _scope_group(e.doc_scope) is not group:
                raise PolicyError(f"entry scope {e.doc_scope!r} does not belong to group {group.value}")
            if e.key in index:
                raise PolicyError(f"duplicate baseline key {e.key}")
            index[e.key] = e
        self._entries: Mapping[tuple[int, str, str], BaselineEntry] = MappingProxyType(index)

    @classmethod
    def from_means(
        cls,
        source: SourceDb,
        group: DocTypeGroup,
        means: Mapping[tuple, float],
    ) -> BaselineTable:
        """Build from ``{(year, category): mean}`` (grouped) or ``{(year, category, doc_type): mean}``."""
        entries = []
        for key, mean in means.items():
            if group is DocTypeGroup.PERTYPE:
                year, category, doc_type = key
                scope = doc_type.value if isinstance(doc_type, DocType) else str(doc_type)
            else:
                year, category = key
                scope = group.value
            entries.append(BaselineEntry(source, int(year), normalize_category(category), scope, float(mean)))
        return cls(source, group, entries)

    @property
    def entries(self) -> Mapping[tuple[int, str, str], BaselineEntry]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"BaselineTable(source={self.source.value}, group={self.group.value}, entries={len(self)})"

    def scale(self, factor: float) -> BaselineTable:
        """Copy with every mean multiplied by ``factor``."""
        return BaselineTable(self.source, self.group, (
            BaselineEntry(e.source, e.year, e.category, e.doc_scope, e.mean_citations * factor)
            for e in self._entries.values()
        ))

    def scope_for(self, doc_type: DocType) -> str:
        if not self.group.covers(doc_type):
            raise PolicyError(f"doc type {doc_type.value} is not covered by a {self.group.value} baseline table")
        return doc_type.value if self.group is DocTypeGroup.PERTYPE else self.group.value

    def lookup(self, year: int, category: str, doc_type: DocType) -> float:
        scope = self.scope_for(doc_type)
        entry = self._entries.get((year, normalize_category(category), scope))
        if entry is None:
            raise MissingBaselineError(year, normalize_category(category), scope)
        return entry.mean_citations


def _scope_group(scope: str) -> DocTypeGroup:
    if scope in _PER_TYPE_SCOPES:
        return DocTypeGroup.PERTYPE
    if scope == "ar":
        return DocTypeGroup.AR
    if scope == "arp":
        return DocTypeGroup.ARP
    raise ValueError(f"unknown doc_scope {scope!r}")


def parse_baselines(text: str) -> BaselineTable:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise ParseError([RowError(1, "header", "empty file")])
    if tuple(h.strip().lower() for h in header) != BASELINE_COLUMNS:
        raise ParseError([RowError(reader.line_num, "header", f"expected {','.join(BASELINE_COLUMNS)}")])

    errors: list[RowError] = []
    entries: list[BaselineEntry] = []
    seen: set[tuple[int, str, str]] = set()
    source: SourceDb | None = None
    group: DocTypeGroup | None = None
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(BASELINE_COLUMNS):
            errors.append(RowError(line, "row", f"expected {len(BASELINE_COLUMNS)} columns, got {len(row)}"))
            continue
        src_tok, year_tok, cat_tok, scope_tok, mean_tok = (c.strip() for c in row)
        try:
            row_source = SourceDb.parse(src_tok)
        except ValueError as exc:
            errors.append(RowError(line, "source", str(exc)))
            continue
        if source is None:
            source = row_source
        elif row_source is not source:
            errors.append(RowError(line, "source", f"mixed sources: {row_source.value} after {source.value}"))
            continue
        if not year_tok.lstrip("-").isdigit():
            errors.append(RowError(line, "year", f"not an integer: {year_tok!r}"))
            continue
        category = normalize_category(cat_tok)
        if not category:
            errors.append(RowError(line, "category", "empty category"))
            continue
        scope = scope_tok.lower()
        try:
            row_group = _scope_group(scope)
        except ValueError as exc:
            errors.append(RowError(line, "doc_scope", str(exc)))
            continue
        if group is None:
            group = row_group
        elif row_group is not group:
            errors.append(RowError(line, "doc_scope", f"mixed regimes: {scope!r} in a {group.value} table"))
            continue
        try:
            mean = float(mean_tok)
        except ValueError:
            errors.append(RowError(line, "mean_citations", f"not a number: {mean_tok!r}"))
            continue
        if not math.isfinite(mean) or mean < 0:
            errors.append(RowError(line, "mean_citations", f"must be a finite value >= 0, got {mean_tok}"))
            continue
        entry = BaselineEntry(row_source, int(year_tok), category, scope, mean)
        if entry.key in seen:
            errors.append(RowError(line, "row", f"duplicate key {entry.key}"))
            continue
        seen.add(entry.key)
        entries.append(entry)

    if errors:
        raise ParseError(errors)
    if source is None or group is None:
        raise ParseError([RowError(reader.line_num, "row", "no baseline rows")])
    return BaselineTable(source, group, entries)


def load_baselines(path: str | Path) -> BaselineTable:
    return parse_baselines(Path(path).read_text(encoding="utf-8"))


def dump_baselines(table: BaselineTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BASELINE_COLUMNS)
    for e in sorted(table.entries.values(), key=lambda e: e.key):
        writer.writerow([e.source.value, e.year, e.category, e.doc_scope, repr(e.mean_citations)])
    return buf.getvalue()


def lookup_expected(table: BaselineTable, year: int, category: str, doc_type: DocType) -> float:
    """Expected citations for one (year, category, doc type).

    Grouped tables return the same mean for every covered doc type. A missing
    key raises :class:`MissingBaselineError`; there is no fallback.
    """
    return table.lookup(year, category, doc_type)


def expected_for_publication(
    table: BaselineTable,
    pub: Publication,
    policy: MulticategoryPolicy,
) -> float | list[CategoryShare]:
    """Expected impact of one publication under a multicategory policy.

    Returns a float for ``AVERAGE`` and ``SELECT``; for ``FRACTIONAL`` a list
    of :class:`CategoryShare` with weights ``1/k``.
    """
    if pub.source is not table.source:
        raise SourceMismatchError(pub.id, pub.source.value, table.source.value)

    def expected(category: str) -> float:
        return table.lookup(pub.year, category, pub.doc_type)

    if policy.mode is Multicat.SELECT:
        chosen = policy.tiebreak.choose(pub.year, pub.categories, expected)
        return expected(chosen)
    values = [expected(c) for c in pub.categories]
    if policy.mode is Multicat.AVERAGE:
        return math.fsum(values) / len(values)
    k = len(values)
    return [CategoryShare(c, v, 1.0 / k) for c, v in zip(pub.categories, values)]
