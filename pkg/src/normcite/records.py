"""Publication records: domain types, CSV/JSONL parsing and window filtering."""

from __future__ import annotations

import csv
import enum
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptySetError, ParseError, RowError

PUBLICATION_COLUMNS = ("id", "year", "doc_type", "citations", "categories", "source")


class DocType(enum.Enum):
    ARTICLE = "article"
    REVIEW = "review"
    PROCEEDING = "proceeding"
    OTHER = "other"

    @classmethod
    def parse(cls, token: str) -> DocType:
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"unknown doc_type {token!r}") from None


class SourceDb(enum.Enum):
    WOS = "wos"
    SCOPUS = "scopus"

    @classmethod
    def parse(cls, token: str) -> SourceDb:
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"unknown source {token!r}") from None

    @property
    def label(self) -> str:
        return "WoS" if self is SourceDb.WOS else "Scopus"


class DocTypeGroup(enum.Enum):
    """Aggregation regime of a baseline table."""

    AR = "ar"
    ARP = "arp"
    PERTYPE = "pertype"

    @classmethod
    def parse(cls, token: str) -> DocTypeGroup:
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"unknown doc-type group {token!r}") from None

    @property
    def doc_types(self) -> frozenset[DocType]:
        if self is DocTypeGroup.AR:
            return frozenset({DocType.ARTICLE, DocType.REVIEW})
        return frozenset({DocType.ARTICLE, DocType.REVIEW, DocType.PROCEEDING})

    def covers(self, doc_type: DocType) -> bool:
        return doc_type in self.doc_types


def normalize_category(name: str) -> str:
    return name.strip().upper()


@dataclass(frozen=True)
class Publication:
    id: str
    year: int
    doc_type: DocType
    citations: int
    categories: tuple[str, ...]
    source: SourceDb

    def __post_init__(self):
        if not self.id:
            raise ValueError("publication id must be non-empty")
        if self.citations < 0:
            raise ValueError(f"citations must be >= 0, got {self.citations}")
        cats = tuple(normalize_category(c) for c in self.categories)
        if not cats or any(not c for c in cats):
            raise ValueError("categories must be a non-empty list of non-empty names")
        if len(set(cats)) != len(cats):
            raise ValueError("duplicate category")
        object.__setattr__(self, "categories", cats)

    def with_citations(self, citations: int) -> Publication:
        return Publication(self.id, self.year, self.doc_type, citations, self.categories, self.source)


@dataclass(frozen=True)
class YearWindow:
    """Inclusive year range."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"empty window {self.start}:{self.end}")

    @classmethod
    def parse(cls, text: str) -> YearWindow:
        parts = text.split(":")
        try:
            if len(parts) == 1:
                year = int(parts[0])
                return cls(year, year)
            if len(parts) == 2:
                return cls(int(parts[0]), int(parts[1]))
        except ValueError:
            pass
        raise ValueError(f"window must look like Y1:Y2, got {text!r}")

    @classmethod
    def spanning(cls, pubs: Iterable[Publication]) -> YearWindow:
        years = [p.year for p in pubs]
        if not years:
            raise EmptySetError()
        return cls(min(years), max(years))

    def __contains__(self, year: int) -> bool:
        return self.start <= year <= self.end

    def years(self) -> range:
        return range(self.start, self.end + 1)

    def __str__(self) -> str:
        return f"{self.start}:{self.end}"


# -- parsing -----------------------------------------------------------------

def _int_field(value, name: str, line: int, minimum: int | None = None) -> int:
    if isinstance(value, bool):
        raise RowError(line, name, f"not an integer: {value!r}")
    if isinstance(value, int):
        number = value
    else:
        text = str(value).strip()
        if not text.lstrip("-").isdigit():
            raise RowError(line, name, f"not an integer: {value!r}")
        number = int(text)
    if minimum is not None and number < minimum:
        raise RowError(line, name, f"must be >= {minimum}, got {number}")
    return number


def _build(line: int, raw: dict, seen: set[str]) -> Publication:
    pub_id = str(raw["id"]).strip()
    if not pub_id:
        raise RowError(line, "id", "empty id")
    if pub_id in seen:
        raise RowError(line, "id", f"duplicate id {pub_id!r}")
    year = _int_field(raw["year"], "year", line)
    try:
        doc_type = DocType.parse(str(raw["doc_type"]))
    except ValueError as exc:
        raise RowError(line, "doc_type", str(exc)) from None
    citations = _int_field(raw["citations"], "citations", line, minimum=0)

    cats_raw = raw["categories"]
    if isinstance(cats_raw, str):
        cats_raw = cats_raw.split(";")
    elif not isinstance(cats_raw, list):
        raise RowError(line, "categories", "expected a ';'-separated string or a list")
    cats = [normalize_category(str(c)) for c in cats_raw]
    if not cats or any(not c for c in cats):
        raise RowError(line, "categories", "empty category")
    dupes = [c for c, n in Counter(cats).items() if n > 1]
    if dupes:
        raise RowError(line, "categories", f"duplicate category {dupes[0]!r}")
    try:
        source = SourceDb.parse(str(raw["source"]))
    except ValueError as exc:
        raise RowError(line, "source", str(exc)) from None
    return Publication(pub_id, year, doc_type, citations, tuple(cats), source)


def _scan_csv(text: str) -> tuple[list[Publication], list[RowError]]:
    reader = csv.reader(io.StringIO(text))
    pubs: list[Publication] = []
    errors: list[RowError] = []
    header = next(reader, None)
    if header is None:
        return pubs, [RowError(1, "header", "empty file")]
    if tuple(h.strip().lower() for h in header) != PUBLICATION_COLUMNS:
        return pubs, [RowError(reader.line_num, "header", f"expected {','.join(PUBLICATION_COLUMNS)}")]
    seen: set[str] = set()
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(PUBLICATION_COLUMNS):
            errors.append(RowError(line, "row", f"expected {len(PUBLICATION_COLUMNS)} columns, got {len(row)}"))
            continue
        try:
            pub = _build(line, dict(zip(PUBLICATION_COLUMNS, row)), seen)
        except RowError as exc:
            errors.append(exc)
            continue
        seen.add(pub.id)
        pubs.append(pub)
    return pubs, errors


def _scan_jsonl(text: str) -> tuple[list[Publication], list[RowError]]:
    pubs: list[Publication] = []
    errors: list[RowError] = []
    seen: set[str] = set()
    for line, raw_line in enumerate(text.splitlines(), start=1):
        if not raw_line.strip():
            continue
        try:
            obj = json.loads(raw_line)
        except json.JSONDecodeError as exc:
            errors.append(RowError(line, "row", f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(obj, dict):
            errors.append(RowError(line, "row", "expected a JSON object"))
            continue
        missing = [c for c in PUBLICATION_COLUMNS if c not in obj]
        if missing:
            errors.append(RowError(line, missing[0], "missing field"))
            continue
        try:
            pub = _build(line, obj, seen)
        except RowError as exc:
            errors.append(exc)
            continue
        seen.add(pub.id)
        pubs.append(pub)
    return pubs, errors


def _detect_format(text: str) -> str:
    return "jsonl" if text.lstrip().startswith("{") else "csv"


def scan_publications(text: str, fmt: str | None = None) -> tuple[list[Publication], list[RowError]]:
    """Parse every row, collecting bad rows instead of stopping at the first.

    Returns ``(publications, errors)``; each input row ends up in exactly one
    of the two lists.
    """
    fmt = fmt or _detect_format(text)
    if fmt == "csv":
        return _scan_csv(text)
    if fmt == "jsonl":
        return _scan_jsonl(text)
    raise ValueError(f"unknown publications format {fmt!r}")


def parse_publications(text: str, fmt: str | None = None) -> list[Publication]:
    """Parse a publications file, raising :class:`ParseError` listing every bad row."""
    pubs, errors = scan_publications(text, fmt)
    if errors:
        raise ParseError(errors)
    return pubs


def load_publications(path: str | Path) -> list[Publication]:
    path = Path(path)
    fmt = "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else None
    return parse_publications(path.read_text(encoding="utf-8"), fmt)


def dump_publications(pubs: Iterable[Publication]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PUBLICATION_COLUMNS)
    for p in pubs:
        writer.writerow([p.id, p.year, p.doc_type.value, p.citations, ";".join(p.categories), p.source.value])
    return buf.getvalue()


def dump_publications_jsonl(pubs: Iterable[Publication]) -> str:
    lines = [
        json.dumps({
            "id": p.id, "year": p.year, "doc_type": p.doc_type.value, "citations": p.citations,
            "categories": list(p.categories), "source": p.source.value,
        }, ensure_ascii=False)
        for p in pubs
    ]
    return "".join(line + "\n" for line in lines)


# -- filtering ---------------------------------------------------------------

@dataclass(frozen=True)
class ValidatedSet:
    publications: tuple[Publication, ...]
    window: YearWindow
    group: DocTypeGroup
    excluded: tuple[tuple[str, str], ...] = field(default=())
    """``(publication id, reason)`` pairs; reason is ``"year"`` or ``"doc_type"``."""

    @property
    def excluded_counts(self) -> dict[str, int]:
        return dict(Counter(reason for _, reason in self.excluded))

    def __len__(self) -> int:
        return len(self.publications)

    def __iter__(self):
        return iter(self.publications)


def validate_set(
    pubs: Sequence[Publication],
    window: YearWindow,
    group: DocTypeGroup = DocTypeGroup.AR,
) -> ValidatedSet:
    """Keep publications inside ``window`` whose doc type the group covers.

    Raises :class:`EmptySetError` when nothing survives.
    """
    kept: list[Publication] = []
    excluded: list[tuple[str, str]] = []
    for p in pubs:
        if p.year not in window:
            excluded.append((p.id, "year"))
        elif not group.covers(p.doc_type):
            excluded.append((p.id, "doc_type"))
        else:
            kept.append(p)
    if not kept:
        raise EmptySetError(
            f"no publications inside window {window} with doc types covered by group {group.value}"
        )
    return ValidatedSet(tuple(kept), window, group, tuple(excluded))


