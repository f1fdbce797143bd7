"""``normcite`` command line.

Exit codes: 0 success / PASS, 1 input error, 2 computation error,
3 eligibility verdict FAIL.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import render
from .baselines import BaselineTable, load_baselines
from .eligibility import EligibilityPolicy, check_guarantor, load_references
from .errors import ComputationError, InputError, ParseError, PolicyError, RowError
from .indicators import METHODS, compute
from .policies import Multicat, MulticategoryPolicy, TieBreak, TieBreakPolicy
from .records import (
    DocTypeGroup,
    Publication,
    SourceDb,
    YearWindow,
    load_publications,
    scan_publications,
    validate_set,
)
from .sensitivity import bootstrap, compare_sources, perturb

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE, EXIT_FAIL = 0, 1, 2, 3

PROG = "normcite"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for computation errors here
    def error(self, message):
        raise _UsageError(message)


@dataclass
class RunConfig:
    subcommand: str
    pubs: list[Path]
    baselines: list[Path] = field(default_factory=list)
    method: str = "somm"
    window: YearWindow | None = None
    multicat: Multicat = Multicat.AVERAGE
    tiebreak: TieBreak = TieBreak.LEX
    choices: Path | None = None
    group: DocTypeGroup | None = None
    threshold: float = 1.5
    strict: bool = False
    min_works: int = 10
    highly_cited: float = 4.0
    references: Path | None = None
    fmt: str = "text"
    seed: int = 0
    replicates: int = 1000
    do_perturb: bool = False
    do_bootstrap: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        cfg = cls(
            subcommand=ns.command,
            pubs=[Path(p) for p in ns.pubs or []],
            baselines=[Path(p) for p in ns.baselines or []],
            method=ns.method,
            window=YearWindow.parse(ns.window) if ns.window else None,
            multicat=Multicat(ns.multicat),
            tiebreak=TieBreak(ns.tiebreak),
            choices=Path(ns.choices) if ns.choices else None,
            group=DocTypeGroup.parse(ns.group) if ns.group else None,
            threshold=ns.threshold,
            strict=ns.strict,
            min_works=ns.min_works,
            highly_cited=ns.highly_cited,
            references=Path(ns.references) if ns.references else None,
            fmt=ns.format,
            seed=ns.seed,
            replicates=ns.replicates,
            do_perturb=getattr(ns, "perturb", False),
            do_bootstrap=getattr(ns, "bootstrap", False),
        )
        cfg.check()
        return cfg

    def check(self) -> None:
        """Reject conflicting flags before touching any file."""
        if not self.pubs:
            raise PolicyError("--pubs is required")
        if self.tiebreak is TieBreak.EXPLICIT and self.choices is None:
            raise PolicyError("--tiebreak explicit needs --choices PATH")
        if self.choices is not None and self.tiebreak is not TieBreak.EXPLICIT:
            raise PolicyError("--choices only applies with --tiebreak explicit")
        if self.subcommand == "compare":
            if len(self.pubs) > 2:
                raise PolicyError("compare takes --pubs once (mixed sources) or twice")
            if len(self.baselines) != 2:
                raise PolicyError("compare needs --baselines twice, one per source")
        elif self.subcommand != "validate":
            if len(self.pubs) != 1:
                raise PolicyError("--pubs given more than once")
            if len(self.baselines) != 1:
                raise PolicyError("exactly one --baselines PATH is required")
        if self.subcommand == "sensitivity" and not (self.do_perturb or self.do_bootstrap):
            self.do_perturb = True
        if self.threshold <= 0:
            raise PolicyError("--threshold must be > 0")
        if self.min_works < 1:
            raise PolicyError("--min-works must be >= 1")

    def tiebreak_policy(self) -> TieBreakPolicy:
        if self.tiebreak is TieBreak.EXPLICIT:
            return TieBreakPolicy.explicit(_load_choices(self.choices))
        return TieBreakPolicy(self.tiebreak)

    def multicat_policy(self) -> MulticategoryPolicy:
        return MulticategoryPolicy(self.multicat, self.tiebreak_policy())


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_choices(path: Path) -> dict[int, str]:
    reader = csv.reader(io.StringIO(_read(path)))
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header] != ["year", "category"]:
        raise ParseError([RowError(1, "header", f"{path}: expected year,category")])
    choices: dict[int, str] = {}
    for row in reader:
        if not row:
            continue
        if len(row) != 2 or not row[0].strip().isdigit():
            raise ParseError([RowError(reader.line_num, "row", f"{path}: expected YEAR,CATEGORY")])
        choices[int(row[0])] = row[1]
    return choices


def _load_pubs(path: Path) -> list[Publication]:
    _read(path)
    try:
        return load_publications(path)
    except ParseError as exc:
        raise ParseError([RowError(e.line, e.field, f"{path}: {e.message}") for e in exc.errors]) from None


def _load_table(path: Path, group: DocTypeGroup | None) -> BaselineTable:
    _read(path)
    try:
        table = load_baselines(path)
    except ParseError as exc:
        raise ParseError([RowError(e.line, e.field, f"{path}: {e.message}") for e in exc.errors]) from None
    if group is not None and group is not table.group:
        raise PolicyError(f"{path} is a {table.group.value} table but --group {group.value} was requested")
    return table


def _prepare(cfg: RunConfig, pubs: list[Publication], table: BaselineTable):
    window = cfg.window or YearWindow.spanning(pubs)
    vset = validate_set(pubs, window, table.group)
    return list(vset.publications), window


def cmd_compute(cfg: RunConfig, out) -> int:
    pubs = _load_pubs(cfg.pubs[0])
    table = _load_table(cfg.baselines[0], cfg.group)
    pubs, window = _prepare(cfg, pubs, table)
    result = compute(cfg.method, pubs, table, policy=cfg.multicat_policy(),
                     tiebreak=cfg.tiebreak_policy(), window=window)
    out.write(render.render_indicator(result, cfg.fmt))
    return EXIT_OK


def cmd_check(cfg: RunConfig, out) -> int:
    pubs = _load_pubs(cfg.pubs[0])
    table = _load_table(cfg.baselines[0], cfg.group)
    references = load_references(cfg.references)
    pubs, window = _prepare(cfg, pubs, table)
    policy = EligibilityPolicy(cfg.threshold, cfg.min_works, cfg.method, cfg.highly_cited, cfg.strict)
    report = check_guarantor(pubs, table, policy, cfg.tiebreak_policy(), window,
                             multicat=cfg.multicat_policy(), references=references)
    color = cfg.fmt == "text" and _use_color(out)
    out.write(render.render_eligibility(report, cfg.fmt, strict=cfg.strict, color=color))
    return EXIT_OK if report.eligible else EXIT_FAIL


def cmd_compare(cfg: RunConfig, out) -> int:
    tables = [_load_table(p, cfg.group) for p in cfg.baselines]
    if tables[0].source is tables[1].source:
        raise PolicyError("compare needs one baseline table per source database")
    if len(cfg.pubs) == 2:
        loaded = [_load_pubs(p) for p in cfg.pubs]
        by_source: dict[SourceDb, list[Publication]] = {}
        for pubs in loaded:
            for src in {p.source for p in pubs}:
                by_source.setdefault(src, []).extend(p for p in pubs if p.source is src)
    else:
        mixed = _load_pubs(cfg.pubs[0])
        by_source = {s: [p for p in mixed if p.source is s] for s in SourceDb}
    sides = []
    for table in tables:
        pubs = by_source.get(table.source, [])
        if not pubs:
            raise InputError(f"no {table.source.value} publications to pair with its baseline table")
        sides.append(_prepare(cfg, pubs, table)[0])
    window = cfg.window or YearWindow.spanning(sides[0] + sides[1])
    cmp = compare_sources(sides[0], sides[1], tables[0], tables[1], cfg.method,
                          threshold=cfg.threshold, strict=cfg.strict, policy=cfg.multicat_policy(),
                          tiebreak=cfg.tiebreak_policy(), window=window)
    out.write(render.render_comparison(cmp, cfg.fmt))
    return EXIT_OK


def cmd_sensitivity(cfg: RunConfig, out) -> int:
    pubs = _load_pubs(cfg.pubs[0])
    table = _load_table(cfg.baselines[0], cfg.group)
    pubs, window = _prepare(cfg, pubs, table)
    kwargs = dict(policy=cfg.multicat_policy(), tiebreak=cfg.tiebreak_policy(), window=window)
    pert = perturb(pubs, table, cfg.method, **kwargs) if cfg.do_perturb else None
    boot = bootstrap(pubs, table, cfg.method, cfg.replicates, cfg.seed, **kwargs) if cfg.do_bootstrap else None
    out.write(render.render_sensitivity(pert, boot, cfg.fmt))
    return EXIT_OK


def cmd_validate(cfg: RunConfig, out, err) -> int:
    bad = 0
    summary = {}
    for path in cfg.pubs:
        pubs, errors = scan_publications(_read(path), "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else None)
        for e in errors:
            err.write(f"{PROG}: ParseError: {path}:{e.line}: {e.field}: {e.message}\n")
        bad += len(errors)
        summary[str(path)] = {"records": len(pubs), "errors": len(errors)}
    for path in cfg.baselines:
        try:
            table = _load_table(path, cfg.group)
            summary[str(path)] = {"entries": len(table), "source": table.source.value, "group": table.group.value,
                                  "errors": 0}
        except ParseError as exc:
            for e in exc.errors:
                err.write(f"{PROG}: ParseError: {e.line}: {e.field}: {e.message}\n")
            bad += len(exc.errors)
            summary[str(path)] = {"errors": len(exc.errors)}
    if cfg.fmt == "json":
        out.write(render.dumps_json(summary))
    else:
        for path, info in summary.items():
            out.write(f"{path}: " + ", ".join(f"{k} {v}" for k, v in info.items()) + "\n")
    return EXIT_INPUT if bad else EXIT_OK


def _use_color(stream) -> bool:
    if os.environ.get("NORMCITE_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pubs", action="append", metavar="PATH", help="publications CSV or JSONL")
    common.add_argument("--baselines", action="append", metavar="PATH", help="baselines CSV")
    common.add_argument("--method", choices=METHODS, default="somm")
    common.add_argument("--window", metavar="Y1:Y2", help="inclusive year range (default: span of the data)")
    common.add_argument("--multicat", choices=[m.value for m in Multicat], default="average")
    common.add_argument("--tiebreak", choices=[t.value for t in TieBreak], default="lex")
    common.add_argument("--choices", metavar="PATH", help="year,category CSV for --tiebreak explicit")
    common.add_argument("--group", choices=[g.value for g in DocTypeGroup],
                        help="expected doc-type group (default: the baseline table's own)")
    common.add_argument("--threshold", type=float, default=1.5)
    common.add_argument("--strict", action="store_true", help="require value > threshold")
    common.add_argument("--min-works", type=int, default=10)
    common.add_argument("--highly-cited", type=float, default=4.0, metavar="RATIO")
    common.add_argument("--references", metavar="PATH", help="category,reference_value CSV (default: bundled EU set)")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--replicates", type=int, default=1000)

    parser = _Parser(prog=PROG, description="Normalized citation impact indicators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("compute", parents=[common], help="compute an indicator with its breakdown")
    sub.add_parser("check", parents=[common], help="guarantor eligibility verdict")
    sub.add_parser("compare", parents=[common], help="WoS vs Scopus comparison")
    sens = sub.add_parser("sensitivity", parents=[common], help="perturbation and bootstrap")
    sens.add_argument("--perturb", action="store_true")
    sens.add_argument("--bootstrap", action="store_true")
    sub.add_parser("validate", parents=[common], help="parse inputs only")
    return parser


def _diagnostic(err, kind: str, message: str) -> None:
    err.write(f"{PROG}: {kind}: {' '.join(str(message).split())}\n")


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        cfg = RunConfig.from_args(ns)
    except _UsageError as exc:
        _diagnostic(err, "UsageError", exc)
        return EXIT_INPUT
    except (InputError, ValueError) as exc:
        _diagnostic(err, type(exc).__name__, exc)
        return EXIT_INPUT

    buf = io.StringIO()  # no partial reports: write only after success
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if cfg.subcommand == "validate":
                code = cmd_validate(cfg, buf, err)
            else:
                code = {"compute": cmd_compute, "check": cmd_check, "compare": cmd_compare,
                        "sensitivity": cmd_sensitivity}[cfg.subcommand](cfg, buf)
    except ParseError as exc:
        for e in exc.errors:
            _diagnostic(err, "ParseError", f"line {e.line}: {e.field}: {e.message}")
        return EXIT_INPUT
    except InputError as exc:
        _diagnostic(err, type(exc).__name__, exc)
        return EXIT_INPUT
    except ComputationError as exc:
        _diagnostic(err, type(exc).__name__, exc)
        return EXIT_COMPUTE
    for w in caught:
        _diagnostic(err, "warning", w.message)
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
