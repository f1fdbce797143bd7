"""Deterministic text / CSV / JSON rendering of results.

Display values are rounded half-up to two decimals; JSON and CSV also carry
the unrounded float. Decimal separator is always ".".
"""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal
from typing import Any

from .eligibility import EligibilityReport
from .indicators import IndicatorResult
from .sensitivity import BootstrapReport, PerturbationReport, SourceComparison

SOMM_COLUMNS = ("year", "A", "B", "C", "D1", "D", "E", "F", "G")
ITEM_COLUMNS = ("id", "observed", "expected", "ratio", "weight")


def display(x: float, places: int = 2) -> str:
    """Round half-up for display (``1.0667 -> '1.07'``, ``0.125 -> '0.13'``)."""
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


def truncate(x: float, places: int = 2) -> str:
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(x))).quantize(q, rounding=ROUND_DOWN))


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _table(header, rows) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells) + "\n"


# -- indicator ---------------------------------------------------------------

def indicator_dict(result: IndicatorResult) -> dict:
    out: dict[str, Any] = {
        "method": result.method,
        "value": result.value,
        "display": display(result.value),
        "display_truncated": truncate(result.value),
        "provenance": dict(result.provenance),
    }
    if result.method == "somm":
        out["rows"] = [
            {"year": r.year, "A": r.n_works, "B": r.n_citations, "C": r.mean_citations,
             "D1": r.chosen_category, "D": r.baseline_value, "E": r.ratio, "F": r.weight,
             "G": r.contribution, "candidates": list(r.candidates)}
            for r in result.rows
        ]
    else:
        out["items"] = [
            {"id": i.pub_id, "observed": i.observed, "expected": i.expected, "ratio": i.ratio,
             "weight": i.weight, **({"category": i.category} if i.category else {})}
            for i in result.items
        ]
    return out


def _breakdown_rows(result: IndicatorResult, fmt) -> tuple[tuple, list[list]]:
    if result.method == "somm":
        return SOMM_COLUMNS, [
            [r.year, r.n_works, r.n_citations, fmt(r.mean_citations), r.chosen_category,
             fmt(r.baseline_value), fmt(r.ratio), fmt(r.weight), fmt(r.contribution)]
            for r in result.rows
        ]
    return ITEM_COLUMNS, [
        [i.pub_id, i.observed, fmt(i.expected), fmt(i.ratio), fmt(i.weight)] for i in result.items
    ]


def _footer(value: float) -> list[str]:
    rounded, cut = display(value), truncate(value)
    if rounded == cut:
        return []
    return [f"note: display rounds half-up to 2 decimals; truncation would show {cut}"]


def render_indicator(result: IndicatorResult, fmt: str) -> str:
    if fmt == "json":
        return dumps_json(indicator_dict(result))
    if fmt == "csv":
        header, rows = _breakdown_rows(result, repr)
        return _csv([header, *rows, [], ["value", repr(result.value)], ["normalized_impact", display(result.value)]])
    header, rows = _breakdown_rows(result, display)
    prov = "  ".join(f"{k}: {v}" for k, v in sorted(result.provenance.items()))
    lines = [f"method: {result.method}  {prov}", "", _table(header, rows).rstrip("\n"), "",
             f"value: {result.value!r}", f"normalized_impact,{display(result.value)}", *_footer(result.value)]
    return "\n".join(lines) + "\n"


# -- eligibility -------------------------------------------------------------

def eligibility_dict(report: EligibilityReport, strict: bool = False) -> dict:
    return {
        "verdict": "PASS" if report.eligible else "FAIL",
        "failed_checks": report.failed_checks,
        "method": report.method,
        "value": report.value,
        "display": display(report.value),
        "threshold": report.threshold,
        "comparator": "strict" if strict else "inclusive",
        "passes_threshold": report.passes_threshold,
        "works_count": report.works_count,
        "min_works": report.min_works,
        "passes_min_works": report.passes_min_works,
        "h_index": report.h_index,
        "highly_cited_count": report.highly_cited_count,
        "reference_comparisons": [
            {"category": c.category, "reference": c.reference, "status": c.status}
            for c in report.reference_comparisons
        ],
    }


def render_eligibility(report: EligibilityReport, fmt: str, *, strict: bool = False, color: bool = False) -> str:
    data = eligibility_dict(report, strict)
    if fmt == "json":
        return dumps_json(data)
    if fmt == "csv":
        rows = [["key", "value"]]
        for key in ("verdict", "method", "value", "threshold", "comparator", "passes_threshold",
                    "works_count", "min_works", "passes_min_works", "h_index", "highly_cited_count"):
            v = data[key]
            rows.append([key, repr(v) if isinstance(v, float) else str(v).lower() if isinstance(v, bool) else v])
        rows.append(["failed_checks", ";".join(data["failed_checks"])])
        for c in report.reference_comparisons:
            rows.append([f"reference:{c.category}", f"{c.status}:{c.reference!r}"])
        return _csv(rows)

    verdict = data["verdict"]
    if color:
        verdict = ("\033[1;32m" if report.eligible else "\033[1;31m") + verdict + "\033[0m"
    failed = f" ({', '.join(report.failed_checks)})" if report.failed_checks else ""
    op = ">" if strict else ">="
    lines = [
        f"verdict: {verdict}{failed}",
        f"method: {report.method}",
        f"normalized_impact: {display(report.value)} (needs {op} {display(report.threshold)}: "
        f"{'ok' if report.passes_threshold else 'fail'})",
        f"works: {report.works_count} (needs >= {report.min_works}: {'ok' if report.passes_min_works else 'fail'})",
        f"h_index: {report.h_index}",
        f"highly_cited: {report.highly_cited_count}",
    ]
    for c in report.reference_comparisons:
        lines.append(f"reference {c.category} {display(c.reference)}: {c.status}")
    return "\n".join(lines) + "\n"


# -- sensitivity -------------------------------------------------------------

def comparison_dict(cmp: SourceComparison) -> dict:
    def side(s):
        return {"source": s.source, "value": s.value, "display": display(s.value), "passes": s.passes}

    return {
        "first": side(cmp.first),
        "second": side(cmp.second),
        "threshold": cmp.threshold,
        "gap": cmp.gap,
        "gap_display": display(cmp.gap),
        "signed_gap": cmp.signed_gap,
        "relative_gap": cmp.relative_gap,
        "verdict_flip": cmp.verdict_flip,
    }


def render_comparison(cmp: SourceComparison, fmt: str) -> str:
    data = comparison_dict(cmp)
    if fmt == "json":
        return dumps_json(data)
    flip = "true" if cmp.verdict_flip else "false"
    if fmt == "csv":
        rows = [["source", "value", "display", "passes"]]
        for s in (cmp.first, cmp.second):
            rows.append([s.source, repr(s.value), display(s.value), str(s.passes).lower()])
        rows += [[], ["gap", repr(cmp.gap)], ["signed_gap", repr(cmp.signed_gap)], ["verdict_flip", flip]]
        return _csv(rows)
    lines = [
        f"{s.source}: {display(s.value)} ({'pass' if s.passes else 'fail'} at {display(cmp.threshold)})"
        for s in (cmp.first, cmp.second)
    ]
    lines += [f"gap: {display(cmp.gap)}", f"verdict_flip:{flip}"]
    return "\n".join(lines) + "\n"


def perturbation_dict(rep: PerturbationReport) -> dict:
    return {
        "method": rep.method,
        "base_value": rep.base_value,
        "max_abs_delta": rep.max_abs_delta,
        "most_influential": rep.most_influential,
        "deltas": [
            {"id": d.pub_id, "citations": d.citations, "plus_one": d.plus_one, "minus_one": d.minus_one}
            for d in rep.deltas
        ],
    }


def bootstrap_dict(rep: BootstrapReport) -> dict:
    return {
        "method": rep.method, "replicates": rep.replicates, "seed": rep.seed, "prng": rep.prng,
        "base_value": rep.base_value, "mean": rep.mean, "std": rep.std,
        "ci_low": rep.ci_low, "ci_high": rep.ci_high,
    }


def render_sensitivity(perturbation: PerturbationReport | None, boot: BootstrapReport | None, fmt: str) -> str:
    data = {}
    if perturbation is not None:
        data["perturbation"] = perturbation_dict(perturbation)
    if boot is not None:
        data["bootstrap"] = bootstrap_dict(boot)
    if fmt == "json":
        return dumps_json(data)

    out = []
    if perturbation is not None:
        rows = [[d.pub_id, d.citations, repr(d.plus_one), "" if d.minus_one is None else repr(d.minus_one)]
                for d in perturbation.deltas]
        header = ("id", "citations", "delta_plus_one", "delta_minus_one")
        if fmt == "csv":
            out.append(_csv([header, *rows]))
        else:
            shown = [[r[0], r[1], f"{float(r[2]):+.4f}", "" if r[3] == "" else f"{float(r[3]):+.4f}"] for r in rows]
            out.append(f"perturbation ({perturbation.method}), base {display(perturbation.base_value)}\n")
            out.append(_table(header, shown))
            out.append(f"max_abs_delta: {perturbation.max_abs_delta:.4f} ({perturbation.most_influential})\n")
    if boot is not None:
        b = bootstrap_dict(boot)
        if fmt == "csv":
            out.append(_csv([["key", "value"], *([k, repr(v) if isinstance(v, float) else v] for k, v in sorted(b.items()))]))
        else:
            out.append(
                f"bootstrap ({boot.method}, {boot.replicates} replicates, seed {boot.seed}, {boot.prng})\n"
                f"base: {display(boot.base_value)}  mean: {display(boot.mean)}  std: {boot.std:.4f}\n"
                f"95% interval: [{display(boot.ci_low)}, {display(boot.ci_high)}]\n"
            )
    return "\n".join(out)
