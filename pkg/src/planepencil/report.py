"""Deterministic report serialization and the human summary table."""

from __future__ import annotations

import json

from .harness import HarnessReport, MapReport


def to_canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _mark(flag) -> str:
    if flag is None:
        return "-"
    return "yes" if flag else "no"


def _check_cell(check_json) -> str:
    status = check_json.get("status", "-")
    return {"pass": "ok", "fail": "FAIL", "skip": "skip"}.get(status, status)


def summary_table(report: HarnessReport) -> str:
    headers = [
        "map",
        "fibres",
        "deg",
        "r",
        "h",
        "A_F",
        "a/b/c",
        "eq1",
        "eq4",
        "eq5",
        "eq8",
        "xAF",
        "L2",
        "T2",
    ]
    rows = [headers]
    for r in report.maps:
        data = r.to_json()
        h = "-"
        if r.tree is not None:
            h = f"{r.tree.h_infinity}+{sum(r.tree.h_per_base.values())}"
        afs = "-"
        if r.afs is not None:
            afs = "empty" if r.afs.empty else ",".join(r.afs.member_polys())
        abc = "-"
        t2 = data["theorem2"]
        if t2.get("a_regular_value") is not None:
            abc = "/".join(
                "T" if t2[k] else "F"
                for k in ("a_regular_value", "b_keller", "c_invertible")
            )
        checks = data["checks"]
        rows.append(
            [
                r.name,
                _mark(r.fibres.ok if r.fibres else None),
                str(data["deg_geo"]) if data["deg_geo"] is not None else "-",
                str(r.profile.generic_r) if r.profile else "-",
                h,
                afs,
                abc,
                _check_cell(checks.get("eq1", {})),
                _check_cell(checks.get("eq4", {})),
                _check_cell(checks.get("eq5", {})),
                _check_cell(checks.get("eq8", {})),
                _check_cell(checks.get("af_cross", {})),
                _check_cell(checks.get("lemma2", {})),
                t2.get("equivalent", "-"),
            ]
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(headers))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)).rstrip())
        if i == 0:
            lines.append("-" * (sum(widths) + 2 * (len(widths) - 1)))
    suite = report.theorem2_suite
    lines.append("")
    lines.append(
        f"theorem-2 suite: {suite.get('status', '-')}"
        + (
            f" (applicable: {', '.join(suite.get('applicable', []))})"
            if suite.get("applicable")
            else f" ({suite.get('reason', '')})"
        )
    )
    caps = [r.name for r in report.maps if r.cap_exceeded]
    if caps:
        details = []
        for r in report.maps:
            if not r.cap_exceeded:
                continue
            named = [
                v for k, v in sorted(r.errors.items()) if k.endswith("_min_polys")
            ]
            details.append(f"{r.name}: {'; '.join(named) if named else 'budget'}")
        lines.append("cap/budget exceeded: " + " | ".join(details))
    fails = [r.name for r in report.maps if r.any_failure()]
    if fails:
        lines.append("failures: " + ", ".join(fails))
    return "\n".join(lines) + "\n"


def emit(report: HarnessReport) -> tuple[str, str]:
    """(canonical JSON document, human summary text)."""
    return to_canonical_json(report.to_json()), summary_table(report)
