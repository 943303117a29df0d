"""Check battery orchestration and report assembly.

One report = header (tool, version, timestamp, field, seeds) + a block per
instance + totals.  Identical inputs and seeds give byte-identical output
except for the header timestamp.  Checks whose hypothesis is not certified
on an instance come back "skipped", never "pass".
"""
from __future__ import annotations

import csv
import datetime
import io

from ._version import __version__
from .complexes import ColoredComplex, h_vector, rank_select
from .homology import DEFAULT_FIELD, FieldSpec, is_cohen_macaulay, is_gorenstein_star
from .inequalities import (CheckResult, equality_analysis, flag_symmetry, verify_link_sum,
                           verify_nonnegativity, verify_rank_selected, verify_selection_sum)
from .sr_algebra import (GenericityError, LinearForm, colored_lsop, draw_verified_lsop,
                         graded_dimension, lefschetz_injective, multigraded_series_check,
                         quotient_hilbert, random_forms)
from .util import subsets

ALL_CHECKS = ("gorenstein", "cm", "bglb", "rank_selected", "lemma33", "link_sum",
              "flag_symmetry", "equality", "hilbert", "multigraded", "lefschetz")

_GORENSTEIN_GATED = frozenset(("bglb", "rank_selected", "flag_symmetry", "equality", "lefschetz"))

# largest graded dimension the dense modular elimination handles in
# reasonable time; bigger generic-draw jobs are reported as skipped
GENERIC_DIM_CAP = 2600

# multigraded accounting is quadratic-ish in the composition count
MULTIGRADED_MAX_N = 24


def _skip(check: str, instance: str, params: dict, reason: str, witness=None) -> CheckResult:
    details = {"reason": reason}
    if witness is not None:
        details["witness"] = witness
    return CheckResult(check, instance, params, "skipped", None, details)


def _homology_row(check: str, instance: str, cert) -> CheckResult:
    details = {"faces_checked": cert.faces_checked, "dim": cert.dim}
    if cert.ok:
        return CheckResult(check, instance, {}, "pass", None, details)
    return CheckResult(check, instance, {}, "fail", cert.first_failure, details)


def _max_graded_dim(obj, up_to: int) -> int:
    return max(graded_dimension(obj, k) for k in range(up_to + 1))


def _hilbert_rows(name, gamma, seeds, fld, cap) -> list[CheckResult]:
    d = gamma.palette
    expected = tuple(h_vector(gamma.complex, d)) + (0,)
    rows = []

    def compare(dims, params, details):
        if tuple(dims) == expected:
            return CheckResult("hilbert", name, params, "pass", None, details)
        witness = {"dims": list(dims), "h": list(expected)}
        return CheckResult("hilbert", name, params, "fail", witness, details)

    dims = quotient_hilbert(gamma, colored_lsop(gamma), d + 1, fld)
    rows.append(compare(dims, {"lsop": "colored"}, {"dims": list(dims)}))

    peak = _max_graded_dim(gamma, d + 1)
    if peak > cap:
        rows.append(_skip("hilbert", name, {"lsop": "generic"},
                          "graded dimension %d exceeds cap %d" % (peak, cap)))
        return rows
    for s in seeds:
        params = {"lsop": "generic", "seed": s}
        try:
            _, used, verdict = draw_verified_lsop(gamma, seed=s, fld=fld)
        except GenericityError as e:
            rows.append(CheckResult("hilbert", name, params, "fail", {"error": str(e)}))
            continue
        dims = verdict.dims[: d + 2]
        rows.append(compare(dims, params, {"dims": list(dims), "draw_seed": used}))
    return rows


def _lefschetz_rows(name, gamma, seeds, fld, cap) -> list[CheckResult]:
    d = gamma.palette
    rows = []
    for t_cols in subsets(range(1, d + 1)):
        sel = rank_select(gamma, t_cols)
        t = len(t_cols)
        peak = _max_graded_dim(sel, t)
        if peak > cap:
            rows.append(_skip("lefschetz", name, {"T": list(t_cols)},
                              "graded dimension %d exceeds cap %d" % (peak, cap)))
            continue
        theta = colored_lsop(sel) if t else []
        t_mask = sum(1 << (c - 1) for c in t_cols)
        for s in seeds:
            if t:
                omega = random_forms(sel, range(1, t + 1), 1, fld, seed=s * 1000003 + t_mask)[0]
            else:
                omega = LinearForm(())
            for i in range(t // 2 + 1):
                cert = lefschetz_injective(sel, theta, omega, i, fld, seed=s)
                params = {"T": list(t_cols), "i": i, "seed": s}
                details = cert.as_dict()
                if cert.injective:
                    rows.append(CheckResult("lefschetz", name, params, "pass", None, details))
                else:
                    rows.append(CheckResult("lefschetz", name, params, "fail",
                                            {"ranks": list(cert.ranks)}, details))
    return rows


def run_instance(name: str, gamma: ColoredComplex, checks, seeds=(1, 2, 3),
                 fld: FieldSpec = DEFAULT_FIELD, truncation: int | None = None,
                 cap: int = GENERIC_DIM_CAP) -> list[CheckResult]:
    """All requested checks on one instance, in canonical order."""
    chosen = [c for c in ALL_CHECKS if c in set(checks)]
    d = gamma.palette
    gcert = None
    if _GORENSTEIN_GATED & set(chosen) or "gorenstein" in chosen:
        gcert = is_gorenstein_star(gamma.complex, fld)
    cmcert = None
    if "cm" in chosen or "hilbert" in chosen:
        cmcert = is_cohen_macaulay(gamma.complex, fld)

    rows: list[CheckResult] = []
    for check in chosen:
        if check == "gorenstein":
            rows.append(_homology_row("gorenstein", name, gcert))
        elif check == "cm":
            rows.append(_homology_row("cm", name, cmcert))
        elif check in _GORENSTEIN_GATED and not gcert.ok:
            rows.append(_skip(check, name, {}, "sphere-links hypothesis not certified",
                              gcert.first_failure))
        elif check == "bglb":
            rows.append(verify_nonnegativity(gamma, instance=name))
        elif check == "rank_selected":
            rows.extend(verify_rank_selected(gamma, instance=name))
        elif check == "lemma33":
            for i in range(d + 1):
                for k in range(i, d + 1):
                    rows.append(verify_selection_sum(gamma, i, k, instance=name))
        elif check == "link_sum":
            if not gamma.complex.is_pure:
                rows.append(_skip("link_sum", name, {}, "complex is not pure"))
            else:
                for i in range(d + 1):
                    rows.append(verify_link_sum(gamma, i, instance=name))
        elif check == "flag_symmetry":
            rows.append(flag_symmetry(gamma, instance=name))
        elif check == "equality":
            rows.append(equality_analysis(gamma, instance=name))
        elif check == "hilbert":
            if not cmcert.ok:
                rows.append(_skip("hilbert", name, {}, "link-homology hypothesis not certified",
                                  cmcert.first_failure))
            else:
                rows.extend(_hilbert_rows(name, gamma, seeds, fld, cap))
        elif check == "multigraded":
            if gamma.n > MULTIGRADED_MAX_N:
                rows.append(_skip("multigraded", name, {},
                                  "%d vertices exceed limit %d" % (gamma.n, MULTIGRADED_MAX_N)))
            else:
                trunc = truncation if truncation is not None else d + 1
                res = multigraded_series_check(gamma, trunc)
                params = {"truncation": trunc}
                details = {"coefficients_checked": res.coefficients_checked}
                if res.ok:
                    rows.append(CheckResult("multigraded", name, params, "pass", None, details))
                else:
                    rows.append(CheckResult("multigraded", name, params, "fail",
                                            res.first_mismatch, details))
        elif check == "lefschetz":
            rows.extend(_lefschetz_rows(name, gamma, seeds, fld, cap))
    return rows


def _tally(rows) -> dict:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in rows:
        out[r.status] += 1
    return out


def run_battery(instances, checks, seeds=(1, 2, 3), fld: FieldSpec = DEFAULT_FIELD,
                truncation: int | None = None, cap: int = GENERIC_DIM_CAP) -> dict:
    """Full report over (name, complex, provenance) triples.

    provenance is an optional dict recording how the instance was built;
    it is echoed verbatim so a failed check can be re-run in isolation.
    """
    blocks = []
    totals = {"pass": 0, "fail": 0, "skipped": 0}
    for name, gamma, provenance in instances:
        rows = run_instance(name, gamma, checks, seeds, fld, truncation, cap)
        summary = _tally(rows)
        for key in totals:
            totals[key] += summary[key]
        blocks.append({
            "instance": name,
            "provenance": provenance,
            "checks": [r.as_dict() for r in rows],
            "summary": summary,
        })
    return {
        "header": {
            "tool": "bglb",
            "version": __version__,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "field": {"kind": fld.kind, "p": fld.p if fld.kind == "prime" else None},
            "seeds": list(seeds),
            "truncation": truncation,
            "generic_dim_cap": cap,
            "checks": [c for c in ALL_CHECKS if c in set(checks)],
        },
        "reports": blocks,
        "totals": totals,
    }


def report_failed(report: dict) -> bool:
    return report["totals"]["fail"] > 0


def to_csv(report: dict) -> str:
    """One row per check result; params and witness serialized inline."""
    import json

    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["instance", "check", "params", "status", "witness"])
    for block in report["reports"]:
        for row in block["checks"]:
            w.writerow([
                block["instance"],
                row["check"],
                json.dumps(row["params"], sort_keys=True),
                row["status"],
                json.dumps(row["witness"], sort_keys=True),
            ])
    return buf.getvalue()


def to_text(report: dict) -> str:
    lines = []
    hdr = report["header"]
    lines.append("bglb %s  checks=%s  seeds=%s" % (
        hdr["version"], ",".join(hdr["checks"]), hdr["seeds"]))
    for block in report["reports"]:
        s = block["summary"]
        lines.append("%s: %d pass, %d fail, %d skipped" % (
            block["instance"], s["pass"], s["fail"], s["skipped"]))
        for row in block["checks"]:
            if row["status"] != "fail":
                continue
            lines.append("  FAIL %s %r witness=%r" % (row["check"], row["params"], row["witness"]))
    t = report["totals"]
    lines.append("total: %d pass, %d fail, %d skipped" % (t["pass"], t["fail"], t["skipped"]))
    return "\n".join(lines) + "\n"
