"""Machine-readable report documents (JSON / CSV / text)."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

import numpy as np

from .numcore import SeriesResult
from .regprod import VerificationReport

SCHEMA_VERSION = "1"
NONFINITE = {math.inf: "Infinity", -math.inf: "-Infinity"}


def _real(x: float) -> float | str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return NONFINITE[x]
    return x


def to_jsonable(obj: Any) -> Any:
    """Complex -> [re, im]; non-finite floats -> string sentinels."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _real(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_real(obj.real), _real(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    return obj


def from_sentinel(x: Any) -> float:
    if isinstance(x, str):
        return {"NaN": math.nan, "Infinity": math.inf, "-Infinity": -math.inf}[x]
    return float(x)


def series_row(target: str, res: SeriesResult, runtime_ms: float, **extra) -> dict[str, Any]:
    return {
        "target": target,
        "value": res.value,
        "error_estimate": res.error_estimate,
        "terms_used": res.terms_used,
        "method": res.method,
        "converged": res.converged,
        "runtime_ms": runtime_ms,
        **extra,
        "meta": res.meta,
    }


def verification_row(rep: VerificationReport) -> dict[str, Any]:
    return {
        "identity": rep.identity,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "abs_err": rep.abs_err,
        "rel_err": rep.rel_err,
        "tol": rep.tol,
        "pass": rep.passed,
        "runtime_ms": rep.metadata.get("runtime_ms", 0.0),
        "metadata": rep.metadata,
    }


def build_document(request: dict, config: dict, rows: list[dict], summary: dict) -> dict:
    return to_jsonable(
        {
            "schema_version": SCHEMA_VERSION,
            "request": request,
            "config": config,
            "results": rows,
            "summary": summary,
        }
    )


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False)


def _flat(row: dict) -> dict[str, Any]:
    out = {}
    for key, val in row.items():
        if key in ("meta", "metadata"):
            continue
        if isinstance(val, list) and len(val) == 2 and not isinstance(val[0], (list, dict)):
            out[f"{key}_re"], out[f"{key}_im"] = val
        elif isinstance(val, (list, dict)):
            out[key] = json.dumps(val)
        else:
            out[key] = val
    return out


def render_csv(doc: dict) -> str:
    rows = [_flat(r) for r in doc["results"]]
    buf = io.StringIO()
    if not rows:
        return ""
    fields = list(rows[0])
    for r in rows[1:]:
        fields.extend(k for k in r if k not in fields)
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return buf.getvalue()


def _fmt(val: Any) -> str:
    if isinstance(val, list) and len(val) == 2:
        re, im = val
        if im == 0:
            return repr(re)
        return f"{re!r}{'+' if not isinstance(im, str) and im >= 0 else ''}{im!r}i"
    return repr(val) if isinstance(val, float) else str(val)


def render_text(doc: dict) -> str:
    lines = []
    for row in doc["results"]:
        if "identity" in row:
            status = "PASS" if row["pass"] else "FAIL"
            lines.append(
                f"{status} {row['identity']}: lhs={_fmt(row['lhs'])} rhs={_fmt(row['rhs'])} "
                f"rel_err={_fmt(row['rel_err'])} tol={_fmt(row['tol'])}"
            )
        else:
            flat = _flat(row)
            lines.append(" ".join(f"{k}={_fmt(v)}" for k, v in flat.items() if k != "runtime_ms"))
    s = doc["summary"]
    lines.append(" ".join(f"{k}={v}" for k, v in s.items()))
    return "\n".join(lines)
