"""Serialization of reports: canonical JSON, CSV and a plain text summary."""

import csv
import io
import json
import math

import numpy as np

SCHEMA_VERSION = 1


def _clean(obj):
    """Make ``obj`` JSON-safe: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


def build_report(command, config, results, condition_refs, tool_version):
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "tool_version": tool_version,
        "config": config.to_dict(),
        "seed": config.seed,
        "results": list(results),
        "condition_refs": sorted(set(condition_refs)),
    }


def to_json(report):
    return json.dumps(_clean(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def fmt_float(v):
    return "%.17g" % v


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return fmt_float(float(v))
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(_clean(v), sort_keys=True)
    return str(v)


def rows_to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def results_to_csv(report):
    cols = ["check", "status", "max_residual", "tolerance", "witness"]
    rows = [[r.get(c) for c in cols] for r in report["results"]]
    return rows_to_csv(cols, rows)


def to_text(report):
    lines = [f"{report['command']} (schema {report['schema']}, seed {report['seed']})"]
    for r in report["results"]:
        extra = ""
        if "max_residual" in r:
            extra = f" max_residual={fmt_float(float(r['max_residual']))}"
        if "verdict" in r:
            extra += f" verdict={r['verdict']}"
        label = r.get("check", "?")
        if "target" in r:
            label += f"[{r['target']}]"
        if "ray" in r:
            label += f"[{r['ray']}]"
            extra += f" flat={r.get('flat')} fubini_study={r.get('fubini_study')}"
        lines.append(f"  {label}: {r.get('status', '')}{extra}")
    return "\n".join(lines) + "\n"


def render(report, fmt):
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return results_to_csv(report)
    return to_text(report)
