"""JSON and CSV rendering of experiment reports.

Numbers that are not integers are written with 12 significant digits; exact
rationals become floats at that precision.  Key order follows the report's
own ``to_dict`` so output is byte-stable.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

FORMATS = ("json", "csv")


def _number(x):
    if isinstance(x, bool) or isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    f = float(x)
    if math.isinf(f) or math.isnan(f):
        return str(f)
    return float(format(f, ".12g"))


def normalize(obj):
    """Plain JSON-compatible structure with numbers rounded as documented."""
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return normalize(obj.to_dict())
    if isinstance(obj, (int, float, Fraction)) or hasattr(obj, "__float__"):
        return _number(obj)
    return str(obj)


def _cell(x) -> str:
    if x is None:
        return ""
    v = normalize(x)
    if isinstance(v, float):
        return format(v, ".12g")
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _table(report):
    if hasattr(report, "table"):
        return report.table()
    d = report.to_dict() if hasattr(report, "to_dict") else dict(report)
    header = tuple(d)
    return header, ([tuple(d[k] for k in header)] if d else [])


def emit_report(report, fmt: str = "json") -> str:
    """Render ``report`` (an object with ``to_dict``/``table`` or a dict)."""
    if fmt == "json":
        return json.dumps(normalize(report), indent=2) + "\n"
    if fmt == "csv":
        header, rows = _table(report)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(x) for x in row])
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}; expected one of {FORMATS}")
