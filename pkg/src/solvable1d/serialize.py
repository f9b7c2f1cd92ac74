"""Deterministic JSON/CSV emission.

Floats are always printed as 17-significant-digit scientific notation so
that repeated runs produce byte-identical files; the stdlib json module
is only used for string escaping.
"""

from __future__ import annotations

import json
import math

import numpy as np


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} has no canonical form")
    return format(x, ".16e")


def _scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _emit(v, out: list, level: int) -> None:
    pad = "  " * level
    inner = "  " * (level + 1)
    if isinstance(v, dict):
        if not v:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, item) in enumerate(v.items()):
            out.append(f"{inner}{json.dumps(str(k))}: ")
            _emit(item, out, level + 1)
            out.append(",\n" if i < len(v) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(v, (list, tuple, np.ndarray)):
        items = list(v)
        if not items:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(items):
            out.append(inner)
            _emit(item, out, level + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "]")
    else:
        out.append(_scalar(v))


def canonical_json(obj) -> str:
    out: list = []
    _emit(obj, out, 0)
    out.append("\n")
    return "".join(out)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    s = str(v)
    if any(c in s for c in ',"\n'):
        s = '"' + s.replace('"', '""') + '"'
    return s


def csv_text(fieldnames: list[str], rows: list[dict]) -> str:
    lines = [",".join(fieldnames)]
    for row in rows:
        lines.append(",".join(_csv_cell(row.get(f)) for f in fieldnames))
    return "\n".join(lines) + "\n"
