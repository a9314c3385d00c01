"""Deterministic JSON/CSV text with 17 significant digit floats."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import fields, is_dataclass

from .distributions import format_number

__all__ = ["dumps", "to_plain", "csv_rows"]


def to_plain(obj):
    """Reduce dataclasses, enums and numpy scalars to JSON-ready builtins."""
    if is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return to_plain(obj.to_dict())
        return {f.name: to_plain(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int) and not hasattr(obj, "dtype"):
        return obj
    if hasattr(obj, "item"):
        return to_plain(obj.item())
    if isinstance(obj, float):
        return obj
    return str(obj)


def _encode(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        # JSON has no nan/inf
        out.append(format_number(obj) if math.isfinite(obj) else "null")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(json.dumps(k))
            out.append(":")
            _encode(v, out)
        out.append("}")
    else:
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _encode(v, out)
        out.append("]")


def dumps(obj) -> str:
    """Compact JSON, floats printed with 17 significant digits."""
    out: list[str] = []
    _encode(to_plain(obj), out)
    return "".join(out)


def csv_rows(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, bool):
                cells.append("true" if v else "false")
            elif isinstance(v, float):
                cells.append(format_number(v))
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
