"""Deterministic JSON/CSV emission.

Reports must be byte-identical across runs for identical inputs, so
floats are always rendered with 17 significant digits and dict key
order is preserved exactly as built (never re-sorted here).
"""

from __future__ import annotations

import os
import tempfile

__all__ = ["format_float", "format_json", "write_atomic", "format_csv"]


def format_float(x: float) -> str:
    """17 significant digits; round-trips any finite double."""
    x = float(x)
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite value {x} cannot be serialized")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".17g")


def _escape(s: str) -> str:
    out = []
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return "".join(out)


def _emit(obj, parts: list, indent: int, cur: int):
    pad = " " * (cur + indent)
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(format_float(obj))
    elif isinstance(obj, str):
        parts.append(f'"{_escape(obj)}"')
    elif isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        parts.append("{\n")
        for i, (key, val) in enumerate(obj.items()):
            parts.append(f'{pad}"{_escape(str(key))}": ')
            _emit(val, parts, indent, cur + indent)
            parts.append(",\n" if i + 1 < len(obj) else "\n")
        parts.append(" " * cur + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            parts.append("[]")
            return
        parts.append("[\n")
        for i, val in enumerate(obj):
            parts.append(pad)
            _emit(val, parts, indent, cur + indent)
            parts.append(",\n" if i + 1 < len(obj) else "\n")
        parts.append(" " * cur + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def format_json(obj, indent: int = 2) -> str:
    """Serialize with fixed float formatting and preserved key order."""
    parts: list[str] = []
    _emit(obj, parts, indent, 0)
    parts.append("\n")
    return "".join(parts)


def format_csv(header: list[str], rows: list[list]) -> str:
    """Flat CSV with the same 17-digit float policy."""
    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return format_float(v)
        text = str(v)
        if any(ch in text for ch in ',"\n'):
            text = '"' + text.replace('"', '""') + '"'
        return text

    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell(v) for v in row))
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str):
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
