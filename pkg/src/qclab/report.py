"""Deterministic report serialization.

Reports must replay byte-for-byte, so JSON is emitted by a small
deterministic writer: keys sorted, floats at 17 significant digits,
no locale or dict-order dependence.  Writes go through a temp file and an
atomic rename so partial results never land on disk.
"""

from __future__ import annotations

import os
import re
import tempfile

import numpy as np

from .errors import IoError


def format_float(value: float) -> str:
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError("reports must not contain NaN or infinities")
    text = format(value, ".17g")
    # ensure the token stays a JSON number with a float shape
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def _escape(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def json_dumps(obj, indent: int = 0) -> str:
    pieces: list[str] = []
    _write(obj, pieces, indent, 0)
    return "".join(pieces)


def _write(obj, pieces: list[str], indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1)) if indent else ""
    close_pad = " " * (indent * level) if indent else ""
    nl = "\n" if indent else ""
    if obj is None:
        pieces.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        pieces.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        pieces.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        pieces.append(format_float(float(obj)))
    elif isinstance(obj, str):
        pieces.append(_escape(obj))
    elif isinstance(obj, np.ndarray):
        _write(obj.tolist(), pieces, indent, level)
    elif isinstance(obj, dict):
        if not obj:
            pieces.append("{}")
            return
        pieces.append("{" + nl)
        keys = sorted(str(k) for k in obj)
        lookup = {str(k): v for k, v in obj.items()}
        for i, key in enumerate(keys):
            pieces.append(pad + _escape(key) + ": ")
            _write(lookup[key], pieces, indent, level + 1)
            pieces.append(("," if i + 1 < len(keys) else "") + nl)
        pieces.append(close_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            pieces.append("[]")
            return
        pieces.append("[" + nl)
        for i, item in enumerate(obj):
            pieces.append(pad)
            _write(item, pieces, indent, level + 1)
            pieces.append(("," if i + 1 < len(obj) else "") + nl)
        pieces.append(close_pad + "]")
    elif isinstance(obj, complex):
        _write({"re": obj.real, "im": obj.imag}, pieces, indent, level)
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def to_jsonl(records: list[dict]) -> str:
    return "\n".join(json_dumps(r) for r in records) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def csv_render(records: list[dict]) -> str:
    """Header row plus one row per record (union of keys, sorted)."""
    columns: list[str] = sorted({str(k) for record in records for k in record})
    lines = [",".join(columns)]
    for record in records:
        lines.append(",".join(_csv_cell(record.get(col)) for col in columns))
    return "\n".join(lines) + "\n"


def atomic_write_text(path: str, content: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qclab-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(content)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


_WALL_TIME = re.compile(r'"wall_time": [0-9.eE+-]+')


def strip_wall_time(report_json: str) -> str:
    """Replay comparisons ignore the timing field."""
    return _WALL_TIME.sub('"wall_time": 0', report_json)
