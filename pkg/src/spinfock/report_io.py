"""Byte-stable report rendering.

Floating-point values are printed with up to 17 significant digits (%.17g),
which round-trips float64 exactly, in both the JSON and CSV renderers. Key
order is insertion order, so identical documents render to identical bytes.
"""

from __future__ import annotations

import json
import math

from .errors import NumericError


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise NumericError(f"non-finite value in report: {x}")
    return "%.17g" % x


def _render_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"unsupported report value {value!r}")


def render_json(doc, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        parts = [f"{inner}{json.dumps(str(k))}: {render_json(v, indent + 1)}" for k, v in doc.items()]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(doc, (list, tuple)):
        if not doc:
            return "[]"
        parts = [f"{inner}{render_json(v, indent + 1)}" for v in doc]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    return _render_value(doc)


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, int):
        return str(value)
    text = str(value)
    if any(ch in text for ch in ",\"\n"):
        text = '"' + text.replace('"', '""') + '"'
    return text


def _flatten_config_value(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_csv_cell(v) for v in value)
    if value is None:
        return ""
    return _csv_cell(value)


def render_csv(config: dict, fieldnames, rows, extra: dict | None = None) -> str:
    lines = [f"# {key}={_flatten_config_value(value)}" for key, value in config.items()]
    if extra:
        lines += [f"# {key}={_flatten_config_value(value)}" for key, value in extra.items()]
    lines.append(",".join(fieldnames))
    for row in rows:
        lines.append(",".join(_csv_cell(row[name]) for name in fieldnames))
    return "\n".join(lines) + "\n"
