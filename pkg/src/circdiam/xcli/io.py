"""CSV and JSON serialisation of experiment outputs."""

from __future__ import annotations

import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from ..records import EmpiricalDistribution, Histogram

FORMATS = ("csv", "json")


@dataclass(frozen=True, eq=False)
class Table:
    """Named columns of equal length, e.g. a density grid."""

    columns: dict

    def __post_init__(self):
        lens = {len(v) for v in self.columns.values()}
        if len(lens) > 1:
            raise ValidationError(f"columns differ in length: {lens}")


def _cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _columns(obj) -> dict:
    if isinstance(obj, EmpiricalDistribution):
        return {"value": obj.values}
    if isinstance(obj, Histogram):
        return {"bin_lo": obj.bin_edges[:-1], "bin_hi": obj.bin_edges[1:], "mass": obj.masses}
    if isinstance(obj, Table):
        return obj.columns
    raise ValidationError(f"cannot serialise {type(obj).__name__}")


def to_csv(obj) -> str:
    cols = _columns(obj)
    buf = io.StringIO(newline="")
    buf.write(",".join(cols) + "\n")
    for row in zip(*cols.values()):
        buf.write(",".join(_cell(x) for x in row) + "\n")
    return buf.getvalue()


def to_json(obj) -> str:
    if isinstance(obj, EmpiricalDistribution):
        doc = {"type": "empirical", "values": obj.values, "meta": obj.meta}
    elif isinstance(obj, Histogram):
        doc = {"type": "histogram", "bin_edges": obj.bin_edges, "masses": obj.masses}
    elif isinstance(obj, Table):
        doc = {"type": "table", "columns": obj.columns}
    else:
        raise ValidationError(f"cannot serialise {type(obj).__name__}")
    return json.dumps(_jsonable(doc), indent=1) + "\n"


def from_json(text: str):
    doc = json.loads(text)
    kind = doc.get("type")
    if kind == "empirical":
        return EmpiricalDistribution(np.array(doc["values"], dtype=float), doc["meta"])
    if kind == "histogram":
        return Histogram(np.array(doc["bin_edges"]), np.array(doc["masses"]))
    if kind == "table":
        return Table(doc["columns"])
    raise ValidationError(f"unknown document type {kind!r}")


def emit(obj, fmt: str = "csv", path=None) -> str:
    """Serialise ``obj`` and write it to ``path`` (stdout when None); returns the text."""
    if fmt not in FORMATS:
        raise ValidationError(f"format must be one of {FORMATS}, got {fmt!r}")
    text = to_csv(obj) if fmt == "csv" else to_json(obj)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    return text
