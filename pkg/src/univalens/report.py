"""Deterministic JSON and text rendering of analysis reports.

Floats are written with 17 significant digits and complex numbers as
``[re, im]`` pairs; dictionaries keep insertion order, so identical inputs
give byte-identical output.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .algebra import GaussRat
from .common import Infinity


def _float(v: float) -> str:
    if math.isnan(v):
        return '"nan"'
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    text = format(v, ".17g")
    if all(ch not in text for ch in ".en"):
        text += ".0"
    return text


def to_plain(obj: Any) -> Any:
    """Convert report objects into JSON-compatible values (floats kept as floats)."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (GaussRat, Fraction, Infinity)):
        return str(obj)
    if hasattr(obj, "to_json"):
        return to_plain(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    try:
        import numpy as np

        if isinstance(obj, np.generic):
            return to_plain(obj.item())
        if isinstance(obj, np.ndarray):
            return to_plain(obj.tolist())
    except ImportError:  # pragma: no cover
        pass
    return str(obj)


def _emit(v: Any, indent: int, level: int, out: List[str]) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(v, dict):
        if not v:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, val) in enumerate(v.items()):
            out.append(f"{pad}{json.dumps(k)}: ")
            _emit(val, indent, level + 1, out)
            out.append(",\n" if i < len(v) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(v, list):
        if not v:
            out.append("[]")
            return
        if all(not isinstance(x, (dict, list)) for x in v) and len(v) <= 8:
            out.append("[")
            for i, x in enumerate(v):
                _emit(x, indent, level, out)
                if i < len(v) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, x in enumerate(v):
            out.append(pad)
            _emit(x, indent, level + 1, out)
            out.append(",\n" if i < len(v) - 1 else "\n")
        out.append(end + "]")
    elif isinstance(v, float):
        out.append(_float(v))
    else:
        out.append(json.dumps(v))


def dumps(obj: Any, indent: int = 2) -> str:
    out: List[str] = []
    _emit(to_plain(obj), indent, 0, out)
    return "".join(out) + "\n"


@dataclasses.dataclass
class AnalysisReport:
    """A report: the input echo, result sections, and an overall hint."""

    command: str
    inputs: Dict[str, Any]
    sections: Dict[str, Any] = dataclasses.field(default_factory=dict)
    hint: Optional[str] = None
    tolerance: Optional[float] = None
    citations: List[str] = dataclasses.field(default_factory=list)

    def to_json(self) -> dict:
        out: Dict[str, Any] = {"command": self.command, "inputs": self.inputs}
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        out["results"] = self.sections
        if self.hint is not None:
            out["hint"] = self.hint
        if self.citations:
            out["rules"] = self.citations
        return out


HINTS = ("holomorphic", "fibration-preserving", "obstructed")


def format_table(headers, rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(headers)]
    line = "  ".join(str(h).ljust(w) for h, w in zip(headers, widths))
    sep = "  ".join("-" * w for w in widths)
    body = ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join([line, sep] + body)
