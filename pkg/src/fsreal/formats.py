"""Strict JSON serialization of instances and witnesses (schema fsreal/1).

Rationals travel as "num/den" strings so files never contain binary floats
for 1D data; curves in R^d use plain JSON numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .model import (
    CellContent,
    Curve1D,
    CurveD,
    FreeSpaceDiagram1D,
    FreeSpaceMatrix,
    PointSeq1D,
    Witness,
    rat,
    rat_str,
    structural_problems,
)
from .generators import SignVectorSet

FORMAT = "fsreal/1"

Instance = Union[FreeSpaceMatrix, FreeSpaceDiagram1D, Witness, SignVectorSet]


class FormatError(ValueError):
    """Raised for malformed files, schema violations, or invalid instances."""


def _check_keys(obj: dict, required: set[str], optional: set[str] = frozenset()) -> None:
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise FormatError(f"missing fields: {sorted(missing)}")
    if unknown:
        raise FormatError(f"unknown fields: {sorted(unknown)}")


def _rat_in(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise FormatError(f"expected a rational string or integer, got {value!r}")
    try:
        return rat(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {value!r}: {exc}") from None


def serialize(instance: Instance) -> str:
    return json.dumps(_to_obj(instance), indent=2) + "\n"


def _to_obj(instance: Instance) -> dict:
    if isinstance(instance, FreeSpaceMatrix):
        return {
            "format": FORMAT,
            "kind": "matrix",
            "rows": instance.n_rows,
            "cols": instance.m_cols,
            "entries": [[int(v) for v in row] for row in instance.entries],
        }
    if isinstance(instance, FreeSpaceDiagram1D):
        cells = []
        for col in instance.cells:
            out_col = []
            for c in col:
                if c.is_partial:
                    out_col.append(
                        {"status": "partial", "sigma": c.sigma, "cLo": rat_str(c.c_lo), "cHi": rat_str(c.c_hi)}
                    )
                else:
                    out_col.append({"status": c.status})
            cells.append(out_col)
        return {
            "format": FORMAT,
            "kind": "diagram1d",
            "epsilon": rat_str(instance.epsilon),
            "colWidths": [rat_str(w) for w in instance.col_widths],
            "rowHeights": [rat_str(h) for h in instance.row_heights],
            "cells": cells,
        }
    if isinstance(instance, Witness):
        return {
            "format": FORMAT,
            "kind": "curves",
            "epsilon": rat_str(instance.epsilon) if isinstance(instance.epsilon, (Fraction, int)) else float(instance.epsilon),
            **_curves_obj(instance.curve_p, instance.curve_q),
        }
    if isinstance(instance, SignVectorSet):
        return {
            "format": FORMAT,
            "kind": "signvectors",
            "vectors": ["".join("+" if x > 0 else "-" for x in v) for v in instance.vectors],
        }
    raise TypeError(f"cannot serialize {type(instance).__name__}")


def _curves_obj(p, q) -> dict:
    if isinstance(p, CurveD):
        return {
            "dimension": p.dimension,
            "curveKind": "points",
            "curveP": [list(v) for v in p.vertices],
            "curveQ": [list(v) for v in q.vertices],
        }
    kind = "polyline" if isinstance(p, Curve1D) else "points"
    pv = p.vertices if isinstance(p, Curve1D) else p.points
    qv = q.vertices if isinstance(q, Curve1D) else q.points
    return {
        "dimension": 1,
        "curveKind": kind,
        "curveP": [rat_str(v) for v in pv],
        "curveQ": [rat_str(v) for v in qv],
    }


def parse(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FormatError("top-level value must be an object")
    if obj.get("format") != FORMAT:
        raise FormatError(f"unsupported format {obj.get('format')!r}; expected {FORMAT}")
    kind = obj.get("kind")
    if kind == "matrix":
        return _parse_matrix(obj)
    if kind == "diagram1d":
        return _parse_diagram(obj)
    if kind == "curves":
        return _parse_curves(obj)
    if kind == "signvectors":
        return _parse_signs(obj)
    raise FormatError(f"unknown instance kind {kind!r}")


def _parse_matrix(obj: dict) -> FreeSpaceMatrix:
    _check_keys(obj, {"format", "kind", "rows", "cols", "entries"})
    entries = obj["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise FormatError("entries must be a list of rows")
    if len(entries) != obj["rows"] or any(len(r) != obj["cols"] for r in entries):
        raise FormatError("entries shape does not match rows/cols")
    for row in entries:
        for v in row:
            if v not in (0, 1) or isinstance(v, bool):
                raise FormatError(f"matrix entries must be 0 or 1, got {v!r}")
    try:
        return FreeSpaceMatrix(entries)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _parse_diagram(obj: dict) -> FreeSpaceDiagram1D:
    _check_keys(obj, {"format", "kind", "epsilon", "colWidths", "rowHeights", "cells"})
    eps = _rat_in(obj["epsilon"])
    widths = [_rat_in(w) for w in obj["colWidths"]]
    heights = [_rat_in(h) for h in obj["rowHeights"]]
    raw = obj["cells"]
    if not isinstance(raw, list) or len(raw) != len(widths):
        raise FormatError("cells must have one column per colWidth")
    cols = []
    for col in raw:
        if not isinstance(col, list) or len(col) != len(heights):
            raise FormatError("each cell column must have one cell per rowHeight")
        out_col = []
        for c in col:
            if not isinstance(c, dict):
                raise FormatError("cells must be objects")
            status = c.get("status")
            if status == "partial":
                _check_keys(c, {"status", "sigma", "cLo", "cHi"})
                if c["sigma"] not in (1, -1):
                    raise FormatError("sigma must be 1 or -1")
                out_col.append(CellContent.partial(c["sigma"], _rat_in(c["cLo"]), _rat_in(c["cHi"])))
            elif status in ("empty", "full"):
                _check_keys(c, {"status"})
                out_col.append(CellContent.empty() if status == "empty" else CellContent.full())
            else:
                raise FormatError(f"unknown cell status {status!r}")
        cols.append(out_col)
    try:
        diagram = FreeSpaceDiagram1D(eps, widths, heights, cols)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    problems = structural_problems(diagram)
    if problems:
        raise FormatError("invalid diagram: " + "; ".join(problems))
    return diagram


def _parse_curves(obj: dict) -> Witness:
    _check_keys(obj, {"format", "kind", "epsilon", "dimension", "curveKind", "curveP", "curveQ"})
    dim = obj["dimension"]
    if dim == 1:
        eps = _rat_in(obj["epsilon"])
        pv = [_rat_in(v) for v in obj["curveP"]]
        qv = [_rat_in(v) for v in obj["curveQ"]]
        try:
            if obj["curveKind"] == "polyline":
                return Witness(Curve1D(pv), Curve1D(qv), eps)
            if obj["curveKind"] == "points":
                return Witness(PointSeq1D(pv), PointSeq1D(qv), eps)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        raise FormatError(f"unknown curveKind {obj['curveKind']!r}")
    if not isinstance(dim, int) or dim < 2:
        raise FormatError("dimension must be 1 or an integer >= 2")
    try:
        eps = float(obj["epsilon"]) if not isinstance(obj["epsilon"], str) else float(rat(obj["epsilon"]))
        return Witness(CurveD(obj["curveP"]), CurveD(obj["curveQ"]), eps)
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from None


def _parse_signs(obj: dict) -> SignVectorSet:
    _check_keys(obj, {"format", "kind", "vectors"})
    rows = obj["vectors"]
    if not isinstance(rows, list) or not all(isinstance(r, str) for r in rows):
        raise FormatError("vectors must be strings over '+'/'-'")
    if any(set(r) - {"+", "-"} for r in rows):
        raise FormatError("vectors must be strings over '+'/'-'")
    try:
        return SignVectorSet.from_strings(rows)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
