"""Exact domain types shared by all solvers.

All 1D combinatorial data (coordinates, epsilon, cell dimensions, slab
intercepts) is carried as `fractions.Fraction`; geometry in dimension >= 2
lives in floats and is handled in :mod:`fsreal.forward`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

Rational = Fraction
RationalLike = Union[Fraction, int, str]

EMPTY = "empty"
FULL = "full"
PARTIAL = "partial"


def rat(value: RationalLike) -> Fraction:
    """Parse a rational from an int, Fraction, or a "num/den" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(q: Fraction) -> str:
    """Render a rational as "num" or "num/den" (canonical reduced form)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _as_rationals(values: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(rat(v) for v in values)


@dataclass(frozen=True)
class Curve1D:
    """Polygonal curve on the line: >= 2 vertices, no zero-length segments."""

    vertices: tuple[Fraction, ...]

    def __init__(self, vertices: Iterable[RationalLike]):
        object.__setattr__(self, "vertices", _as_rationals(vertices))
        if len(self.vertices) < 2:
            raise ValueError("a 1D curve needs at least two vertices")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise ValueError("consecutive curve vertices must be distinct")

    @property
    def n_segments(self) -> int:
        return len(self.vertices) - 1

    @property
    def segment_lengths(self) -> tuple[Fraction, ...]:
        return tuple(abs(b - a) for a, b in zip(self.vertices, self.vertices[1:]))

    @property
    def orientations(self) -> tuple[int, ...]:
        return tuple(1 if b > a else -1 for a, b in zip(self.vertices, self.vertices[1:]))

    def folds_at(self, i: int) -> bool:
        """True iff the curve reverses direction at interior vertex ``i``."""
        if not 1 <= i <= self.n_segments - 1:
            raise IndexError("folding is defined at interior vertices only")
        o = self.orientations
        return o[i - 1] != o[i]

    @property
    def low(self) -> Fraction:
        return min(self.vertices)

    @property
    def high(self) -> Fraction:
        return max(self.vertices)

    @property
    def span(self) -> Fraction:
        return self.high - self.low


@dataclass(frozen=True)
class PointSeq1D:
    """Discrete curve on the line: an ordered point sequence, repeats allowed."""

    points: tuple[Fraction, ...]

    def __init__(self, points: Iterable[RationalLike]):
        object.__setattr__(self, "points", _as_rationals(points))
        if not self.points:
            raise ValueError("a point sequence needs at least one point")

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class CurveD:
    """Point sequence in R^d, d >= 2, real-valued coordinates."""

    vertices: tuple[tuple[float, ...], ...]

    def __init__(self, vertices: Iterable[Sequence[float]]):
        vtx = tuple(tuple(float(x) for x in v) for v in vertices)
        object.__setattr__(self, "vertices", vtx)
        if not vtx:
            raise ValueError("a curve needs at least one vertex")
        d = len(vtx[0])
        if d < 2:
            raise ValueError("CurveD is for dimension >= 2; use Curve1D/PointSeq1D on the line")
        if any(len(v) != d for v in vtx):
            raise ValueError("all vertices must share one dimension")

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])


@dataclass(frozen=True)
class CellContent:
    """One diagram cell: empty, full, or a +-45 degree slab (partial).

    For a partial cell the white set in cell-local coordinates is
    ``{(x, y) : c_lo <= y - sigma*x <= c_hi}`` with ``c_hi - c_lo = 2*eps``.
    """

    status: str
    sigma: int = 0
    c_lo: Optional[Fraction] = None
    c_hi: Optional[Fraction] = None

    @staticmethod
    def empty() -> "CellContent":
        return CellContent(EMPTY)

    @staticmethod
    def full() -> "CellContent":
        return CellContent(FULL)

    @staticmethod
    def partial(sigma: int, c_lo: RationalLike, c_hi: RationalLike) -> "CellContent":
        if sigma not in (1, -1):
            raise ValueError("slab orientation must be +1 or -1")
        return CellContent(PARTIAL, sigma, rat(c_lo), rat(c_hi))

    @property
    def is_partial(self) -> bool:
        return self.status == PARTIAL


def slab_value_range(sigma: int, w: Fraction, h: Fraction) -> tuple[Fraction, Fraction]:
    """Range of y - sigma*x over the cell box [0,w] x [0,h]."""
    if sigma == 1:
        return -w, h
    return Fraction(0), w + h


def classify_slab(sigma: int, c_lo: Fraction, c_hi: Fraction, w: Fraction, h: Fraction) -> CellContent:
    """Classify the slab's intersection with a w x h box (closed sets)."""
    vmin, vmax = slab_value_range(sigma, w, h)
    if c_lo > vmax or c_hi < vmin:
        return CellContent.empty()
    if c_lo <= vmin and c_hi >= vmax:
        return CellContent.full()
    return CellContent(PARTIAL, sigma, c_lo, c_hi)


def cell_restrict_x(cell: CellContent, w: Fraction, h: Fraction, x0: Fraction, x1: Fraction) -> CellContent:
    """Cell content restricted to x in [x0, x1], re-based to [0, x1-x0]."""
    if cell.status != PARTIAL:
        return cell
    # y - sigma*(x0 + x') = (y - sigma*x') - sigma*x0
    lo = cell.c_lo + cell.sigma * x0
    hi = cell.c_hi + cell.sigma * x0
    return classify_slab(cell.sigma, lo, hi, x1 - x0, h)


def cell_restrict_y(cell: CellContent, w: Fraction, h: Fraction, y0: Fraction, y1: Fraction) -> CellContent:
    """Cell content restricted to y in [y0, y1], re-based to [0, y1-y0]."""
    if cell.status != PARTIAL:
        return cell
    lo = cell.c_lo - y0
    hi = cell.c_hi - y0
    return classify_slab(cell.sigma, lo, hi, w, y1 - y0)


def cell_mirror_x(cell: CellContent, w: Fraction, h: Fraction) -> CellContent:
    """Cell content under the reflection x -> w - x."""
    if cell.status != PARTIAL:
        return cell
    # y - sigma*(w - x) = (y + sigma*x) - sigma*w
    lo = cell.c_lo + cell.sigma * w
    hi = cell.c_hi + cell.sigma * w
    return classify_slab(-cell.sigma, lo, hi, w, h)


def cell_transpose(cell: CellContent) -> CellContent:
    """Cell content with the x and y axes swapped."""
    if cell.status != PARTIAL:
        return cell
    if cell.sigma == -1:
        return cell
    # x - y in [lo, hi]  <=>  y - x in [-hi, -lo]
    return CellContent(PARTIAL, 1, -cell.c_hi, -cell.c_lo)


def cell_edge_interval(
    cell: CellContent, w: Fraction, h: Fraction, edge: str
) -> Optional[tuple[Fraction, Fraction]]:
    """Closed white interval on one cell edge, or None if empty.

    Edges: 'L'/'R' return a y-interval at x = 0 / x = w; 'B'/'T' return an
    x-interval at y = 0 / y = h.
    """
    if cell.status == EMPTY:
        return None
    if cell.status == FULL:
        return (Fraction(0), h) if edge in ("L", "R") else (Fraction(0), w)
    s, lo, hi = cell.sigma, cell.c_lo, cell.c_hi
    if edge == "L":
        a, b, cap = lo, hi, h
    elif edge == "R":
        a, b, cap = lo + s * w, hi + s * w, h
    elif edge == "B":
        if s == 1:
            a, b = -hi, -lo
        else:
            a, b = lo, hi
        cap = w
    elif edge == "T":
        if s == 1:
            a, b = h - hi, h - lo
        else:
            a, b = lo - h, hi - h
        cap = w
    else:
        raise ValueError(f"unknown edge {edge!r}")
    a2, b2 = max(a, Fraction(0)), min(b, cap)
    if a2 > b2:
        return None
    return a2, b2


class FreeSpaceMatrix:
    """Boolean n x m matrix; rows index P points, columns index Q points."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("matrix must be two-dimensional and non-empty")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("matrix entries must be 0 or 1")
        arr = arr.copy()
        arr.flags.writeable = False
        self.entries = arr

    @property
    def n_rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def m_cols(self) -> int:
        return int(self.entries.shape[1])

    def row_sets(self) -> list[frozenset[int]]:
        return [frozenset(np.nonzero(r)[0].tolist()) for r in self.entries]

    def __eq__(self, other) -> bool:
        if isinstance(other, FreeSpaceMatrix):
            return np.array_equal(self.entries, other.entries)
        return NotImplemented

    def __hash__(self):
        return hash((self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        rows = ["".join(str(int(v)) for v in r) for r in self.entries]
        return f"FreeSpaceMatrix([{', '.join(rows)}])"


@dataclass(frozen=True)
class FreeSpaceDiagram1D:
    """Cell grid of a 1D free space diagram; ``cells[i][j]`` pairs the i-th
    P segment (column, width ``col_widths[i]``) with the j-th Q segment
    (row, height ``row_heights[j]``)."""

    epsilon: Fraction
    col_widths: tuple[Fraction, ...]
    row_heights: tuple[Fraction, ...]
    cells: tuple[tuple[CellContent, ...], ...]

    def __init__(self, epsilon, col_widths, row_heights, cells):
        object.__setattr__(self, "epsilon", rat(epsilon))
        object.__setattr__(self, "col_widths", _as_rationals(col_widths))
        object.__setattr__(self, "row_heights", _as_rationals(row_heights))
        object.__setattr__(self, "cells", tuple(tuple(col) for col in cells))

    @property
    def n_cols(self) -> int:
        return len(self.col_widths)

    @property
    def m_rows(self) -> int:
        return len(self.row_heights)

    def cell(self, i: int, j: int) -> CellContent:
        return self.cells[i][j]


@dataclass(frozen=True)
class ArrangementCell:
    """Maximal interval of the line with a constant covering set."""

    lo: Fraction
    hi: Fraction
    cover: frozenset[int]
    representative: Fraction


@dataclass(frozen=True)
class UnitIntervalArrangement:
    """Intervals [q_j - eps, q_j + eps] around ordered positions q_j."""

    positions: tuple[Fraction, ...]
    radius: Fraction

    def __init__(self, positions, radius):
        object.__setattr__(self, "positions", _as_rationals(positions))
        object.__setattr__(self, "radius", rat(radius))
        if self.radius <= 0:
            raise ValueError("interval radius must be positive")
        if any(a > b for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("positions must be nondecreasing")

    def cover_at(self, x: Fraction) -> frozenset[int]:
        e = self.radius
        return frozenset(j for j, q in enumerate(self.positions) if q - e <= x <= q + e)

    def cells(self) -> list[ArrangementCell]:
        """Maximal constant-cover regions over the covered range, plus the two
        outside cells. Degenerate single-point regions are included."""
        if not self.positions:
            return []
        e = self.radius
        events = sorted({q - e for q in self.positions} | {q + e for q in self.positions})
        out: list[ArrangementCell] = []
        lo0 = events[0]
        out.append(ArrangementCell(lo0 - 2, lo0, frozenset(), lo0 - 1))
        for idx, x in enumerate(events):
            out.append(ArrangementCell(x, x, self.cover_at(x), x))
            if idx + 1 < len(events):
                y = events[idx + 1]
                mid = (x + y) / 2
                out.append(ArrangementCell(x, y, self.cover_at(mid), mid))
        hi0 = events[-1]
        out.append(ArrangementCell(hi0, hi0 + 2, frozenset(), hi0 + 1))
        return out


@dataclass(frozen=True)
class Witness:
    """Curves certifying a YES answer; forward computation reproduces the
    instance exactly."""

    curve_p: Union[Curve1D, PointSeq1D, CurveD]
    curve_q: Union[Curve1D, PointSeq1D, CurveD]
    epsilon: Fraction

    def __init__(self, curve_p, curve_q, epsilon):
        object.__setattr__(self, "curve_p", curve_p)
        object.__setattr__(self, "curve_q", curve_q)
        object.__setattr__(self, "epsilon", rat(epsilon) if not isinstance(epsilon, float) else epsilon)


def validate_diagram(d: FreeSpaceDiagram1D) -> list[str]:
    """Check all diagram invariants; returns a list of violations (empty = valid)."""
    problems = structural_problems(d)
    if problems:
        return problems
    return consistency_problems(d)


def structural_problems(d: FreeSpaceDiagram1D) -> list[str]:
    """Shape and per-cell invariants; violations mean malformed data."""
    problems: list[str] = []
    eps = d.epsilon
    if eps <= 0:
        problems.append("epsilon must be positive")
    if len(d.cells) != d.n_cols:
        problems.append("cell grid width does not match colWidths")
        return problems
    if any(len(col) != d.m_rows for col in d.cells):
        problems.append("cell grid height does not match rowHeights")
        return problems
    for i, w in enumerate(d.col_widths):
        if w <= 0:
            problems.append(f"column {i}: width must be positive")
    for j, h in enumerate(d.row_heights):
        if h <= 0:
            problems.append(f"row {j}: height must be positive")
    if problems:
        return problems

    for i in range(d.n_cols):
        w = d.col_widths[i]
        for j in range(d.m_rows):
            h = d.row_heights[j]
            c = d.cells[i][j]
            if c.status not in (EMPTY, FULL, PARTIAL):
                problems.append(f"cell ({i},{j}): unknown status {c.status!r}")
                continue
            if c.status != PARTIAL:
                continue
            if c.sigma not in (1, -1):
                problems.append(f"cell ({i},{j}): slab orientation must be +1 or -1")
                continue
            if c.c_hi - c.c_lo != 2 * eps:
                problems.append(f"cell ({i},{j}): slab width != 2*eps")
                continue
            vmin, vmax = slab_value_range(c.sigma, w, h)
            if c.c_lo > vmax or c.c_hi < vmin:
                problems.append(f"cell ({i},{j}): white set empty")
            elif c.c_lo <= vmin and c.c_hi >= vmax:
                problems.append(f"cell ({i},{j}): slab covers the whole cell")
    return problems


def consistency_problems(d: FreeSpaceDiagram1D) -> list[str]:
    """Shared-boundary agreement: the white set restricted to a grid line must
    be identical computed from either adjacent cell. A well-formed diagram
    violating this is never realizable (forward computation always agrees),
    so solvers answer NO instead of rejecting it."""
    problems: list[str] = []
    # White space restricted to a shared grid line must agree from both sides.
    for j in range(d.m_rows):
        h = d.row_heights[j]
        for i in range(d.n_cols - 1):
            left = cell_edge_interval(d.cells[i][j], d.col_widths[i], h, "R")
            right = cell_edge_interval(d.cells[i + 1][j], d.col_widths[i + 1], h, "L")
            if left != right:
                problems.append(f"grid line between columns {i},{i + 1} at row {j}: white sets disagree")
    for i in range(d.n_cols):
        w = d.col_widths[i]
        for j in range(d.m_rows - 1):
            below = cell_edge_interval(d.cells[i][j], w, d.row_heights[j], "T")
            above = cell_edge_interval(d.cells[i][j + 1], w, d.row_heights[j + 1], "B")
            if below != above:
                problems.append(f"grid line between rows {j},{j + 1} at column {i}: white sets disagree")
    return problems
