"""Forward free-space computation: matrices and 1D diagrams from curves,
per-cell ellipse geometry in the plane, and witness verification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .model import (
    Curve1D,
    CurveD,
    FreeSpaceDiagram1D,
    FreeSpaceMatrix,
    PointSeq1D,
    Witness,
    classify_slab,
    rat,
)

TOL = 1e-9

EllipseStatus = str
ELLIPSE_EMPTY = "empty"
ELLIPSE_FULL = "full"
PARTIAL_ELLIPSE = "partial_ellipse"
PARTIAL_SLAB = "partial_slab"


def _point_list(curve) -> list:
    if isinstance(curve, Curve1D):
        return list(curve.vertices)
    if isinstance(curve, PointSeq1D):
        return list(curve.points)
    if isinstance(curve, CurveD):
        return list(curve.vertices)
    return list(curve)


def _is_1d(points: Sequence) -> bool:
    return not isinstance(points[0], (tuple, list, np.ndarray))


def compute_matrix(p, q, eps, tol: float = TOL) -> FreeSpaceMatrix:
    """Free space matrix: entry (i, j) is 1 iff ||p_i - q_j|| <= eps.

    1D inputs (numbers / rationals) are compared exactly; inputs in R^d use
    floats with absolute tolerance ``tol`` on the distance.
    """
    P = _point_list(p)
    Q = _point_list(q)
    if not P or not Q:
        raise ValueError("curves must be non-empty")
    if _is_1d(P) != _is_1d(Q):
        raise ValueError("curves must live in the same dimension")
    if _is_1d(P):
        return _matrix_1d(P, Q, rat(eps))
    d = len(P[0])
    if any(len(v) != d for v in P) or any(len(v) != d for v in Q):
        raise ValueError("curves must live in the same dimension")
    A = np.asarray(P, dtype=float)
    B = np.asarray(Q, dtype=float)
    dist = np.sqrt(((A[:, None, :] - B[None, :, :]) ** 2).sum(axis=2))
    return FreeSpaceMatrix((dist <= float(eps) + tol).astype(np.uint8))


def _matrix_1d(P, Q, eps: Fraction) -> FreeSpaceMatrix:
    pr = [rat(v) for v in P]
    qr = [rat(v) for v in Q]
    scale = 1
    for v in pr + qr + [eps]:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    pi = [v.numerator * (scale // v.denominator) for v in pr]
    qi = [v.numerator * (scale // v.denominator) for v in qr]
    ei = eps.numerator * (scale // eps.denominator)
    bound = max((abs(x) for x in pi + qi + [ei]), default=0)
    if bound < 2**62:
        a = np.asarray(pi, dtype=np.int64)
        b = np.asarray(qi, dtype=np.int64)
        ent = (np.abs(a[:, None] - b[None, :]) <= ei).astype(np.uint8)
        return FreeSpaceMatrix(ent)
    ent = [[1 if abs(x - y) <= ei else 0 for y in qi] for x in pi]
    return FreeSpaceMatrix(ent)


def compute_diagram_1d(p: Curve1D, q: Curve1D, eps) -> FreeSpaceDiagram1D:
    """1D free space diagram of two curves under arc-length parametrization.

    Cell (i, j) is the slab |P_i(x) - Q_j(y)| <= eps classified against the
    cell box; orientation is the product of the two segments' orientations.
    """
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    widths = p.segment_lengths
    heights = q.segment_lengths
    sp = p.orientations
    sq = q.orientations
    cols = []
    for i in range(p.n_segments):
        col = []
        p_start = p.vertices[i]
        for j in range(q.n_segments):
            q_start = q.vertices[j]
            sigma = sp[i] * sq[j]
            c_lo = sq[j] * (p_start - q_start) - eps
            col.append(classify_slab(sigma, c_lo, c_lo + 2 * eps, widths[i], heights[j]))
        cols.append(tuple(col))
    return FreeSpaceDiagram1D(eps, widths, heights, cols)


@dataclass(frozen=True)
class EllipseCell:
    """Free space of one planar segment pair inside its cell.

    For a ``partial_ellipse`` the boundary is an ellipse with axes along the
    +-45 degree diagram directions; ``semi_major >= semi_minor`` and
    ``major_axis_sign`` is +1 when the major axis runs along (1, 1).
    For parallel segments (``partial_slab``) the free space degenerates to a
    slab ``slab_lo <= y - slab_sigma*x <= slab_hi``.
    """

    status: EllipseStatus
    center: Optional[tuple[float, float]] = None
    semi_major: float = 0.0
    semi_minor: float = 0.0
    major_axis_sign: int = 1
    slab_sigma: int = 0
    slab_lo: float = 0.0
    slab_hi: float = 0.0


@dataclass(frozen=True)
class RelativePlacement:
    """Relative placement recovered from a partial ellipse cell.

    ``angle`` is arcsin(eps / (sqrt(2) * a)) for the cell's slab-axis
    half-width a; the enclosed angle between the oriented segments is
    ``2 * angle``. ``dist_p``/``dist_q`` are signed arc-length distances
    from each segment's start vertex to the supporting-line intersection.
    The mirror image (negated enclosed angle) realizes the same cell, so
    ``mirror_ambiguous`` is always True.
    """

    angle: float
    dist_p: float
    dist_q: float
    mirror_ambiguous: bool = True


def _seg_frame(seg) -> tuple[np.ndarray, np.ndarray, float]:
    a = np.asarray(seg[0], dtype=float)
    b = np.asarray(seg[1], dtype=float)
    d = b - a
    length = float(np.linalg.norm(d))
    if length <= TOL:
        raise ValueError("degenerate segment")
    return a, d / length, length


def cell_ellipse_2d(seg_p, seg_q, eps: float, tol: float = TOL) -> EllipseCell:
    """Classify the free space of two planar segments within their cell.

    Segments are ((x, y), (x, y)) pairs. The quadratic distance form is
    minimized/maximized over the cell box exactly (convexity puts the max at
    a corner), with absolute tolerance ``tol``.
    """
    a0, u, lp = _seg_frame(seg_p)
    c0, v, lq = _seg_frame(seg_q)
    eps = float(eps)
    w = a0 - c0
    c = float(np.dot(u, v))

    def f(x: float, y: float) -> float:
        r = w + x * u - y * v
        return float(np.dot(r, r))

    target = eps * eps

    # Extremes of the convex quadratic over the box [0,lp] x [0,lq].
    corners = [f(x, y) for x in (0.0, lp) for y in (0.0, lq)]
    fmax = max(corners)
    fmin = _box_min(f, c, w, u, v, lp, lq)

    if fmin > target + tol:
        return EllipseCell(ELLIPSE_EMPTY)
    if fmax <= target + tol:
        return EllipseCell(ELLIPSE_FULL)

    if abs(abs(c) - 1.0) <= 1e-12:
        # Parallel supporting lines: the sublevel set is a slab.
        s = 1 if c > 0 else -1
        e = float(np.dot(w, u))
        perp = w - e * u
        d0sq = float(np.dot(perp, perp))
        if d0sq > target:
            return EllipseCell(ELLIPSE_EMPTY)
        g = math.sqrt(target - d0sq)
        if s == 1:
            lo, hi = e - g, e + g
        else:
            lo, hi = -e - g, -e + g
        return EllipseCell(PARTIAL_SLAB, slab_sigma=s, slab_lo=lo, slab_hi=hi)

    mat = np.array([[1.0, -c], [-c, 1.0]])
    rhs = np.array([-float(np.dot(w, u)), float(np.dot(w, v))])
    x0, y0 = np.linalg.solve(mat, rhs)
    f0 = f(x0, y0)
    val = target - f0
    if val <= 0:
        return EllipseCell(ELLIPSE_EMPTY)
    a_s = math.sqrt(val / (1.0 - c))  # half-width along (1, 1)
    a_t = math.sqrt(val / (1.0 + c))  # half-width along (-1, 1)
    if a_s >= a_t:
        return EllipseCell(PARTIAL_ELLIPSE, (float(x0), float(y0)), a_s, a_t, 1)
    return EllipseCell(PARTIAL_ELLIPSE, (float(x0), float(y0)), a_t, a_s, -1)


def _box_min(f, c, w, u, v, lp, lq) -> float:
    best = min(f(x, y) for x in (0.0, lp) for y in (0.0, lq))
    den = 1.0 - c * c
    if den > 1e-15:
        mat = np.array([[1.0, -c], [-c, 1.0]])
        rhs = np.array([-float(np.dot(w, u)), float(np.dot(w, v))])
        x0, y0 = np.linalg.solve(mat, rhs)
        if 0.0 <= x0 <= lp and 0.0 <= y0 <= lq:
            best = min(best, f(x0, y0))
    # Edge minima: f restricted to an edge is a 1D quadratic with leading
    # coefficient 1; its vertex clamps to the edge range.
    for x in (0.0, lp):
        y = c * x + float(np.dot(w, v))
        y = min(max(y, 0.0), lq)
        best = min(best, f(x, y))
    for y in (0.0, lq):
        x = c * y - float(np.dot(w, u))
        x = min(max(x, 0.0), lp)
        best = min(best, f(x, y))
    return best


def relative_placement_from_cell(cell: EllipseCell, eps: float, tol: float = TOL) -> RelativePlacement:
    """Invert a partial ellipse cell to the segments' relative placement."""
    if cell.status != PARTIAL_ELLIPSE:
        raise ValueError("relative placement is defined for partial ellipse cells")
    a_eff = cell.semi_major if cell.major_axis_sign == 1 else cell.semi_minor
    arg = float(eps) / (math.sqrt(2.0) * a_eff)
    if arg > 1.0 + tol:
        raise ValueError("inconsistent cell: eps exceeds sqrt(2) * slab-axis half-width")
    angle = math.asin(min(arg, 1.0))
    cx, cy = cell.center if cell.center is not None else (math.nan, math.nan)
    return RelativePlacement(angle=angle, dist_p=cx, dist_q=cy)


def verify_witness_matrix(witness: Witness, matrix: FreeSpaceMatrix) -> bool:
    return compute_matrix(witness.curve_p, witness.curve_q, witness.epsilon) == matrix


def verify_witness_diagram(witness: Witness, diagram: FreeSpaceDiagram1D) -> bool:
    return compute_diagram_1d(witness.curve_p, witness.curve_q, witness.epsilon) == diagram


def verify_witness(witness: Witness, instance: Union[FreeSpaceMatrix, FreeSpaceDiagram1D]) -> bool:
    """True iff forward computation of the witness reproduces the instance."""
    if isinstance(instance, FreeSpaceMatrix):
        return verify_witness_matrix(witness, instance)
    if isinstance(instance, FreeSpaceDiagram1D):
        return verify_witness_diagram(witness, instance)
    raise TypeError(f"cannot verify against {type(instance).__name__}")
