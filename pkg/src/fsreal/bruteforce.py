"""Brute-force realizability oracles used to validate the main solvers.

Both oracles enumerate finite combinatorial classes and check candidates with
the forward computation only; they share no code with the solvers they test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .model import (
    FULL,
    PARTIAL,
    Curve1D,
    FreeSpaceDiagram1D,
    FreeSpaceMatrix,
    PointSeq1D,
    UnitIntervalArrangement,
    Witness,
)
from .forward import compute_diagram_1d, compute_matrix

DISCRETE_CAP = 6
CONTINUOUS_CAP = 20


def _interleavings(m: int) -> list[tuple[int, ...]]:
    """Endpoint patterns of m equal-length intervals with left endpoints in
    index order: pattern[i] = number of left endpoints at or before the i-th
    right endpoint. Valid patterns are nondecreasing with pattern[i] >= i+1."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int]):
        i = len(prefix)
        if i == m:
            out.append(tuple(prefix))
            return
        lo = max(i + 1, prefix[-1] if prefix else 1)
        for c in range(lo, m + 1):
            prefix.append(c)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


def _materialize(pattern: tuple[int, ...], m: int) -> Optional[list[Fraction]]:
    """Left endpoints (length-1 intervals, eps = 1/2) realizing a pattern with
    all 2m endpoints distinct. Solved as longest paths over the chain of
    merged events with spacing quantum 1/(4m)."""
    events: list[tuple[str, int]] = []
    by_slot: dict[int, list[int]] = {}
    for i, c in enumerate(pattern):
        by_slot.setdefault(c - 1, []).append(i)
    for j in range(m):
        events.append(("l", j))
        for i in by_slot.get(j, []):
            events.append(("r", i))
    delta = Fraction(1, 4 * m)
    # positions: l_j variables; r_i = l_i + 1. Longest-path over the event chain.
    pos = [Fraction(0)] * m
    for _ in range(2 * m + 1):
        changed = False
        prev_val = None
        for kind, idx in events:
            val = pos[idx] + (1 if kind == "r" else 0)
            if prev_val is not None and val < prev_val + delta:
                need = prev_val + delta
                if kind == "l":
                    pos[idx] = need
                else:
                    pos[idx] = need - 1
                val = need
                changed = True
            prev_val = val
        if not changed:
            break
    else:
        return None
    # sanity: chain strictly increasing
    prev_val = None
    for kind, idx in events:
        val = pos[idx] + (1 if kind == "r" else 0)
        if prev_val is not None and val < prev_val + delta:
            return None
        prev_val = val
    return pos


@lru_cache(maxsize=None)
def arrangements(m: int) -> tuple[tuple[tuple[Fraction, ...], tuple[tuple[frozenset, Fraction], ...]], ...]:
    """All combinatorial classes of m unit intervals: (centers per column,
    (cover set, representative point) list). Columns are assigned to sorted
    slots in every permutation."""
    eps = Fraction(1, 2)
    out = []
    for pattern in _interleavings(m):
        left = _materialize(pattern, m)
        if left is None:  # spacing quantum always suffices; defensive only
            continue
        centers_sorted = [l + eps for l in left]
        arr = UnitIntervalArrangement(centers_sorted, eps)
        base_cells = [(c.cover, c.representative) for c in arr.cells()]
        for perm in itertools.permutations(range(m)):
            # perm[k] = column placed at sorted slot k
            centers = [Fraction(0)] * m
            for slot, col in enumerate(perm):
                centers[col] = centers_sorted[slot]
            cells = tuple(
                (frozenset(perm[k] for k in cover), rep) for cover, rep in base_cells
            )
            out.append((tuple(centers), cells))
    return tuple(out)


def realizable_row_families(m: int) -> list[frozenset[frozenset[int]]]:
    """Distinct families of point-cover sets achievable by m unit intervals.

    A matrix with m columns is realizable iff the set of its row supports is
    contained in one of these families (the empty support is always
    achievable outside the arrangement).
    """
    families = set()
    for _, cells in arrangements(m):
        families.add(frozenset(cover for cover, _ in cells) | {frozenset()})
    return sorted(families, key=lambda fam: (len(fam), sorted(map(sorted, fam))))


def brute_force_discrete_1d(matrix: FreeSpaceMatrix, cap: int = DISCRETE_CAP) -> Optional[Witness]:
    """Exhaustive oracle for discrete 1D realizability (m <= cap columns).

    Enumerates every combinatorial class of interval-endpoint orders, checks
    that each row's prescribed cell exists, and places P points at cell
    representatives. The returned witness is verified by compute_matrix.
    """
    m = matrix.m_cols
    if m > cap:
        raise ValueError(f"brute force capped at {cap} columns (got {m})")
    rows = matrix.row_sets()
    for centers, cells in arrangements(m):
        cover_map: dict[frozenset, Fraction] = {}
        for cover, rep in cells:
            cover_map.setdefault(cover, rep)
        cover_map.setdefault(frozenset(), min(centers) - 2)
        placement = []
        for row in rows:
            rep = cover_map.get(row)
            if rep is None:
                break
            placement.append(rep)
        else:
            witness = Witness(PointSeq1D(placement), PointSeq1D(centers), Fraction(1, 2))
            if compute_matrix(witness.curve_p, witness.curve_q, witness.epsilon) == matrix:
                return witness
    return None


def _orientation_vectors(n_free: int):
    for bits in range(1 << n_free):
        yield [1 if (bits >> k) & 1 == 0 else -1 for k in range(n_free)]


def brute_force_continuous_1d(diagram: FreeSpaceDiagram1D, cap: int = CONTINUOUS_CAP) -> Optional[Witness]:
    """Exhaustive oracle for continuous 1D realizability (n+m segments <= cap).

    Enumerates segment orientation vectors (P's first segment fixed positive;
    all of Q's free, covering both mirror classes), fixes the inter-curve
    offset from the first partial cell, recomputes the diagram, and compares
    it cell-exactly.
    """
    n = diagram.n_cols
    m = diagram.m_rows
    if n + m > cap:
        raise ValueError(f"brute force capped at {cap} segments (got {n + m})")
    eps = diagram.epsilon
    widths = diagram.col_widths
    heights = diagram.row_heights

    partials = [
        (i, j)
        for i in range(n)
        for j in range(m)
        if diagram.cells[i][j].status == PARTIAL
    ]

    if not partials:
        any_full = any(diagram.cells[i][j].status == FULL for i in range(n) for j in range(m))
        if not any_full:
            # all empty: any orientations, curves far apart
            p_pts = _curve_points(Fraction(0), [1] * n, widths)
            span_p = max(p_pts) - min(p_pts)
            span_q = sum(heights)
            q0 = min(p_pts) + span_p + span_q + 2 * eps + 1
            q_pts = _curve_points(q0, [1] * m, heights)
            witness = Witness(Curve1D(p_pts), Curve1D(q_pts), eps)
            if compute_diagram_1d(witness.curve_p, witness.curve_q, eps) == diagram:
                return witness
            return None
        # all full: folding may be needed to shrink the spans; center each
        # orientation combination on the other curve
        for q_bits in _orientation_vectors(m):
            for p_bits in _orientation_vectors(n - 1):
                sp = [1] + p_bits
                p_pts = _curve_points(Fraction(0), sp, widths)
                q_rel = _curve_points(Fraction(0), q_bits, heights)
                q0 = (max(p_pts) + min(p_pts)) / 2 - (max(q_rel) + min(q_rel)) / 2
                q_pts = [q0 + v for v in q_rel]
                witness = Witness(Curve1D(p_pts), Curve1D(q_pts), eps)
                if compute_diagram_1d(witness.curve_p, witness.curve_q, eps) == diagram:
                    return witness
        return None

    i0, j0 = partials[0]
    cell0 = diagram.cells[i0][j0]
    for q_bits in _orientation_vectors(m):
        sq = q_bits
        for p_bits in _orientation_vectors(n - 1):
            sp = [1] + p_bits
            ok = True
            for (i, j) in partials:
                if sp[i] * sq[j] != diagram.cells[i][j].sigma:
                    ok = False
                    break
            if not ok:
                continue
            # c_lo = sq_j * (Pstart_i - Qstart_j) - eps fixes the offset.
            pre_p = _prefix(sp, widths, i0)
            pre_q = _prefix(sq, heights, j0)
            q0 = pre_p - sq[j0] * (cell0.c_lo + eps) - pre_q
            p_pts = _curve_points(Fraction(0), sp, widths)
            q_pts = _curve_points(q0, sq, heights)
            witness = Witness(Curve1D(p_pts), Curve1D(q_pts), eps)
            if compute_diagram_1d(witness.curve_p, witness.curve_q, eps) == diagram:
                return witness
    return None


def _prefix(orient, lengths, k: int) -> Fraction:
    total = Fraction(0)
    for t in range(k):
        total += orient[t] * lengths[t]
    return total


def _curve_points(start: Fraction, orient, lengths) -> list[Fraction]:
    pts = [start]
    for s, w in zip(orient, lengths):
        pts.append(pts[-1] + s * w)
    return pts
