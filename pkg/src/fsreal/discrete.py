"""Polynomial-time realizability of a free space matrix by curves on the line.

Pipeline per connected component of the derived unit-interval graph:
anchored BFS ordering, two order refinements, a greedy unit-interval
arrangement, and verification that every row's prescribed cell exists.
Every YES answer carries a witness reproducing the matrix exactly.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .model import FreeSpaceMatrix, PointSeq1D, Witness, rat
from .forward import compute_matrix

_NUMPY_UIG_THRESHOLD = 64 * 64


class UnitIntervalGraph:
    """Columns of the matrix as vertices; rows contribute cliques.

    Adjacency is kept both ways the algorithm needs it: per-vertex bitmasks
    (python ints) for set algebra, built via BLAS for large matrices.
    """

    __slots__ = ("m", "adj", "row_masks")

    def __init__(self, m: int, adj: list[int], row_masks: list[int]):
        self.m = m
        self.adj = adj
        self.row_masks = row_masks

    def closed(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for v in range(self.m):
            if seen >> v & 1:
                continue
            frontier = 1 << v
            comp = frontier
            while frontier:
                nxt = 0
                u = frontier
                while u:
                    w = (u & -u).bit_length() - 1
                    nxt |= self.adj[w]
                    u &= u - 1
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(_mask_bits(comp))
        return comps


def _mask_bits(mask: int) -> list[int]:
    out = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        out.append(v)
        mask &= mask - 1
    return out


def build_uig(matrix: FreeSpaceMatrix) -> UnitIntervalGraph:
    """Abstract unit-interval graph: an edge joins two columns that share a
    row with both entries 1."""
    ent = matrix.entries
    n, m = ent.shape
    row_masks = [int.from_bytes(np.packbits(r, bitorder="little").tobytes(), "little") for r in ent]
    adj = [0] * m
    if n * m >= _NUMPY_UIG_THRESHOLD:
        co = (ent.T.astype(np.float32) @ ent.astype(np.float32)) > 0
        np.fill_diagonal(co, False)
        packed = np.packbits(co, axis=1, bitorder="little")
        adj = [int.from_bytes(packed[v].tobytes(), "little") for v in range(m)]
    else:
        for rm in row_masks:
            u = rm
            while u:
                v = (u & -u).bit_length() - 1
                adj[v] |= rm
                u &= u - 1
        for v in range(m):
            adj[v] &= ~(1 << v)
    return UnitIntervalGraph(m, adj, row_masks)


@dataclass
class OrderState:
    """Ordering knowledge accumulated over the pipeline for one component."""

    vertices: list[int]
    level: dict[int, int]
    d_value: dict[int, int] = field(default_factory=dict)
    classes: list[list[int]] = field(default_factory=list)
    class_of: dict[int, int] = field(default_factory=dict)
    # row refinements: per class, (subset mask, 'left'|'right') records
    constraints: dict[int, list[tuple[int, str]]] = field(default_factory=dict)
    # rows supported entirely inside one class: such a cell exists only when
    # the subset sits at a free end of the class (prefix of the first class /
    # suffix of the last); these are resolved in extend_global_order
    within_rows: dict[int, list[int]] = field(default_factory=dict)


def _bfs_levels(g: UnitIntervalGraph, sources: Sequence[int], base: int) -> dict[int, int]:
    level = {v: base for v in sources}
    frontier = 0
    for v in sources:
        frontier |= 1 << v
    seen = frontier
    depth = base
    while frontier:
        depth += 1
        nxt = 0
        u = frontier
        while u:
            w = (u & -u).bit_length() - 1
            nxt |= g.adj[w]
            u &= u - 1
        frontier = nxt & ~seen
        seen |= frontier
        u = frontier
        while u:
            w = (u & -u).bit_length() - 1
            level[w] = depth
            u &= u - 1
    return level


def choose_left_anchor(g: UnitIntervalGraph, component: Sequence[int], start: Optional[int] = None) -> list[list[int]]:
    """Anchor candidates partitioned into indistinguishability classes.

    BFS from ``start`` (default: smallest vertex); candidates are the
    minimum-degree vertices of the deepest level, grouped by closed
    neighborhood. More than two groups means the graph is not a unit
    interval graph; the virtual anchor attaches to one returned class.
    """
    comp = sorted(component)
    if start is None:
        start = comp[0]
    level = _bfs_levels(g, [start], 0)
    deepest = max(level[v] for v in comp)
    last = [v for v in comp if level[v] == deepest]
    min_deg = min(g.degree(v) for v in last)
    candidates = [v for v in last if g.degree(v) == min_deg]
    groups: dict[int, list[int]] = {}
    for v in candidates:
        groups.setdefault(g.closed(v), []).append(v)
    return [sorted(grp) for _, grp in sorted(groups.items(), key=lambda kv: kv[1][0])]


def bfs_partial_order(g: UnitIntervalGraph, anchor_class: Sequence[int]) -> OrderState:
    """Levels of a BFS rooted at the virtual anchor vertex attached to the
    chosen class (the class itself is level 1)."""
    level = _bfs_levels(g, list(anchor_class), 1)
    vertices = sorted(level)
    return OrderState(vertices=vertices, level=level)


def refine_by_d(g: UnitIntervalGraph, state: OrderState) -> OrderState:
    """Within-level order by D(v) = |Next(v)| - |Prev(v)|; equal-D vertices of
    one level stay incomparable and form the equivalence classes."""
    level_masks: dict[int, int] = {}
    for v in state.vertices:
        level_masks.setdefault(state.level[v], 0)
        level_masks[state.level[v]] |= 1 << v
    for v in state.vertices:
        lev = state.level[v]
        nxt = (g.adj[v] & level_masks.get(lev + 1, 0)).bit_count()
        prv = (g.adj[v] & level_masks.get(lev - 1, 0)).bit_count()
        state.d_value[v] = nxt - prv
    groups: dict[tuple[int, int], list[int]] = {}
    for v in state.vertices:
        groups.setdefault((state.level[v], state.d_value[v]), []).append(v)
    state.classes = [sorted(groups[key]) for key in sorted(groups)]
    state.class_of = {v: idx for idx, cls in enumerate(state.classes) for v in cls}
    state.constraints = {}
    return state


def refine_by_rows(state: OrderState, rows: Sequence[int]) -> Optional[OrderState]:
    """Pull each row's class members toward the row's outside members.

    For a row with support I and a class C with proper nonempty C' = C & I:
    an outside member of I ordered before (after) C pulls C' before (after)
    C \\ C'. A row demanding both directions at once is a contradiction.
    """
    key_of = {v: (state.level[v], state.d_value[v]) for v in state.vertices}
    class_masks = []
    for cls in state.classes:
        mask = 0
        for v in cls:
            mask |= 1 << v
        class_masks.append(mask)
    for row in rows:
        touched: dict[int, int] = {}
        kmin = kmax = None
        u = row
        while u:
            v = (u & -u).bit_length() - 1
            idx = state.class_of[v]
            touched[idx] = touched.get(idx, 0) | (1 << v)
            k = key_of[v]
            if kmin is None or k < kmin:
                kmin = k
            if kmax is None or k > kmax:
                kmax = k
            u &= u - 1
        if len(touched) == 1:
            ((idx, sub),) = touched.items()
            if sub != class_masks[idx]:
                state.within_rows.setdefault(idx, []).append(sub)
            continue
        for idx, sub in touched.items():
            full = class_masks[idx]
            if sub == full:
                continue
            head = state.classes[idx][0]
            cls_key = (state.level[head], state.d_value[head])
            has_before = kmin < cls_key
            has_after = kmax > cls_key
            if has_before and has_after:
                return None
            if has_before:
                state.constraints.setdefault(idx, []).append((sub, "left"))
            elif has_after:
                state.constraints.setdefault(idx, []).append((sub, "right"))
    return state


def _within_sides(sets: list[int], first: bool, last: bool) -> Optional[list[tuple[int, str]]]:
    """Assign within-class row subsets to a free end of the class.

    Prefix sets must form a containment chain, as must suffix sets, so
    incomparable pairs go to opposite ends; the incomparability graph must be
    bipartite and each end must actually be free."""
    uniq = sorted(set(sets), key=lambda msk: (msk.bit_count(), msk))
    if not uniq:
        return []
    if not first and not last:
        return None  # the class is flanked by its own neighbors on both sides
    if first != last:
        side = "left" if first else "right"
        return [(s, side) for s in uniq]
    color: dict[int, int] = {}
    for root in uniq:
        if root in color:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            a = queue.pop()
            for b in uniq:
                comparable = (a & b) == a or (a & b) == b
                if comparable:
                    continue
                if b not in color:
                    color[b] = 1 - color[a]
                    queue.append(b)
                elif color[b] == color[a]:
                    return None  # three pairwise-incomparable subsets
    return [(s, "left" if color[s] == 0 else "right") for s in uniq]


def extend_global_order(state: OrderState) -> Optional[list[int]]:
    """Linear extension of levels, D order, and row refinements; ties broken
    by ascending column index. Returns None when the refinements conflict."""
    order: list[int] = []
    n_classes = len(state.classes)
    for idx, cls in enumerate(state.classes):
        extra = _within_sides(state.within_rows.get(idx, []), idx == 0, idx == n_classes - 1)
        if extra is None:
            return None
        blocks: list[list[int]] = [sorted(cls)]
        for sub, side in list(state.constraints.get(idx, ())) + extra:
            new_blocks: list[list[int]] = []
            for blk in blocks:
                inside = [v for v in blk if sub >> v & 1]
                outside = [v for v in blk if not sub >> v & 1]
                if inside and outside:
                    pair = [inside, outside] if side == "left" else [outside, inside]
                    new_blocks.extend(pair)
                else:
                    new_blocks.append(blk)
            blocks = new_blocks
        flat = [v for blk in blocks for v in blk]
        pos = {v: k for k, v in enumerate(flat)}
        for sub, side in list(state.constraints.get(idx, ())) + extra:
            inside = [v for v in flat if sub >> v & 1]
            outside = [v for v in flat if not sub >> v & 1]
            if not inside or not outside:
                continue
            if side == "left" and max(pos[v] for v in inside) > min(pos[v] for v in outside):
                return None
            if side == "right" and min(pos[v] for v in inside) < max(pos[v] for v in outside):
                return None
        order.extend(flat)
    return order


def build_arrangement(order: Sequence[int], g: UnitIntervalGraph, eps: Fraction = Fraction(1, 2)) -> Optional[dict[int, Fraction]]:
    """Interval centers realizing a total order, spaced on a quantum grid.

    The order is valid only if every vertex's later neighbors form a
    contiguous block and the blocks are monotone; the centers then come from
    the merged endpoint sequence (left endpoints in order, each right
    endpoint after its last neighbor's left endpoint), solved exactly with
    spacing quantum eps/(2m) between consecutive endpoints.
    """
    eps = rat(eps)
    m = len(order)
    delta = eps / (2 * m)
    suffix_masks = [0] * (m + 1)
    for k in range(m - 1, -1, -1):
        suffix_masks[k] = suffix_masks[k + 1] | (1 << order[k])
    last = [0] * m
    for k, v in enumerate(order):
        later = g.adj[v] & suffix_masks[k + 1]
        cnt = later.bit_count()
        last[k] = k + cnt
        if cnt:
            block = suffix_masks[k + 1] & ~suffix_masks[k + cnt + 1]
            if later != block:
                return None  # later neighbors are not contiguous
        if k > 0 and last[k] < last[k - 1]:
            return None  # equal lengths force monotone right endpoints
    # merged endpoint chain: after l_j come the right endpoints r_i with
    # last(i) = j, ordered by i
    events: list[tuple[str, int]] = []
    by_slot: dict[int, list[int]] = {}
    for i, c in enumerate(last):
        by_slot.setdefault(c, []).append(i)
    for j in range(m):
        events.append(("l", j))
        for i in by_slot.get(j, []):
            events.append(("r", i))
    width = 2 * eps
    left = [Fraction(0)] * m
    for _ in range(2 * m + 1):
        changed = False
        prev = None
        for kind, idx in events:
            val = left[idx] + (width if kind == "r" else 0)
            if prev is not None and val < prev + delta:
                need = prev + delta
                left[idx] = need - width if kind == "r" else need
                val = need
                changed = True
            prev = val
        if not changed:
            break
    else:
        return None
    prev = None
    for kind, idx in events:
        val = left[idx] + (width if kind == "r" else 0)
        if prev is not None and val < prev + delta:
            return None
        prev = val
    # gauge: the first center sits at 0
    return {order[k]: left[k] - left[0] for k in range(m)}


def verify_and_witness(
    positions: dict[int, Fraction],
    rows: Sequence[int],
    eps: Fraction = Fraction(1, 2),
) -> Optional[dict[int, Fraction]]:
    """Map each row to a point of an arrangement cell covering exactly the
    row's columns. Returns {row index: point}, or None if some prescribed
    cell does not exist. Rows with empty support are skipped (they are placed
    in the global outside cell by the caller)."""
    eps = rat(eps)
    cols = sorted(positions, key=lambda v: (positions[v], v))
    centers = [positions[v] for v in cols]
    rank = {v: k for k, v in enumerate(cols)}
    events = sorted({c - eps for c in centers} | {c + eps for c in centers})
    reps: list[Fraction] = []
    for idx, x in enumerate(events):
        reps.append(x)
        if idx + 1 < len(events):
            reps.append((x + events[idx + 1]) / 2)
    range_rep: dict[tuple[int, int], Fraction] = {}
    for x in reps:
        lo = bisect_left(centers, x - eps)
        hi = bisect_right(centers, x + eps) - 1
        if lo <= hi:
            range_rep.setdefault((lo, hi), x)
    out: dict[int, Fraction] = {}
    for r_idx, row in enumerate(rows):
        if row == 0:
            continue
        members = _mask_bits(row)
        ranks = [rank[v] for v in members]
        lo, hi = min(ranks), max(ranks)
        if hi - lo + 1 != len(ranks):
            return None
        rep = range_rep.get((lo, hi))
        if rep is None:
            return None
        out[r_idx] = rep
    return out


def _solve_component(g: UnitIntervalGraph, component: list[int], rows: list[int]):
    """Run steps 2-7 on one component, retrying the second anchor class on
    failure. Returns (positions, row placements) or None."""
    comp_mask = 0
    for v in component:
        comp_mask |= 1 << v
    comp_rows = [(idx, r) for idx, r in enumerate(rows) if r and r & comp_mask]
    classes = choose_left_anchor(g, component)
    if len(classes) > 2:
        return None
    # Prescribed cells can distinguish indistinguishable candidates, making
    # the anchor attachment load-bearing; besides attaching to a whole class
    # (the default), retry anchored on each single candidate.
    attempts: list[list[int]] = []
    for cls in classes:
        attempts.append(cls)
        if len(cls) > 1:
            attempts.extend([v] for v in cls)
    for anchor_class in attempts:
        state = bfs_partial_order(g, anchor_class)
        refine_by_d(g, state)
        if refine_by_rows(state, [r for _, r in comp_rows]) is None:
            continue
        order = extend_global_order(state)
        if order is None:
            continue
        positions = build_arrangement(order, g)
        if positions is None:
            continue
        placed = verify_and_witness(positions, [r for _, r in comp_rows])
        if placed is None:
            continue
        row_points = {comp_rows[k][0]: pt for k, pt in placed.items()}
        return positions, row_points
    return None


def solve(matrix, eps=Fraction(1, 2)) -> Optional[Witness]:
    """Decide realizability of a free space matrix in R^1.

    Returns a verified witness (built at eps = 1/2 and rescaled to ``eps``)
    or None. Components are placed left to right with gaps above 2*eps;
    empty rows land in the leftmost outside cell.
    """
    if not isinstance(matrix, FreeSpaceMatrix):
        matrix = FreeSpaceMatrix(matrix)
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    half = Fraction(1, 2)
    g = build_uig(matrix)
    rows = g.row_masks
    q_pos: dict[int, Fraction] = {}
    p_pos: dict[int, Fraction] = {}
    offset = Fraction(0)
    first = True
    for component in g.components():
        solved = _solve_component(g, component, rows)
        if solved is None:
            return None
        positions, row_points = solved
        low = min(positions.values())
        if first:
            shift = -low
            first = False
        else:
            shift = offset - low + 2 * half + 1
        for v, value in positions.items():
            q_pos[v] = value + shift
        for r_idx, pt in row_points.items():
            p_pos[r_idx] = pt + shift
        offset = max(q_pos[v] for v in positions)

    if not q_pos:  # no columns would be invalid; matrices have >= 1 column
        return None
    outside = min(q_pos.values()) - half - 1
    p_points = [p_pos.get(r_idx, outside) for r_idx in range(matrix.n_rows)]
    q_points = [q_pos[v] for v in range(matrix.m_cols)]
    scale = eps / half
    witness = Witness(
        PointSeq1D([p * scale for p in p_points]),
        PointSeq1D([q * scale for q in q_points]),
        eps,
    )
    if compute_matrix(witness.curve_p, witness.curve_q, eps) != matrix:
        raise AssertionError("internal error: discrete witness failed verification")
    return witness
