"""Pseudo-polynomial solver for integer-dimension 1D diagrams.

Segments are subdivided and typed by their row/column slice status, partial
cells anchor rigid components of the placement graph, and the remaining
uncertainty subcurves are placed by boolean reachability tables over integer
positions. A compatibility search over the middle-region sizes (bounded by
2*eps) ties the two curves together; every YES is verified forward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import (
    EMPTY,
    FULL,
    PARTIAL,
    CellContent,
    Curve1D,
    FreeSpaceDiagram1D,
    Witness,
    cell_edge_interval,
    cell_restrict_x,
    cell_restrict_y,
    consistency_problems,
    structural_problems,
)
from .forward import compute_diagram_1d

_CANDIDATE_CAP = 200_000

TYPE_FAR = 1
TYPE_CLOSE = 2
TYPE_BOUNDARY = 3


@dataclass(frozen=True)
class SubSeg:
    """Piece of an original segment after subdivision at type changes."""

    orig: int
    offset: int  # arc-length offset within the original segment
    length: int
    kind: int  # TYPE_FAR / TYPE_CLOSE / TYPE_BOUNDARY


@dataclass
class TypedDiagram:
    eps: int
    p_segs: list[SubSeg]
    q_segs: list[SubSeg]
    cells: list[list[CellContent]]  # [i][j] over subsegments

    @property
    def widths(self) -> list[int]:
        return [s.length for s in self.p_segs]

    @property
    def heights(self) -> list[int]:
        return [s.length for s in self.q_segs]


def _require_int(value: Fraction, what: str) -> int:
    if Fraction(value).denominator != 1:
        raise ValueError(f"pseudo-polynomial solver needs integer {what} (got {value})")
    return int(value)


def _column_breakpoints(cells_col, w: int, heights) -> list[int]:
    """x positions where some cell's slice status can change."""
    points = set()
    for j, cell in enumerate(cells_col):
        if cell.status != PARTIAL:
            continue
        h = heights[j]
        s = cell.sigma
        for bound in (cell.c_lo, cell.c_hi):
            for level in (0, h):
                x = s * (level - bound)
                if 0 < x < w:
                    points.add(_require_int(Fraction(x), "subdivision point"))
    return sorted(points)


def _slice_status(cell: CellContent, h: int, x: Fraction) -> str:
    if cell.status != PARTIAL:
        return cell.status
    lo = cell.c_lo + cell.sigma * x
    hi = cell.c_hi + cell.sigma * x
    if lo > h or hi < 0:
        return EMPTY
    if lo <= 0 and hi >= h:
        return FULL
    return PARTIAL


def _column_kind(cells_col, heights, x: Fraction) -> int:
    statuses = [_slice_status(cell, heights[j], x) for j, cell in enumerate(cells_col)]
    if all(s == EMPTY for s in statuses):
        return TYPE_FAR
    if all(s == FULL for s in statuses):
        return TYPE_CLOSE
    return TYPE_BOUNDARY


def _subdivide_axis(columns, widths, heights) -> list[tuple[int, list[tuple[int, int, int]]]]:
    """Per original segment: pieces (offset, length, kind)."""
    out = []
    for i, col in enumerate(columns):
        w = widths[i]
        cuts = [0] + _column_breakpoints(col, w, heights) + [w]
        pieces = []
        for a, b in zip(cuts, cuts[1:]):
            kind = _column_kind(col, heights, Fraction(a + b, 2))
            if pieces and pieces[-1][2] == kind:
                off, length, _ = pieces[-1]
                pieces[-1] = (off, length + (b - a), kind)
            else:
                pieces.append((a, b - a, kind))
        out.append((i, pieces))
    return out


def subdivide_and_type(diagram: FreeSpaceDiagram1D) -> TypedDiagram:
    """Insert subdivision vertices wherever a segment's slice status changes
    and type every resulting subsegment (far / close / boundary)."""
    eps = _require_int(diagram.epsilon, "epsilon")
    widths = [_require_int(w, "cell width") for w in diagram.col_widths]
    heights = [_require_int(h, "cell height") for h in diagram.row_heights]
    for i in range(diagram.n_cols):
        for j in range(diagram.m_rows):
            c = diagram.cells[i][j]
            if c.status == PARTIAL:
                _require_int(c.c_lo, "slab intercept")

    p_pieces = _subdivide_axis(
        [tuple(diagram.cells[i]) for i in range(diagram.n_cols)], widths, heights
    )
    rows_t = [
        tuple(diagram.cells[i][j] for i in range(diagram.n_cols)) for j in range(diagram.m_rows)
    ]
    # slice status of row j at height y: reuse the column machinery on the
    # transposed cells
    from .model import cell_transpose

    rows_tc = [tuple(cell_transpose(c) for c in row) for row in rows_t]
    q_pieces = _subdivide_axis(rows_tc, heights, widths)

    p_segs = [SubSeg(i, off, length, kind) for i, pieces in p_pieces for off, length, kind in pieces]
    q_segs = [SubSeg(j, off, length, kind) for j, pieces in q_pieces for off, length, kind in pieces]

    cells: list[list[CellContent]] = []
    for ps in p_segs:
        row_out = []
        for qs in q_segs:
            base = diagram.cells[ps.orig][qs.orig]
            w0 = widths[ps.orig]
            h0 = heights[qs.orig]
            c = cell_restrict_x(base, w0, h0, Fraction(ps.offset), Fraction(ps.offset + ps.length))
            c = cell_restrict_y(c, Fraction(ps.length), h0, Fraction(qs.offset), Fraction(qs.offset + qs.length))
            row_out.append(c)
        cells.append(row_out)
    return TypedDiagram(eps, p_segs, q_segs, cells)


@dataclass
class PlacementGraph:
    """Bipartite graph on subsegments; an edge marks a partial cell."""

    edges: list[tuple[int, int]]
    components: list[list[tuple[str, int]]]

    @property
    def non_singleton(self) -> list[list[tuple[str, int]]]:
        return [c for c in self.components if len(c) > 1]


def build_placement_graph(typed: TypedDiagram) -> PlacementGraph:
    n, m = len(typed.p_segs), len(typed.q_segs)
    edges = [(i, j) for i in range(n) for j in range(m) if typed.cells[i][j].status == PARTIAL]
    parent: dict[tuple[str, int], tuple[str, int]] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in range(n):
        find(("P", i))
    for j in range(m):
        find(("Q", j))
    for i, j in edges:
        union(("P", i), ("Q", j))
    groups: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for node in list(parent):
        groups.setdefault(find(node), []).append(node)
    comps = sorted(groups.values(), key=lambda c: sorted(c)[0])
    return PlacementGraph(edges, [sorted(c) for c in comps])


@dataclass
class Anchoring:
    """Relative placements of boundary-type subsegments, one rigid frame per
    non-singleton component; frame 1 (if present) floats with an unknown
    translation and reflection resolved during the candidate search."""

    frames: list[dict[tuple[str, int], tuple[int, int]]]  # node -> (start, sigma)
    frame_of: dict[tuple[str, int], int]
    cross_eqs: list[tuple[int, int, int, int]]  # (frame_a, value_a, frame_b, value_b)


def _cell_relation(cell: CellContent, eps: int):
    """start_P - start_Q and orientation product demanded by a partial cell."""
    return cell.sigma, cell.c_lo + eps


def anchor_components(typed: TypedDiagram, graph: PlacementGraph) -> Optional[Anchoring]:
    """Propagate relative positions over partial cells within each component
    (consistency-checked), then bind consecutive boundary subsegments of the
    same curve; contradictions mean the instance is not realizable."""
    eps = typed.eps
    adjacency: dict[tuple[str, int], list[tuple[tuple[str, int], CellContent]]] = {}
    for i, j in graph.edges:
        cell = typed.cells[i][j]
        adjacency.setdefault(("P", i), []).append((("Q", j), cell))
        adjacency.setdefault(("Q", j), []).append((("P", i), cell))

    frames: list[dict[tuple[str, int], tuple[int, int]]] = []
    frame_of: dict[tuple[str, int], int] = {}
    for comp in graph.non_singleton:
        placement: dict[tuple[str, int], tuple[int, int]] = {}
        root = comp[0]
        placement[root] = (0, 1)
        queue = [root]
        while queue:
            node = queue.pop()
            start, sigma = placement[node]
            for other, cell in adjacency.get(node, ()):  # relation: c_lo = sQ*(Ps - Qs) - eps
                sig_prod, gap = _cell_relation(cell, eps)
                gap = _require_int(Fraction(gap), "slab intercept")
                if node[0] == "P":
                    s_q = sig_prod * sigma
                    o_start = start - s_q * gap
                    o_sigma = s_q
                else:
                    s_q = sigma
                    o_sigma = sig_prod * s_q
                    o_start = start + s_q * gap
                if other in placement:
                    if placement[other] != (o_start, o_sigma):
                        return None
                else:
                    placement[other] = (o_start, o_sigma)
                    queue.append(other)
        idx = len(frames)
        frames.append(placement)
        for node in placement:
            frame_of[node] = idx

    # verify every anchored pair within one frame against the recorded cell
    for idx, placement in enumerate(frames):
        p_nodes = [n for n in placement if n[0] == "P"]
        q_nodes = [n for n in placement if n[0] == "Q"]
        for pn in p_nodes:
            ps = typed.p_segs[pn[1]]
            start_p, sig_p = placement[pn]
            for qn in q_nodes:
                qs = typed.q_segs[qn[1]]
                start_q, sig_q = placement[qn]
                expected = _expected_cell(start_p, sig_p, ps.length, start_q, sig_q, qs.length, eps)
                if expected != typed.cells[pn[1]][qn[1]]:
                    return None

    cross: list[tuple[int, int, int, int]] = []
    for curve, segs in (("P", typed.p_segs), ("Q", typed.q_segs)):
        for k in range(len(segs) - 1):
            a, b = (curve, k), (curve, k + 1)
            if segs[k].kind != TYPE_BOUNDARY or segs[k + 1].kind != TYPE_BOUNDARY:
                continue
            fa, fb = frame_of.get(a), frame_of.get(b)
            if fa is None or fb is None:
                return None  # boundary subsegment without a partial cell
            sa, ga = frames[fa][a]
            end_a = sa + ga * segs[k].length
            sb, _ = frames[fb][b]
            if fa == fb:
                if end_a != sb:
                    return None
            else:
                cross.append((fa, end_a, fb, sb))
    return Anchoring(frames, frame_of, cross)


def _expected_cell(start_p: int, sig_p: int, w: int, start_q: int, sig_q: int, h: int, eps: int) -> CellContent:
    from .model import classify_slab

    sigma = sig_p * sig_q
    c_lo = sig_q * (start_p - start_q) - eps
    return classify_slab(sigma, Fraction(c_lo), Fraction(c_lo + 2 * eps), Fraction(w), Fraction(h))


# ---------------------------------------------------------------------------
# Reachability tables over integer positions (boolean, bitmask encoded).


@dataclass
class DPTable:
    """Boolean reachability R(k, s) over positions 0..cap of a region.

    The table is anchored at the subcurve's last vertex; ``masks[k]`` has bit
    s set iff the suffix starting at vertex k embeds with that vertex at s.
    Transitions into intermediate vertices are strict (0 < s < bound) and
    non-strict exactly at the constrained terminal, matching the base case.
    """

    lengths: tuple[int, ...]
    bound: Optional[int]  # region size, None = unbounded
    cap: int
    masks: list[int]
    start_constraint: Optional[int]
    end_constraint: Optional[int]
    interior_mask: int = -1
    forced_first: Optional[int] = None
    forced_last: Optional[int] = None

    def accepted(self) -> int:
        """Bitmask of feasible first-vertex positions."""
        if self.start_constraint is None:
            return self.masks[0]
        return self.masks[0] & (1 << self.start_constraint)

    def realizable(self) -> bool:
        return self.accepted() != 0


def fixed_boundary_dp(
    lengths: Sequence[int],
    bound: Optional[int],
    start_constraint: Optional[int] = None,
    end_constraint: Optional[int] = 0,
    forced_first: Optional[int] = None,
    forced_last: Optional[int] = None,
    interior_lo_strict: bool = True,
    interior_hi_strict: bool = True,
) -> DPTable:
    """Reachability of a subcurve in the region [0, bound] (bound None for an
    unbounded region, positions capped by the total subcurve length).

    ``end_constraint``/``start_constraint`` fix vertex positions to a value in
    the region; ``forced_first``/``forced_last`` restrict the first/last step
    direction (+1 right, -1 left), used when the neighboring vertex is a
    subdivision point where the curve may not turn. Step destinations obey
    the strict guards 0 < s < bound; only the transition into a constrained
    terminal is exempt, matching the base case that places it on a boundary.
    The strictness of either guard can be lifted for closed regions.
    """
    lengths = tuple(int(x) for x in lengths)
    total = sum(lengths)
    base_cap = total + max(start_constraint or 0, end_constraint or 0)
    cap = base_cap if bound is None else min(bound, base_cap)
    cap = max(cap, 0)
    full_mask = (1 << (cap + 1)) - 1
    strict_mask = full_mask
    if interior_lo_strict:
        strict_mask &= ~1
    if interior_hi_strict and bound is not None and bound <= cap:
        strict_mask &= ~(1 << bound)
    k = len(lengths)
    if end_constraint is not None:
        base = 1 << end_constraint if 0 <= end_constraint <= cap else 0
    else:
        base = full_mask
    masks = [0] * (k + 1)
    masks[k] = base
    for idx in range(k - 1, -1, -1):
        step = lengths[idx]
        nxt = masks[idx + 1]
        if idx + 1 < k or end_constraint is None:
            nxt &= strict_mask
        if idx == 0 and forced_first is not None:
            dirs = (forced_first,)
        elif idx == k - 1 and forced_last is not None:
            dirs = (forced_last,)
        else:
            dirs = (1, -1)
        cur = 0
        for d in dirs:
            if d == 1:
                cur |= nxt >> step
            else:
                cur |= (nxt << step) & full_mask
        masks[idx] = cur
    return DPTable(lengths, bound, cap, masks, start_constraint, end_constraint, strict_mask, forced_first, forced_last)


def dp_extract_path(table: DPTable, start_pos: int) -> Optional[list[int]]:
    """One vertex-position path from a feasible first position (replayable
    parent links: at each step prefer the rightward branch)."""
    if not (table.masks[0] >> start_pos) & 1:
        return None
    path = [start_pos]
    pos = start_pos
    k = len(table.lengths)
    for idx in range(k):
        step = table.lengths[idx]
        nxt_mask = table.masks[idx + 1]
        if idx + 1 < k or table.end_constraint is None:
            nxt_mask &= table.interior_mask
        if idx == 0 and table.forced_first is not None:
            dirs = (table.forced_first,)
        elif idx == k - 1 and table.forced_last is not None:
            dirs = (table.forced_last,)
        else:
            dirs = (1, -1)
        chosen = None
        for d in dirs:
            s2 = pos + d * step
            if 0 <= s2 <= table.cap and (nxt_mask >> s2) & 1:
                chosen = s2
                break
        if chosen is None:
            return None
        path.append(chosen)
        pos = chosen
    return path


@dataclass
class VariableTable:
    """Per-size acceptance of a middle-region subcurve.

    ``accept[alpha]`` holds the feasible first-vertex position mask when the
    subcurve is confined to a window of size alpha (alpha in 1..2*eps).
    ``spanning`` marks subcurves whose two endpoints sit on the two region
    boundaries, which are compatible only with region size exactly alpha.
    """

    curve: str
    lengths: tuple[int, ...]
    spanning: bool
    end_constrained: bool
    accept: dict[int, DPTable]

    def compatible(self, region: int) -> bool:
        if self.spanning:
            table = self.accept.get(region)
            return table is not None and bool((table.masks[0] >> region) & 1)
        return any(a <= region and t.realizable() for a, t in self.accept.items())


def variable_boundary_dp(
    lengths: Sequence[int],
    eps: int,
    curve: str = "Q",
    spanning: bool = False,
    end_constrained: bool = True,
    forced_first: Optional[int] = None,
    forced_last: Optional[int] = None,
) -> VariableTable:
    """Tables R(k, s, alpha) for every window size alpha in 1..2*eps."""
    accept = {}
    for alpha in range(1, 2 * eps + 1):
        start_c = alpha if spanning else None
        end_c = 0 if (end_constrained or spanning) else None
        accept[alpha] = fixed_boundary_dp(
            lengths, alpha, start_c, end_c, forced_first=forced_first, forced_last=forced_last
        )
    return VariableTable(curve, tuple(int(x) for x in lengths), spanning, end_constrained, accept)


def compatibility_search(tables: Sequence[VariableTable], eps: int) -> Optional[tuple[int, int]]:
    """First (r_P, r_Q) in lexicographic order compatible with every table."""
    p_tables = [t for t in tables if t.curve == "P"]
    q_tables = [t for t in tables if t.curve == "Q"]
    for r_p in range(1, 2 * eps + 1):
        if not all(t.compatible(r_p) for t in p_tables):
            continue
        for r_q in range(1, 2 * eps + 1):
            if all(t.compatible(r_q) for t in q_tables):
                return (r_p, r_q)
    return None


# ---------------------------------------------------------------------------
# Structure extraction: uncertainty runs, attachments, and boundary pins.


@dataclass
class Run:
    """Maximal run of same-type uncertainty subsegments of one curve."""

    curve: str
    kind: int
    first: int  # subsegment index range [first, last]
    last: int
    lengths: tuple[int, ...]
    # attachments: (frame, vertex value, forced_dir or None) or None per end
    attach_lo: Optional[tuple[int, int, Optional[int]]] = None
    attach_hi: Optional[tuple[int, int, Optional[int]]] = None


@dataclass
class Pin:
    var: str  # 'LP', 'RP', 'LQ', 'RQ'
    frame: int
    value: int


def _merged_intervals(intervals: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    out: list[list[Fraction]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def _transition_pins(
    typed: TypedDiagram, anchoring: Anchoring, curve: str, seg3: int, end_hi: bool, other_kind: int
) -> Optional[list[Pin]]:
    """Pins induced by the transition at one end of a boundary subsegment.

    The white slice at the transition parameter ends at exactly-eps witnesses
    whose anchored positions sit eps above or below the transition vertex;
    above pins the other curve's left extreme, below its right extreme (the
    roles swap for transitions into fully-covered subsegments).
    """
    eps = typed.eps
    node = (curve, seg3)
    frame = anchoring.frame_of.get(node)
    if frame is None:
        return None
    start, sigma = anchoring.frames[frame][node]
    seg = (typed.p_segs if curve == "P" else typed.q_segs)[seg3]
    t_value = start + sigma * seg.length if end_hi else start

    if curve == "Q":
        other_segs = typed.p_segs
        cells = [typed.cells[i][seg3] for i in range(len(other_segs))]
        boxes = [(s.length, seg.length) for s in other_segs]
        other_curve = "P"
    else:
        other_segs = typed.q_segs
        from .model import cell_transpose

        cells = [cell_transpose(typed.cells[seg3][j]) for j in range(len(other_segs))]
        boxes = [(s.length, seg.length) for s in other_segs]
        other_curve = "Q"

    edge = "T" if end_hi else "B"
    intervals = []
    offsets = []
    total = 0
    for s in other_segs:
        offsets.append(total)
        total += s.length
    for idx, cell in enumerate(cells):
        if cell.status == EMPTY:
            continue
        w, h = boxes[idx]
        iv = cell_edge_interval(cell, Fraction(w), Fraction(h), edge)
        if iv is not None:
            intervals.append((iv[0] + offsets[idx], iv[1] + offsets[idx]))
    signs = set()
    lengths_other = [s.length for s in other_segs]
    for a, b in _merged_intervals(intervals):
        for x in (a, b):
            if x == 0 or x == total:
                continue  # clipped by the domain, not an exactly-eps witness
            value = None
            for k, local in _locate_candidates(offsets, lengths_other, x):
                onode = (other_curve, k)
                if anchoring.frame_of.get(onode) == frame:
                    ostart, osigma = anchoring.frames[frame][onode]
                    value = ostart + osigma * local
                    break
            if value is None:
                return None
            diff = value - t_value
            if abs(diff) != eps:
                return None
            signs.add(1 if diff > 0 else -1)
    if not signs:
        return []
    if len(signs) > 1:
        return None
    sign = signs.pop()
    var_l = "LP" if other_curve == "P" else "LQ"
    var_r = "RP" if other_curve == "P" else "RQ"
    if other_kind == TYPE_FAR:
        if sign > 0:
            return [Pin(var_l, frame, t_value + eps)]
        return [Pin(var_r, frame, t_value - eps)]
    else:  # transition into the middle region
        if sign > 0:
            return [Pin(var_r, frame, t_value + eps)]
        return [Pin(var_l, frame, t_value - eps)]


def _locate_candidates(offsets: list[int], lengths: list[int], x: Fraction) -> list[tuple[int, Fraction]]:
    """Subsegments containing arc position x (two at a shared wall)."""
    out = []
    for k in range(len(offsets)):
        local = x - offsets[k]
        if 0 <= local <= lengths[k]:
            out.append((k, local))
    return out


def _collect_runs(typed: TypedDiagram, anchoring: Anchoring, curve: str) -> Optional[tuple[list[Run], list[Pin]]]:
    """Maximal runs of unanchored subsegments, with attachment values taken
    from the neighboring anchored subsegments."""
    segs = typed.p_segs if curve == "P" else typed.q_segs
    anchored = [(curve, k) in anchoring.frame_of for k in range(len(segs))]
    runs: list[Run] = []
    pins: list[Pin] = []
    idx = 0
    while idx < len(segs):
        if anchored[idx]:
            idx += 1
            continue
        kind = segs[idx].kind
        if kind == TYPE_BOUNDARY:
            return None  # a boundary-type subsegment must touch a partial cell
        first = idx
        while idx < len(segs) and not anchored[idx]:
            if segs[idx].kind != kind:
                return None  # far and close subsegments are never adjacent
            idx += 1
        last = idx - 1
        run = Run(curve, kind, first, last, tuple(segs[t].length for t in range(first, last + 1)))
        if first > 0:
            att = _attachment(typed, anchoring, curve, first - 1, end_hi=True)
            if att is None:
                return None
            frame, value, sigma_n = att
            forced = sigma_n if segs[first - 1].orig == segs[first].orig else None
            run.attach_lo = (frame, value, forced)
            if segs[first - 1].kind == TYPE_BOUNDARY:
                new_pins = _transition_pins(typed, anchoring, curve, first - 1, True, kind)
                if new_pins is None:
                    return None
                pins.extend(new_pins)
        if last + 1 < len(segs):
            att = _attachment(typed, anchoring, curve, last + 1, end_hi=False)
            if att is None:
                return None
            frame, value, sigma_n = att
            forced = sigma_n if segs[last + 1].orig == segs[last].orig else None
            run.attach_hi = (frame, value, forced)
            if segs[last + 1].kind == TYPE_BOUNDARY:
                new_pins = _transition_pins(typed, anchoring, curve, last + 1, False, kind)
                if new_pins is None:
                    return None
                pins.extend(new_pins)
        runs.append(run)
    return runs, pins


def _attachment(typed, anchoring: Anchoring, curve: str, seg3: int, end_hi: bool):
    node = (curve, seg3)
    frame = anchoring.frame_of.get(node)
    if frame is None:
        return None
    start, sigma = anchoring.frames[frame][node]
    seg = (typed.p_segs if curve == "P" else typed.q_segs)[seg3]
    value = start + sigma * seg.length if end_hi else start
    return frame, value, sigma


# ---------------------------------------------------------------------------
# Candidate search and assembly.


@dataclass
class _Candidate:
    rho: int
    tau: int
    values: dict[str, Optional[int]]  # LP, RP, LQ, RQ (None = irrelevant)


def _net_displacements(lengths: Sequence[int], cap: int = 4096) -> Optional[set[int]]:
    """All signed sums of the segment lengths (walk net displacement)."""
    if 1 << len(lengths) > cap:
        return None
    sums = {0}
    for length in lengths:
        sums = {s + length for s in sums} | {s - length for s in sums}
    return sums


def _bridge_taus(runs: list[Run], rho: int) -> Optional[set[int]]:
    """Frame-1 translations consistent with runs attached in both frames."""
    taus: Optional[set[int]] = None
    for run in runs:
        if run.attach_lo is None or run.attach_hi is None:
            continue
        fa, va, _ = run.attach_lo
        fb, vb, _ = run.attach_hi
        if fa == fb:
            continue
        nets = _net_displacements(run.lengths)
        if nets is None:
            continue
        if fa == 0:
            cand = {va + net - rho * vb for net in nets}
        else:
            cand = {vb - net - rho * va for net in nets}
        taus = cand if taus is None else taus & cand
    return taus


def _frame_candidates(anchoring: Anchoring, pins: list[Pin], runs: list[Run], eps: int):
    if len(anchoring.frames) <= 1:
        yield 1, 0
        return
    eqs = list(anchoring.cross_eqs)
    by_var: dict[str, list[Pin]] = {}
    for pin in pins:
        by_var.setdefault(pin.var, []).append(pin)
    for var_pins in by_var.values():
        f0 = [p for p in var_pins if p.frame == 0]
        f1 = [p for p in var_pins if p.frame == 1]
        if f0 and f1:
            eqs.append((0, f0[0].value, 1, f1[0].value))
    ext0 = [v for node, (v, s) in anchoring.frames[0].items()]
    ext1 = [v for node, (v, s) in anchoring.frames[1].items()]
    for rho in (1, -1):
        taus = set()
        for fa, va, fb, vb in eqs:
            if fa == fb:
                continue
            if fa == 0:
                taus.add(va - rho * vb)
            else:
                taus.add(vb - rho * va)
        if not taus:
            bridged = _bridge_taus(runs, rho)
            if bridged is not None:
                taus = bridged
        if not taus:
            lo = min(ext0) - (max(ext1) - min(ext1)) - 8 * eps
            hi = max(ext0) + (max(ext1) - min(ext1)) + 8 * eps
            taus = set(range(lo, hi + 1))
        for tau in sorted(taus):
            ok = all(
                (va if fa == 0 else tau + rho * va) == (vb if fb == 0 else tau + rho * vb)
                for fa, va, fb, vb in eqs
            )
            if ok:
                yield rho, tau


def _glob(frame: int, value: int, rho: int, tau: int) -> int:
    return value if frame == 0 else tau + rho * value


def solve_pseudo_poly(diagram: FreeSpaceDiagram1D) -> Optional[Witness]:
    """Decide realizability of an integer-dimension diagram; returns a
    forward-verified witness or None."""
    problems = structural_problems(diagram)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))
    if consistency_problems(diagram):
        return None  # no curve pair produces disagreeing boundary restrictions
    typed = subdivide_and_type(diagram)
    eps = typed.eps

    statuses = {typed.cells[i][j].status for i in range(len(typed.p_segs)) for j in range(len(typed.q_segs))}
    if statuses == {EMPTY}:
        return _far_witness(diagram)
    if statuses == {FULL}:
        return _all_full_witness(diagram, typed)

    graph = build_placement_graph(typed)
    if len(graph.non_singleton) > 2:
        return None
    anchoring = anchor_components(typed, graph)
    if anchoring is None:
        return None
    if len(graph.non_singleton) == 2:
        for placement in anchoring.frames:
            vals = [v for v, _ in placement.values()]
            ends = [v + s * _seg_len(typed, n) for n, (v, s) in placement.items()]
            if max(vals + ends) - min(vals + ends) > 2 * eps:
                return None

    collected_p = _collect_runs(typed, anchoring, "P")
    collected_q = _collect_runs(typed, anchoring, "Q")
    if collected_p is None or collected_q is None:
        return None
    p_runs, pins_p = collected_p
    q_runs, pins_q = collected_q
    pins = pins_p + pins_q

    p_kinds = {s.kind for s in typed.p_segs}
    q_kinds = {s.kind for s in typed.q_segs}
    # a fully-covered subsegment of one curve contradicts any far subsegment
    # of the other (within eps of everything vs. beyond eps of something)
    if TYPE_CLOSE in p_kinds and TYPE_FAR in q_kinds:
        return None
    if TYPE_CLOSE in q_kinds and TYPE_FAR in p_kinds:
        return None

    tried = 0
    for rho, tau in _frame_candidates(anchoring, pins, p_runs + q_runs, eps):
        values = _resolve_vars(typed, anchoring, pins, p_runs, q_runs, rho, tau, eps)
        for cand in values:
            tried += 1
            if tried > _CANDIDATE_CAP:
                return None
            witness = _attempt(diagram, typed, anchoring, p_runs, q_runs, rho, tau, cand, eps)
            if witness is not None:
                return witness
    return None


def _seg_len(typed: TypedDiagram, node: tuple[str, int]) -> int:
    return (typed.p_segs if node[0] == "P" else typed.q_segs)[node[1]].length


def _anchored_extent(typed, anchoring, rho, tau, curve) -> Optional[tuple[int, int]]:
    vals = []
    for frame_idx, placement in enumerate(anchoring.frames):
        for node, (start, sigma) in placement.items():
            if node[0] != curve:
                continue
            g = _glob(frame_idx, start, rho, tau)
            gs = rho * sigma if frame_idx == 1 else sigma
            vals.extend([g, g + gs * _seg_len(typed, node)])
    if not vals:
        return None
    return min(vals), max(vals)


def _resolve_vars(typed, anchoring, pins, p_runs, q_runs, rho, tau, eps):
    """Candidate assignments for the four extreme values, from pins first and
    small integer windows when a consumed extreme stays unpinned."""
    pin_vals: dict[str, set[int]] = {}
    for pin in pins:
        pin_vals.setdefault(pin.var, set()).add(_glob(pin.frame, pin.value, rho, tau))
    for var, vals in pin_vals.items():
        if len(vals) > 1:
            return []

    ext_p = _anchored_extent(typed, anchoring, rho, tau, "P")
    ext_q = _anchored_extent(typed, anchoring, rho, tau, "Q")

    consumed = {
        "LP": any(r.curve == "Q" for r in q_runs),
        "RP": any(r.curve == "Q" for r in q_runs),
        "LQ": any(r.curve == "P" for r in p_runs),
        "RQ": any(r.curve == "P" for r in p_runs),
    }
    # type-1 runs only consume the matching side, but sides are resolved at
    # candidate time; keep both extremes available whenever runs exist.

    def options(var: str) -> list[Optional[int]]:
        if var in pin_vals:
            return sorted(pin_vals[var])
        if not consumed[var]:
            return [None]
        ext = ext_p if var in ("LP", "RP") else ext_q
        if ext is None:
            return [None]
        lo_ext, hi_ext = ext
        # Exact first: a middle run of the other curve attaches at a vertex
        # sitting on a region end (this extreme shifted by eps); then the
        # anchored extent; then windows for extremes the own middle runs may
        # extend past the anchored values.
        own_runs = p_runs if var in ("LP", "RP") else q_runs
        other_runs = q_runs if var in ("LP", "RP") else p_runs
        out: list[Optional[int]] = []
        for r in other_runs:
            if r.kind != TYPE_CLOSE:
                continue
            for att in (r.attach_lo, r.attach_hi):
                if att is None:
                    continue
                t_val = _glob(att[0], att[1], rho, tau)
                out.append(t_val - eps if var in ("LP", "LQ") else t_val + eps)
        out.append(lo_ext if var in ("LP", "LQ") else hi_ext)
        for r in own_runs:
            if r.kind != TYPE_CLOSE:
                continue
            for att in (r.attach_lo, r.attach_hi):
                if att is None:
                    continue
                t_val = _glob(att[0], att[1], rho, tau)
                if var in ("LP", "LQ"):
                    out.extend(range(t_val - 2 * eps, t_val + 1))
                else:
                    out.extend(range(t_val, t_val + 2 * eps + 1))
        if any(r.kind == TYPE_CLOSE for r in other_runs):
            # middle region of the other curve: spans below 2*eps only
            if var in ("LP", "LQ"):
                out.extend(range(hi_ext - 2 * eps + 1, lo_ext + 1))
            else:
                out.extend(range(hi_ext, lo_ext + 2 * eps))
        seen = []
        for v in out:
            if v is None or (var in ("LP", "LQ") and v <= lo_ext) or (var in ("RP", "RQ") and v >= hi_ext):
                if v not in seen:
                    seen.append(v)
        return seen

    for lp in options("LP"):
        for rp in options("RP"):
            if lp is not None and rp is not None and not (rp > lp):
                continue
            for lq in options("LQ"):
                for rq in options("RQ"):
                    if lq is not None and rq is not None and not (rq > lq):
                        continue
                    yield {"LP": lp, "RP": rp, "LQ": lq, "RQ": rq}


def _attempt(diagram, typed, anchoring, p_runs, q_runs, rho, tau, values, eps) -> Optional[Witness]:
    ext_p = _anchored_extent(typed, anchoring, rho, tau, "P")
    ext_q = _anchored_extent(typed, anchoring, rho, tau, "Q")
    lp, rp = values["LP"], values["RP"]
    lq, rq = values["LQ"], values["RQ"]
    if ext_p is not None:
        if lp is not None and lp > ext_p[0]:
            return None
        if rp is not None and rp < ext_p[1]:
            return None
    if ext_q is not None:
        if lq is not None and lq > ext_q[0]:
            return None
        if rq is not None and rq < ext_q[1]:
            return None

    placements: dict[tuple[str, int], list[int]] = {}

    for runs, other_lo, other_hi, own_lo, own_hi in (
        (q_runs, lp, rp, lq, rq),
        (p_runs, lq, rq, lp, rp),
    ):
        for run in runs:
            path = _place_run(run, other_lo, other_hi, own_lo, own_hi, rho, tau, eps)
            if path is None:
                return None
            for off, idx in enumerate(range(run.first, run.last + 1)):
                placements[(run.curve, idx)] = [path[off], path[off + 1]]

    # assemble curves from anchored frames and run paths
    curves = {}
    for curve, segs in (("P", typed.p_segs), ("Q", typed.q_segs)):
        verts: list[Optional[int]] = [None] * (len(segs) + 1)
        for k, seg in enumerate(segs):
            node = (curve, k)
            frame = anchoring.frame_of.get(node)
            if frame is not None:
                start, sigma = anchoring.frames[frame][node]
                g = _glob(frame, start, rho, tau)
                gs = rho * sigma if frame == 1 else sigma
                pair = [g, g + gs * seg.length]
            elif node in placements:
                pair = placements[node]
            else:
                return None
            for slot, val in zip((k, k + 1), pair):
                if verts[slot] is None:
                    verts[slot] = val
                elif verts[slot] != val:
                    return None
        # orientation must not change at subdivision vertices
        for k in range(len(segs) - 1):
            if segs[k].orig == segs[k + 1].orig:
                d0 = verts[k + 1] - verts[k]
                d1 = verts[k + 2] - verts[k + 1]
                if d0 == 0 or d1 == 0 or (d0 > 0) != (d1 > 0):
                    return None
        # keep original vertices only
        original: list[int] = [verts[0]]
        for k in range(len(segs) - 1):
            if segs[k].orig != segs[k + 1].orig:
                original.append(verts[k + 1])
        original.append(verts[-1])
        if any(a == b for a, b in zip(original, original[1:])):
            return None
        curves[curve] = original

    witness = Witness(Curve1D(curves["P"]), Curve1D(curves["Q"]), diagram.epsilon)
    if compute_diagram_1d(witness.curve_p, witness.curve_q, diagram.epsilon) == diagram:
        return witness
    return None


def _place_run(
    run: Run,
    other_lo: Optional[int],
    other_hi: Optional[int],
    own_lo: Optional[int],
    own_hi: Optional[int],
    rho,
    tau,
    eps,
) -> Optional[list[int]]:
    """Concrete vertex positions for an uncertainty run under candidate
    extreme values (other curve's extremes define the region; the run's own
    declared extremes bound middle runs so the two middles stay mutually
    within eps)."""
    att_lo = _att_global(run.attach_lo, rho, tau)
    att_hi = _att_global(run.attach_hi, rho, tau)

    if run.kind == TYPE_FAR:
        if other_lo is None or other_hi is None:
            return None
        left_b = other_lo - eps
        right_b = other_hi + eps
        side = None
        for att in (att_lo, att_hi):
            if att is None:
                continue
            if att[0] <= left_b:
                s = "L"
            elif att[0] >= right_b:
                s = "R"
            else:
                return None  # attachment inside the forbidden band
            if side is not None and side != s:
                return None
            side = s
        if side is None:
            return None  # a far run detached at both ends means an empty diagram
        # region coordinates: distance away from the boundary
        flip = -1 if side == "L" else 1
        boundary = left_b if side == "L" else right_b
        return _run_path(run, att_lo, att_hi, boundary, flip, bound=None, eps=eps, strict_free=True)

    # middle run: confined to [other_hi - eps, other_lo + eps], intersected
    # with the run's own declared hull
    if other_lo is None or other_hi is None:
        return None
    lo_val = other_hi - eps
    hi_val = other_lo + eps
    if own_lo is not None and own_lo > lo_val:
        lo_val = own_lo
    if own_hi is not None and own_hi < hi_val:
        hi_val = own_hi
    r_size = hi_val - lo_val
    if r_size < 1:
        return None
    return _run_path(run, att_lo, att_hi, lo_val, 1, bound=r_size, eps=eps, strict_free=False)


def _att_global(att, rho, tau):
    if att is None:
        return None
    frame, value, forced = att
    g = _glob(frame, value, rho, tau)
    gf = None
    if forced is not None:
        gf = rho * forced if frame == 1 else forced
    return (g, gf)


def _run_path(run: Run, att_lo, att_hi, base: int, flip: int, bound: Optional[int], eps: int, strict_free: bool) -> Optional[list[int]]:
    """Solve one run in region coordinates pos = flip * (value - base).

    Far runs (strict_free) keep every unattached vertex strictly beyond the
    eps boundary at region coordinate 0; middle runs use closed guards
    everywhere since full cells are closed conditions.
    """

    def to_region(v: int) -> int:
        return flip * (v - base)

    def to_value(p: int) -> int:
        return base + flip * p

    start_c = end_c = None
    forced_first = forced_last = None
    if att_lo is not None:
        start_c = to_region(att_lo[0])
        if att_lo[1] is not None:
            forced_first = att_lo[1] * flip
    if att_hi is not None:
        end_c = to_region(att_hi[0])
        if att_hi[1] is not None:
            forced_last = att_hi[1] * flip

    limit = bound
    for c in (start_c, end_c):
        if c is not None and (c < 0 or (limit is not None and c > limit)):
            return None
    table = fixed_boundary_dp(
        run.lengths,
        limit,
        start_constraint=start_c,
        end_constraint=end_c,
        forced_first=forced_first,
        forced_last=forced_last,
        interior_lo_strict=strict_free,
        interior_hi_strict=strict_free,
    )
    accepted = table.accepted()
    if strict_free and start_c is None:
        accepted &= ~1  # a free far end must stay strictly beyond the boundary
        if limit is not None and limit <= table.cap:
            accepted &= ~(1 << limit)
    if accepted == 0:
        return None
    start_pos = (accepted & -accepted).bit_length() - 1
    path = dp_extract_path(table, start_pos)
    if path is None:
        return None
    return [to_value(p) for p in path]


def _far_witness(diagram: FreeSpaceDiagram1D) -> Optional[Witness]:
    eps = diagram.epsilon
    p_pts = [Fraction(0)]
    for w in diagram.col_widths:
        p_pts.append(p_pts[-1] + w)
    span_p = max(p_pts) - min(p_pts)
    span_q = sum(diagram.row_heights)
    q0 = min(p_pts) + span_p + span_q + 2 * eps + 1
    q_pts = [q0]
    for h in diagram.row_heights:
        q_pts.append(q_pts[-1] + h)
    witness = Witness(Curve1D(p_pts), Curve1D(q_pts), eps)
    if compute_diagram_1d(witness.curve_p, witness.curve_q, eps) == diagram:
        return witness
    return None


def _closed_window_table(lengths, alpha: int) -> DPTable:
    # full cells are closed conditions: vertices may touch the window ends
    return fixed_boundary_dp(
        lengths,
        alpha,
        start_constraint=None,
        end_constraint=None,
        interior_lo_strict=False,
        interior_hi_strict=False,
    )


def _all_full_witness(diagram: FreeSpaceDiagram1D, typed: TypedDiagram) -> Optional[Witness]:
    eps = typed.eps
    tables_p = {a: _closed_window_table(typed.widths, a) for a in range(1, 2 * eps + 1)}
    tables_q = {a: _closed_window_table(typed.heights, a) for a in range(1, 2 * eps + 1)}
    for a_p in range(1, 2 * eps + 1):
        if not tables_p[a_p].realizable():
            continue
        for a_q in range(1, 2 * eps + 1 - a_p + 1):
            if a_p + a_q > 2 * eps:
                break
            if not tables_q[a_q].realizable():
                continue
            path_p = _first_path(tables_p[a_p])
            path_q = _first_path(tables_q[a_q])
            if path_p is None or path_q is None:
                continue
            # center the two windows on each other
            shift = Fraction(a_p - a_q, 2)
            p_pts = [Fraction(v) for v in path_p]
            q_pts = [Fraction(v) + shift for v in path_q]
            witness = Witness(Curve1D(p_pts), Curve1D(q_pts), diagram.epsilon)
            if compute_diagram_1d(witness.curve_p, witness.curve_q, diagram.epsilon) == diagram:
                return witness
    return None


def _first_path(table: DPTable) -> Optional[list[int]]:
    accepted = table.accepted()
    if accepted == 0:
        return None
    start = (accepted & -accepted).bit_length() - 1
    return dp_extract_path(table, start)
