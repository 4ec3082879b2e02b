import random
from fractions import Fraction

from fsreal import FreeSpaceMatrix, compute_matrix, solve_discrete_1d
from fsreal.bruteforce import brute_force_discrete_1d
from fsreal.discrete import (
    OrderState,
    bfs_partial_order,
    build_arrangement,
    build_uig,
    choose_left_anchor,
    extend_global_order,
    refine_by_d,
    refine_by_rows,
    verify_and_witness,
)


def test_build_uig_path():
    g = build_uig(FreeSpaceMatrix([[1, 1, 0], [0, 1, 1]]))
    assert g.adj == [0b010, 0b101, 0b010]


def test_build_uig_two_components():
    g = build_uig(FreeSpaceMatrix([[1, 0], [0, 1]]))
    assert g.adj == [0, 0]
    assert g.components() == [[0], [1]]


def test_build_uig_triangle():
    g = build_uig(FreeSpaceMatrix([[1, 1, 1]] * 3))
    assert g.adj == [0b110, 0b101, 0b011]


def test_anchor_candidates_on_path():
    g = build_uig(FreeSpaceMatrix([[1, 1, 0], [0, 1, 1]]))
    classes = choose_left_anchor(g, [0, 1, 2], start=1)
    assert classes == [[0], [2]]  # two singleton candidate classes


def test_anchor_single_vertex():
    g = build_uig(FreeSpaceMatrix([[1]]))
    assert choose_left_anchor(g, [0]) == [[0]]


def test_claw_is_not_realizable():
    # star K_{1,3}: center column 0 shares a row with each leaf
    m = FreeSpaceMatrix([[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1]])
    assert brute_force_discrete_1d(m) is None
    assert solve_discrete_1d(m) is None


def test_bfs_levels_match_graph_distance():
    rng = random.Random(2)
    for _ in range(20):
        m = rng.randint(2, 6)
        n = rng.randint(1, 5)
        ent = [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]
        g = build_uig(FreeSpaceMatrix(ent))
        comp = g.components()[0]
        state = bfs_partial_order(g, [comp[0]])
        # independent BFS distance check
        dist = {comp[0]: 1}
        frontier = [comp[0]]
        while frontier:
            nxt = []
            for v in frontier:
                u = g.adj[v]
                while u:
                    w = (u & -u).bit_length() - 1
                    u &= u - 1
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        assert state.level == dist


def test_refine_by_d_orders_levels():
    # two same-level vertices, one with two next-level neighbors vs none
    #   anchor - a, anchor - b, a - c, a - d
    ent = [
        [1, 1, 0, 0, 0],  # anchor~a
        [1, 0, 1, 0, 0],  # anchor~b
        [0, 1, 0, 1, 0],  # a~c
        [0, 1, 0, 0, 1],  # a~d
    ]
    g = build_uig(FreeSpaceMatrix(ent))
    state = bfs_partial_order(g, [0])
    refine_by_d(g, state)
    assert state.level[1] == state.level[2] == 2
    assert state.d_value[1] > state.d_value[2]


def test_refine_by_d_twins_incomparable():
    g = build_uig(FreeSpaceMatrix([[1, 1, 1]]))
    state = bfs_partial_order(g, [0])
    refine_by_d(g, state)
    assert state.d_value[1] == state.d_value[2]
    assert any(set(cls) == {1, 2} for cls in state.classes)


def test_refine_by_rows_pulls_subset_toward_outside_member():
    # intervals a=0, b=1, c=2, d=3; row {a, c}; class {b, c, d} with a before
    state = OrderState(vertices=[0, 1, 2, 3], level={0: 1, 1: 2, 2: 2, 3: 2})
    state.d_value = {0: 0, 1: 0, 2: 0, 3: 0}
    state.classes = [[0], [1, 2, 3]]
    state.class_of = {0: 0, 1: 1, 2: 1, 3: 1}
    assert refine_by_rows(state, [0b0101]) is not None
    order = extend_global_order(state)
    assert order is not None
    assert order.index(2) < order.index(1) and order.index(2) < order.index(3)


def test_refine_by_rows_inside_one_class_is_handled_at_extension():
    state = OrderState(vertices=[0, 1, 2], level={0: 1, 1: 1, 2: 1})
    state.d_value = {0: 0, 1: 0, 2: 0}
    state.classes = [[0, 1, 2]]
    state.class_of = {0: 0, 1: 0, 2: 0}
    refine_by_rows(state, [0b011])
    assert state.constraints == {}
    assert state.within_rows == {0: [0b011]}
    assert extend_global_order(state) is not None


def test_refine_by_rows_direct_contradiction():
    # outside members on both sides of the class pull the same proper subset
    state = OrderState(
        vertices=[0, 1, 2, 3], level={0: 1, 1: 2, 2: 2, 3: 3}
    )
    state.d_value = {0: 0, 1: 0, 2: 0, 3: 0}
    state.classes = [[0], [1, 2], [3]]
    state.class_of = {0: 0, 1: 1, 2: 1, 3: 2}
    assert refine_by_rows(state, [0b1011]) is None


def test_extension_tie_break_by_index():
    state = OrderState(vertices=[0, 1], level={0: 1, 1: 1})
    state.d_value = {0: 0, 1: 0}
    state.classes = [[0, 1]]
    state.class_of = {0: 0, 1: 0}
    assert extend_global_order(state) == [0, 1]


def test_extension_detects_conflicting_pulls():
    state = OrderState(vertices=[0, 1], level={0: 1, 1: 1})
    state.d_value = {0: 0, 1: 0}
    state.classes = [[0, 1]]
    state.class_of = {0: 0, 1: 0}
    state.constraints = {0: [(0b01, "left"), (0b01, "right")]}
    assert extend_global_order(state) is None


def test_arrangement_path_intersections_match_graph():
    g = build_uig(FreeSpaceMatrix([[1, 1, 0], [0, 1, 1]]))
    pos = build_arrangement([0, 1, 2], g, Fraction(1, 2))
    assert pos is not None
    for u in range(3):
        for v in range(u + 1, 3):
            touching = abs(pos[u] - pos[v]) <= 1
            assert touching == bool(g.adj[u] >> v & 1)


def test_arrangement_single_vertex():
    g = build_uig(FreeSpaceMatrix([[1]]))
    assert build_arrangement([0], g) == {0: Fraction(0)}


def test_arrangement_triangle_fits_unit_window():
    g = build_uig(FreeSpaceMatrix([[1, 1, 1]]))
    pos = build_arrangement([0, 1, 2], g)
    assert pos is not None
    assert max(pos.values()) - min(pos.values()) <= 1


def test_verify_and_witness_finds_prescribed_cells():
    g = build_uig(FreeSpaceMatrix([[1, 0], [1, 1], [0, 1]]))
    pos = build_arrangement([0, 1], g)
    placed = verify_and_witness(pos, [0b01, 0b11, 0b10])
    assert placed is not None and set(placed) == {0, 1, 2}


def test_solve_trivial_yes():
    assert solve_discrete_1d([[1]]) is not None


def test_solve_fixture_no():
    assert solve_discrete_1d([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) is None


def test_solve_fixture_yes_with_verified_witness():
    m = FreeSpaceMatrix([[1, 0], [1, 1], [0, 1]])
    w = solve_discrete_1d(m)
    assert w is not None
    assert compute_matrix(w.curve_p, w.curve_q, w.epsilon) == m


def test_solve_all_zero_matrix():
    m = FreeSpaceMatrix([[0, 0], [0, 0]])
    w = solve_discrete_1d(m)
    assert w is not None
    assert compute_matrix(w.curve_p, w.curve_q, w.epsilon) == m


def test_solve_rescales_to_caller_epsilon():
    m = FreeSpaceMatrix([[1, 0], [1, 1], [0, 1]])
    w = solve_discrete_1d(m, eps=3)
    assert w.epsilon == Fraction(3)
    assert compute_matrix(w.curve_p, w.curve_q, 3) == m


def test_column_permutation_preserves_answer():
    rng = random.Random(9)
    for _ in range(40):
        n, m = rng.randint(1, 4), rng.randint(2, 5)
        ent = [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]
        matrix = FreeSpaceMatrix(ent)
        perm = list(range(m))
        rng.shuffle(perm)
        permuted = FreeSpaceMatrix([[row[p] for p in perm] for row in ent])
        assert (solve_discrete_1d(matrix) is None) == (solve_discrete_1d(permuted) is None)


def test_agreement_with_oracle_random_m5():
    rng = random.Random(21)
    for _ in range(60):
        n, m = rng.randint(1, 5), rng.randint(2, 5)
        ent = [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]
        matrix = FreeSpaceMatrix(ent)
        assert (solve_discrete_1d(matrix) is not None) == (
            brute_force_discrete_1d(matrix) is not None
        )
