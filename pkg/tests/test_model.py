import random
from fractions import Fraction

import pytest

from fsreal import (
    CellContent,
    Curve1D,
    CurveD,
    FreeSpaceDiagram1D,
    FreeSpaceMatrix,
    PointSeq1D,
    UnitIntervalArrangement,
    rat,
    rat_str,
    validate_diagram,
)
from fsreal.model import cell_edge_interval, consistency_problems, structural_problems

from conftest import random_integer_diagram


def test_rat_parsing():
    assert rat("1/3") == Fraction(1, 3)
    assert rat("-7") == Fraction(-7)
    assert rat(Fraction(2, 4)) == Fraction(1, 2)
    assert rat_str(Fraction(6, 4)) == "3/2"
    assert rat_str(Fraction(5)) == "5"


def test_rational_arithmetic_is_exact():
    rng = random.Random(0)
    for _ in range(200):
        a = Fraction(rng.randint(-999, 999), rng.randint(1, 99))
        b = Fraction(rng.randint(-999, 999), rng.randint(1, 99))
        assert (a + b) - b == a


def test_curve1d_invariants():
    c = Curve1D([0, 2, 1])
    assert c.segment_lengths == (Fraction(2), Fraction(1))
    assert c.orientations == (1, -1)
    assert c.folds_at(1)
    with pytest.raises(ValueError):
        Curve1D([0])
    with pytest.raises(ValueError):
        Curve1D([0, 0, 1])


def test_point_seq_allows_repeats():
    s = PointSeq1D([1, 1, 2])
    assert len(s) == 3


def test_curved_checks_dimension():
    c = CurveD([(0, 0), (1, 2)])
    assert c.dimension == 2
    with pytest.raises(ValueError):
        CurveD([(0,), (1,)])
    with pytest.raises(ValueError):
        CurveD([(0, 0), (1, 2, 3)])


def test_matrix_rejects_bad_entries():
    with pytest.raises(ValueError):
        FreeSpaceMatrix([[0, 2]])
    m = FreeSpaceMatrix([[1, 0], [0, 1]])
    assert m.n_rows == 2 and m.m_cols == 2


def _single_cell(cell, w=2, h=2, eps=1):
    return FreeSpaceDiagram1D(eps, [w], [h], [[cell]])


def test_validate_single_partial_ok():
    d = _single_cell(CellContent.partial(1, -1, 1))
    assert validate_diagram(d) == []


def test_validate_slab_width():
    d = _single_cell(CellContent(status="partial", sigma=1, c_lo=Fraction(0), c_hi=Fraction(1)))
    assert any("slab width" in p for p in validate_diagram(d))


def test_validate_empty_white_set():
    d = _single_cell(CellContent.partial(1, 10, 12))
    assert any("white set empty" in p for p in validate_diagram(d))


def test_validate_full_coverage_rejected():
    d = _single_cell(CellContent.partial(1, -10, -8), w=Fraction(1, 2), h=Fraction(1, 2), eps=1)
    # slab way below the cell: empty; slab covering it entirely: not partial
    assert validate_diagram(d)
    d2 = FreeSpaceDiagram1D(4, [1], [1], [[CellContent.partial(1, -4, 4)]])
    assert any("covers the whole cell" in p for p in validate_diagram(d2))


def test_boundary_consistency_detection():
    good = CellContent.partial(1, -1, 1)
    bad = CellContent.partial(1, 0, 2)
    d = FreeSpaceDiagram1D(1, [2, 2], [2], [[good], [bad]])
    assert any("white sets disagree" in p for p in validate_diagram(d))
    assert structural_problems(d) == []
    assert consistency_problems(d)


def test_boundary_check_symmetric():
    rng = random.Random(3)
    for seed in range(30):
        d = random_integer_diagram(seed, rng.randint(1, 4), rng.randint(1, 3), rng.randint(1, 3))
        for j in range(d.m_rows):
            for i in range(d.n_cols - 1):
                left = cell_edge_interval(d.cells[i][j], d.col_widths[i], d.row_heights[j], "R")
                right = cell_edge_interval(d.cells[i + 1][j], d.col_widths[i + 1], d.row_heights[j], "L")
                assert (left == right) == (right == left)


def test_forward_diagrams_always_validate():
    for seed in range(60):
        rng = random.Random(seed)
        d = random_integer_diagram(seed, rng.randint(1, 5), rng.randint(1, 4), rng.randint(1, 4))
        assert validate_diagram(d) == []


def test_arrangement_cells_partition_covered_range():
    arr = UnitIntervalArrangement([0, Fraction(3, 4), 3], Fraction(1, 2))
    cells = arr.cells()
    assert cells[0].cover == frozenset()
    assert cells[-1].cover == frozenset()
    for cell in cells:
        assert cell.cover == arr.cover_at(cell.representative)
    interior = cells[1:-1]
    for a, b in zip(interior, interior[1:]):
        assert a.hi == b.lo
