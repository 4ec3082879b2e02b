import random

import pytest

from fsreal import Curve1D, compute_diagram_1d


def random_integer_curves(seed: int, n_segs: int, m_segs: int, max_step: int = 5):
    rng = random.Random(seed)

    def walk(k):
        pts = [rng.randint(-2, 2)]
        for _ in range(k):
            pts.append(pts[-1] + rng.randint(1, max_step) * rng.choice([-1, 1]))
        return Curve1D(pts)

    return walk(n_segs), walk(m_segs)


def random_integer_diagram(seed: int, n_segs: int, m_segs: int, eps: int, max_step: int = 5):
    p, q = random_integer_curves(seed, n_segs, m_segs, max_step)
    return compute_diagram_1d(p, q, eps)


@pytest.fixture
def partition_diagram():
    from fsreal import gen_partition

    return gen_partition([3, 2, 1, 2])
