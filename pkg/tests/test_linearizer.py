"""Tests for kernel partitions."""

import numpy as np

from algebra.linearizer import partition, shared_quotient_work
from toolkit.random_polys import random_poly


def test_partition_groups_by_kernel(load_corpus):
    e1, e2 = load_corpus("linearization").equations
    p1 = partition(e1)
    sizes = {str(kernel): n for kernel, n in p1.sizes.items()}
    assert sizes == {"f*d(g,x)": 1, "g": 3, "sin(d(g,y))": 1, "1": 1}
    assert p1.term_count() == len(e1) == 6
    assert partition(e2).term_count() == 4


def test_shared_quotient_work_counts_same_kernel_pairs_only(load_corpus):
    e1, e2 = load_corpus("linearization").equations
    assert shared_quotient_work(partition(e1), partition(e2)) == 8
    assert len(e1) * len(e2) == 24


def test_coefficient_and_reassemble(worked):
    e1 = worked.equations[0]
    p1 = partition(e1)
    f_kernel = p1.kernels[0]
    assert str(f_kernel) == "f"
    assert str(p1.coefficient(f_kernel)) == "2*x + 6*y"
    assert p1.reassemble() == e1
    assert p1.size(f_kernel) == 2


def test_random_expressions_reassemble():
    rng = np.random.default_rng(21)
    for _ in range(50):
        expr = random_poly(rng, int(rng.integers(1, 25)), 3, 3, n_unknowns=3)
        p = partition(expr)
        assert p.reassemble() == expr
        assert p.term_count() == len(expr)
        assert set(p.kernels) == set(expr.kernels())
        for kernel in p.kernels:
            assert all(term.kernel.is_one for term in p.coefficient(kernel))
