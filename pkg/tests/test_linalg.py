"""Exact and floating determinants, rank, and kernel extraction."""

import random
from fractions import Fraction

import pytest

from projmet.linalg import det, mat_vec, rank_kernel


def cofactor_det(m):
    """Independent reference determinant by Laplace expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _random_exact(rng, n):
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 3))
             for _ in range(n)] for _ in range(n)]


def test_exact_det_matches_cofactor_expansion():
    rng = random.Random(17)
    for n in (1, 2, 3, 4, 5, 6):
        for _ in range(4):
            m = _random_exact(rng, n)
            assert det(m) == cofactor_det(m)


def test_float_det_close_to_exact():
    rng = random.Random(23)
    for _ in range(10):
        m = _random_exact(rng, 5)
        exact = det(m)
        approx = det([[float(v) for v in row] for row in m])
        assert abs(approx - float(exact)) < 1e-8 * max(1.0, abs(float(exact)))


def test_det_of_singular_matrix_is_zero():
    rng = random.Random(29)
    m = _random_exact(rng, 5)
    m[3] = [2 * v for v in m[1]]  # force a dependent row
    assert det(m) == 0


def test_rank_of_identity():
    eye = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
    r = rank_kernel(eye)
    assert r.rank == 6 and len(r.kernel) == 0 and r.exact


def test_zero_matrix_kernel_is_standard_basis():
    z = [[Fraction(0)] * 4 for _ in range(4)]
    r = rank_kernel(z)
    assert r.rank == 0
    assert len(r.kernel) == 4
    for i, v in enumerate(r.kernel):
        assert v[i] == 1
        assert all(v[j] == 0 for j in range(4) if j != i)


def test_kernel_vectors_annihilate_matrix():
    rng = random.Random(31)
    for _ in range(10):
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(6)]
                for _ in range(3)]
        # pad with dependent combinations so the kernel is non-trivial
        rows.append([a + b for a, b in zip(rows[0], rows[1])])
        r = rank_kernel(rows)
        assert r.rank <= 3
        assert len(r.kernel) == 6 - r.rank
        for v in r.kernel:
            assert all(s == 0 for s in mat_vec(rows, v))


def test_kernel_normalised_to_unit_peak():
    rows = [[Fraction(1), Fraction(2), Fraction(4)]]
    r = rank_kernel(rows)
    for v in r.kernel:
        peak = max(abs(c) for c in v)
        assert peak == 1
        assert any(c == 1 for c in v)


def test_rank_float_with_clear_gap():
    rows = [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [1.0, 1.0, 1e-15],
    ]
    r = rank_kernel(rows, tol=1e-9)
    assert r.rank == 2
    assert not r.exact
    assert len(r.kernel) == 1
    v = r.kernel[0]
    assert abs(v[2]) == max(abs(c) for c in v)


def test_rank_float_marginal_pivot_flagged():
    # a pivot sitting just above the cut is reported as marginal
    rows = [
        [1.0, 0.0],
        [0.0, 5e-9],
    ]
    r = rank_kernel(rows, tol=1e-9)
    assert r.marginal


def test_rank_exact_never_marginal():
    rows = [[Fraction(1, 10 ** 12), Fraction(0)],
            [Fraction(0), Fraction(1, 10 ** 15)]]
    r = rank_kernel(rows)
    assert r.rank == 2 and not r.marginal and r.exact


def test_rectangular_input():
    rows = [[Fraction(v) for v in row]
            for row in ([1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0])]
    r = rank_kernel(rows)
    assert r.rank == 2
    assert len(r.kernel) == 2
    for v in r.kernel:
        assert all(s == 0 for s in mat_vec(rows, v))


def test_bad_inputs_rejected():
    with pytest.raises(ValueError):
        rank_kernel([])
    with pytest.raises(ValueError):
        rank_kernel([[Fraction(1), Fraction(2)], [Fraction(1)]])
    with pytest.raises(ValueError):
        det([[Fraction(1), Fraction(2)]])
