import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trimodel import exactlin as el


F2 = el.PrimeField(2)
F5 = el.PrimeField(5)


def test_prime_field_validation():
    el.PrimeField(2)
    el.PrimeField(97)
    with pytest.raises(ValueError):
        el.PrimeField(1)
    with pytest.raises(ValueError):
        el.PrimeField(4)
    with pytest.raises(ValueError):
        el.PrimeField(101)


def test_field_inverse():
    for p in (2, 3, 5, 97):
        f = el.PrimeField(p)
        for x in range(1, p):
            assert (x * f.inv(x)) % p == 1
    with pytest.raises(ZeroDivisionError):
        F2.inv(0)


def test_rank_identity_and_zero():
    assert el.rank(el.Mat.identity(F2, 2)) == 2
    assert el.rank(el.Mat.zeros(F2, 3, 4)) == 0


def test_rank_hand_case():
    assert el.rank(el.Mat(F2, [[1, 1], [1, 1]])) == 1


def test_solve_identity():
    a = el.Mat.identity(F5, 3)
    b = np.array([2, 3, 4])
    assert np.array_equal(el.solve(a, b), b)


def test_solve_inconsistent():
    a = el.Mat.zeros(F2, 2, 2)
    assert el.solve(a, [1, 0]) is None


def test_solve_free_variables_pinned():
    a = el.Mat(F2, [[1, 1], [0, 0]])
    x = el.solve(a, [1, 0])
    assert np.array_equal(x, [1, 0])


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        el.solve(el.Mat.identity(F2, 2), [1, 0, 0])


def test_kernel_identity_and_zero():
    assert el.kernel_basis(el.Mat.identity(F2, 3)) == []
    assert len(el.kernel_basis(el.Mat.zeros(F2, 2, 3))) == 3


def test_kernel_hand_case():
    ker = el.kernel_basis(el.Mat(F2, [[1, 1]]))
    assert len(ker) == 1
    assert np.array_equal(ker[0], [1, 1])


def test_in_span_cases():
    ok, coeffs = el.in_span([0, 0], [[1, 0], [0, 1]], 2)
    assert ok and not np.any(coeffs)
    ok, coeffs = el.in_span([1, 0], [], 2)
    assert not ok and coeffs is None
    ok, coeffs = el.in_span([1, 0], [[1, 1], [0, 1]], 2)
    assert ok and np.array_equal(coeffs, [1, 1])


@st.composite
def small_matrix(draw, max_dim=6, ps=(2, 3, 5)):
    p = draw(st.sampled_from(ps))
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(0, p - 1),
                            min_size=rows * cols, max_size=rows * cols))
    return p, np.array(entries, dtype=np.int64).reshape(rows, cols)


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_rank_transpose_invariant(mp):
    p, m = mp
    assert el.array_rank(m, p) == el.array_rank(m.T, p)


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_rank_nullity(mp):
    p, m = mp
    assert m.shape[1] == el.array_rank(m, p) + len(el.array_kernel(m, p))


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_solve_is_exact(mp):
    p, m = mp
    rng = np.random.default_rng(0)
    x0 = rng.integers(0, p, size=m.shape[1])
    b = (m @ x0) % p
    x = el.array_solve(m, b, p)
    assert x is not None
    assert np.array_equal((m @ x) % p, b)


@given(small_matrix())
@settings(max_examples=100, deadline=None)
def test_kernel_vectors_annihilate(mp):
    p, m = mp
    for v in el.array_kernel(m, p):
        assert not np.any((m @ v) % p)


@given(small_matrix(max_dim=7))
@settings(max_examples=200, deadline=None)
def test_fast_rank_agrees(mp):
    p, m = mp
    assert el.fast_rank(m, p) == el.array_rank(m, p)


@pytest.mark.parametrize("p,nvecs", [(2, 8), (3, 5)])
def test_in_span_agrees_with_enumeration(p, nvecs):
    rng = np.random.default_rng(3)
    for _ in range(25):
        dim = int(rng.integers(1, 5))
        cols = [rng.integers(0, p, size=dim) for _ in range(nvecs)]
        v = rng.integers(0, p, size=dim)
        brute = False
        for coeffs in itertools.product(range(p), repeat=nvecs):
            combo = sum(c * w for c, w in zip(coeffs, cols)) % p
            if np.array_equal(combo, v):
                brute = True
                break
        ok, coeffs = el.array_in_span(v, cols, p)
        assert ok == brute
        if ok:
            combo = sum(c * w for c, w in zip(coeffs, cols)) % p
            assert np.array_equal(combo, v)


def test_matmul_mod_p():
    a = el.Mat(F2, [[1, 1], [0, 1]])
    assert (a @ a) == el.Mat(F2, [[1, 0], [0, 1]])


def test_entries_row_major():
    m = el.Mat(F5, [[1, 2], [3, 4]])
    assert m.entries == [1, 2, 3, 4]
    assert m.rows == 2 and m.cols == 2
