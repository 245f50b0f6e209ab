"""Modular linear algebra, exercised hardest at the composite modulus."""

import numpy as np
import pytest

from foldqec import linalg

MODULI = [2, 3, 4, 5]


def brute_membership(rows, vec, m):
    from itertools import product
    rows = [np.asarray(r) % m for r in rows]
    vec = np.asarray(vec) % m
    for coeffs in product(range(m), repeat=len(rows)):
        acc = np.zeros_like(vec)
        for c, r in zip(coeffs, rows):
            acc = (acc + c * r) % m
        if np.array_equal(acc, vec):
            return True
    return False


@pytest.mark.parametrize("m", MODULI)
def test_membership_matches_bruteforce(m):
    rng = np.random.default_rng(m)
    for _ in range(25):
        rows = rng.integers(0, m, size=(3, 4))
        basis = linalg.row_basis(rows, m)
        for _ in range(8):
            v = rng.integers(0, m, size=4)
            assert basis.contains(v) == brute_membership(rows, v, m)


@pytest.mark.parametrize("m", MODULI)
def test_reduce_coefficients_reconstruct(m):
    rng = np.random.default_rng(10 + m)
    for _ in range(20):
        rows = rng.integers(0, m, size=(4, 5))
        basis = linalg.row_basis(rows, m)
        coeffs = rng.integers(0, m, size=4)
        v = (coeffs @ rows) % m
        residual, got = basis.reduce(v)
        assert not residual.any()
        assert np.array_equal((got @ rows) % m, v)


@pytest.mark.parametrize("m", MODULI)
def test_solve(m):
    rng = np.random.default_rng(20 + m)
    for _ in range(20):
        A = rng.integers(0, m, size=(4, 6))
        x = rng.integers(0, m, size=6)
        b = (A @ x) % m
        sol = linalg.solve(A, b, m)
        assert sol is not None
        assert np.array_equal((A @ sol) % m, b)


def test_solve_unsolvable():
    A = np.array([[2]])
    assert linalg.solve(A, np.array([1]), 4) is None
    assert linalg.solve(A, np.array([2]), 4) is not None


@pytest.mark.parametrize("m", MODULI)
def test_nullspace(m):
    rng = np.random.default_rng(30 + m)
    for _ in range(15):
        A = rng.integers(0, m, size=(3, 5))
        null = linalg.nullspace(A, m)
        for v in null:
            assert not ((A @ v) % m).any()
        # completeness on a small brute-force check
        from itertools import product
        brute = {tuple(x) for x in product(range(m), repeat=5)
                 if not ((A @ np.array(x)) % m).any()}
        spanned = set()
        if null:
            for coeffs in product(range(m), repeat=len(null)):
                acc = np.zeros(5, dtype=np.int64)
                for c, nvec in zip(coeffs, null):
                    acc = (acc + c * nvec) % m
                spanned.add(tuple(int(t) for t in acc))
        else:
            spanned = {tuple([0] * 5)}
        assert spanned == brute


def test_rank_zero_divisors():
    # rows 2*e1, 2*e2 over Z_4 span a strict submodule: Howell keeps them
    rows = np.array([[2, 0], [0, 2]])
    assert linalg.rank(rows, 4) == 2
    basis = linalg.row_basis(rows, 4)
    assert not basis.has_unit_pivots()
    assert basis.contains([2, 2])
    assert not basis.contains([1, 0])
