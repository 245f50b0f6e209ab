"""Linear algebra over the ring Z_m for small moduli.

Stabilizer bookkeeping needs exact solves modulo the qudit dimension, which
may be composite (d=4).  Gaussian elimination with unit-pivot preference is
not enough there, so rows are kept in a Howell-style normal form: every
element of the row span reduces to zero by greedy pivot reduction, which
makes membership tests and solves deterministic even in the presence of
zero divisors.
"""

from __future__ import annotations

from math import gcd

import numpy as np


def _inv(a: int, m: int) -> int:
    a %= m
    g = gcd(a, m)
    if g != 1:
        raise ZeroDivisionError(f"{a} is not a unit mod {m}")
    return pow(a, -1, m)


def solve_scalar(p: int, v: int, m: int):
    """Smallest q with q*p == v (mod m), or None if unsolvable."""
    p %= m
    v %= m
    g = gcd(p, m)
    if v % g:
        return None
    mg = m // g
    q = (v // g) * _inv(p // g, mg) % mg
    return q


class RowBasis:
    """Howell-style row basis over Z_m with coefficient tracking.

    Rows are added one at a time; each stored row remembers the combination
    of input rows that produced it, so membership queries can return the
    coefficients expressing a vector in terms of the original inputs.
    """

    def __init__(self, ncols: int, m: int):
        self.m = m
        self.ncols = ncols
        self.rows: list[np.ndarray] = []      # reduced rows
        self.combos: list[np.ndarray] = []    # combo over input rows
        self.ninputs = 0

    def _pivot(self, row: np.ndarray) -> int:
        nz = np.nonzero(row)[0]
        return int(nz[0]) if len(nz) else -1

    def _insert(self, row: np.ndarray, combo: np.ndarray) -> None:
        m = self.m
        row = row % m
        while True:
            c = self._pivot(row)
            if c < 0:
                return
            hit = None
            for i, r in enumerate(self.rows):
                if self._pivot(r) == c:
                    hit = i
                    break
            if hit is None:
                # normalize pivot: scale by a unit so the pivot divides m
                p = int(row[c])
                g = gcd(p, m)
                u = solve_scalar(p // g, 1, m // g)
                # lift u to a unit mod m (u is a unit mod m//g; adjust)
                uu = u
                while gcd(uu, m) != 1:
                    uu += m // g
                row = (row * uu) % m
                combo = (combo * uu) % m
                self.rows.append(row)
                self.combos.append(combo)
                # annihilator row for non-unit pivots (Howell condition)
                p = int(row[c])
                if gcd(p, m) != 1:
                    k = m // gcd(p, m)
                    self._insert((row * k) % m, (combo * k) % m)
                self._sort()
                return
            r, rc = self.rows[hit], self.combos[hit]
            p, q = int(r[c]), int(row[c])
            t = solve_scalar(p, q, m)
            if t is not None:
                row = (row - t * r) % m
                combo = (combo - t * rc) % m
                continue
            # pivot of stored row cannot clear ours: combine via gcd
            g, u, v = _xgcd(p, q)
            new = (u * r + v * row) % m
            newc = (u * rc + v * combo) % m
            # replace stored row by the gcd row, re-insert both leftovers
            old, oldc = r, rc
            del self.rows[hit], self.combos[hit]
            self._insert(new, newc)
            self._insert(old, oldc)
            continue

    def _sort(self) -> None:
        order = sorted(range(len(self.rows)), key=lambda i: self._pivot(self.rows[i]))
        self.rows = [self.rows[i] for i in order]
        self.combos = [self.combos[i] for i in order]

    def add(self, row) -> None:
        row = np.asarray(row, dtype=np.int64) % self.m
        combo = np.zeros(self.ninputs + 1, dtype=np.int64)
        combo[self.ninputs] = 1
        for i in range(len(self.combos)):
            self.combos[i] = np.concatenate(
                [self.combos[i], np.zeros(1, dtype=np.int64)])
        self.ninputs += 1
        self._insert(row, combo)

    def reduce(self, vec):
        """Reduce vec against the basis.

        Returns (residual, coeffs): residual is vec minus a combination of
        the *input* rows given by coeffs.  Membership holds iff residual
        is zero.
        """
        m = self.m
        v = np.asarray(vec, dtype=np.int64) % m
        coeffs = np.zeros(self.ninputs, dtype=np.int64)
        for r, rc in zip(self.rows, self.combos):
            c = self._pivot(r)
            if c < 0 or v[c] == 0:
                continue
            t = solve_scalar(int(r[c]), int(v[c]), m)
            if t is None:
                continue
            v = (v - t * r) % m
            coeffs = (coeffs + t * rc) % m
        return v, coeffs

    def contains(self, vec) -> bool:
        residual, _ = self.reduce(vec)
        return not residual.any()

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def has_unit_pivots(self) -> bool:
        return all(gcd(int(r[self._pivot(r)]), self.m) == 1 for r in self.rows)


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def row_basis(rows, m: int, ncols=None) -> RowBasis:
    rows = [np.asarray(r, dtype=np.int64) for r in rows]
    if ncols is None:
        ncols = len(rows[0])
    basis = RowBasis(ncols, m)
    for r in rows:
        basis.add(r)
    return basis


def rank(rows, m: int) -> int:
    """Number of Howell rows of the span (pivots may be non-units)."""
    return row_basis(rows, m).nrows


def solve(A, b, m: int):
    """One solution x of A @ x == b (mod m), or None.

    Works column-wise: x expresses b as a combination of A's columns, so we
    feed A's columns to a RowBasis and ask for membership coefficients.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise ValueError("shape mismatch")
    basis = RowBasis(A.shape[0], m)
    for j in range(A.shape[1]):
        basis.add(A[:, j])
    residual, coeffs = basis.reduce(b)
    if residual.any():
        return None
    return coeffs % m


def nullspace(A, m: int) -> list[np.ndarray]:
    """Generating set for {x : A @ x == 0 (mod m)}."""
    A = np.asarray(A, dtype=np.int64) % m
    nr, nc = A.shape
    # kernel via row reduction of [A^T | I]
    aug = np.concatenate([A.T % m, np.eye(nc, dtype=np.int64)], axis=1)
    basis = RowBasis(nr + nc, m)
    for r in aug:
        basis.add(r)
    out = []
    for r in basis.rows:
        if not r[:nr].any() and r[nr:].any():
            out.append(r[nr:] % m)
    # annihilator multiples of rows with non-unit leading part also vanish
    for r in basis.rows:
        lead = r[:nr]
        if lead.any():
            p = int(lead[np.nonzero(lead)[0][0]])
            g = gcd(p, m)
            if g != 1:
                k = m // g
                if not ((k * lead) % m).any():
                    cand = (k * r[nr:]) % m
                    if cand.any():
                        out.append(cand)
    return out
