"""Phased qudit Pauli words and Clifford conjugation.

A word is stored in the canonical form

    W^p * prod_i X_i^{x_i} Z_i^{z_i}

where W = exp(i*pi/L) and L = lcm of the site dimensions.  For a uniform
register of dimension d this is the half-integer phase convention: W^2 is
the d-th root of unity, so p lives in Z_{2d} and odd p encodes factors like
-W^{-1} that single-qudit phase gates emit.  Exponents are reduced site by
site: x_i, z_i in Z_{d_i}.

Conjugation by the named Clifford gates is exact, including phases, and is
extended multiplicatively to arbitrary powers and tensor factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
import re

import numpy as np

GATE_KINDS = ("I", "X", "Z", "H", "S", "CX", "CZ", "SWAP", "CbXd", "CdXb")
_ONE_QUDIT = {"I", "X", "Z", "H", "S"}
_TWO_QUDIT = {"CX", "CZ", "SWAP", "CbXd", "CdXb"}


class ShapeError(ValueError):
    """Register shapes or dimensions do not match."""


class UnsupportedGateError(ValueError):
    """Gate kind outside the Clifford set handled symbolically."""


def _as_dims(dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 2 for d in dims):
        raise ShapeError("site dimensions must be >= 2")
    return dims


class PauliWord:
    """Immutable phased tensor product of qudit X and Z powers."""

    __slots__ = ("dims", "phase", "xpow", "zpow", "_L")

    def __init__(self, dims, phase, xpow, zpow):
        self.dims = _as_dims(dims)
        self._L = lcm(*self.dims)
        n = len(self.dims)
        x = np.asarray(xpow, dtype=np.int64).copy()
        z = np.asarray(zpow, dtype=np.int64).copy()
        if x.shape != (n,) or z.shape != (n,):
            raise ShapeError("exponent vectors must match register size")
        d = np.asarray(self.dims, dtype=np.int64)
        x %= d
        z %= d
        x.setflags(write=False)
        z.setflags(write=False)
        self.xpow = x
        self.zpow = z
        self.phase = int(phase) % (2 * self._L)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, dims) -> "PauliWord":
        dims = _as_dims(dims)
        n = len(dims)
        return cls(dims, 0, np.zeros(n, np.int64), np.zeros(n, np.int64))

    @classmethod
    def uniform(cls, d: int, n: int, phase=0, xpow=None, zpow=None) -> "PauliWord":
        dims = (d,) * n
        x = np.zeros(n, np.int64) if xpow is None else xpow
        z = np.zeros(n, np.int64) if zpow is None else zpow
        return cls(dims, phase, x, z)

    @classmethod
    def x_op(cls, dims, site: int, power: int = 1) -> "PauliWord":
        w = cls.identity(dims)
        x = w.xpow.copy()
        x[site] = power
        return cls(dims, 0, x, w.zpow)

    @classmethod
    def z_op(cls, dims, site: int, power: int = 1) -> "PauliWord":
        w = cls.identity(dims)
        z = w.zpow.copy()
        z[site] = power
        return cls(dims, 0, w.xpow, z)

    # -- basic properties ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        d = set(self.dims)
        if len(d) != 1:
            raise ShapeError("mixed-dimension word has no single dim")
        return d.pop()

    @property
    def half_phase_order(self) -> int:
        """p is an exponent of exp(i*pi/L) with this L."""
        return self._L

    def is_identity(self) -> bool:
        return self.phase == 0 and not self.xpow.any() and not self.zpow.any()

    def weight(self) -> int:
        return int(np.count_nonzero(self.xpow | self.zpow))

    def support(self) -> tuple[int, ...]:
        return tuple(np.nonzero(self.xpow | self.zpow)[0])

    def __eq__(self, other) -> bool:
        return (isinstance(other, PauliWord) and self.dims == other.dims
                and self.phase == other.phase
                and np.array_equal(self.xpow, other.xpow)
                and np.array_equal(self.zpow, other.zpow))

    def __hash__(self):
        return hash((self.dims, self.phase, self.xpow.tobytes(), self.zpow.tobytes()))

    def __repr__(self):
        return f"PauliWord({self.text()})"

    # -- group operations ----------------------------------------------------

    def _check_shape(self, other: "PauliWord") -> None:
        if self.dims != other.dims:
            raise ShapeError("words live on different registers")

    def __mul__(self, other: "PauliWord") -> "PauliWord":
        return pauli_mul(self, other)

    def adjoint(self) -> "PauliWord":
        # (W^p X^x Z^z)^-1 = W^-p Z^-z X^-x = W^{-p} w^{xz} X^-x Z^-z
        d = np.asarray(self.dims, np.int64)
        cross = int(np.sum((2 * (self._L // d)) * self.xpow * self.zpow))
        return PauliWord(self.dims, -self.phase + cross, -self.xpow, -self.zpow)

    def power(self, k: int) -> "PauliWord":
        if k < 0:
            return self.adjoint().power(-k)
        out = PauliWord.identity(self.dims)
        for _ in range(k):
            out = pauli_mul(out, self)
        return out

    def with_phase(self, phase: int) -> "PauliWord":
        return PauliWord(self.dims, phase, self.xpow, self.zpow)

    # -- text form -----------------------------------------------------------

    def text(self) -> str:
        factors = " (x) ".join(
            f"X^{int(x)}Z^{int(z)}" for x, z in zip(self.xpow, self.zpow))
        return f"w^{self.phase}/2 * {factors}"

    @classmethod
    def from_text(cls, s: str, dims) -> "PauliWord":
        m = re.fullmatch(r"w\^(-?\d+)/2 \* (.+)", s.strip())
        if not m:
            raise ValueError(f"unparsable pauli text: {s!r}")
        phase = int(m.group(1))
        xs, zs = [], []
        for tok in m.group(2).split(" (x) "):
            fm = re.fullmatch(r"X\^(-?\d+)Z\^(-?\d+)", tok.strip())
            if not fm:
                raise ValueError(f"unparsable factor: {tok!r}")
            xs.append(int(fm.group(1)))
            zs.append(int(fm.group(2)))
        return cls(dims, phase, np.array(xs), np.array(zs))


def pauli_mul(p: PauliWord, q: PauliWord) -> PauliWord:
    """Canonical-form product PQ with exact phase."""
    p._check_shape(q)
    d = np.asarray(p.dims, np.int64)
    L = p._L
    # move each Z_i^{b} of P past X_i^{a} of Q: Z^b X^a = w_i^{ab} X^a Z^b
    cross = int(np.sum((2 * (L // d)) * p.zpow * q.xpow))
    return PauliWord(p.dims, p.phase + q.phase + cross,
                     p.xpow + q.xpow, p.zpow + q.zpow)


def commutator_exponent(p: PauliWord, q: PauliWord) -> int:
    """c with PQ = exp(2*pi*i*c/L) QP; for uniform d this is c in Z_d.

    Convention: c = zpow_P . xpow_Q - xpow_P . zpow_Q (mod d), weighted by
    L/d_i on mixed registers.
    """
    p._check_shape(q)
    d = np.asarray(p.dims, np.int64)
    L = p._L
    w = L // d
    return int(np.sum(w * (p.zpow * q.xpow - p.xpow * q.zpow)) % L)


@dataclass(frozen=True)
class GateApplication:
    """A named Clifford gate acting on specific register sites.

    power covers integer powers; power=-1 is the adjoint.  Hybrid kinds fix
    their site dimensions: CbXd has a 2-dim control and 4-dim target, CdXb
    the reverse.
    """

    kind: str
    targets: tuple[int, ...]
    power: int = 1

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise UnsupportedGateError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        arity = 1 if self.kind in _ONE_QUDIT else 2
        if len(self.targets) != arity:
            raise ShapeError(f"{self.kind} takes {arity} target(s)")
        if len(set(self.targets)) != len(self.targets):
            raise ShapeError("targets must be distinct")

    def adjoint(self) -> "GateApplication":
        return GateApplication(self.kind, self.targets, -self.power)

    def check_dims(self, dims) -> None:
        for t in self.targets:
            if t < 0 or t >= len(dims):
                raise ShapeError(f"target {t} outside register")
        if self.kind == "CbXd":
            if dims[self.targets[0]] != 2 or dims[self.targets[1]] != 4:
                raise ShapeError("CbXd needs a qubit control and d=4 target")
        elif self.kind == "CdXb":
            if dims[self.targets[0]] != 4 or dims[self.targets[1]] != 2:
                raise ShapeError("CdXb needs a d=4 control and qubit target")
        elif self.kind in _TWO_QUDIT:
            a, b = self.targets
            if dims[a] != dims[b]:
                raise ShapeError(f"{self.kind} requires equal dimensions")


def _base_images(kind: str, targets, dims) -> dict:
    """Images of X_t, Z_t (t in targets) under one forward application."""
    L = lcm(*dims)

    def word(exps, phase=0):
        x = np.zeros(len(dims), np.int64)
        z = np.zeros(len(dims), np.int64)
        for site, (xe, ze) in exps.items():
            x[site] += xe
            z[site] += ze
        return PauliWord(dims, phase, x, z)

    if kind == "I":
        (t,) = targets
        return {("X", t): word({t: (1, 0)}), ("Z", t): word({t: (0, 1)})}
    if kind == "X":
        (t,) = targets
        dt = dims[t]
        return {("X", t): word({t: (1, 0)}),
                ("Z", t): word({t: (0, 1)}, -2 * (L // dt))}
    if kind == "Z":
        (t,) = targets
        dt = dims[t]
        return {("X", t): word({t: (1, 0)}, 2 * (L // dt)),
                ("Z", t): word({t: (0, 1)})}
    if kind == "H":
        (t,) = targets
        return {("X", t): word({t: (0, 1)}),
                ("Z", t): word({t: (-1, 0)})}
    if kind == "S":
        (t,) = targets
        dt = dims[t]
        # S X S^dag = -w^{-1/2} X Z ;  -1 = W^L, w^{-1/2} = W^{-L/d}
        return {("X", t): word({t: (1, 1)}, L - L // dt),
                ("Z", t): word({t: (0, 1)})}
    if kind == "CX":
        c, t = targets
        return {("X", c): word({c: (1, 0), t: (1, 0)}),
                ("X", t): word({t: (1, 0)}),
                ("Z", c): word({c: (0, 1)}),
                ("Z", t): word({c: (0, -1), t: (0, 1)})}
    if kind == "CZ":
        a, b = targets
        return {("X", a): word({a: (1, 0), b: (0, 1)}),
                ("X", b): word({a: (0, 1), b: (1, 0)}),
                ("Z", a): word({a: (0, 1)}),
                ("Z", b): word({b: (0, 1)})}
    if kind == "SWAP":
        a, b = targets
        return {("X", a): word({b: (1, 0)}),
                ("X", b): word({a: (1, 0)}),
                ("Z", a): word({b: (0, 1)}),
                ("Z", b): word({a: (0, 1)})}
    if kind == "CbXd":
        c, t = targets          # dims 2, 4
        return {("X", c): word({c: (1, 0), t: (2, 0)}),
                ("X", t): word({t: (1, 0)}),
                ("Z", c): word({c: (0, 1)}),
                ("Z", t): word({c: (0, 1), t: (0, 1)})}
    if kind == "CdXb":
        c, t = targets          # dims 4, 2
        return {("X", c): word({c: (1, 0), t: (1, 0)}),
                ("X", t): word({t: (1, 0)}),
                ("Z", c): word({c: (0, 1)}),
                ("Z", t): word({c: (0, 2), t: (0, 1)})}
    raise UnsupportedGateError(kind)


def _base_images_inverse(kind: str, targets, dims) -> dict:
    """Images of X_t, Z_t under one application of the adjoint gate."""
    L = lcm(*dims)

    def word(exps, phase=0):
        x = np.zeros(len(dims), np.int64)
        z = np.zeros(len(dims), np.int64)
        for site, (xe, ze) in exps.items():
            x[site] += xe
            z[site] += ze
        return PauliWord(dims, phase, x, z)

    if kind in ("I", "SWAP", "CbXd", "CdXb"):
        return _base_images(kind, targets, dims)
    if kind == "X":
        (t,) = targets
        dt = dims[t]
        return {("X", t): word({t: (1, 0)}),
                ("Z", t): word({t: (0, 1)}, 2 * (L // dt))}
    if kind == "Z":
        (t,) = targets
        dt = dims[t]
        return {("X", t): word({t: (1, 0)}, -2 * (L // dt)),
                ("Z", t): word({t: (0, 1)})}
    if kind == "H":
        (t,) = targets
        return {("X", t): word({t: (0, -1)}),
                ("Z", t): word({t: (1, 0)})}
    if kind == "S":
        (t,) = targets
        dt = dims[t]
        # S^dag X S = -w^{1/2} X Z^dag
        return {("X", t): word({t: (1, -1)}, L + L // dt),
                ("Z", t): word({t: (0, 1)})}
    if kind == "CX":
        c, t = targets
        return {("X", c): word({c: (1, 0), t: (-1, 0)}),
                ("X", t): word({t: (1, 0)}),
                ("Z", c): word({c: (0, 1)}),
                ("Z", t): word({c: (0, 1), t: (0, 1)})}
    if kind == "CZ":
        a, b = targets
        return {("X", a): word({a: (1, 0), b: (0, -1)}),
                ("X", b): word({a: (0, -1), b: (1, 0)}),
                ("Z", a): word({a: (0, 1)}),
                ("Z", b): word({b: (0, 1)})}
    raise UnsupportedGateError(kind)


def _local(dims, site, xe, ze) -> PauliWord:
    x = np.zeros(len(dims), np.int64)
    z = np.zeros(len(dims), np.int64)
    x[site] = xe
    z[site] = ze
    return PauliWord(dims, 0, x, z)


def _apply_images(images: dict, word: PauliWord) -> PauliWord:
    """Rewrite word through an image table covering its support sites."""
    out = PauliWord.identity(word.dims).with_phase(word.phase)
    for site in range(word.n):
        xe = int(word.xpow[site])
        ze = int(word.zpow[site])
        if xe == 0 and ze == 0:
            continue
        gx = images.get(("X", site))
        gz = images.get(("Z", site))
        if gx is None and gz is None:
            out = pauli_mul(out, _local(word.dims, site, xe, ze))
            continue
        out = pauli_mul(out, gx.power(xe))
        out = pauli_mul(out, gz.power(ze))
    return out


def conjugate(gate: GateApplication, word: PauliWord) -> PauliWord:
    """g W g^dag, exact in phase, for any named Clifford gate power."""
    gate.check_dims(word.dims)
    k = gate.power
    if gate.kind in ("SWAP", "CbXd", "CdXb"):
        k %= 2
    if k == 0:
        return word
    if k > 0:
        images = _base_images(gate.kind, gate.targets, word.dims)
    else:
        images = _base_images_inverse(gate.kind, gate.targets, word.dims)
        k = -k
    out = word
    for _ in range(k):
        out = _apply_images(images, out)
    return out


class CliffordMap:
    """Symplectic-with-phases action of a Clifford circuit on Pauli words."""

    def __init__(self, dims, images=None):
        self.dims = _as_dims(dims)
        n = len(self.dims)
        if images is None:
            images = {}
            for i in range(n):
                images[("X", i)] = PauliWord.x_op(self.dims, i)
                images[("Z", i)] = PauliWord.z_op(self.dims, i)
        self.images = images

    @classmethod
    def identity(cls, dims) -> "CliffordMap":
        return cls(dims)

    def is_identity(self) -> bool:
        n = len(self.dims)
        return all(self.images[("X", i)] == PauliWord.x_op(self.dims, i)
                   and self.images[("Z", i)] == PauliWord.z_op(self.dims, i)
                   for i in range(n))

    def then_gate(self, gate: GateApplication) -> "CliffordMap":
        new = {key: conjugate(gate, w) for key, w in self.images.items()}
        return CliffordMap(self.dims, new)

    def apply(self, word: PauliWord) -> PauliWord:
        if word.dims != self.dims:
            raise ShapeError("word register does not match map")
        return _apply_images(self.images, word)

    def compose(self, earlier: "CliffordMap") -> "CliffordMap":
        """Map equal to: apply `earlier`, then self."""
        new = {key: self.apply(w) for key, w in earlier.images.items()}
        return CliffordMap(self.dims, new)


def clifford_of_gates(gates, dims) -> CliffordMap:
    """Composition of per-gate conjugations in circuit time order."""
    m = CliffordMap.identity(dims)
    for g in gates:
        if not isinstance(g, GateApplication):
            raise UnsupportedGateError(f"non-gate event {g!r} in Clifford circuit")
        m = m.then_gate(g)
    return m
