"""Exact state-vector oracle for mixed qubit/qudit registers.

Ground truth for every gate identity and circuit-semantics claim in the
package.  Everything here is dense complex arithmetic on registers whose
total dimension stays under a configurable cap, with measurement by exact
eigenprojectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from functools import reduce

import numpy as np

from .pauli import (GateApplication, PauliWord, ShapeError,
                    UnsupportedGateError, commutator_exponent)
from .circuits import Measure, Prepare, ScheduledCircuit

DEFAULT_CAP = 2 ** 16
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
PHASE_TOL = 1e-9


@dataclass(frozen=True)
class Register:
    dims: tuple[int, ...]
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if any(d < 2 for d in self.dims):
            raise ShapeError("site dimensions must be >= 2")
        if self.total_dim > self.cap:
            raise ShapeError(
                f"register dimension {self.total_dim} exceeds cap {self.cap}")

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64)) if self.dims else 1

    @property
    def n(self) -> int:
        return len(self.dims)


class StateVector:
    def __init__(self, register: Register, amplitudes):
        self.register = register
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape != (register.total_dim,):
            raise ShapeError("amplitude length != register dimension")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state not normalized: |psi| = {norm}")
        self.amplitudes = amps / norm

    @classmethod
    def zero(cls, register: Register) -> "StateVector":
        amps = np.zeros(register.total_dim, dtype=np.complex128)
        amps[0] = 1.0
        return cls(register, amps)

    @classmethod
    def basis(cls, register: Register, values) -> "StateVector":
        idx = 0
        for v, d in zip(values, register.dims):
            idx = idx * d + int(v) % d
        amps = np.zeros(register.total_dim, dtype=np.complex128)
        amps[idx] = 1.0
        return cls(register, amps)

    def copy(self) -> "StateVector":
        return StateVector(self.register, self.amplitudes.copy())

    def fidelity(self, other: "StateVector") -> float:
        return abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2

    def debug_json(self) -> list:
        return [[float(a.real), float(a.imag)] for a in self.amplitudes]


class DenseUnitary:
    def __init__(self, register: Register, matrix, register_out: Register | None = None):
        self.register = register
        self.register_out = register_out or register
        mat = np.asarray(matrix, dtype=np.complex128)
        if mat.shape != (self.register_out.total_dim, register.total_dim):
            raise ShapeError("matrix shape does not match registers")
        self.matrix = mat
        if mat.shape[0] == mat.shape[1]:
            err = np.max(np.abs(mat @ mat.conj().T - np.eye(mat.shape[0])))
            if err > UNITARY_TOL:
                raise ValueError(f"matrix not unitary (err {err:.2e})")


def _omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def _single_matrix(kind: str, d: int) -> np.ndarray:
    if kind == "I":
        return np.eye(d, dtype=np.complex128)
    if kind == "X":
        m = np.zeros((d, d), dtype=np.complex128)
        for x in range(d):
            m[(x + 1) % d, x] = 1.0
        return m
    if kind == "Z":
        return np.diag([_omega(d) ** x for x in range(d)])
    if kind == "H":
        w = _omega(d)
        return np.array([[w ** (x * y) / np.sqrt(d) for y in range(d)]
                         for x in range(d)], dtype=np.complex128)
    if kind == "S":
        return np.diag([np.exp(1j * np.pi * (x - d - 2) * x / d)
                        for x in range(d)])
    if kind == "T":
        if d != 2:
            raise UnsupportedGateError("T is a qubit gate")
        return np.diag([1.0, (1 + 1j) / np.sqrt(2)])
    raise UnsupportedGateError(kind)


def _two_matrix(kind: str, da: int, db: int) -> np.ndarray:
    n = da * db
    m = np.zeros((n, n), dtype=np.complex128)
    if kind == "CX":
        if da != db:
            raise ShapeError("CX requires equal dims")
        for x in range(da):
            for y in range(db):
                m[x * db + (x + y) % db, x * db + y] = 1.0
        return m
    if kind == "CZ":
        if da != db:
            raise ShapeError("CZ requires equal dims")
        w = _omega(da)
        return np.diag([w ** (x * y) for x in range(da) for y in range(db)])
    if kind == "SWAP":
        if da != db:
            raise ShapeError("SWAP requires equal dims")
        for x in range(da):
            for y in range(db):
                m[y * db + x, x * db + y] = 1.0
        return m
    if kind == "CbXd":
        if (da, db) != (2, 4):
            raise ShapeError("CbXd acts on dims (2, 4)")
        for x in range(2):
            for y in range(4):
                m[x * 4 + (y + 2 * x) % 4, x * 4 + y] = 1.0
        return m
    if kind == "CdXb":
        if (da, db) != (4, 2):
            raise ShapeError("CdXb acts on dims (4, 2)")
        for x in range(4):
            for y in range(2):
                m[x * 2 + (y + x) % 2, x * 2 + y] = 1.0
        return m
    if kind == "CS":
        if (da, db) != (2, 2):
            raise ShapeError("CS acts on qubit pairs")
        return np.diag([1j ** (x * y) for x in range(2) for y in range(2)])
    raise UnsupportedGateError(kind)


def fusion_matrix() -> DenseUnitary:
    """F: qubit pair (x, y) -> d=4 qudit |x + 2y>."""
    m = np.zeros((4, 4), dtype=np.complex128)
    for x in range(2):
        for y in range(2):
            m[x + 2 * y, 2 * x + y] = 1.0
    return DenseUnitary(Register((2, 2)), m, Register((4,)))


def ccx_matrix() -> DenseUnitary:
    m = np.zeros((8, 8), dtype=np.complex128)
    for x in range(2):
        for y in range(2):
            for z in range(2):
                m[4 * x + 2 * y + ((z + x * y) % 2), 4 * x + 2 * y + z] = 1.0
    return DenseUnitary(Register((2, 2, 2)), m)


def gate_matrix(gate: GateApplication, dims) -> DenseUnitary:
    """Matrix of a gate application on its target sites only."""
    gate.check_dims(dims)
    tdims = tuple(dims[t] for t in gate.targets)
    if len(gate.targets) == 1:
        base = _single_matrix(gate.kind, tdims[0])
    else:
        base = _two_matrix(gate.kind, *tdims)
    k = gate.power
    if k < 0:
        base = base.conj().T
        k = -k
    return DenseUnitary(Register(tdims), np.linalg.matrix_power(base, k))


def pauli_matrix(word: PauliWord) -> DenseUnitary:
    """Dense matrix of a phased Pauli word."""
    L = word.half_phase_order
    mats = []
    for d, x, z in zip(word.dims, word.xpow, word.zpow):
        m = (np.linalg.matrix_power(_single_matrix("X", d), int(x))
             @ np.linalg.matrix_power(_single_matrix("Z", d), int(z)))
        mats.append(m)
    full = reduce(np.kron, mats) if mats else np.eye(1)
    phase = np.exp(1j * np.pi * word.phase / L)
    return DenseUnitary(Register(word.dims), phase * full)


def _apply_matrix(amps: np.ndarray, dims, mat: np.ndarray, targets) -> np.ndarray:
    tensor = amps.reshape(dims)
    n = len(dims)
    tdims = [dims[t] for t in targets]
    mat_t = mat.reshape(tdims + tdims)
    in_axes = list(range(len(targets), 2 * len(targets)))
    tensor = np.tensordot(mat_t, tensor, axes=(in_axes, list(targets)))
    # tensordot puts target axes first; restore original order
    rest = [a for a in range(n) if a not in targets]
    perm = list(targets) + rest
    inv = np.argsort(perm)
    return tensor.transpose(inv).reshape(-1)


def apply_gate(state: StateVector, gate: GateApplication) -> StateVector:
    dims = state.register.dims
    u = gate_matrix(gate, dims)
    amps = _apply_matrix(state.amplitudes, dims, u.matrix, list(gate.targets))
    return StateVector(state.register, amps)


def apply_circuit(circuit: ScheduledCircuit, state: StateVector) -> StateVector:
    """Unitary part only; prepare/measure events are rejected."""
    if tuple(circuit.dims) != state.register.dims:
        raise ShapeError("circuit register does not match state")
    out = state
    for ev in circuit.events():
        if not isinstance(ev, GateApplication):
            raise UnsupportedGateError(
                "apply_circuit handles gates only; use run_circuit")
        out = apply_gate(out, ev)
    return out


def circuit_unitary(circuit: ScheduledCircuit, cap: int = DEFAULT_CAP) -> DenseUnitary:
    reg = Register(tuple(circuit.dims), cap=cap)
    u = np.eye(reg.total_dim, dtype=np.complex128)
    for ev in circuit.events():
        if not isinstance(ev, GateApplication):
            raise UnsupportedGateError("unitary of a circuit with measurements")
        g = gate_matrix(ev, reg.dims)
        u = _embed(g.matrix, reg.dims, list(ev.targets)) @ u
    return DenseUnitary(reg, u)


def _embed(mat: np.ndarray, dims, targets) -> np.ndarray:
    total = int(np.prod(dims))
    out = np.zeros((total, total), dtype=np.complex128)
    for col in range(total):
        e = np.zeros(total, dtype=np.complex128)
        e[col] = 1.0
        out[:, col] = _apply_matrix(e, dims, mat, targets)
    return out


def pauli_order(word: PauliWord, bound: int | None = None) -> int:
    bound = bound or 2 * word.half_phase_order
    acc = word
    for r in range(1, bound + 1):
        if acc.is_identity():
            return r
        acc = acc * word
    raise ValueError("word has no order within bound")


def measure_pauli(word: PauliWord, state: StateVector, rng,
                  order: int | None = None):
    """Projective measurement of a Pauli word by the Born rule.

    Returns (k, post_state) with measured eigenvalue exp(2*pi*i*k/r) for
    r = order (default: the word's own operator order).
    """
    r = order or pauli_order(word)
    pm = pauli_matrix(word).matrix
    if np.max(np.abs(np.linalg.matrix_power(pm, r) - np.eye(pm.shape[0]))) > 1e-8:
        raise ValueError(f"operator order does not divide {r}")
    powers = [np.eye(pm.shape[0], dtype=np.complex128)]
    for _ in range(r - 1):
        powers.append(powers[-1] @ pm)
    amps = state.amplitudes
    wr = np.exp(2j * np.pi / r)
    projected = []
    probs = np.zeros(r)
    for k in range(r):
        proj = sum(wr ** (-k * j) * (powers[j] @ amps) for j in range(r)) / r
        projected.append(proj)
        probs[k] = np.linalg.norm(proj) ** 2
    probs = np.clip(probs, 0, None)
    probs /= probs.sum()
    k = int(rng.choice(r, p=probs))
    post = projected[k]
    nrm = np.linalg.norm(post)
    if nrm < 1e-12:
        raise RuntimeError("projection onto measured outcome vanished")
    return k, StateVector(state.register, post / nrm)


def expect_eigenvalue(word: PauliWord, state: StateVector):
    """<psi|P|psi>; equals a root of unity iff psi is an eigenstate."""
    pm = pauli_matrix(word).matrix
    return complex(np.vdot(state.amplitudes, pm @ state.amplitudes))


def run_circuit(circuit: ScheduledCircuit, state: StateVector, rng):
    """Execute gates, preparations, and measurements in time order.

    Prepare events assume their slot holds |0>.  Returns (state, outcomes)
    where outcomes maps Measure keys (or site indices) to results.
    """
    dims = state.register.dims
    out = state
    outcomes = {}
    for ev in circuit.events():
        if isinstance(ev, GateApplication):
            out = apply_gate(out, ev)
        elif isinstance(ev, Prepare):
            if ev.basis == "X":
                out = apply_gate(out, GateApplication("H", (ev.site,)))
            elif ev.basis != "Z":
                raise ValueError(f"unknown prepare basis {ev.basis}")
        elif isinstance(ev, Measure):
            d = dims[ev.site]
            if ev.basis == "X":
                out = apply_gate(out, GateApplication("H", (ev.site,), -1))
            elif ev.basis != "Z":
                raise ValueError(f"unknown measure basis {ev.basis}")
            word = PauliWord.z_op(dims, ev.site)
            k, out = measure_pauli(word, out, rng, order=d)
            outcomes[ev.key or ev.site] = k
        else:
            raise UnsupportedGateError(f"unknown event {ev!r}")
    return out, outcomes


def equal_up_to_global_phase(u: DenseUnitary | np.ndarray,
                             v: DenseUnitary | np.ndarray,
                             tol: float = PHASE_TOL) -> bool:
    a = u.matrix if isinstance(u, DenseUnitary) else np.asarray(u)
    b = v.matrix if isinstance(v, DenseUnitary) else np.asarray(v)
    if a.shape != b.shape:
        raise ShapeError("shape mismatch")
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < tol:
        return bool(np.max(np.abs(a)) < tol)
    phase = a[idx] / b[idx]
    if abs(abs(phase) - 1.0) > tol:
        return False
    return bool(np.max(np.abs(a - phase * b)) <= tol)


def states_equal_up_to_phase(a: StateVector, b: StateVector,
                             tol: float = PHASE_TOL) -> bool:
    return abs(abs(np.vdot(a.amplitudes, b.amplitudes)) - 1.0) <= tol


def prepare_logical_zero(code, rng, cap: int = DEFAULT_CAP) -> StateVector:
    """Encode |0bar> by measuring generators on |0...0> and fixing outcomes.

    Measures every generator, then applies the code's syndrome shifters to
    rotate each random outcome back to 0, leaving the +1 eigenspace of all
    generators and of logical Z.
    """
    reg = Register((code.d,) * code.n, cap=cap)
    state = StateVector.zero(reg)
    d = code.d
    results = []
    for g in code.generators:
        k, state = measure_pauli(g, state, rng, order=d)
        results.append(k)
    shifters = code.syndrome_shifters()
    for idx, k in enumerate(results):
        if k:
            correction = shifters[idx].power(-k)
            state = StateVector(reg, pauli_matrix(correction).matrix
                                @ state.amplitudes)
    return state
