"""Qudit folded surface codes: algebra, construction, verification, decoding."""

__version__ = "0.1.0"

from .pauli import (PauliWord, GateApplication, CliffordMap, pauli_mul,
                    commutator_exponent, conjugate, clifford_of_gates)
from .circuits import ScheduledCircuit, Prepare, Measure
from .codes import (StabilizerCode, FoldLayout, build_square, build_diamond,
                    build_steane, build_cone, fold_square, assign_bipartition,
                    code_distance)

__all__ = [
    "PauliWord", "GateApplication", "CliffordMap", "pauli_mul",
    "commutator_exponent", "conjugate", "clifford_of_gates",
    "ScheduledCircuit", "Prepare", "Measure",
    "StabilizerCode", "FoldLayout", "build_square", "build_diamond",
    "build_steane", "build_cone", "fold_square", "assign_bipartition",
    "code_distance",
]
