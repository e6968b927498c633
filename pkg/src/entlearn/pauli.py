"""Pauli strings and Hamiltonians built from them.

Qubits are labelled 1..n with qubit 1 the leftmost (most significant)
tensor factor. This convention is fixed package-wide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

MAX_QUBITS = 8

PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

PAULI_AXES = "XYZ"


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Pauli operators, e.g. 'XZI' on 3 qubits."""

    n_qubits: int
    axes: tuple[str, ...]

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        object.__setattr__(self, "axes", tuple(self.axes))
        if len(self.axes) != self.n_qubits:
            raise ValueError(
                f"got {len(self.axes)} axes for {self.n_qubits} qubits"
            )
        for a in self.axes:
            if a not in PAULI_1Q:
                raise ValueError(f"unknown Pauli axis {a!r}")

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        return cls(len(label), tuple(label))

    @classmethod
    def single_site(cls, n_qubits: int, qubit: int, axis: str) -> "PauliString":
        """sigma_axis acting on one qubit (1-based label)."""
        axes = ["I"] * n_qubits
        axes[qubit - 1] = axis
        return cls(n_qubits, tuple(axes))

    @classmethod
    def two_site(
        cls, n_qubits: int, qubit_a: int, axis_a: str, qubit_b: int, axis_b: str
    ) -> "PauliString":
        if qubit_a == qubit_b:
            raise ValueError("two_site requires distinct qubits")
        axes = ["I"] * n_qubits
        axes[qubit_a - 1] = axis_a
        axes[qubit_b - 1] = axis_b
        return cls(n_qubits, tuple(axes))

    @property
    def label(self) -> str:
        return "".join(self.axes)

    @property
    def is_identity(self) -> bool:
        return all(a == "I" for a in self.axes)

    @property
    def support(self) -> tuple[int, ...]:
        """1-based labels of qubits acted on non-trivially."""
        return tuple(q + 1 for q, a in enumerate(self.axes) if a != "I")


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense matrix of a Pauli string; qubit 1 is the leftmost Kronecker factor."""
    if p.n_qubits > MAX_QUBITS:
        raise ValueError(
            f"{p.n_qubits} qubits exceeds the supported maximum of {MAX_QUBITS}"
        )
    return reduce(np.kron, (PAULI_1Q[a] for a in p.axes))


@dataclass(frozen=True)
class Hamiltonian:
    """Real-weighted sum of Pauli strings on a fixed number of qubits."""

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]
    # eigendecomposition memo, filled lazily by qsim
    _eig: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple((float(c), p) for c, p in self.terms)
        )
        if not self.terms:
            raise ValueError("Hamiltonian needs at least one term")
        for c, p in self.terms:
            if not np.isfinite(c):
                raise ValueError(f"non-finite coefficient {c!r}")
            if p.n_qubits != self.n_qubits:
                raise ValueError(
                    f"term {p.label} acts on {p.n_qubits} qubits, "
                    f"Hamiltonian has {self.n_qubits}"
                )

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([c for c, _ in self.terms])


def hamiltonian_matrix(h: Hamiltonian) -> np.ndarray:
    """Dense Hermitian matrix sum(c_i * B_i)."""
    dim = 2**h.n_qubits
    m = np.zeros((dim, dim), dtype=complex)
    for c, p in h.terms:
        m += c * pauli_matrix(p)
    return m
