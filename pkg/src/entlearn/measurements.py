"""Local Pauli measurement sets and their expectation values.

The static set (network input for ground states) is all single-qubit
operators followed by all nearest-neighbour two-qubit operators, in a fixed
canonical order that dataset files and trained networks rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pauli import PAULI_AXES, Hamiltonian, PauliString, pauli_matrix
from .qsim import evolve_grid
from .validation import check_state_vector


@dataclass(frozen=True)
class MeasurementSet:
    n_qubits: int
    operators: tuple[PauliString, ...]
    _matrices: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = [p.label for p in self.operators]
        if len(set(labels)) != len(labels):
            raise ValueError("measurement set contains duplicate operators")
        for p in self.operators:
            if p.n_qubits != self.n_qubits:
                raise ValueError("operator size does not match measurement set")

    def __len__(self) -> int:
        return len(self.operators)

    def matrices(self) -> np.ndarray:
        """Stacked dense operator matrices, memoized."""
        if self._matrices is None:
            stack = np.stack([pauli_matrix(p) for p in self.operators])
            object.__setattr__(self, "_matrices", stack)
        return self._matrices


def static_measurement_set(n_qubits: int) -> MeasurementSet:
    """Canonical 1- and 2-body set: 3N single-qubit + 9(N-1) nearest-neighbour.

    Order: sigma_a^i for i = 1..N with a in (x, y, z), then
    sigma_a^i sigma_b^(i+1) for i = 1..N-1 with (a, b) row-major over
    (x, y, z) x (x, y, z).
    """
    if n_qubits < 2:
        raise ValueError("static measurement set needs at least 2 qubits")
    ops = [
        PauliString.single_site(n_qubits, i, a)
        for i in range(1, n_qubits + 1)
        for a in PAULI_AXES
    ]
    ops += [
        PauliString.two_site(n_qubits, i, a, i + 1, b)
        for i in range(1, n_qubits)
        for a in PAULI_AXES
        for b in PAULI_AXES
    ]
    return MeasurementSet(n_qubits, tuple(ops))


def single_qubit_measurement_set(n_qubits: int) -> MeasurementSet:
    """The 3N single-qubit operators, same (i, a) order as the static set."""
    ops = [
        PauliString.single_site(n_qubits, i, a)
        for i in range(1, n_qubits + 1)
        for a in PAULI_AXES
    ]
    return MeasurementSet(n_qubits, tuple(ops))


def measure_expectations(psi, mset: MeasurementSet) -> np.ndarray:
    """Expectation value of each operator, in set order."""
    psi = check_state_vector(psi, mset.n_qubits)
    mats = mset.matrices()
    return np.einsum("i,oij,j->o", psi.conj(), mats, psi).real


@dataclass(frozen=True)
class TimeTraceGrid:
    """Single-qubit expectations on a uniform time grid.

    Row s (s = 1..n_steps) holds the 3N values at time s*tau, columns
    ordered qubit-major: (q1 x, q1 y, q1 z, q2 x, ...).
    """

    n_qubits: int
    n_steps: int
    tau: float
    values: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.tau * np.arange(1, self.n_steps + 1)


def time_traces(h: Hamiltonian, psi0, n_steps: int, tau: float) -> TimeTraceGrid:
    """Evolve psi0 under h and record single-qubit traces at s*tau, s = 1..S."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if not tau > 0:
        raise ValueError("tau must be positive")
    mset = single_qubit_measurement_set(h.n_qubits)
    times = tau * np.arange(1, n_steps + 1)
    states = evolve_grid(h, psi0, times)  # (S, 2^n)
    mats = mset.matrices()
    values = np.einsum("si,oij,sj->so", states.conj(), mats, states).real
    return TimeTraceGrid(h.n_qubits, int(n_steps), float(tau), values)
