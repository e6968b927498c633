"""Exact solvers: eigendecomposition, ground states, unitary time evolution.

Everything is dense float64/complex128 linear algebra, sized for <= 8 qubits
(matrix dimension <= 256).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import Hamiltonian, PauliString, hamiltonian_matrix, pauli_matrix
from .validation import check_hermitian, check_state_vector

MAX_DIM = 256
DEGENERACY_GAP = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and the unitary of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class GroundStateResult:
    energy: float
    state: np.ndarray
    gap: float
    degenerate: bool


def eig_hermitian(m) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix (dimension <= 256).

    Eigenvalues come out ascending; the result is deterministic for
    bit-identical input.
    """
    m = check_hermitian(m)
    if m.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {m.shape[0]} exceeds maximum {MAX_DIM}")
    w, v = np.linalg.eigh(m)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def _eigensystem(h: Hamiltonian) -> EigenDecomposition:
    """Eigendecomposition of a Hamiltonian, memoized on the instance."""
    if h._eig is None:
        object.__setattr__(h, "_eig", eig_hermitian(hamiltonian_matrix(h)))
    return h._eig


def fix_global_phase(psi: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude amplitude is real positive."""
    k = int(np.argmax(np.abs(psi)))
    phase = psi[k] / abs(psi[k])
    return psi / phase


def ground_state(h: Hamiltonian) -> GroundStateResult:
    """Lowest eigenpair of ``h`` with deterministic global phase.

    If the spectral gap is below 1e-10 the solver's first eigenvector is
    returned unchanged (up to phase) and the result is flagged degenerate.
    """
    eig = _eigensystem(h)
    w = eig.eigenvalues
    psi = fix_global_phase(eig.eigenvectors[:, 0].copy())
    gap = float(w[1] - w[0]) if w.size > 1 else np.inf
    return GroundStateResult(
        energy=float(w[0]),
        state=psi,
        gap=gap,
        degenerate=bool(gap < DEGENERACY_GAP),
    )


def evolve(h: Hamiltonian, psi0, t: float) -> np.ndarray:
    """psi(t) = exp(-i H t) psi0 via the cached eigendecomposition of H."""
    psi0 = check_state_vector(psi0, h.n_qubits)
    if not np.isfinite(t):
        raise ValueError(f"time {t!r} is not finite")
    eig = _eigensystem(h)
    v = eig.eigenvectors
    coeffs = v.conj().T @ psi0
    return v @ (np.exp(-1j * eig.eigenvalues * t) * coeffs)


def evolve_grid(h: Hamiltonian, psi0, times) -> np.ndarray:
    """Evolved states at many times at once; row k is psi(times[k])."""
    psi0 = check_state_vector(psi0, h.n_qubits)
    times = np.asarray(times, dtype=float)
    eig = _eigensystem(h)
    v = eig.eigenvectors
    coeffs = v.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, eig.eigenvalues))
    return (phases * coeffs) @ v.T


def prepare_initial_state(n_qubits: int, theta_y: float, theta_z: float) -> np.ndarray:
    """Product state R_z(theta_z) R_y(theta_y) |0> on every qubit (R_y first).

    R_a(theta) = exp(-i theta sigma_a / 2).
    """
    cy, sy = np.cos(theta_y / 2), np.sin(theta_y / 2)
    single = np.array(
        [np.exp(-1j * theta_z / 2) * cy, np.exp(1j * theta_z / 2) * sy],
        dtype=complex,
    )
    psi = single
    for _ in range(n_qubits - 1):
        psi = np.kron(psi, single)
    return psi


def expectation(psi, p: PauliString) -> float:
    """<psi| P |psi> for a Pauli string; the O(1e-10) imaginary dust is dropped."""
    psi = check_state_vector(psi, p.n_qubits)
    val = np.vdot(psi, pauli_matrix(p) @ psi)
    return float(val.real)
