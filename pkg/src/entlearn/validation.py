"""Input validation helpers shared across the package.

All quantum objects are plain numpy arrays; these helpers coerce dtype,
check the physics invariants (normalization, Hermiticity, positivity) and
raise ``ValueError`` with a usable message when something is off.
"""

from __future__ import annotations

import numpy as np

STATE_NORM_ATOL = 1e-10
HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
EIGENVALUE_FLOOR = -1e-8


def n_qubits_of(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension, or raise."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def check_state_vector(psi, n_qubits: int | None = None) -> np.ndarray:
    """Coerce to a complex 1-D array and check normalization."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError(f"state vector must be 1-D, got shape {psi.shape}")
    n = n_qubits_of(psi.size)
    if n_qubits is not None and n != n_qubits:
        raise ValueError(f"state has {n} qubits, expected {n_qubits}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > STATE_NORM_ATOL:
        raise ValueError(f"state vector norm {norm!r} deviates from 1")
    return psi


def check_hermitian(m, atol: float = HERMITICITY_ATOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = np.abs(m - m.conj().T).max()
    if dev > atol:
        raise ValueError(f"matrix is not Hermitian (max |M - M^dag| = {dev:.3e})")
    return m


def check_density_matrix(rho, n_qubits: int | None = None) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a density matrix.

    Eigenvalues in [-1e-8, 0) are treated as floating-point dust; anything
    more negative raises.
    """
    rho = check_hermitian(rho)
    n = n_qubits_of(rho.shape[0])
    if n_qubits is not None and n != n_qubits:
        raise ValueError(f"density matrix has {n} qubits, expected {n_qubits}")
    tr = rho.trace().real
    if abs(tr - 1.0) > TRACE_ATOL:
        raise ValueError(f"density matrix trace {tr!r} deviates from 1")
    lam_min = np.linalg.eigvalsh(rho)[0]
    if lam_min < EIGENVALUE_FLOOR:
        raise ValueError(f"density matrix has negative eigenvalue {lam_min:.3e}")
    return rho


def check_subsystem(region, n_qubits: int) -> tuple[int, ...]:
    """Validate a subsystem given as 1-based qubit labels; returns it sorted."""
    region = tuple(int(q) for q in region)
    if not region:
        raise ValueError("subsystem must contain at least one qubit")
    if len(set(region)) != len(region):
        raise ValueError(f"subsystem {region} contains duplicate qubits")
    for q in region:
        if not 1 <= q <= n_qubits:
            raise ValueError(f"qubit label {q} outside [1, {n_qubits}]")
    return tuple(sorted(region))
