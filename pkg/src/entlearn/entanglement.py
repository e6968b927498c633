"""Exact entanglement quantities of qubit states.

Renyi entropies, partial-transpose moments and coherence, computed from
eigenvalues of (reduced / partially transposed) density matrices. All
entropies are in bits (log base 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import check_density_matrix, check_state_vector, check_subsystem, n_qubits_of

METRIC_KINDS = ("renyi", "pt_moment", "coherence")


def density_matrix(psi) -> np.ndarray:
    """Pure-state projector |psi><psi|."""
    psi = check_state_vector(psi)
    return np.outer(psi, psi.conj())


def partial_trace(rho, keep, n_qubits: int | None = None) -> np.ndarray:
    """Trace out every qubit not in ``keep`` (1-based labels).

    The kept qubits stay in their original order.
    """
    rho = check_density_matrix(rho, n_qubits)
    n = n_qubits_of(rho.shape[0])
    keep = check_subsystem(keep, n)
    kept = [q - 1 for q in keep]
    tensor = rho.reshape((2,) * (2 * n))
    # repeated integer labels on traced-out row/column axis pairs contract them
    in_sub = list(range(n)) + [n + q if q in kept else q for q in range(n)]
    out_sub = kept + [n + q for q in kept]
    d = 2 ** len(kept)
    return np.einsum(tensor, in_sub, out_sub).reshape(d, d)


def partial_transpose(rho, region_a, n_qubits: int | None = None) -> np.ndarray:
    """Transpose the tensor indices of the qubits in ``region_a`` only."""
    rho = check_density_matrix(rho, n_qubits)
    n = n_qubits_of(rho.shape[0])
    region_a = check_subsystem(region_a, n)
    tensor = rho.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for q in region_a:
        axes[q - 1], axes[n + q - 1] = axes[n + q - 1], axes[q - 1]
    d = 2**n
    return tensor.transpose(axes).reshape(d, d)


def _clamped_spectrum(rho) -> np.ndarray:
    return np.clip(np.linalg.eigvalsh(rho), 0.0, 1.0)


def renyi_entropy(rho_reduced, n: int) -> float:
    """Order-n Renyi entropy log2(tr rho^n) / (1 - n), in bits."""
    n = int(n)
    if n < 2:
        raise ValueError(f"Renyi order must be >= 2, got {n}")
    lam = _clamped_spectrum(check_density_matrix(rho_reduced))
    tr_n = np.clip((lam**n).sum(), np.finfo(float).tiny, 1.0)
    return float(np.log2(tr_n) / (1 - n))


def von_neumann_entropy(rho) -> float:
    """-sum(lam log2 lam) over the spectrum, with 0 log 0 := 0."""
    lam = _clamped_spectrum(check_density_matrix(rho))
    lam = lam[lam > 0.0]
    return float(-(lam * np.log2(lam)).sum())


def pt_moment(rho, region_a, n: int) -> float:
    """Trace of the n-th power of the partial transpose, via its spectrum."""
    n = int(n)
    if n < 1:
        raise ValueError(f"moment order must be >= 1, got {n}")
    mu = np.linalg.eigvalsh(partial_transpose(rho, region_a))
    return float((mu**n).sum())


def coherence(rho) -> float:
    """Entropy gained by deleting off-diagonal elements, S(rho_diag) - S(rho)."""
    rho = check_density_matrix(rho)
    p = np.clip(rho.diagonal().real, 0.0, 1.0)
    p = p[p > 0.0]
    s_diag = float(-(p * np.log2(p)).sum())
    return s_diag - von_neumann_entropy(rho)


@dataclass(frozen=True)
class MetricSpec:
    """One slot of the entanglement target vector.

    ``region_b`` is only meaningful for ``pt_moment``, where the metric acts
    on the reduced state of A u B with the transpose taken over A. ``order``
    is ignored for ``coherence``.
    """

    kind: str
    region_a: tuple[int, ...]
    region_b: tuple[int, ...] | None = None
    order: int = 2

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ValueError(f"unknown metric kind {self.kind!r}")
        object.__setattr__(self, "region_a", tuple(sorted(int(q) for q in self.region_a)))
        if self.region_b is not None:
            object.__setattr__(
                self, "region_b", tuple(sorted(int(q) for q in self.region_b))
            )
        object.__setattr__(self, "order", int(self.order))
        if self.kind == "renyi" and self.order < 2:
            raise ValueError("renyi metric requires order >= 2")
        if self.kind == "pt_moment":
            if self.region_b is None:
                raise ValueError("pt_moment requires region_b")
            if set(self.region_a) & set(self.region_b):
                raise ValueError("pt_moment regions must be disjoint")
            if self.order < 1:
                raise ValueError("pt_moment requires order >= 1")
        elif self.region_b is not None:
            raise ValueError(f"{self.kind} takes no region_b")

    def validate_for(self, n_qubits: int) -> None:
        check_subsystem(self.region_a, n_qubits)
        if self.region_b is not None:
            check_subsystem(self.region_b, n_qubits)

    @property
    def name(self) -> str:
        a = "".join(str(q) for q in self.region_a)
        if self.kind == "renyi":
            return f"S{self.order}(A={a})"
        if self.kind == "coherence":
            return f"C(A={a})"
        b = "".join(str(q) for q in self.region_b)
        return f"P{self.order}(A={a},B={b})"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "region_a": list(self.region_a), "order": self.order}
        d["region_b"] = list(self.region_b) if self.region_b is not None else None
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MetricSpec":
        region_b = d.get("region_b")
        return cls(
            kind=d["kind"],
            region_a=tuple(d["region_a"]),
            region_b=tuple(region_b) if region_b is not None else None,
            order=d.get("order", 2),
        )


def evaluate_metrics(psi, specs) -> np.ndarray:
    """Evaluate every MetricSpec on a pure state, in order."""
    psi = check_state_vector(psi)
    n = n_qubits_of(psi.size)
    rho = density_matrix(psi)
    reduced: dict[tuple[int, ...], np.ndarray] = {}

    def reduced_state(keep: tuple[int, ...]) -> np.ndarray:
        if keep not in reduced:
            reduced[keep] = rho if len(keep) == n else partial_trace(rho, keep, n)
        return reduced[keep]

    out = np.empty(len(specs))
    for k, spec in enumerate(specs):
        spec.validate_for(n)
        if spec.kind == "renyi":
            out[k] = renyi_entropy(reduced_state(spec.region_a), spec.order)
        elif spec.kind == "coherence":
            out[k] = coherence(reduced_state(spec.region_a))
        else:
            keep = tuple(sorted(set(spec.region_a) | set(spec.region_b)))
            rho_ab = reduced_state(keep)
            # positions of A inside the reduced register
            mapped_a = tuple(keep.index(q) + 1 for q in spec.region_a)
            out[k] = pt_moment(rho_ab, mapped_a, spec.order)
    return out
