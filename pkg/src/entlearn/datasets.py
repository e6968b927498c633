"""Dataset generation and the line-oriented dataset file format.

A dataset file is UTF-8 text: line 1 is a JSON header, every further line
one JSON sample ``{"inputs": [...], "targets": [...], "meta": {...}}`` with
floats at full 64-bit precision. Three kinds:

* ``static`` — ground states of random 2-local chain Hamiltonians; inputs
  are the canonical 1-/2-body Pauli expectations, targets the metric vector.
* ``dynamic`` — quench trajectories of the transverse-field Ising chain;
  inputs are flattened single-qubit time traces on [0, T_train], targets
  the metric trajectory on a uniform grid covering (0, T_total].
* ``sweep`` — XXZ anisotropy / XX field sweeps of 4-qubit ground states,
  one sample per grid point, with ground energy and gap in the meta.

Per-sample randomness derives from ``default_rng([master_seed, index])`` so
files regenerate byte-identically regardless of generation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .entanglement import MetricSpec, evaluate_metrics
from .jsonio import dumps, loads
from .measurements import static_measurement_set, time_traces
from .pauli import Hamiltonian, PauliString
from .qsim import evolve_grid, ground_state, prepare_initial_state

DATASET_FORMAT = "entlearn-dataset"
DATASET_VERSION = 1
DATASET_KINDS = ("static", "dynamic", "sweep")
SWEEP_MODELS = ("xxz", "xx")


# ---------------------------------------------------------------------------
# model Hamiltonians

def model1_hamiltonian(n_qubits: int, coefficients) -> Hamiltonian:
    """Random-field/random-coupling chain: coefficients follow the canonical
    measurement-set order (3N single-site terms, then 9(N-1) bond terms)."""
    mset = static_measurement_set(n_qubits)
    coefficients = np.asarray(coefficients, dtype=float)
    if coefficients.shape != (len(mset),):
        raise ValueError(
            f"need {len(mset)} coefficients for {n_qubits} qubits, got {coefficients.shape}"
        )
    return Hamiltonian(n_qubits, tuple(zip(coefficients, mset.operators)))


def sample_model1_hamiltonian(n_qubits: int, rng: np.random.Generator) -> Hamiltonian:
    """All 3N + 9(N-1) coefficients i.i.d. uniform on [-1, 1]."""
    size = len(static_measurement_set(n_qubits))
    return model1_hamiltonian(n_qubits, rng.uniform(-1.0, 1.0, size=size))


def _bond_terms(n_qubits: int, axis: str):
    return [
        PauliString.two_site(n_qubits, i, axis, i + 1, axis)
        for i in range(1, n_qubits)
    ]


def xxz_chain(n_qubits: int, coupling: float, anisotropy: float) -> Hamiltonian:
    """H = -J sum(XX + YY) + Delta sum(ZZ) over nearest neighbours."""
    terms = []
    for axis, c in (("X", -coupling), ("Y", -coupling), ("Z", anisotropy)):
        terms += [(c, p) for p in _bond_terms(n_qubits, axis)]
    return Hamiltonian(n_qubits, tuple(terms))


def xx_chain(n_qubits: int, coupling: float, field_z: float) -> Hamiltonian:
    """H = -J sum(XX + YY) + h_z sum(Z_i)."""
    terms = [(-coupling, p) for a in "XY" for p in _bond_terms(n_qubits, a)]
    terms += [
        (field_z, PauliString.single_site(n_qubits, q, "Z"))
        for q in range(1, n_qubits + 1)
    ]
    return Hamiltonian(n_qubits, tuple(terms))


def quench_hamiltonian(n_qubits: int, coupling: float, field_x: float) -> Hamiltonian:
    """Quench generator H = J sum(ZZ) + g sum(X_i)."""
    terms = [(coupling, p) for p in _bond_terms(n_qubits, "Z")]
    terms += [
        (field_x, PauliString.single_site(n_qubits, q, "X"))
        for q in range(1, n_qubits + 1)
    ]
    return Hamiltonian(n_qubits, tuple(terms))


# ---------------------------------------------------------------------------
# file format

@dataclass(frozen=True)
class DatasetHeader:
    kind: str
    n_qubits: int
    input_dim: int
    target_dim: int
    metric_specs: tuple[MetricSpec, ...]
    seed: int | None = None
    grid: dict | None = None  # dynamic traces/targets layout
    sweep: dict | None = None  # sweep model and parameter grid

    def __post_init__(self):
        if self.kind not in DATASET_KINDS:
            raise ValueError(f"unknown dataset kind {self.kind!r}")
        object.__setattr__(self, "metric_specs", tuple(self.metric_specs))

    def to_dict(self) -> dict:
        return {
            "format": DATASET_FORMAT,
            "version": DATASET_VERSION,
            "kind": self.kind,
            "n_qubits": self.n_qubits,
            "input_dim": self.input_dim,
            "target_dim": self.target_dim,
            "metric_specs": [s.to_dict() for s in self.metric_specs],
            "seed": self.seed,
            "grid": self.grid,
            "sweep": self.sweep,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DatasetHeader":
        if d.get("format") != DATASET_FORMAT:
            raise ValueError(f"not an {DATASET_FORMAT} header")
        return cls(
            kind=d["kind"],
            n_qubits=d["n_qubits"],
            input_dim=d["input_dim"],
            target_dim=d["target_dim"],
            metric_specs=tuple(MetricSpec.from_dict(s) for s in d["metric_specs"]),
            seed=d.get("seed"),
            grid=d.get("grid"),
            sweep=d.get("sweep"),
        )


@dataclass
class Sample:
    inputs: np.ndarray
    targets: np.ndarray
    meta: dict

    def to_dict(self) -> dict:
        return {"inputs": self.inputs, "targets": self.targets, "meta": self.meta}


def write_dataset(path, header: DatasetHeader, samples) -> None:
    with open(path, "w") as f:
        f.write(dumps(header.to_dict()))
        f.write("\n")
        for s in samples:
            if len(s.inputs) != header.input_dim or len(s.targets) != header.target_dim:
                raise ValueError("sample dimensions disagree with header")
            f.write(dumps(s.to_dict()))
            f.write("\n")


def load_dataset(path) -> tuple[DatasetHeader, list[Sample]]:
    with open(path) as f:
        header = DatasetHeader.from_dict(loads(f.readline()))
        samples = []
        for line in f:
            if not line.strip():
                continue
            d = loads(line)
            samples.append(
                Sample(
                    inputs=np.asarray(d["inputs"], dtype=float),
                    targets=np.asarray(d["targets"], dtype=float),
                    meta=d["meta"],
                )
            )
    for s in samples:
        if s.inputs.shape != (header.input_dim,) or s.targets.shape != (header.target_dim,):
            raise ValueError(f"{path}: sample dimensions disagree with header")
    return header, samples


def dataset_arrays(samples: list[Sample]) -> tuple[np.ndarray, np.ndarray]:
    x = np.stack([s.inputs for s in samples]) if samples else np.empty((0, 0))
    y = np.stack([s.targets for s in samples]) if samples else np.empty((0, 0))
    return x, y


# ---------------------------------------------------------------------------
# generators

@dataclass(frozen=True)
class StaticDatasetConfig:
    n_qubits: int
    n_samples: int
    metric_specs: tuple[MetricSpec, ...]
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "metric_specs", tuple(self.metric_specs))
        for s in self.metric_specs:
            s.validate_for(self.n_qubits)
        if self.n_samples < 0:
            raise ValueError("n_samples must be >= 0")


def generate_static_dataset(cfg: StaticDatasetConfig, path) -> DatasetHeader:
    mset = static_measurement_set(cfg.n_qubits)
    from .measurements import measure_expectations  # local import to keep module load light

    header = DatasetHeader(
        kind="static",
        n_qubits=cfg.n_qubits,
        input_dim=len(mset),
        target_dim=len(cfg.metric_specs),
        metric_specs=cfg.metric_specs,
        seed=cfg.seed,
    )

    def samples():
        for k in range(cfg.n_samples):
            rng = np.random.default_rng([cfg.seed, k])
            h = sample_model1_hamiltonian(cfg.n_qubits, rng)
            gs = ground_state(h)
            yield Sample(
                inputs=measure_expectations(gs.state, mset),
                targets=evaluate_metrics(gs.state, cfg.metric_specs),
                meta={
                    "index": k,
                    "coefficients": h.coefficients,
                    "energy": gs.energy,
                    "gap": gs.gap,
                    "degenerate": gs.degenerate,
                },
            )

    write_dataset(path, header, samples())
    return header


@dataclass(frozen=True)
class DynamicDatasetConfig:
    n_qubits: int
    n_samples: int
    metric_specs: tuple[MetricSpec, ...]
    n_steps: int = 50
    t_train: float = math.pi
    t_total: float = 2 * math.pi
    k_out: int = 100
    theta_y: float = math.pi / 8
    theta_z: float = math.pi / 8
    seed: int = 0
    # fixed (J, g) pairs for evaluation grids; overrides random sampling
    couplings: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "metric_specs", tuple(self.metric_specs))
        for s in self.metric_specs:
            s.validate_for(self.n_qubits)
        if not 0 < self.t_train <= self.t_total:
            raise ValueError("need 0 < t_train <= t_total")
        if self.n_steps < 1 or self.k_out < 1:
            raise ValueError("n_steps and k_out must be positive")
        if self.couplings is not None:
            object.__setattr__(
                self, "couplings", tuple((float(j), float(g)) for j, g in self.couplings)
            )

    @property
    def tau(self) -> float:
        return self.t_train / self.n_steps

    @property
    def target_times(self) -> np.ndarray:
        return np.arange(1, self.k_out + 1) * (self.t_total / self.k_out)


def generate_dynamic_dataset(cfg: DynamicDatasetConfig, path) -> DatasetHeader:
    n_pairs = len(cfg.couplings) if cfg.couplings is not None else cfg.n_samples
    header = DatasetHeader(
        kind="dynamic",
        n_qubits=cfg.n_qubits,
        input_dim=cfg.n_steps * 3 * cfg.n_qubits,
        target_dim=cfg.k_out * len(cfg.metric_specs),
        metric_specs=cfg.metric_specs,
        seed=cfg.seed if cfg.couplings is None else None,
        grid={
            "n_steps": cfg.n_steps,
            "tau": cfg.tau,
            "t_train": cfg.t_train,
            "t_total": cfg.t_total,
            "k_out": cfg.k_out,
            "theta_y": cfg.theta_y,
            "theta_z": cfg.theta_z,
        },
    )
    psi0 = prepare_initial_state(cfg.n_qubits, cfg.theta_y, cfg.theta_z)

    def one(k: int) -> Sample:
        if cfg.couplings is not None:
            coupling, field_x = cfg.couplings[k]
        else:
            rng = np.random.default_rng([cfg.seed, k])
            coupling, field_x = rng.uniform(-1.0, 1.0, size=2)
        h = quench_hamiltonian(cfg.n_qubits, coupling, field_x)
        grid = time_traces(h, psi0, cfg.n_steps, cfg.tau)
        states = evolve_grid(h, psi0, cfg.target_times)
        targets = np.concatenate(
            [evaluate_metrics(states[i], cfg.metric_specs) for i in range(cfg.k_out)]
        )
        return Sample(
            inputs=grid.values.ravel(),
            targets=targets,
            meta={"index": k, "J": coupling, "g": field_x},
        )

    write_dataset(path, header, (one(k) for k in range(n_pairs)))
    return header


@dataclass(frozen=True)
class SweepConfig:
    model: str  # xxz | xx
    coupling: float
    metric_specs: tuple[MetricSpec, ...]
    n_qubits: int = 4
    start: float = -1.0
    stop: float = 1.0
    step: float = 0.04

    def __post_init__(self):
        object.__setattr__(self, "metric_specs", tuple(self.metric_specs))
        if self.model not in SWEEP_MODELS:
            raise ValueError(f"unknown sweep model {self.model!r}")
        for s in self.metric_specs:
            s.validate_for(self.n_qubits)
        if not self.step > 0 or self.stop < self.start:
            raise ValueError("need step > 0 and stop >= start")

    @property
    def values(self) -> np.ndarray:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(count)


def sweep_hamiltonian(model: str, n_qubits: int, coupling: float, value: float) -> Hamiltonian:
    if model == "xxz":
        return xxz_chain(n_qubits, coupling, value)
    if model == "xx":
        return xx_chain(n_qubits, coupling, value)
    raise ValueError(f"unknown sweep model {model!r}")


def generate_ground_state_sweep(cfg: SweepConfig, path) -> DatasetHeader:
    from .measurements import measure_expectations

    mset = static_measurement_set(cfg.n_qubits)
    values = cfg.values
    header = DatasetHeader(
        kind="sweep",
        n_qubits=cfg.n_qubits,
        input_dim=len(mset),
        target_dim=len(cfg.metric_specs),
        metric_specs=cfg.metric_specs,
        sweep={
            "model": cfg.model,
            "coupling": cfg.coupling,
            "parameter": "anisotropy" if cfg.model == "xxz" else "field_z",
            "start": cfg.start,
            "stop": cfg.stop,
            "step": cfg.step,
            "count": int(values.size),
        },
    )

    def samples():
        for k, v in enumerate(values):
            h = sweep_hamiltonian(cfg.model, cfg.n_qubits, cfg.coupling, float(v))
            gs = ground_state(h)
            yield Sample(
                inputs=measure_expectations(gs.state, mset),
                targets=evaluate_metrics(gs.state, cfg.metric_specs),
                meta={
                    "index": k,
                    "sweep_value": float(v),
                    "energy": gs.energy,
                    "gap": gs.gap,
                    "degenerate": gs.degenerate,
                },
            )

    write_dataset(path, header, samples())
    return header


# ---------------------------------------------------------------------------
# oracle regeneration

def regenerate_sample(header: DatasetHeader, sample: Sample) -> tuple[np.ndarray, np.ndarray]:
    """Recompute (inputs, targets) of a stored sample from its meta.

    This is the exact-simulation oracle: any emitted sample must reproduce
    its stored values to 1e-9.
    """
    from .measurements import measure_expectations

    specs = header.metric_specs
    n = header.n_qubits
    if header.kind == "static":
        h = model1_hamiltonian(n, sample.meta["coefficients"])
    elif header.kind == "sweep":
        h = sweep_hamiltonian(header.sweep["model"], n, header.sweep["coupling"],
                              sample.meta["sweep_value"])
    elif header.kind == "dynamic":
        grid = header.grid
        h = quench_hamiltonian(n, sample.meta["J"], sample.meta["g"])
        psi0 = prepare_initial_state(n, grid["theta_y"], grid["theta_z"])
        traces = time_traces(h, psi0, grid["n_steps"], grid["tau"])
        times = np.arange(1, grid["k_out"] + 1) * (grid["t_total"] / grid["k_out"])
        states = evolve_grid(h, psi0, times)
        targets = np.concatenate(
            [evaluate_metrics(states[i], specs) for i in range(grid["k_out"])]
        )
        return traces.values.ravel(), targets
    else:
        raise ValueError(f"unknown dataset kind {header.kind!r}")
    gs = ground_state(h)
    mset = static_measurement_set(n)
    return measure_expectations(gs.state, mset), evaluate_metrics(gs.state, specs)
