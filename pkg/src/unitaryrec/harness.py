"""Experiment harness: resource-cost formulas, the sweep runner, and
CSV/report output.

A sweep enumerates grid points (scenario, qubit count, noise kind, time
constant, target pattern), runs every requested reconstruction method on
freshly built channels for each trial, and emits one record per (method,
trial). Failed reconstructions are recorded with a status instead of
being dropped, so downstream plots can truncate curves faithfully.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .channels import (
    NoiseSpec,
    build_liouvillian,
    apply_map,
    choi_of_unitary,
    jump_terms_for_noise,
    propagate,
    scenario_hamiltonian,
    to_choi,
    SCENARIO_MULTI_CONTROL_NOT,
    SCENARIO_RANDOM_HAAR,
)
from .errors import (
    ConfigInvalid,
    DegenerateImage,
    InvalidRank,
    IoFailure,
    LinearDependence,
    PhaseUndefined,
    Unsupported,
)
from .metrics import (
    average_fidelity,
    estimate_unitarity,
    gate_fidelity,
    process_fidelity,
)
from .reconstruct import (
    METHOD_CHOI,
    METHOD_MIXED,
    METHOD_PURE,
    reconstruct_choi,
    reconstruct_mixed,
    reconstruct_pure,
)

GATE_TIME = 1.0  # all time constants are expressed in units of this

METHOD_SQPT = "sqpt"
REGIME_NEAR_UNITARY = "near_unitary"
REGIME_GENERAL = "general"

TARGETS_ALL = "all"

STATUS_OK = "ok"
STATUS_DEGENERATE_IMAGE = "degenerate_image"
STATUS_LINEAR_DEPENDENCE = "linear_dependence"
STATUS_PHASE_UNDEFINED = "phase_undefined"

CSV_HEADER = (
    "method,scenario,n_qubits,noise_kind,time_constant,target_pattern,"
    "trial,gate_error,process_error,avg_error,unitarity_error,status,"
    "min_spectral_gap"
)


# ---------------------------------------------------------------------------
# resource-cost formulas (constant factors set to 1)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResourceQuery:
    n_qubits: int
    r_out: int
    method: str
    regime: str

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ConfigInvalid(f"n_qubits must be >= 1, got {self.n_qubits}")
        if self.method not in (METHOD_MIXED, METHOD_PURE, METHOD_CHOI, METHOD_SQPT):
            raise ConfigInvalid(f"unknown method {self.method!r}")
        if self.regime not in (REGIME_NEAR_UNITARY, REGIME_GENERAL):
            raise ConfigInvalid(f"unknown regime {self.regime!r}")
        if not 1 <= self.r_out <= 2 ** self.n_qubits:
            raise InvalidRank(
                f"r_out must lie in [1, {2 ** self.n_qubits}], got {self.r_out}")


def channel_uses(query: ResourceQuery) -> int:
    """Minimum channel uses for one reconstruction, with unit constants.

    mixed: d^4 in any regime (the output must stay full rank, so the
    worst-case rank is pinned to d); pure: d^3 near unitarity (rank-1
    outputs), r_out^2 d^3 in general; Choi: d^4, defined only near
    unitarity where the rank-1 Choi assumption holds; standard process
    tomography: N 16^N.
    """
    d = 2 ** query.n_qubits
    if query.method == METHOD_MIXED:
        return d ** 4
    if query.method == METHOD_PURE:
        if query.regime == REGIME_NEAR_UNITARY:
            return d ** 3
        return query.r_out ** 2 * d ** 3
    if query.method == METHOD_CHOI:
        if query.regime == REGIME_GENERAL:
            raise Unsupported(
                "channel-use count for the Choi method is undefined away from "
                "the near-unitary regime (the rank-1 Choi assumption fails)")
        return d ** 4
    return query.n_qubits * 16 ** query.n_qubits  # sqpt


# ---------------------------------------------------------------------------
# sweep configuration
# ---------------------------------------------------------------------------

def single_qubit_pattern(qubit: int) -> str:
    return f"single:{int(qubit)}"


def _pattern_targets(pattern: str, n_qubits: int) -> tuple:
    if pattern == TARGETS_ALL:
        return tuple(range(n_qubits))
    if pattern.startswith("single:"):
        q = int(pattern.split(":", 1)[1])
        if not 0 <= q < n_qubits:
            raise ConfigInvalid(
                f"target pattern {pattern!r} outside register of {n_qubits} qubits")
        return (q,)
    raise ConfigInvalid(f"unknown target pattern {pattern!r}")


@dataclass(frozen=True)
class SweepNoise:
    """One noise family of a sweep: a kind, its time-constant grid, and
    where it acts ('all' or 'single:<qubit>')."""

    kind: str
    time_constants: tuple
    target_pattern: str = TARGETS_ALL

    def __post_init__(self):
        if self.kind not in ("T1", "T2"):
            raise ConfigInvalid(f"noise kind must be 'T1' or 'T2', got {self.kind!r}")
        tcs = tuple(float(t) for t in self.time_constants)
        if not tcs:
            raise ConfigInvalid("time-constant grid must be nonempty")
        if any(not t > 0 for t in tcs):
            raise ConfigInvalid("time constants must be strictly positive")
        if self.target_pattern != TARGETS_ALL and not self.target_pattern.startswith("single:"):
            raise ConfigInvalid(f"unknown target pattern {self.target_pattern!r}")
        object.__setattr__(self, "time_constants", tcs)


@dataclass(frozen=True)
class SweepConfig:
    scenario: str
    n_qubits_list: tuple
    noise: tuple
    n_trials: tuple
    methods: tuple = (METHOD_MIXED, METHOD_PURE, METHOD_CHOI)
    deg_tol: float = 1e-6
    unitarity_samples: int = 1000
    master_seed: int = 0

    def __post_init__(self):
        nq = tuple(int(n) for n in self.n_qubits_list)
        if not nq or any(n < 1 or n > 5 for n in nq):
            raise ConfigInvalid(f"n_qubits_list must contain values in [1, 5], got {nq}")
        if self.scenario not in (SCENARIO_RANDOM_HAAR, SCENARIO_MULTI_CONTROL_NOT):
            raise ConfigInvalid(f"unknown scenario {self.scenario!r}")
        if self.scenario == SCENARIO_MULTI_CONTROL_NOT and any(n < 2 for n in nq):
            raise ConfigInvalid("the multi-control-NOT scenario needs n_qubits >= 2")
        noise = tuple(self.noise)
        if not noise or not all(isinstance(x, SweepNoise) for x in noise):
            raise ConfigInvalid("noise must be a nonempty list of SweepNoise entries")
        trials = self.n_trials
        if isinstance(trials, int):
            trials = tuple(trials for _ in nq)
        else:
            trials = tuple(int(t) for t in trials)
        if len(trials) != len(nq) or any(t < 1 for t in trials):
            raise ConfigInvalid(
                "n_trials must be a positive int or one positive int per qubit count")
        methods = tuple(self.methods)
        if not methods or any(m not in (METHOD_MIXED, METHOD_PURE, METHOD_CHOI) for m in methods):
            raise ConfigInvalid(f"methods must be a nonempty subset of mixed/pure/choi, got {methods}")
        if not self.deg_tol >= 0:
            raise ConfigInvalid(f"deg_tol must be >= 0, got {self.deg_tol}")
        if self.unitarity_samples < 2:
            raise ConfigInvalid("unitarity_samples must be >= 2")
        object.__setattr__(self, "n_qubits_list", nq)
        object.__setattr__(self, "noise", noise)
        object.__setattr__(self, "n_trials", trials)
        object.__setattr__(self, "methods", methods)

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        try:
            noise = tuple(
                SweepNoise(
                    kind=entry["kind"],
                    time_constants=tuple(entry["time_constants"]),
                    target_pattern=entry.get("target_pattern", TARGETS_ALL),
                )
                for entry in data["noise"]
            )
            return cls(
                scenario=data["scenario"],
                n_qubits_list=tuple(data["n_qubits_list"]),
                noise=noise,
                n_trials=data["n_trials"],
                methods=tuple(data.get("methods", (METHOD_MIXED, METHOD_PURE, METHOD_CHOI))),
                deg_tol=float(data.get("deg_tol", 1e-6)),
                unitarity_samples=int(data.get("unitarity_samples", 1000)),
                master_seed=int(data.get("master_seed", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigInvalid(f"bad sweep configuration: {exc}") from exc

    def override(self, **kwargs) -> "SweepConfig":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class SweepRecord:
    method: str
    scenario: str
    n_qubits: int
    noise_kind: str
    time_constant: float
    target_pattern: str
    trial: int
    gate_error: float | None
    process_error: float | None
    avg_error: float | None
    unitarity_error: float | None
    status: str
    min_spectral_gap: float | None


def derive_trial_seed(master_seed: int, point_index: int, trial_index: int) -> int:
    """Stable 64-bit per-trial seed, independent of execution order."""
    ss = np.random.SeedSequence(
        entropy=(int(master_seed), int(point_index), int(trial_index)))
    return int(ss.generate_state(1, np.uint64)[0])


def _unitarity_seed(master_seed: int) -> int:
    ss = np.random.SeedSequence(entropy=(int(master_seed), 0xC11FF0CD))
    return int(ss.generate_state(1, np.uint64)[0])


def _grid_points(cfg: SweepConfig):
    """Yield (point_index, n_qubits, n_trials, SweepNoise, time_constant)."""
    point = 0
    for nq, trials in zip(cfg.n_qubits_list, cfg.n_trials):
        for noise in cfg.noise:
            for tc in noise.time_constants:
                yield point, nq, trials, noise, tc
                point += 1


def _run_trial(task) -> list[SweepRecord]:
    (cfg, point_index, n_qubits, noise, tc, trial_index) = task
    seed = derive_trial_seed(cfg.master_seed, point_index, trial_index)
    if cfg.scenario == SCENARIO_RANDOM_HAAR:
        h0, u0 = scenario_hamiltonian(cfg.scenario, n_qubits, seed)
    else:
        h0, u0 = scenario_hamiltonian(cfg.scenario, n_qubits)
    targets = _pattern_targets(noise.target_pattern, n_qubits)
    spec = NoiseSpec(kind=noise.kind, time_constant=tc, targets=targets)
    generator = build_liouvillian(h0, jump_terms_for_noise(spec, n_qubits))
    channel = propagate(generator, GATE_TIME)
    chi_noisy = to_choi(channel)
    u_est = estimate_unitarity(
        chi_noisy, cfg.unitarity_samples, seed=_unitarity_seed(cfg.master_seed))
    chi0 = choi_of_unitary(u0)
    action = lambda rho: apply_map(channel, rho)  # noqa: E731
    d = 2 ** n_qubits

    base = dict(
        scenario=cfg.scenario,
        n_qubits=n_qubits,
        noise_kind=noise.kind,
        time_constant=tc,
        target_pattern=noise.target_pattern,
        trial=trial_index,
    )
    records = []
    for method in cfg.methods:
        try:
            if method == METHOD_MIXED:
                result = reconstruct_mixed(
                    action, d, deg_tol=cfg.deg_tol, unitarity=u_est.value)
            elif method == METHOD_PURE:
                result = reconstruct_pure(
                    action, d, deg_tol=cfg.deg_tol, unitarity=u_est.value)
            else:
                result = reconstruct_choi(chi_noisy, unitarity=u_est.value)
        except DegenerateImage as exc:
            records.append(SweepRecord(
                method=method, status=STATUS_DEGENERATE_IMAGE,
                gate_error=None, process_error=None, avg_error=None,
                unitarity_error=None, min_spectral_gap=exc.min_spectral_gap,
                **base))
            continue
        except LinearDependence as exc:
            records.append(SweepRecord(
                method=method, status=STATUS_LINEAR_DEPENDENCE,
                gate_error=None, process_error=None, avg_error=None,
                unitarity_error=None, min_spectral_gap=exc.min_spectral_gap,
                **base))
            continue
        except PhaseUndefined as exc:
            records.append(SweepRecord(
                method=method, status=STATUS_PHASE_UNDEFINED,
                gate_error=None, process_error=None, avg_error=None,
                unitarity_error=None, min_spectral_gap=exc.min_spectral_gap,
                **base))
            continue
        chirc = choi_of_unitary(result.unitary)
        records.append(SweepRecord(
            method=method, status=STATUS_OK,
            gate_error=_clip01(1.0 - gate_fidelity(u0, result.unitary)),
            process_error=_clip01(1.0 - process_fidelity(chi0, chirc)),
            avg_error=_clip01(1.0 - average_fidelity(chi0, chirc)),
            unitarity_error=1.0 - u_est.value,
            min_spectral_gap=result.diagnostics.min_spectral_gap,
            **base))
    return records


def _clip01(x: float) -> float:
    return min(1.0, max(0.0, x))


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> list[SweepRecord]:
    """Run every (grid point, trial, method) of a sweep.

    Work items are independent; with jobs > 1 they run on a process pool.
    Output order is deterministic (grid order, then trial, then method)
    regardless of scheduling, and every quantity is reproducible from
    cfg.master_seed alone.
    """
    tasks = [
        (cfg, point, nq, noise, tc, trial)
        for point, nq, trials, noise, tc in _grid_points(cfg)
        for trial in range(trials)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            grouped = list(pool.map(_run_trial, tasks, chunksize=4))
    else:
        grouped = [_run_trial(t) for t in tasks]
    return [record for group in grouped for record in group]


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def record_to_row(record: SweepRecord) -> str:
    return ",".join([
        record.method,
        record.scenario,
        str(record.n_qubits),
        record.noise_kind,
        _fmt(record.time_constant),
        record.target_pattern,
        str(record.trial),
        _fmt(record.gate_error),
        _fmt(record.process_error),
        _fmt(record.avg_error),
        _fmt(record.unitarity_error),
        record.status,
        _fmt(record.min_spectral_gap),
    ])


def write_csv(records: list[SweepRecord], path) -> None:
    """Write records with the fixed header; floats carry 17 significant
    digits so identical sweeps give byte-identical files."""
    lines = [CSV_HEADER] + [record_to_row(r) for r in records]
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def summarize(records: list[SweepRecord]) -> str:
    """Per-(method, grid point) mean and 1-sigma of the gate error."""
    if not records:
        raise ConfigInvalid("cannot summarize an empty record list")
    groups: dict = {}
    for r in records:
        key = (r.method, r.scenario, r.n_qubits, r.noise_kind,
               r.time_constant, r.target_pattern)
        groups.setdefault(key, []).append(r)
    lines = [
        f"{'method':8s} {'scenario':18s} {'N':>2s} {'noise':>5s} "
        f"{'T':>10s} {'targets':>9s} {'n_ok':>4s} {'fail':>4s} "
        f"{'mean(1-F_G)':>12s} {'sigma':>10s}"
    ]
    for key in sorted(groups, key=lambda k: (k[0], k[2], k[3], k[4], k[5])):
        rows = groups[key]
        errors = [r.gate_error for r in rows if r.status == STATUS_OK]
        n_fail = sum(1 for r in rows if r.status != STATUS_OK)
        if errors:
            mean = float(np.mean(errors))
            sigma = float(np.std(errors, ddof=1)) if len(errors) > 1 else 0.0
            stats = f"{mean:12.4e} {sigma:10.2e}"
        else:
            stats = f"{'-':>12s} {'-':>10s}"
        method, scenario, nq, kind, tc, pattern = key
        lines.append(
            f"{method:8s} {scenario:18s} {nq:2d} {kind:>5s} "
            f"{tc:10.4g} {pattern:>9s} {len(errors):4d} {n_fail:4d} {stats}")
    return "\n".join(lines)


def crossover_rank(n_qubits: int) -> float:
    """Output rank at which general-regime pure reconstruction stops being
    cheaper than mixed: r_out = sqrt(d)."""
    return math.sqrt(2 ** n_qubits)
