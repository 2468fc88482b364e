"""Deterministic replication engine for rejection-frequency tables and power curves.

Every replication draws from its own counter-derived substream, so results
are bit-identical for a fixed (master seed, scenario id) regardless of how
replications are distributed over workers. Worker processes only return
additive tallies; the merge is order-independent by construction.
"""

import concurrent.futures
import hashlib
import json
import math
import multiprocessing
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .asymptotics import local_power
from .distributions import (
    MoebiusSkewed,
    SineSkewed,
    SkewedMixture,
    VonMises,
    parse_base,
)
from .errors import DegenerateSampleError
from . import symtests

FAMILIES = ("sineskew", "moebius", "mixshift")

DEFAULT_MASTER_SEED = 1729
_MODRUN_NULL_TAG = "#modrun-null"


def derive_stream(master_seed, scenario_id, replication_index):
    """Independent, platform-stable substream for one replication.

    The triple is hashed with SHA-256 and the digest seeds a Philox
    counter-based generator, so substreams are statistically independent
    and identical runs reproduce identical draws on any machine.
    """
    token = f"circsym|{int(master_seed)}|{scenario_id}|{int(replication_index)}"
    digest = hashlib.sha256(token.encode("utf-8")).digest()
    words = np.frombuffer(digest, dtype=np.uint32)
    seq = np.random.SeedSequence(entropy=[int(w) for w in words])
    return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True)
class ScenarioSpec:
    """One table block: an alternative family swept over a skewness grid."""

    scenario_id: str
    family: str
    base: str
    lambdas: tuple
    skew_k: int = 1
    moebius_r: float = 0.5
    n: int = 100
    reps: int = 1000
    alpha: float = 0.05
    test_ks: tuple = (1, 2, 3)
    runs_p: float | None = 0.6
    runs_calibration_reps: int = 10_000
    master_seed: int = DEFAULT_MASTER_SEED

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        lambdas = tuple(float(v) for v in self.lambdas)
        object.__setattr__(self, "lambdas", lambdas)
        if not any(v == 0.0 for v in lambdas):
            raise ValueError("the skewness grid must include 0 (null column)")
        if self.n < 10:
            raise ValueError(f"sample size must be at least 10, got {self.n}")
        if self.reps < 100:
            raise ValueError(f"replication count must be at least 100, got {self.reps}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"level alpha must lie in (0, 1), got {self.alpha}")
        object.__setattr__(self, "test_ks", tuple(int(k) for k in self.test_ks))
        base = parse_base(self.base)  # validates the label
        if self.family == "mixshift" and not isinstance(base, VonMises):
            raise ValueError("mixshift scenarios need a vm:<kappa> base")
        if self.family == "sineskew":
            for lam in lambdas:
                if not -1.0 < lam < 1.0:
                    raise ValueError(
                        f"sine-skew lambda must lie in (-1, 1), got {lam}"
                    )

    @property
    def test_labels(self):
        labels = [f"studentized:k={k}" for k in self.test_ks]
        if self.runs_p is not None:
            labels.append(f"modrun:p={self.runs_p:g}")
        return tuple(labels)

    def alternative(self, lam):
        """Sampling model at one grid point."""
        base = parse_base(self.base)
        if self.family == "sineskew":
            return SineSkewed(base, lam, k=self.skew_k)
        if self.family == "moebius":
            return MoebiusSkewed(base, lam, self.moebius_r)
        return SkewedMixture(base.kappa, lam)


@dataclass(frozen=True)
class TableResult:
    """Rejection frequencies for one scenario, with binomial standard errors."""

    scenario: ScenarioSpec
    test_labels: tuple
    lambdas: tuple
    frequencies: tuple  # frequencies[i][j]: test i, lambda j
    degenerate: tuple  # same shape; samples where a test was undefined

    @property
    def standard_errors(self):
        reps = self.scenario.reps
        return tuple(
            tuple(math.sqrt(f * (1.0 - f) / reps) for f in row)
            for row in self.frequencies
        )

    def frequency(self, test_label, lam):
        i = self.test_labels.index(test_label)
        j = self.lambdas.index(float(lam))
        return self.frequencies[i][j]

    def to_csv(self):
        lines = [
            "# schema: circsym/v1",
            f"# scenario: {self.scenario.scenario_id}",
            f"# seed: {self.scenario.master_seed}",
            "test," + ",".join(f"lambda={lam:g}" for lam in self.lambdas),
        ]
        for label, row in zip(self.test_labels, self.frequencies):
            lines.append(label + "," + ",".join(f"{f:.6f}" for f in row))
        return "\n".join(lines) + "\n"

    def to_json(self):
        spec = self.scenario
        payload = {
            "schema": "circsym/v1",
            "scenario": {f.name: getattr(spec, f.name) for f in fields(spec)},
            "lambdas": list(self.lambdas),
            "tests": list(self.test_labels),
            "frequencies": [list(row) for row in self.frequencies],
            "standard_errors": [list(row) for row in self.standard_errors],
            "degenerate_samples": [list(row) for row in self.degenerate],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _modrun_null_counts(spec):
    if spec.runs_p is None:
        return None
    rng = derive_stream(spec.master_seed, spec.scenario_id + _MODRUN_NULL_TAG, 0)
    m = min(spec.n, max(2, math.ceil(spec.runs_p * spec.n)))
    return symtests.simulate_runs_null(m, spec.runs_calibration_reps, rng)


def _replication_block(spec, start, stop, runs_null):
    """Additive tallies for replications [start, stop)."""
    n_tests = len(spec.test_labels)
    n_lams = len(spec.lambdas)
    rejections = np.zeros((n_tests, n_lams), dtype=np.int64)
    degenerate = np.zeros((n_tests, n_lams), dtype=np.int64)
    models = [spec.alternative(lam) for lam in spec.lambdas]
    for rep in range(start, stop):
        rng = derive_stream(spec.master_seed, spec.scenario_id, rep)
        for j, model in enumerate(models):
            sample = model.sample(rng, spec.n)
            for i, k in enumerate(spec.test_ks):
                try:
                    result = symtests.symmetry_test(
                        sample, 0.0, k, alpha=spec.alpha
                    )
                except DegenerateSampleError:
                    degenerate[i, j] += 1
                    continue
                rejections[i, j] += result.reject
            if spec.runs_p is not None:
                result = symtests.modified_runs_test(
                    sample, 0.0, p=spec.runs_p, alpha=spec.alpha,
                    rng=rng, null_counts=runs_null,
                )
                rejections[n_tests - 1, j] += result.reject
    return rejections, degenerate


def _block_bounds(total, pieces):
    size = math.ceil(total / pieces)
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def run_scenario(spec, threads=1):
    """Run every replication of a scenario and tally rejection frequencies.

    Samples where a statistic is undefined count as non-rejections and are
    reported in the result's ``degenerate`` field.
    """
    threads = max(1, int(threads))
    runs_null = _modrun_null_counts(spec)
    n_tests = len(spec.test_labels)
    rejections = np.zeros((n_tests, len(spec.lambdas)), dtype=np.int64)
    degenerate = np.zeros_like(rejections)
    if threads == 1:
        rejections, degenerate = _replication_block(spec, 0, spec.reps, runs_null)
    else:
        bounds = _block_bounds(spec.reps, threads * 4)
        ctx = multiprocessing.get_context("spawn")
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=threads, mp_context=ctx
        ) as pool:
            futures = [
                pool.submit(_replication_block, spec, lo, hi, runs_null)
                for lo, hi in bounds
            ]
            for future in concurrent.futures.as_completed(futures):
                rej, deg = future.result()
                rejections += rej
                degenerate += deg
    freqs = rejections / float(spec.reps)
    return TableResult(
        scenario=spec,
        test_labels=spec.test_labels,
        lambdas=spec.lambdas,
        frequencies=tuple(tuple(float(v) for v in row) for row in freqs),
        degenerate=tuple(tuple(int(v) for v in row) for row in degenerate),
    )


def _power_block(base, k, k_prime, lam, n, alpha, master_seed, scenario_id, start, stop):
    model = SineSkewed(base, lam, k=k_prime)
    hits = 0
    for rep in range(start, stop):
        rng = derive_stream(master_seed, scenario_id, rep)
        sample = model.sample(rng, n)
        hits += symtests.symmetry_test(sample, 0.0, k, alpha=alpha).reject
    return hits


def power_curve(base, k, k_prime, tau2_grid, alpha=0.05, mode="analytic",
                n=None, reps=None, master_seed=DEFAULT_MASTER_SEED, threads=1):
    """Power of the studentized frequency-k test against k'-sine-skewed drift.

    ``analytic`` evaluates the limiting power at each local drift tau2;
    ``empirical`` simulates at the contiguous skewness lambda = tau2/sqrt(n)
    and tallies rejections. Returns a list of (tau2, power) pairs.
    """
    tau2_grid = [float(t) for t in tau2_grid]
    if mode == "analytic":
        return [(t, local_power(base, k, k_prime, t, alpha)) for t in tau2_grid]
    if mode != "empirical":
        raise ValueError(f"mode must be 'analytic' or 'empirical', got {mode!r}")
    if n is None or reps is None:
        raise ValueError("empirical mode needs both n and reps")
    points = []
    threads = max(1, int(threads))
    for t in tau2_grid:
        lam = t / math.sqrt(n)
        if not -1.0 < lam < 1.0:
            raise ValueError(
                f"tau2={t:g} gives skewness {lam:g} outside (-1, 1) at n={n}"
            )
        scenario_id = f"power|{base.label}|k={k}|kprime={k_prime}|tau2={t!r}|n={n}"
        if threads == 1:
            hits = _power_block(
                base, k, k_prime, lam, n, alpha, master_seed, scenario_id, 0, reps
            )
        else:
            ctx = multiprocessing.get_context("spawn")
            with concurrent.futures.ProcessPoolExecutor(
                max_workers=threads, mp_context=ctx
            ) as pool:
                futures = [
                    pool.submit(
                        _power_block, base, k, k_prime, lam, n, alpha,
                        master_seed, scenario_id, lo, hi,
                    )
                    for lo, hi in _block_bounds(reps, threads * 4)
                ]
                hits = sum(f.result() for f in concurrent.futures.as_completed(futures))
        points.append((t, hits / float(reps)))
    return points


_SINE_GRID = (0.0, 0.2, 0.4, 0.6)
_TABLE_BASES = (("vm1", "vm:1"), ("vm10", "vm:10"),
                ("ca05", "cardioid:0.5"), ("wc05", "wcauchy:0.5"))


def _sine_block(table, tag, label, k):
    return ScenarioSpec(
        scenario_id=f"{table}_{tag}", family="sineskew", base=label,
        lambdas=_SINE_GRID, skew_k=k,
    )


PRESETS = {
    "table1": tuple(_sine_block("table1", tag, label, 1) for tag, label in _TABLE_BASES),
    "table2": tuple(_sine_block("table2", tag, label, 2) for tag, label in _TABLE_BASES),
    "table3": (
        ScenarioSpec(scenario_id="table3_moebius_vm1", family="moebius",
                     base="vm:1", lambdas=(0.0, 0.2 / 3, 0.4 / 3, 0.2)),
        ScenarioSpec(scenario_id="table3_moebius_vm10", family="moebius",
                     base="vm:10", lambdas=(0.0, 0.02, 0.04, 0.06)),
        ScenarioSpec(scenario_id="table3_mixshift_vm1", family="mixshift",
                     base="vm:1", lambdas=(0.0, 0.4, 0.8, 1.2)),
        ScenarioSpec(scenario_id="table3_mixshift_vm10", family="mixshift",
                     base="vm:10", lambdas=(0.0, 0.2, 0.4, 0.6)),
        _sine_block("table3", "3sine_vm1", "vm:1", 3),
        _sine_block("table3", "3sine_vm10", "vm:10", 3),
    ),
}


def preset_scenarios(name, reps=None, master_seed=None):
    """Scenario list for a named preset, optionally resized or reseeded."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    specs = PRESETS[name]
    updates = {}
    if reps is not None:
        updates["reps"] = int(reps)
    if master_seed is not None:
        updates["master_seed"] = int(master_seed)
    if updates:
        specs = tuple(replace(s, **updates) for s in specs)
    return specs


_SCENARIO_KEYS = {
    "scenario_id": str,
    "family": str,
    "base": str,
    "skew_k": int,
    "moebius_r": float,
    "n": int,
    "reps": int,
    "alpha": float,
    "runs_calibration_reps": int,
    "master_seed": int,
}


def load_scenario_file(path):
    """Parse a declarative ``key = value`` scenario file.

    Lines are ``key = value``; ``#`` starts a comment. Recognized keys:
    scenario_id, family (sineskew|moebius|mixshift), base (e.g. vm:1),
    lambdas (comma-separated, must include 0), skew_k, moebius_r, n, reps,
    alpha, test_ks (comma-separated), runs_p (a number or ``none``),
    runs_calibration_reps, master_seed.
    """
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key in _SCENARIO_KEYS:
                values[key] = _SCENARIO_KEYS[key](value)
            elif key == "lambdas":
                values[key] = tuple(float(v) for v in value.split(","))
            elif key == "test_ks":
                values[key] = tuple(int(v) for v in value.split(","))
            elif key == "runs_p":
                values[key] = None if value.lower() == "none" else float(value)
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    for required in ("scenario_id", "family", "base", "lambdas"):
        if required not in values:
            raise ValueError(f"{path}: missing required key {required!r}")
    return ScenarioSpec(**values)


def format_scenario(spec):
    """Scenario file text that round-trips through load_scenario_file."""
    lines = []
    for f in fields(spec):
        value = getattr(spec, f.name)
        if f.name in ("lambdas", "test_ks"):
            value = ",".join(f"{v:g}" for v in value)
        elif value is None:
            value = "none"
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"
