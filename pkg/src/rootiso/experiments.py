"""Seeded Monte Carlo harness for the solver and its analysis quantities.

Each trial samples one polynomial, isolates its real roots in (-1, 1),
and optionally measures a condition bracket and the near-interval root
counts.  Trials are pure functions of (seed, trial index), so runs are
reproducible bit for bit and may fan out over worker processes; rows are
always emitted sorted by trial index.

Wall-clock time is recorded per trial but kept out of the CSV rows and
the JSON summary, which are required to be byte-identical across runs;
timing statistics live on the in-memory report only.

The tail experiments compare empirical survival functions against the
one-sided theoretical curves (global condition: min(1, 32 d^4 e^{2u} / t);
local condition at a point: min(1, 16 d^3 e^{2u} / t^2); near-interval
root count: min(1, 44 d^2 (2 ceil(lg d) + 1) e^u e^{-t/(2 ceil(lg d)+1)})).
Only the upper-bound direction is asserted; tightness is reported, never
required.
"""

from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .condition import global_condition_bracket, local_condition
from .dyadic import Dyadic
from .models import RandomModel
from .regions import count_roots_in_cover, cover_root_count_bound
from .solver import isolate_unit

CSV_COLUMNS = (
    "trial_index",
    "d",
    "model",
    "node_count",
    "depth",
    "max_width",
    "cond_lower",
    "cond_upper",
    "rho_bound",
    "rho_count_min",
    "rho_count_max",
)


@dataclass
class TrialRecord:
    """Measurements for one sampled polynomial."""

    trial_index: int
    d: int
    model: str
    node_count: int
    depth: int
    max_width: int
    cond_lower: float | None = None
    cond_upper: float | None = None
    rho_bound: float | None = None
    rho_count_min: int | None = None
    rho_count_max: int | None = None
    wall_time: float = 0.0

    def csv_cells(self) -> list[str]:
        return [_fmt(getattr(self, col)) for col in CSV_COLUMNS]


@dataclass(frozen=True)
class MeasureOptions:
    """Which per-trial quantities to compute, and their budgets."""

    with_condition: bool = False
    with_rho: bool = False
    rel_tol: float = 0.5
    max_grid: int = 1 << 20
    oracle_tol: float = 1e-10
    local_point: tuple[int, int] | None = None  # (num, exp) of a dyadic in [-1, 1]


@dataclass
class ExperimentReport:
    """Rows plus derived aggregates for one experiment run.

    ``aggregates`` and ``extras`` are pure functions of (config, seed);
    ``timing`` is not and is therefore excluded from every serialization.
    """

    kind: str
    config: dict
    rows: list[TrialRecord]
    aggregates: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    def csv_text(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for row in self.rows:
            lines.append(",".join(row.csv_cells()))
        return "\n".join(lines) + "\n"

    def json_summary(self) -> dict:
        return _jsonable(
            {
                "kind": self.kind,
                "config": self.config,
                "aggregates": self.aggregates,
                "extras": self.extras,
            }
        )

    def write(self, out_dir, fmt: str = "csv"):
        import json
        import os

        os.makedirs(out_dir, exist_ok=True)
        paths = []
        if fmt in ("csv", "both"):
            path = os.path.join(out_dir, f"{self.kind}.csv")
            with open(path, "w") as fh:
                fh.write(self.csv_text())
            paths.append(path)
        if fmt in ("json", "both"):
            path = os.path.join(out_dir, f"{self.kind}.json")
            with open(path, "w") as fh:
                json.dump(self.json_summary(), fh, indent=2, sort_keys=True)
                fh.write("\n")
            paths.append(path)
        return paths


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _jsonable(obj):
    """Strict-JSON-safe copy: non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


# ---------------------------------------------------------------------------
# Trial execution
# ---------------------------------------------------------------------------


def measure_trial(model: RandomModel, seed: int, index: int, opt: MeasureOptions) -> TrialRecord:
    f = model.sample(seed, index)
    started = time.perf_counter()
    result = isolate_unit(f)
    trace = result.trace
    row = TrialRecord(
        trial_index=index,
        d=model.degree,
        model=model.describe(),
        node_count=trace.node_count,
        depth=trace.depth,
        max_width=trace.max_width(),
    )
    if opt.with_condition:
        if opt.local_point is not None:
            # the local value at a fixed point is itself a lower bound
            # on the global maximum
            row.cond_lower = local_condition(f, Dyadic(*opt.local_point))
        else:
            bracket = global_condition_bracket(f, rel_tol=opt.rel_tol, max_grid=opt.max_grid)
            row.cond_lower = bracket.lower
            row.cond_upper = bracket.upper
    if opt.with_rho:
        row.rho_bound = cover_root_count_bound(f)
        counts = count_roots_in_cover(f, tol=opt.oracle_tol)
        row.rho_count_min = counts.min
        row.rho_count_max = counts.max
    row.wall_time = time.perf_counter() - started
    return row


def _measure_star(args) -> TrialRecord:
    return measure_trial(*args)


def _collect(model, trials, seed, opt, workers) -> list[TrialRecord]:
    tasks = [(model, seed, i, opt) for i in range(trials)]
    if workers <= 1:
        rows = [measure_trial(*t) for t in tasks]
    else:
        chunk = max(1, trials // (8 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_measure_star, tasks, chunksize=chunk))
    rows.sort(key=lambda r: r.trial_index)
    return rows


def _subseed(seed: int, d: int) -> int:
    # distinct streams per degree so coefficient draws never coincide
    # across the d-sweep
    return (seed * 1_000_003 + d) & ((1 << 63) - 1)


# ---------------------------------------------------------------------------
# Column statistics
# ---------------------------------------------------------------------------


def _stats(values) -> dict:
    vals = [v for v in values if v is not None]
    if not vals:
        return {"count": 0}
    arr = np.array(vals, dtype=float)
    finite = arr[np.isfinite(arr)]
    out = {
        "count": len(vals),
        "mean": float(np.mean(arr)),
        "median": float(np.quantile(arr, 0.5)) if finite.size == arr.size else float("inf"),
        "min": float(np.min(arr)),
        "max": float(np.max(arr)),
    }
    if finite.size == arr.size:
        out["p90"] = float(np.quantile(arr, 0.9))
        out["p99"] = float(np.quantile(arr, 0.99))
    else:
        out["finite_count"] = int(finite.size)
    return out


_AGG_COLUMNS = (
    "node_count",
    "depth",
    "max_width",
    "cond_lower",
    "cond_upper",
    "rho_bound",
    "rho_count_max",
)


def _aggregate_by_d(rows) -> dict:
    by_d: dict = {}
    for row in rows:
        by_d.setdefault(row.d, []).append(row)
    return {
        str(d): {col: _stats([getattr(r, col) for r in group]) for col in _AGG_COLUMNS}
        for d, group in sorted(by_d.items())
    }


def _timing(rows) -> dict:
    times = [r.wall_time for r in rows]
    if not times:
        return {}
    return {
        "total_seconds": float(sum(times)),
        "mean_seconds": float(sum(times) / len(times)),
        "max_seconds": float(max(times)),
    }


# ---------------------------------------------------------------------------
# Experiments
# ---------------------------------------------------------------------------


def run_steps_scaling(
    model_for,
    d_list,
    trials: int,
    seed: int,
    *,
    workers: int = 1,
    with_condition: bool = True,
    rel_tol: float = 0.5,
    max_grid: int = 1 << 22,
) -> ExperimentReport:
    """Subdivision-step counts across degrees.

    ``model_for`` maps a degree to its model.  Reports per-degree step and
    depth statistics next to a (lg d)^3 reference column; when condition
    brackets are enabled, each trial's certified upper bound feeds the
    depth check ceil(lg(12 d U)) + 2.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    opt = MeasureOptions(with_condition=with_condition, rel_tol=rel_tol, max_grid=max_grid)
    rows = []
    models = {}
    for d in d_list:
        model = model_for(d)
        models[d] = model.describe()
        block = _collect(model, trials, _subseed(seed, d), opt, workers)
        for row in block:
            rows.append(row)

    per_d = {}
    for d in d_list:
        group = [r for r in rows if r.d == d]
        mean_nodes = float(np.mean([r.node_count for r in group]))
        ref = math.log2(d) ** 3 if d > 1 else 1.0
        entry = {
            "mean_node_count": mean_nodes,
            "lg3_d": ref,
            "node_count_over_lg3_d": mean_nodes / ref,
            "max_depth": max(r.depth for r in group),
        }
        if with_condition:
            checks = [
                (r.depth, _depth_allowance(r.d, r.cond_upper))
                for r in group
                if r.cond_upper is not None
            ]
            finite = [(dep, bound) for dep, bound in checks if bound is not None]
            entry["depth_bound_trials"] = len(finite)
            entry["depth_bound_ok"] = all(dep <= bound for dep, bound in finite)
        per_d[str(d)] = entry

    return ExperimentReport(
        kind="steps_scaling",
        config={
            "models": {str(d): desc for d, desc in models.items()},
            "d_list": list(d_list),
            "trials": trials,
            "seed": seed,
            "with_condition": with_condition,
        },
        rows=rows,
        aggregates=_aggregate_by_d(rows),
        extras={"per_d": per_d},
        timing=_timing(rows),
    )


def _depth_allowance(d: int, cond_upper: float) -> int | None:
    """ceil(lg(12 d U)) + 2, the certified cap on subdivision depth."""
    if cond_upper is None or not math.isfinite(cond_upper):
        return None
    return math.ceil(math.log2(12.0 * d * cond_upper)) + 2


def run_cond_tail(
    model: RandomModel,
    trials: int,
    t_grid,
    seed: int,
    *,
    local_point: tuple[int, int] | None = None,
    workers: int = 1,
    rel_tol: float = 0.5,
    max_grid: int = 1 << 16,
) -> ExperimentReport:
    """Empirical condition-number survival versus the theoretical tail.

    Global variant: survival of the certified bracket lower bound against
    min(1, 32 d^4 e^{2u} / t).  Using the lower bound is conservative: if
    even an underestimate of the condition exceeds the curve, the bound
    genuinely fails.  With ``local_point`` the trial records the local
    condition at that dyadic point and the curve is min(1, 16 d^3 e^{2u}/t^2).
    """
    tau = model.tau_bound()
    limit = 2.0 ** (tau + (1 if local_point is None else 0))
    t_grid = [float(t) for t in t_grid]
    if not t_grid or any(not 1.0 < t <= limit for t in t_grid):
        raise ValueError(f"t_grid must lie within (1, {limit}]")
    opt = MeasureOptions(
        with_condition=True, rel_tol=rel_tol, max_grid=max_grid, local_point=local_point
    )
    rows = _collect(model, trials, seed, opt, workers)

    d = model.degree
    u = model.uniformity()
    values = np.array([r.cond_lower for r in rows], dtype=float)
    curve = []
    ok = True
    for t in t_grid:
        empirical = float(np.mean(values >= t))
        if local_point is None:
            theoretical = min(1.0, 32.0 * d**4 * math.exp(2.0 * u) / t)
        else:
            theoretical = min(1.0, 16.0 * d**3 * math.exp(2.0 * u) / t**2)
        curve.append({"t": t, "empirical": empirical, "theoretical": theoretical})
        ok = ok and empirical <= theoretical

    return ExperimentReport(
        kind="cond_tail" if local_point is None else "cond_tail_local",
        config={
            "model": model.describe(),
            "trials": trials,
            "seed": seed,
            "t_grid": t_grid,
            "local_point": list(local_point) if local_point else None,
            "uniformity": u,
            "uniformity_is_bound": model.uniformity_is_bound,
        },
        rows=rows,
        aggregates=_aggregate_by_d(rows),
        extras={"curve": curve, "pass": ok},
        timing=_timing(rows),
    )


def run_rho_check(
    model: RandomModel,
    trials: int,
    seed: int,
    *,
    t_grid=None,
    workers: int = 1,
    oracle_tol: float = 1e-10,
) -> ExperimentReport:
    """Near-interval root-count tail and moments.

    Compares the survival function of the counted roots (upper end of the
    ambiguity range) with the exponential tail curve, reports the fitted
    constants of the moment scale l (ln d + u) ln d, and checks that the
    evaluation-based per-trial bound dominates the count on average.
    """
    d = model.degree
    u = model.uniformity()
    tau = model.tau_bound()
    if tau < 10.0 * math.log(math.e * d) + 2.0 * u:
        warnings.warn(
            "bitsize below 10 ln(e d) + 2u: moment-scale hypotheses do not apply",
            stacklevel=2,
        )
    lg_blocks = 2 * max(1, (d - 1).bit_length()) + 1  # 2 ceil(lg d) + 1
    if t_grid is None:
        t_grid = list(range(1, min(int(tau * lg_blocks), 40) + 1))
    t_grid = [float(t) for t in t_grid]
    if any(t > tau * lg_blocks for t in t_grid):
        raise ValueError(f"t_grid must stay within (0, {tau * lg_blocks}]")

    opt = MeasureOptions(with_rho=True, oracle_tol=oracle_tol)
    rows = _collect(model, trials, seed, opt, workers)

    counts = np.array([r.rho_count_max for r in rows], dtype=float)
    bounds = np.array([r.rho_bound for r in rows], dtype=float)
    curve = []
    ok = True
    for t in t_grid:
        empirical = float(np.mean(counts >= t))
        theoretical = min(
            1.0, 44.0 * d**2 * lg_blocks * math.exp(u) * math.exp(-t / lg_blocks)
        )
        curve.append({"t": t, "empirical": empirical, "theoretical": theoretical})
        ok = ok and empirical <= theoretical

    scale = math.log(math.e * d) * (math.log(math.e * d) + u)
    mean_count = float(np.mean(counts))
    second_moment = float(np.mean(counts**2))
    fitted = {
        "1": mean_count / scale,
        "2": math.sqrt(second_moment) / (2.0 * scale),
    }
    mean_bound = float(np.mean(bounds[np.isfinite(bounds)])) if np.isfinite(bounds).any() else math.inf

    return ExperimentReport(
        kind="rho_check",
        config={
            "model": model.describe(),
            "trials": trials,
            "seed": seed,
            "t_grid": t_grid,
            "uniformity": u,
            "uniformity_is_bound": model.uniformity_is_bound,
        },
        rows=rows,
        aggregates=_aggregate_by_d(rows),
        extras={
            "curve": curve,
            "pass": ok,
            "mean_count": mean_count,
            "second_moment": second_moment,
            "fitted_moment_constants": fitted,
            "mean_bound": mean_bound,
            "mean_count_below_mean_bound": mean_count <= mean_bound,
        },
        timing=_timing(rows),
    )


def run_instance_bound(
    model: RandomModel,
    trials: int,
    seed: int,
    *,
    constant: float = 64.0,
    workers: int = 1,
    rel_tol: float = 0.5,
    max_grid: int = 1 << 20,
    oracle_tol: float = 1e-10,
) -> ExperimentReport:
    """Per-instance step count against its predicted budget.

    For each trial the ratio node_count / (max(1, rho)^2 * max(1, lg U)
    * lg^2 d) is recorded, with rho the counted near-interval roots and U
    the certified condition upper bound; the run passes when the 99th
    percentile stays below ``constant``.  Trials without a finite U are
    excluded from the distribution and reported.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    opt = MeasureOptions(
        with_condition=True,
        with_rho=True,
        rel_tol=rel_tol,
        max_grid=max_grid,
        oracle_tol=oracle_tol,
    )
    rows = _collect(model, trials, seed, opt, workers)

    d = model.degree
    lg2d = math.log2(d) ** 2 if d > 1 else 1.0
    ratios = []
    unbounded = 0
    for row in rows:
        if row.cond_upper is None or not math.isfinite(row.cond_upper):
            unbounded += 1
            continue
        budget = (
            max(1.0, float(row.rho_count_max)) ** 2
            * max(1.0, math.log2(row.cond_upper))
            * lg2d
        )
        ratios.append(row.node_count / budget)
    arr = np.array(ratios, dtype=float)
    p99 = float(np.quantile(arr, 0.99)) if arr.size else math.inf

    return ExperimentReport(
        kind="instance_bound",
        config={
            "model": model.describe(),
            "trials": trials,
            "seed": seed,
            "constant": constant,
        },
        rows=rows,
        aggregates=_aggregate_by_d(rows),
        extras={
            "ratio_mean": float(np.mean(arr)) if arr.size else math.inf,
            "ratio_p99": p99,
            "ratio_max": float(np.max(arr)) if arr.size else math.inf,
            "excluded_unbounded": unbounded,
            "constant": constant,
            "pass": p99 < constant,
        },
        timing=_timing(rows),
    )
