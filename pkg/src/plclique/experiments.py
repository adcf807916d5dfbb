"""Seeded Monte Carlo harness: sample graphs over an n-grid, measure cliques, fit scaling laws."""

from __future__ import annotations

import csv
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np
from scipy import stats

from . import theory
from .cliques import (DEFAULT_NODE_BUDGET, METHODS, count_k4, count_triangles,
                      run_method)
from .errors import BudgetExceeded, ValidationError
from .model import ModelParams
from .sampler import heavy_vertex_set, sample_graph
from .weights import (WeightParams, deterministic_weights, sample_iid_pareto,
                      sample_poisson_vertex_count)

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

log = logging.getLogger(__name__)

WEIGHT_MODES = ("iid", "deterministic", "poisson-count")
CHAINS = (("full_top", "quasi_top", "greedy", "exact"),
          ("degree_full_top", "degree_quasi_top", "degree_greedy", "exact"))


@dataclass(frozen=True)
class ExperimentConfig:
    model: ModelParams = field(default_factory=ModelParams)
    weight_mode: str = "iid"
    n_grid: tuple = (1000,)
    replications: int = 1
    master_seed: int = 0
    algorithms: tuple = ("greedy", "quasi_top", "full_top", "exact")
    order: str = "weight"
    exact_oracle_max_n: int = 200
    output_path: str | None = None
    workers: int = 1
    sampler: str = "fast"
    count_small_cliques: bool = True
    node_budget: int = DEFAULT_NODE_BUDGET
    heavy_s: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if not self.n_grid:
            raise ValidationError("n_grid must be nonempty")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ValidationError("n_grid must be strictly ascending")
        if self.n_grid[0] < 1:
            raise ValidationError("n_grid entries must be positive")
        if self.replications < 1:
            raise ValidationError("replications must be at least 1")
        if self.weight_mode not in WEIGHT_MODES:
            raise ValidationError(f"weight_mode must be one of {WEIGHT_MODES}")
        if self.order not in ("weight", "degree"):
            raise ValidationError("order must be 'weight' or 'degree'")
        bad = [m for m in self.algorithms if m not in METHODS]
        if bad or not self.algorithms:
            raise ValidationError(f"unknown algorithms {bad}; expected a subset of {METHODS}")
        if self.workers < 1:
            raise ValidationError("workers must be at least 1")

    @property
    def methods(self) -> tuple:
        """Algorithm names after applying ``order`` to the unprefixed heuristics."""
        if self.order == "weight":
            return self.algorithms
        out = []
        for m in self.algorithms:
            name = m if m == "exact" or m.startswith("degree_") else "degree_" + m
            if name not in out:
                out.append(name)
        return tuple(out)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        try:
            model = ModelParams(**d.pop("model", {}))
        except TypeError as e:
            raise ValidationError(f"bad [model] table: {e}") from None
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        return cls(model=model, **d)

    @classmethod
    def from_toml(cls, path) -> "ExperimentConfig":
        with open(path, "rb") as fh:
            try:
                data = tomllib.load(fh)
            except tomllib.TOMLDecodeError as e:
                raise ValidationError(f"{path}: {e}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_grid"] = list(self.n_grid)
        d["algorithms"] = list(self.algorithms)
        return d


@dataclass(frozen=True)
class RunRecord:
    n: int
    replicate: int
    seed: int
    sizes: dict
    x3: int | None
    x4: int | None
    edge_count: int
    vertex_count: int
    heavy_vertices: int | None = None
    wall_time: float = field(default=0.0, compare=False)

    def __post_init__(self):
        check_chain(self.sizes)

    @property
    def omega(self):
        """Exact clique number, or the greedy lower bound when exact search was skipped."""
        s = self.sizes
        if s.get("exact") is not None:
            return s["exact"]
        return s.get("greedy", s.get("degree_greedy"))


def check_chain(sizes: dict):
    for chain in CHAINS:
        vals = [(m, sizes[m]) for m in chain if sizes.get(m) is not None]
        for (m1, v1), (m2, v2) in zip(vals, vals[1:]):
            if v1 > v2:
                raise ValidationError(f"chain violated: |{m1}|={v1} > |{m2}|={v2}")


def replicate_seed(master_seed: int, n: int, replicate: int) -> int:
    """Counter-derived 64-bit seed for one replicate."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(n, replicate))
    return int(ss.generate_state(1, np.uint64)[0])


def sample_instance(n, params: ModelParams, seed, weight_mode="iid", sampler="fast"):
    """Weights and graph for one replicate seed.

    Independent child streams feed the vertex count, the weights and the
    edges, so the same seed reproduces the instance from the CLI.
    """
    s_count, s_weights, s_graph = np.random.SeedSequence(seed).spawn(3)
    wp = WeightParams(alpha=params.alpha, a=params.a)
    n_scale = None
    if weight_mode == "iid":
        weights = sample_iid_pareto(int(n), wp, s_weights)
    elif weight_mode == "deterministic":
        weights = deterministic_weights(int(n), params.a, params.alpha)
    elif weight_mode == "poisson-count":
        weights = sample_iid_pareto(sample_poisson_vertex_count(n, s_count), wp, s_weights)
        n_scale = float(n)
    else:
        raise ValidationError(f"unknown weight mode {weight_mode!r}")
    graph = sample_graph(weights, params, s_graph, n_scale=n_scale, method=sampler)
    return weights, graph


def run_replicate(config: ExperimentConfig, n: int, replicate: int) -> RunRecord:
    t0 = time.perf_counter()
    seed = replicate_seed(config.master_seed, n, replicate)
    weights, g = sample_instance(n, config.model, seed, config.weight_mode, config.sampler)
    sizes = {}
    for m in config.methods:
        if m == "exact":
            if g.n > config.exact_oracle_max_n:
                continue
            try:
                sizes[m] = run_method(g, m, config.node_budget).size
            except BudgetExceeded:
                log.warning("exact search over budget at n=%d replicate %d", n, replicate)
                sizes[m] = None
        else:
            sizes[m] = run_method(g, m).size
    x3 = x4 = None
    if config.count_small_cliques:
        x3, x4 = count_triangles(g), count_k4(g)
    heavy = len(heavy_vertex_set(weights, config.heavy_s)) if g.n >= 2 else None
    return RunRecord(n, replicate, seed, sizes, x3, x4, g.edge_count, g.n, heavy,
                     time.perf_counter() - t0)


def _run_task(args):
    return run_replicate(*args)


def run_experiment(config: ExperimentConfig) -> list:
    """All replicates, ordered by (n, replicate) regardless of ``workers``."""
    tasks = [(config, n, r) for n in config.n_grid for r in range(config.replications)]
    if config.workers == 1:
        records = []
        for t in tasks:
            records.append(_run_task(t))
            log.info("n=%d rep=%d done in %.2fs", t[1], t[2], records[-1].wall_time)
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            records = list(ex.map(_run_task, tasks))
    records.sort(key=lambda r: (r.n, r.replicate))
    if config.output_path:
        preds = {n: theory.predictions(config.model, n) for n in config.n_grid}
        write_report(summarize(records, preds, config.model), config.output_path, records)
    return records


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    slope_stderr: float
    r_squared: float
    points_used: int

    def to_dict(self):
        return asdict(self)


def fit_loglog_slope(points) -> ScalingFit:
    """Least-squares line through ``(log n, log statistic)``."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise ValidationError("a scaling fit needs at least 3 points")
    if any(x <= 0 or y <= 0 for x, y in pts):
        raise ValidationError("n and the statistic must be positive")
    lx = np.log([p[0] for p in pts])
    ly = np.log([p[1] for p in pts])
    res = stats.linregress(lx, ly)
    r2 = float(res.rvalue ** 2) if np.isfinite(res.rvalue) else 1.0
    return ScalingFit(float(res.slope), float(res.intercept), float(res.stderr), r2, len(pts))


def poisson_bins(counts, rate, min_expected=5.0):
    """Observed and expected counts over Poisson cells merged to ``min_expected``."""
    counts = np.asarray(counts, dtype=np.int64)
    if counts.size == 0:
        raise ValidationError("counts must be nonempty")
    if np.any(counts < 0):
        raise ValidationError("counts must be nonnegative")
    if not rate > 0:
        raise ValidationError(f"rate must be positive, got {rate}")
    total = counts.size
    # cells reach past the Poisson bulk too, so a sample missing it still shows up
    top = max(int(counts.max()), int(stats.poisson.ppf(1 - 1e-6, rate))) + 1
    obs = np.bincount(counts, minlength=top).astype(float)
    exp = total * stats.poisson.pmf(np.arange(top), rate)
    # last cell is the upper tail {k >= top - 1}
    obs[-1] = np.count_nonzero(counts >= top - 1)
    exp[-1] = total * stats.poisson.sf(top - 2, rate)
    cells_o, cells_e = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(obs, exp):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            cells_o.append(acc_o)
            cells_e.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if cells_e:
            cells_o[-1] += acc_o
            cells_e[-1] += acc_e
        else:
            cells_o.append(acc_o)
            cells_e.append(acc_e)
    return np.array(cells_o), np.array(cells_e)


def poisson_gof(counts, rate) -> tuple[float, float]:
    """Chi-square test of ``counts`` against Po(rate); returns (statistic, p-value)."""
    obs, exp = poisson_bins(counts, rate)
    if obs.size < 2:
        raise ValidationError("binning collapsed to a single cell; need more samples")
    chi2 = float(np.sum((obs - exp) ** 2 / exp))
    return chi2, float(stats.chi2.sf(chi2, obs.size - 1))


@dataclass
class Report:
    rows: list
    summary: dict


def _quantiles(vals):
    q1, med, q3 = np.percentile(vals, [25, 50, 75])
    return float(med), float(q1), float(q3)


def _median_ratio(recs, num, den):
    r = [x.sizes[num] / x.sizes[den] for x in recs
         if x.sizes.get(num) is not None and x.sizes.get(den)]
    return float(np.median(r)) if r else None


def summarize(records, predictions=None, params: ModelParams | None = None) -> Report:
    """Per-n size statistics, clique-size ratios, omega frequencies and fits.

    ``predictions`` maps n to the dict from :func:`theory.predictions`.
    """
    if not records:
        raise ValidationError("no records to summarize")
    predictions = predictions or {}
    by_n = {}
    for r in records:
        check_chain(r.sizes)
        by_n.setdefault(r.n, []).append(r)
    rows = []
    per_n = {}
    for n in sorted(by_n):
        recs = by_n[n]
        pred = predictions.get(n, {})
        omega_pred = pred.get("omega", {}).get("value") if isinstance(pred.get("omega"), dict) else None
        methods = [m for m in METHODS if any(r.sizes.get(m) is not None for r in recs)]
        entry = {"replicates": len(recs), "methods": {}}
        for m in methods:
            vals = [r.sizes[m] for r in recs if r.sizes.get(m) is not None]
            med, q1, q3 = _quantiles(vals)
            rows.append({"n": n, "method": m, "count": len(vals), "median": med,
                         "q1": q1, "q3": q3, "mean": float(np.mean(vals)),
                         "predicted_omega": omega_pred})
            entry["methods"][m] = {"median": med, "q1": q1, "q3": q3, "count": len(vals)}
        entry["ratios"] = {
            "full_top/greedy": _median_ratio(recs, "full_top", "greedy"),
            "quasi_top/greedy": _median_ratio(recs, "quasi_top", "greedy"),
            "degree_greedy/greedy": _median_ratio(recs, "degree_greedy", "greedy"),
            "degree_full_top/degree_greedy": _median_ratio(recs, "degree_full_top", "degree_greedy"),
        }
        exact = [r.sizes["exact"] for r in recs if r.sizes.get("exact") is not None]
        if exact:
            exact = np.array(exact)
            entry["omega_frequencies"] = {
                "2": float(np.mean(exact == 2)), "3": float(np.mean(exact == 3)),
                ">=4": float(np.mean(exact >= 4)), "count": int(exact.size)}
        omegas = [r.omega for r in recs if r.omega is not None]
        if omegas:
            entry["omega_p95"] = float(np.percentile(omegas, 95))
        x3 = [r.x3 for r in recs if r.x3 is not None]
        if x3:
            entry["x3_mean"] = float(np.mean(x3))
            entry["x3_var"] = float(np.var(x3))
            rate = pred.get("triangle_rate")
            if rate and len(x3) >= 20:
                try:
                    chi2, p = poisson_gof(x3, rate)
                    entry["x3_gof"] = {"chi_square": chi2, "p_value": p}
                except ValidationError:
                    pass
        entry["edge_count_median"] = float(np.median([r.edge_count for r in recs]))
        entry["predictions"] = pred
        per_n[str(n)] = entry
    fits = {}
    ns = sorted(by_n)
    for m in ("greedy", "degree_greedy", "exact"):
        pts = [(n, per_n[str(n)]["methods"][m]["median"]) for n in ns
               if m in per_n[str(n)]["methods"] and per_n[str(n)]["methods"][m]["median"] > 0]
        if len(pts) >= 3:
            fits[m] = fit_loglog_slope(pts).to_dict()
            if params is not None and params.alpha < 2 and params.kernel == "exponential":
                # remove the log factor so the slope estimates 1 - alpha/2
                adj = [(n, y * math.log(n) ** (params.alpha / 2)) for n, y in pts]
                fits[m + "_log_adjusted"] = fit_loglog_slope(adj).to_dict()
    summary = {"per_n": per_n, "fits": fits}
    if params is not None:
        summary["model"] = asdict(params)
    return Report(rows, summary)


RECORD_COLUMNS = ("n", "replicate", "seed", "edge_count", "vertex_count", "heavy_vertices", "x3", "x4")


def write_records_csv(records, path):
    methods = [m for m in METHODS if any(m in r.sizes for r in records)]
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(list(RECORD_COLUMNS) + methods)
        for r in records:
            row = [getattr(r, c) for c in RECORD_COLUMNS] + [r.sizes.get(m) for m in methods]
            wr.writerow(["" if v is None else v for v in row])


def write_report(report: Report, out_dir, records=None):
    """Write summary.csv, summary.json and, given records, records.csv and timings.csv."""
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "summary.csv"), "w", newline="") as fh:
        cols = ["n", "method", "count", "median", "q1", "q3", "mean", "predicted_omega"]
        wr = csv.DictWriter(fh, fieldnames=cols)
        wr.writeheader()
        for row in report.rows:
            wr.writerow({k: ("" if row[k] is None else row[k]) for k in cols})
    with open(os.path.join(out_dir, "summary.json"), "w") as fh:
        json.dump(report.summary, fh, indent=2, sort_keys=True)
    if records is not None:
        write_records_csv(records, os.path.join(out_dir, "records.csv"))
        # wall times vary run to run, so they stay out of records.csv
        with open(os.path.join(out_dir, "timings.csv"), "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["n", "replicate", "wall_time"])
            for r in records:
                wr.writerow([r.n, r.replicate, f"{r.wall_time:.6f}"])
