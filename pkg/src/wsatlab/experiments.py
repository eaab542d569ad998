"""Seeded Monte Carlo: G(n,p) sampling, percolation curves, p_c bisection,
exponent fits, and the induced-ladder frequency experiment.

Reproducibility contract: randomness comes from numpy's counter-based
Philox generator, keyed per trial as Philox(key=mix_seed(master_seed,
stream_id)) where mix_seed is the splitmix64-based mixing function below.
Identical (config, master seed) therefore give identical output regardless
of worker count; WSAT_THREADS (or the ``workers`` argument) only partitions
the work.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .closure import percolates
from .graphs import Graph, parse_graph6, serialize_graph6
from .ladders import LadderSpec, count_induced_ladders_at
from .patterns import PatternStats, analyze

_MASK64 = (1 << 64) - 1
_PHI64 = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> int:
    x = (x + _PHI64) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix_seed(master_seed: int, stream_id: int) -> int:
    """Published 64-bit mixing function for per-stream seeds."""
    return _splitmix64(_splitmix64(master_seed & _MASK64) ^ ((stream_id * _PHI64) & _MASK64))


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi sample, fully determined by (n, p, seed)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0,1]")
    if n < 1:
        raise ValueError("n >= 1 required")
    rng = np.random.Generator(np.random.Philox(key=seed & _MASK64))
    m = np.zeros((n, n), dtype=bool)
    iu = np.triu_indices(n, 1)
    m[iu] = rng.random(len(iu[0])) < p
    m |= m.T
    packed = np.packbits(m, axis=1, bitorder="little")
    g = Graph(n)
    g.rows = [int.from_bytes(packed[i].tobytes(), "little") for i in range(n)]
    g._m = int(m[iu].sum())
    return g


# -- worker plumbing -----------------------------------------------------------


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("WSAT_THREADS")
    return max(1, int(env)) if env else 1


def _parallel_map(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def _percolation_trial(args: tuple[int, float, int, str]) -> bool:
    n, p, seed, h_g6 = args
    return percolates(sample_gnp(n, p, seed), parse_graph6(h_g6))


def _ladder_count_trial(args: tuple[int, float, int, str, int]) -> int:
    n, p, seed, h_g6, height = args
    g = sample_gnp(n, p, seed)
    spec = LadderSpec(pattern=parse_graph6(h_g6), height=height)
    return count_induced_ladders_at(g, (0, 1), spec)


# -- percolation probability ----------------------------------------------------


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass
class CurvePoint:
    n: int
    p: float
    trials: int
    successes: int
    fraction: float
    ci_lo: float
    ci_hi: float


def percolation_curve(
    n: int,
    pattern: Graph,
    ps: list[float],
    trials: int,
    master_seed: int,
    workers: int | None = None,
) -> list[CurvePoint]:
    h_g6 = serialize_graph6(pattern)
    w = worker_count(workers)
    points = []
    for pi, p in enumerate(ps):
        tasks = [
            (n, p, mix_seed(master_seed, (pi << 32) | t), h_g6)
            for t in range(trials)
        ]
        succ = sum(_parallel_map(_percolation_trial, tasks, w))
        lo, hi = wilson_interval(succ, trials)
        points.append(CurvePoint(n, p, trials, succ, succ / trials, lo, hi))
    return points


# -- p_c search -------------------------------------------------------------------


@dataclass
class PcEstimate:
    n: int
    p_hat: float
    interval: tuple[float, float]
    trials_per_probe: int
    probes: list[tuple[float, int, int, float]]  # (p, successes, trials, fraction)
    converged: bool


def bisect_pc(
    n: int,
    pattern: Graph,
    trials: int,
    tolerance: float,
    master_seed: int,
    workers: int | None = None,
    max_probes: int = 48,
) -> PcEstimate:
    """Bisection for the median percolation point, exploiting monotonicity
    of the percolation event in p.  The initial bracket is grown by
    doubling/halving from the n^(-1/lambda) theory marker."""
    if trials < 1:
        raise ValueError("trials >= 1 required")
    h_g6 = serialize_graph6(pattern)
    w = worker_count(workers)
    stats = analyze(pattern)
    probes: list[tuple[float, int, int, float]] = []

    def probe(p: float) -> float:
        idx = len(probes)
        tasks = [
            (n, p, mix_seed(master_seed, (idx << 40) | t), h_g6)
            for t in range(trials)
        ]
        succ = sum(_parallel_map(_percolation_trial, tasks, w))
        frac = succ / trials
        probes.append((p, succ, trials, frac))
        return frac

    if stats.lam is not None and stats.lam > 0:
        start = min(0.9, float(n) ** (-1.0 / float(stats.lam)))
    else:
        start = 0.5

    lo, hi = 0.0, 1.0
    p = start
    if probe(p) >= 0.5:
        hi = p
        while len(probes) < max_probes:
            p /= 2
            if p < 1e-9:
                # everything percolates down to negligible p
                return PcEstimate(n, 0.0, (0.0, hi), trials, probes, True)
            if probe(p) >= 0.5:
                hi = p
            else:
                lo = p
                break
    else:
        lo = p
        while len(probes) < max_probes and p < 1.0:
            p = min(1.0, p * 2)
            if probe(p) >= 0.5:
                hi = p
                break
            lo = p

    while len(probes) < max_probes:
        mid = (lo + hi) / 2
        if hi - lo < tolerance * mid:
            break
        frac = probe(mid)
        ci = wilson_interval(probes[-1][1], trials)
        if ci[0] < 0.5 < ci[1]:
            # the trial budget cannot resolve which side of p_c this probe
            # sits on, so the midpoint itself is the estimate
            return PcEstimate(n, mid, (lo, hi), trials, probes, True)
        if frac >= 0.5:
            hi = mid
        else:
            lo = mid
    p_hat = (lo + hi) / 2
    converged = hi - lo < tolerance * p_hat if p_hat > 0 else True
    return PcEstimate(n, p_hat, (lo, hi), trials, probes, converged)


# -- theory markers and ladder statistics ----------------------------------------


def theory_markers(n: int, stats: PatternStats) -> dict[str, float]:
    """Unit-constant marker values: n^(-1/lambda) and the general lower-bound
    order n^(-1/lambda*) (log n)^(1/lambda*-1)."""
    if stats.lam is None or stats.lam <= 0:
        raise ValueError("lambda undefined for this pattern")
    assert stats.lambda_star is not None
    inv_l = 1.0 / float(stats.lam)
    inv_ls = 1.0 / float(stats.lambda_star)
    return {
        "upper_order": n ** (-inv_l),
        "lower_order": n ** (-inv_ls) * math.log(n) ** (inv_ls - 1.0),
    }


def expected_ladder_count(n: int, p: float, spec: LadderSpec) -> float:
    """Exact expected number of labeled induced ladders at a fixed base,
    evaluated in log space."""
    from .ladders import build_ladder

    ladder = build_ladder(spec)
    k = ladder.size
    if k > n - 2:
        raise ValueError("ladder does not fit in the host")
    e_ladder = ladder.graph.edge_count           # lambda*k + 1
    non_edges = (k + 2) * (k + 1) // 2 - e_ladder
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 0.0 if non_edges > 0 else math.exp(
            math.lgamma(n - 1) - math.lgamma(n - 1 - k)
        )
    log_val = (
        math.lgamma(n - 1)
        - math.lgamma(n - 1 - k)
        + e_ladder * math.log(p)
        + non_edges * math.log1p(-p)
    )
    return math.exp(log_val)


@dataclass
class TrialConfig:
    n: int
    pattern: Graph
    p: float | None
    trials: int
    master_seed: int
    alpha: float | None = None
    beta: float | None = None
    height: int | None = None
    workers: int | None = None
    notes: dict = field(default_factory=dict)


def resolve_ladder_parameters(cfg: TrialConfig, stats: PatternStats) -> tuple[float, int, dict]:
    """p = (alpha/n)^(1/lambda), h = round(beta log n) clamped to >= 1.

    The admissibility constraints on (alpha, beta) are reported, not
    enforced.
    """
    assert stats.lam is not None
    report: dict = {}
    if cfg.alpha is not None and cfg.beta is not None:
        p = (cfg.alpha / cfg.n) ** (1.0 / float(stats.lam))
        h = max(1, round(cfg.beta * math.log(cfg.n)))
        lo = math.log(2)
        mid = 1.0 / (float(stats.lam) * cfg.beta)
        hi = (stats.v_h - 2) * math.log(cfg.alpha) if cfg.alpha > 0 else float("-inf")
        report["constraints_satisfied"] = lo < mid < hi
        report["constraint_values"] = {"log2": lo, "inv_lambda_beta": mid,
                                       "vh2_log_alpha": hi}
    else:
        if cfg.p is None or cfg.height is None:
            raise ValueError("either (alpha, beta) or (p, height) must be set")
        p, h = cfg.p, cfg.height
    return p, h, report


def ladder_base_experiment(cfg: TrialConfig) -> dict:
    """Frequency with which the fixed pair (0,1) is the base of an induced
    ladder, plus the empirical mean count against its exact expectation."""
    stats = analyze(cfg.pattern)
    p, height, report = resolve_ladder_parameters(cfg, stats)
    h_g6 = serialize_graph6(cfg.pattern)
    w = worker_count(cfg.workers)
    tasks = [
        (cfg.n, p, mix_seed(cfg.master_seed, t), h_g6, height)
        for t in range(cfg.trials)
    ]
    counts = _parallel_map(_ladder_count_trial, tasks, w)
    counts_arr = np.asarray(counts, dtype=float)
    mean = float(counts_arr.mean())
    se = float(counts_arr.std(ddof=1) / math.sqrt(len(counts_arr))) if len(counts_arr) > 1 else 0.0
    spec = LadderSpec(pattern=cfg.pattern, height=height)
    formula = expected_ladder_count(cfg.n, p, spec)
    out = {
        "n": cfg.n,
        "p": p,
        "height": height,
        "trials": cfg.trials,
        "base_frequency": float((counts_arr > 0).mean()),
        "mean_count": mean,
        "stderr_count": se,
        "formula_count": formula,
    }
    if cfg.alpha is not None:
        denom = cfg.alpha ** (stats.v_h - 2) - 1
        out["gamma"] = 1.0 - 1.0 / denom if denom > 0 else float("nan")
    out.update(report)
    return out


# -- exponent fit -------------------------------------------------------------------


def fit_exponent(estimates: list[tuple[int, float]]) -> tuple[float, float]:
    """Least-squares slope of log p_hat against log n, with standard error."""
    if len(estimates) < 3:
        raise ValueError("need at least 3 points")
    xs = np.log([float(n) for n, _ in estimates])
    ys = np.log([float(p) for _, p in estimates])
    if np.allclose(xs, xs[0]):
        raise ValueError("degenerate fit: all n equal")
    a = np.vstack([xs, np.ones_like(xs)]).T
    coef, residuals, *_ = np.linalg.lstsq(a, ys, rcond=None)
    slope = float(coef[0])
    dof = len(xs) - 2
    if dof > 0 and residuals.size:
        s2 = float(residuals[0]) / dof
        stderr = math.sqrt(s2 / float(((xs - xs.mean()) ** 2).sum()))
    else:
        stderr = 0.0
    return slope, stderr
