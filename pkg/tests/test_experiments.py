import math

import pytest

from wsatlab.graphs import make_clique
from wsatlab.ladders import LadderSpec
from wsatlab.patterns import analyze
from wsatlab.experiments import (
    TrialConfig,
    bisect_pc,
    expected_ladder_count,
    fit_exponent,
    ladder_base_experiment,
    mix_seed,
    percolation_curve,
    sample_gnp,
    theory_markers,
    wilson_interval,
    worker_count,
)


def test_sample_gnp_deterministic():
    a = sample_gnp(25, 0.3, 777)
    b = sample_gnp(25, 0.3, 777)
    assert a == b
    assert a != sample_gnp(25, 0.3, 778)


def test_sample_gnp_extremes_and_stats():
    assert sample_gnp(10, 0.0, 1).edge_count == 0
    assert sample_gnp(10, 1.0, 1).is_complete()
    with pytest.raises(ValueError):
        sample_gnp(10, 1.5, 1)
    n, p = 40, 0.2
    trials = 200
    mean = sum(sample_gnp(n, p, s).edge_count for s in range(trials)) / trials
    expect = n * (n - 1) / 2 * p
    sd = math.sqrt(n * (n - 1) / 2 * p * (1 - p) / trials)
    assert abs(mean - expect) < 5 * sd


def test_mix_seed_spreads():
    seeds = {mix_seed(42, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert mix_seed(42, 0) != mix_seed(43, 0)


def test_wilson_interval():
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    assert wilson_interval(0, 100)[0] == pytest.approx(0.0, abs=1e-12)
    assert wilson_interval(100, 100)[1] == pytest.approx(1.0, abs=1e-12)
    assert wilson_interval(0, 0) == (0.0, 1.0)


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("WSAT_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("WSAT_THREADS", "8")
    assert worker_count() == 8
    assert worker_count(3) == 3


def test_percolation_curve_extremes():
    pts = percolation_curve(12, make_clique(3), [0.0, 1.0], 25, 5)
    assert pts[0].fraction == 0.0
    assert pts[1].fraction == 1.0


def test_percolation_curve_worker_invariance():
    k4 = make_clique(4)
    a = percolation_curve(18, k4, [0.15, 0.3], 30, 11, workers=1)
    b = percolation_curve(18, k4, [0.15, 0.3], 30, 11, workers=4)
    assert [(p.successes, p.fraction) for p in a] == [
        (p.successes, p.fraction) for p in b
    ]


def test_expected_ladder_count_closed_form():
    # K_4 ladder of height 1 on k=2 extra vertices: 5 edges, 1 absent pair
    spec = LadderSpec(pattern=make_clique(4), height=1)
    for n, p in [(60, 0.1), (30, 0.05)]:
        exact = (n - 2) * (n - 3) * p**5 * (1 - p)
        assert expected_ladder_count(n, p, spec) == pytest.approx(exact, rel=1e-12)
    assert expected_ladder_count(60, 0.0, spec) == 0.0
    assert expected_ladder_count(60, 1.0, spec) == 0.0  # absent pair impossible
    with pytest.raises(ValueError):
        expected_ladder_count(3, 0.1, spec)


def test_theory_markers():
    s5 = analyze(make_clique(5))
    m = theory_markers(10_000, s5)
    assert m["upper_order"] == pytest.approx(10_000 ** (-3 / 8))
    s4 = analyze(make_clique(4))
    m4 = theory_markers(10_000, s4)
    assert m4["upper_order"] == pytest.approx(1e-2)
    assert m4["lower_order"] == pytest.approx(1e-2 * math.log(10_000) ** -0.5)


def test_fit_exponent_exact():
    pts = [(n, 3.0 * n**-1.5) for n in (50, 100, 200, 400)]
    slope, stderr = fit_exponent(pts)
    assert slope == pytest.approx(-1.5, abs=1e-9)
    assert stderr == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(ValueError):
        fit_exponent(pts[:2])


def test_bisect_pc_k2_trivial():
    est = bisect_pc(10, make_clique(2), trials=20, tolerance=0.2, master_seed=3)
    assert est.p_hat == 0.0
    assert est.converged


def test_bisect_pc_k3_matches_connectivity_threshold():
    n = 60
    est = bisect_pc(n, make_clique(3), trials=120, tolerance=0.15, master_seed=17)
    marker = math.log(n) / n
    assert marker / 2 <= est.p_hat <= 2 * marker
    assert all(t == 120 for _, _, t, _ in est.probes)


def test_bisect_pc_deterministic_across_workers():
    a = bisect_pc(30, make_clique(3), trials=60, tolerance=0.2, master_seed=5,
                  workers=1)
    b = bisect_pc(30, make_clique(3), trials=60, tolerance=0.2, master_seed=5,
                  workers=4)
    assert a.p_hat == b.p_hat and a.probes == b.probes


def test_ladder_base_experiment_small():
    cfg = TrialConfig(
        n=20, pattern=make_clique(4), p=0.25, trials=60, master_seed=23, height=1
    )
    out = ladder_base_experiment(cfg)
    assert out["trials"] == 60
    assert 0.0 <= out["base_frequency"] <= 1.0
    assert out["formula_count"] == pytest.approx(
        18 * 17 * 0.25**5 * 0.75, rel=1e-12
    )
    assert abs(out["mean_count"] - out["formula_count"]) < max(
        5 * out["stderr_count"], 0.2
    )


def test_ladder_experiment_alpha_beta_parameters():
    cfg = TrialConfig(
        n=50, pattern=make_clique(4), p=None, trials=10, master_seed=1,
        alpha=2.0, beta=0.3,
    )
    out = ladder_base_experiment(cfg)
    assert out["p"] == pytest.approx((2.0 / 50) ** 0.5)
    assert out["height"] == max(1, round(0.3 * math.log(50)))
    assert "gamma" in out and out["gamma"] == pytest.approx(1 - 1 / (2.0**2 - 1))
