from fractions import Fraction

import pytest

from flagtorsion.density import contains_induced
from flagtorsion.experiments import (
    ExperimentConfig,
    _pattern_graph,
    derive_seed,
    pattern_density,
    run_threshold_experiment,
    target_primes,
    wilson_interval,
)
from flagtorsion.random_flag import FlagModelParams, sample_graph


def test_derived_seed_is_pure():
    a = derive_seed(1, 40, Fraction(1, 10), 3)
    assert a == derive_seed(1, 40, Fraction(1, 10), 3)
    assert len({a, derive_seed(2, 40, Fraction(1, 10), 3), derive_seed(1, 41, Fraction(1, 10), 3),
                derive_seed(1, 40, Fraction(1, 5), 3), derive_seed(1, 40, Fraction(1, 10), 4)}) == 5
    assert 0 <= a < 2**64


def test_empty_graph_gives_zero_frequency():
    res = run_threshold_experiment(ExperimentConfig("rp2", (150,), ("0",), 10))
    pt = res.points[0]
    assert pt.frequency == 0.0 and pt.found == 0 and pt.exhausted == 0


def test_outputs_are_deterministic():
    cfg = ExperimentConfig("rp2", (30, 60), ("0.3", "0.5"), 4, seed=9)
    a, b = run_threshold_experiment(cfg), run_threshold_experiment(cfg)
    assert a.to_csv() == b.to_csv()
    assert a.to_json() == b.to_json()
    assert a.to_gnuplot() == b.to_gnuplot()


def test_thread_count_does_not_change_output():
    cfg = ExperimentConfig("rp2", (40,), ("0.4", "0.6"), 3, seed=2)
    assert run_threshold_experiment(cfg, threads=2).to_json() == run_threshold_experiment(cfg).to_json()


def test_exhausted_trials_are_reported_separately():
    res = run_threshold_experiment(ExperimentConfig("rp2", (80,), ("0.5",), 3, budget=2))
    pt = res.points[0]
    assert pt.exhausted == 3
    assert pt.frequency is None and pt.not_found == 0


def test_subgraph_event_is_monotone_under_coupling():
    pattern = _pattern_graph("rp2")
    for seed in range(10):
        a = contains_induced(pattern, sample_graph(FlagModelParams(40, "0.3", seed)), induced=False).found
        b = contains_induced(pattern, sample_graph(FlagModelParams(40, "0.45", seed)), induced=False).found
        assert not a or b


def test_threshold_reference():
    res = run_threshold_experiment(ExperimentConfig("rp2", (100,), ("0.1",), 1))
    assert res.pattern_density == Fraction(30, 11)
    assert res.points[0].threshold == pytest.approx(100 ** (-11 / 30), abs=1e-6)
    assert pattern_density("xm:2") > 2


def test_wilson_interval():
    lo, hi = wilson_interval(50, 50)
    assert hi == pytest.approx(1.0)
    assert lo == pytest.approx(0.928652, abs=1e-6)
    lo, hi = wilson_interval(0, 50)
    assert lo == pytest.approx(0.0, abs=1e-12) and hi == pytest.approx(0.071348, abs=1e-6)


def test_target_primes():
    assert target_primes("rp2") == {2}
    assert target_primes("xm:12") == {2, 3}
    assert target_primes("some/file.json") is None


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig("rp2", (), ("0.5",), 1)
    with pytest.raises(ValueError):
        ExperimentConfig("rp2", (10,), ("1.5",), 1)
    with pytest.raises(ValueError):
        ExperimentConfig("rp2", (10,), ("0.5",), 0)
    with pytest.raises(ValueError):
        ExperimentConfig("rp2", (10,), ("0.5",), 1, mode="count")
    with pytest.raises(ValueError):
        run_threshold_experiment(ExperimentConfig("klein", (10,), ("0.5",), 1))


def test_detect_torsion_mode_small():
    res = run_threshold_experiment(
        ExperimentConfig("rp2", (8,), ("0.5",), 2, mode="detect-torsion", budget=10**4)
    )
    # no flag complex on fewer than 11 vertices has 2-torsion
    assert res.points[0].found == 0
    capped = run_threshold_experiment(
        ExperimentConfig("rp2", (30,), ("0.5",), 1, mode="detect-torsion", budget=10)
    )
    assert capped.points[0].exhausted == 1
