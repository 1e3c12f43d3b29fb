"""Acceptance criteria 1-9, each at its stated tolerance.

Every test appends one ``criterion N: PASS|FAIL`` line, shown in the pytest
terminal summary; running this file directly prints the same lines.
"""

import sys
import time
from collections import Counter
from fractions import Fraction

import networkx as nx
import numpy as np

from conftest import ACCEPTANCE_LINES, RP2_SIX, random_graph
from flagtorsion.betti import SubsetScanner, betti_table, semicontinuity_check, torsion_primes
from flagtorsion.complexes import Graph, SimplicialComplex, clique_complex
from flagtorsion.construction import (
    build_group_complex,
    build_sphere_stage,
    build_telescope,
    rp2_flag,
)
from flagtorsion.density import density_bounds, essential_density
from flagtorsion.experiments import ExperimentConfig, detect_torsion, run_threshold_experiment
from flagtorsion.homology import homology, homology_all, homology_dim_mod, uct_dimension
from flagtorsion.random_flag import FlagModelParams, sample_graph
from flagtorsion.reproduce import expected_t1, reproduce, verify_xm_range


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_criterion_1_construction_certificates():
    start = time.perf_counter()
    certs = verify_xm_range(2, 64)
    bad = [(c.m, c.failures()) for c in certs if not c.passed]
    elapsed = time.perf_counter() - start
    ok = not bad and len(certs) == 63 and elapsed < 120
    assert record(1, ok, f"{len(certs) - len(bad)}/63 X_m certified in {elapsed:.1f}s; failures {bad}")


def test_criterion_2_table_reproduction():
    reports = [reproduce(t) for t in ("T1", "T2", "T3", "T4", "T5", "lemma51")]
    failed = {r.table: [f"{c.cell}: expected {c.expected}, got {c.actual}" for c in r.failures()] for r in reports if not r.passed}
    cells = sum(len(r.checks) for r in reports)
    assert record(2, not failed, f"{cells} cells checked; mismatches {failed or 'none'}")


def test_criterion_3_stage_counts():
    problems = []
    for nk in range(1, 11):
        c = build_telescope(nk)
        if c.fvector() != (12 * nk + 4, 40 * nk + 4, 28 * nk):
            problems.append(f"Y_1({nk}) f={c.fvector()}")
        if max(c.degrees()) not in (6, 9):
            problems.append(f"Y_1({nk}) maxdeg={max(c.degrees())}")
    for i in range(11):
        c = build_sphere_stage(i)
        if c.fvector() != (2 * i + 4, 6 * i + 6, 4 * i + 4):
            problems.append(f"T_{i} f={c.fvector()}")
        want = Counter({deg: len(vs) for deg, vs in expected_t1(i).items()})
        if Counter(c.degrees()) != want:
            problems.append(f"T_{i} degrees {Counter(c.degrees())}")
    assert record(3, not problems, f"telescopes 1..10 and sphere stages 0..10; problems {problems or 'none'}")


def test_criterion_4_group_complexes():
    got = {tuple(fs): homology(build_group_complex(fs), 1).torsion for fs in ([2, 4], [3, 9])}
    ok = all(t == fs for fs, t in got.items())
    assert record(4, ok, f"H_1 torsion {got}")


def _random_complex(rng):
    n = int(rng.integers(3, 9))
    facets = []
    for _ in range(int(rng.integers(3, 10))):
        size = int(rng.integers(1, min(4, n) + 1))
        facets.append(tuple(rng.choice(n, size=size, replace=False).tolist()))
    if rng.random() < 0.2 and n >= 6:
        facets += RP2_SIX
    return SimplicialComplex.from_facets(n, facets)


def test_criterion_5_uct_consistency():
    rng = np.random.default_rng(5)
    checked, bad, torsion_seen = 0, [], 0
    start = time.perf_counter()
    for trial in range(200):
        c = _random_complex(rng)
        groups = homology_all(c, reduced=True)
        torsion_seen += any(g.torsion for g in groups)
        for ell in (2, 3, 5):
            for d in range(-1, c.dim + 1):
                checked += 1
                if homology_dim_mod(c, d, ell, reduced=True) != uct_dimension(groups, d, ell, offset=-1):
                    bad.append((trial, ell, d))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    assert record(5, ok, f"{checked} (complex, ell, d) checks on 200 complexes, {torsion_seen} with torsion, "
                         f"{elapsed:.1f}s; mismatches {bad or 'none'}")


def test_criterion_6_hochster():
    c = rp2_flag()
    scan = SubsetScanner(c)
    q, f2, f3 = (betti_table(c, ch, scanner=scan) for ch in (0, 2, 3))
    differ2 = q.nonzero() != f2.nonzero()
    agree3 = q.nonzero() == f3.nonzero()
    primes = torsion_primes(c, scanner=scan).primes
    c4 = betti_table(clique_complex(Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))).nonzero()
    # complete intersection of two quadrics: Koszul numbers 1, 2 in degree 2, 1 in degree 4
    c4_ok = c4 == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    ok = differ2 and agree3 and primes == {2} and c4_ok
    assert record(6, ok, f"char0 vs char2 differ={differ2}, char0 vs char3 agree={agree3}, "
                         f"torsion primes={sorted(primes)}, C_4 table={c4}")


def _fact_22_family():
    family = []
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= 6:
            family.append(("atlas", clique_complex(Graph(g.number_of_nodes(), g.edges()))))
    rng = np.random.default_rng(22)
    for idx in range(50):
        n = int(rng.integers(6, 10))
        if idx % 2 == 0:
            family.append(("random flag", clique_complex(random_graph(rng, n, float(rng.uniform(0.2, 0.8))))))
        else:
            # projective plane on 0..5 plus random faces through the remaining vertices
            facets = list(RP2_SIX)
            for _ in range(int(rng.integers(1, 5))):
                size = int(rng.integers(2, 5))
                facets.append(tuple(rng.choice(n, size=size, replace=False).tolist()))
            family.append(("random", SimplicialComplex.from_facets(n, facets)))
    return family


def test_criterion_7_fact_22_equivalence():
    family = _fact_22_family()
    bad, positives = [], Counter()
    for idx, (kind, c) in enumerate(family):
        scan = SubsetScanner(c)
        primes = torsion_primes(c, scanner=scan).primes
        for ell in (2, 3):
            differ = bool(semicontinuity_check(c, ell, scanner=scan).strict)
            positives[ell] += differ
            if differ != (ell in primes):
                bad.append((idx, kind, ell))
    atlas = sum(1 for k, _ in family if k == "atlas")
    assert record(7, not bad, f"{atlas} atlas flag complexes + {len(family) - atlas} random (n <= 9); "
                              f"tables differ for ell=2 on {positives[2]}, ell=3 on {positives[3]}; "
                              f"disagreements {bad or 'none'}")


# frozen after a pilot at seed 0: 50/50 at (150, 0.5), 0/50 at (40, 0.08)
PILOT = {(150, Fraction(1, 2)): 50, (40, Fraction(2, 25)): 0}


def test_criterion_8_monte_carlo():
    start = time.perf_counter()
    notes = []
    # (a) determinism
    cfg = ExperimentConfig("rp2", (40, 150), ("0.08", "0.5"), 50, seed=0)
    first = run_threshold_experiment(cfg)
    second = run_threshold_experiment(cfg)
    det = first.to_csv() == second.to_csv() and first.to_json() == second.to_json()
    notes.append(f"deterministic={det}")
    # (b) frozen regression pair with non-overlapping Wilson intervals
    pts = {(pt.n, pt.p): pt for pt in first.points}
    hi, lo = pts[150, Fraction(1, 2)], pts[40, Fraction(2, 25)]
    frozen = hi.found == PILOT[150, Fraction(1, 2)] and lo.found == PILOT[40, Fraction(2, 25)]
    separated = hi.frequency >= lo.frequency and hi.ci_low > lo.ci_high and hi.exhausted == lo.exhausted == 0
    notes.append(f"(150,0.5) {hi.found}/50 ci=[{hi.ci_low:.3f},{hi.ci_high:.3f}] vs "
                 f"(40,0.08) {lo.found}/50 ci=[{lo.ci_low:.3f},{lo.ci_high:.3f}]")
    # (c) detect-torsion agrees with a direct Betti-table comparison
    tcfg = ExperimentConfig("rp2", (12,), ("0.3", "0.5"), 3, seed=0, mode="detect-torsion", budget=10**5)
    hosts = []
    for rec in run_threshold_experiment(tcfg).records:
        hosts.append((rec.outcome, sample_graph(FlagModelParams(rec.n, rec.p, rec.seed))))
    base = rp2_flag().skeleton_graph()
    rng = np.random.default_rng(8)
    for extra in (1, 1, 2):
        n = base.n + extra
        edges = list(base.edges) + [(u, v) for v in range(base.n, n) for u in range(v) if rng.random() < 0.5]
        host = Graph(n, edges)
        hosts.append((detect_torsion(host, None, {2})[0], host))
    # one extra edge inside the projective plane can destroy the torsion
    hosts.append((detect_torsion(Graph(11, list(base.edges) + [(0, 2)]), None, {2})[0],
                  Graph(11, list(base.edges) + [(0, 2)])))
    cross = []
    for outcome, host in hosts:
        differ = bool(semicontinuity_check(clique_complex(host), 2).strict)
        cross.append((outcome == "found") == differ)
    found = sum(o == "found" for o, _ in hosts)
    notes.append(f"torsion cross-check {sum(cross)}/{len(cross)} agree ({found} hosts with 2-torsion)")
    elapsed = time.perf_counter() - start
    ok = det and frozen and separated and all(cross) and elapsed < 1800
    assert record(8, ok, "; ".join(notes) + f"; {elapsed:.0f}s")


def test_criterion_9_density_engine():
    rng = np.random.default_rng(9)
    bad, bracket = [], []
    for idx in range(100):
        n = int(rng.integers(1, 13))
        g = random_graph(rng, n, float(rng.uniform(0.1, 0.9)))
        a, b = essential_density(g), essential_density(g, "maxflow")
        if a.density != b.density:
            bad.append((idx, a.density, b.density))
        lo, hi = density_bounds(g)
        if not lo <= a.density <= max(lo, hi):
            bracket.append(idx)
    assert record(9, not bad and not bracket,
                  f"100 random graphs n <= 12; mode disagreements {bad or 'none'}; bracket failures {bracket or 'none'}")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
