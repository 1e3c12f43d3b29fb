import itertools

import pytest

from conftest import random_complex
from flagtorsion.betti import (
    SubsetScanner,
    betti_table,
    predicted_gap,
    semicontinuity_check,
    torsion_primes,
)
from flagtorsion.complexes import Graph, SimplicialComplex, clique_complex
from flagtorsion.construction import build_xm, rp2_flag


def koszul_table(degrees):
    """Betti numbers of S/(f_1..f_r) for a regular sequence of the given degrees."""
    out = {}
    for i in range(len(degrees) + 1):
        for sub in itertools.combinations(degrees, i):
            key = (i, sum(sub))
            out[key] = out.get(key, 0) + 1
    return out


def test_principal_ideal():
    c = SimplicialComplex(2, [[(0,), (1,)]])
    assert betti_table(c).nonzero() == koszul_table([2])


def test_four_cycle_complete_intersection():
    c4 = clique_complex(Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
    assert betti_table(c4).nonzero() == koszul_table([2, 2])
    assert betti_table(c4, 2).nonzero() == koszul_table([2, 2])


def test_simplex_has_trivial_table():
    c = SimplicialComplex.from_facets(4, [(0, 1, 2, 3)])
    assert betti_table(c).nonzero() == {(0, 0): 1}


def test_rp2_semicontinuity():
    scan = SubsetScanner(rp2_flag())
    two = semicontinuity_check(rp2_flag(), 2, scanner=scan)
    three = semicontinuity_check(rp2_flag(), 3, scanner=scan)
    assert two.holds and two.strict
    assert three.holds and not three.strict
    assert two.strict == [(8, 11), (9, 11)]


def test_rp2_torsion_witness():
    rep = torsion_primes(rp2_flag())
    assert rep.primes == {2}
    assert rep.witness[2] == (tuple(range(11)), 1)
    assert not rep.partial


def test_gap_matches_universal_coefficients(rng, rp2_six):
    cases = [rp2_six] + [random_complex(rng, int(rng.integers(4, 8)), facets=7) for _ in range(15)]
    for c in cases:
        scan = SubsetScanner(c)
        for ell in (2, 3):
            res = semicontinuity_check(c, ell, scanner=scan)
            gap = {k: res.modular[k] - res.rational[k] for k in set(res.modular.entries) | set(res.rational.entries)}
            gap = {k: v for k, v in gap.items() if v}
            assert gap == predicted_gap(c, ell, scanner=scan)


def test_torsion_free_complexes_have_equal_tables():
    c = clique_complex(Graph(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)]))
    assert not semicontinuity_check(c, 2).strict
    assert torsion_primes(c).primes == set()
    tetra = SimplicialComplex.from_facets(4, itertools.combinations(range(4), 3))
    assert torsion_primes(tetra).primes == set()


def test_partial_scans():
    x6 = build_xm(6)[0]
    rep = torsion_primes(x6, sizes=[x6.n])
    assert rep.primes == {2, 3}
    assert rep.partial
    assert rep.witness[3] == (tuple(range(x6.n)), 1)
    assert torsion_primes(x6, sizes=[x6.n], primes_up_to=2).primes == {2}
    capped = torsion_primes(rp2_flag(), subset_size_cap=10)
    assert capped.primes == set() and capped.partial


def test_feasibility_guard():
    big = clique_complex(Graph(26, [(i, i + 1) for i in range(25)]))
    with pytest.raises(ValueError, match="max_subsets"):
        betti_table(big)
    t = betti_table(big, sizes=[0, 1, 26])
    assert t.partial and t.sizes == (0, 1, 26)


def test_x2_second_row_torsion():
    x2 = build_xm(2)[0]
    res = semicontinuity_check(x2, 2, sizes=[x2.n])
    assert res.holds
    assert (x2.n - 2, x2.n) in res.strict


def test_rendering():
    c4 = clique_complex(Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
    text = betti_table(c4).to_text()
    assert text.splitlines() == [
        "       0 1 2",
        "total: 1 2 1",
        "    0: 1 . .",
        "    1: . 2 .",
        "    2: . . 1",
    ]
    assert betti_table(c4).to_json() == '{"char":0,"n":4,"entries":[[0,0,1],[1,2,2],[2,4,1]]}\n'


def test_bad_characteristic():
    with pytest.raises(ValueError):
        betti_table(rp2_flag(), 6)
    with pytest.raises(ValueError):
        semicontinuity_check(rp2_flag(), 1)
