from collections import Counter

import pytest

from flagtorsion.complexes import clique_complex
from flagtorsion.construction import (
    BinaryDecomposition,
    ConstructionError,
    build_group_complex,
    build_punctured_sphere,
    build_sphere_stage,
    build_telescope,
    build_xm,
    certify_xm,
    coherent_orientation,
    expected_punctured_sphere_fvector,
    hole_sum_is_boundary,
    holed_sphere,
    named_complex,
    rp2_flag,
    telescope_relations_hold,
)
from flagtorsion.homology import homology, homology_all


def test_binary_decomposition():
    d = BinaryDecomposition.of(11)
    assert d.exponents == (0, 1, 3)
    assert (d.k, d.nk, d.delta) == (3, 3, 1)
    assert BinaryDecomposition.of(4).delta == 3
    with pytest.raises(ValueError):
        BinaryDecomposition.of(1)


@pytest.mark.parametrize("nk", [1, 2, 3, 5])
def test_telescope_counts_and_homology(nk):
    y1 = build_telescope(nk)
    assert y1.fvector() == (12 * nk + 4, 40 * nk + 4, 28 * nk)
    assert max(y1.degrees()) == (6 if nk == 1 else 9)
    assert y1.is_flag()
    assert str(homology(y1, 1)) == "Z"
    assert telescope_relations_hold(nk)


@pytest.mark.parametrize("i", range(6))
def test_sphere_stage_is_flag_sphere(i):
    t = build_sphere_stage(i)
    assert t.fvector() == (2 * i + 4, 6 * i + 6, 4 * i + 4)
    # T_0 is the boundary of a tetrahedron, whose clique complex is solid
    assert t.is_flag() == (i > 0)
    assert [str(g) for g in homology_all(t)] == ["Z", "0", "Z"]
    assert len(set(coherent_orientation(t).values())) == 2


def test_sphere_stage_degree_multisets():
    assert Counter(build_sphere_stage(0).degrees()) == {3: 4}
    assert Counter(build_sphere_stage(1).degrees()) == {4: 6}
    assert Counter(build_sphere_stage(2).degrees()) == {4: 4, 5: 4}
    assert Counter(build_sphere_stage(5).degrees()) == {4: 4, 5: 4, 6: 6}


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 12, 13, 16, 17, 21])
def test_punctured_sphere(k):
    y2 = build_punctured_sphere(k)
    assert y2.fvector() == expected_punctured_sphere_fvector(k)
    assert y2.is_flag()
    assert max(y2.degrees()) <= 12
    assert hole_sum_is_boundary(k)


def test_high_degree_vertices_before_replacement():
    lab = holed_sphere(20)
    degs = lab.complex.degrees()
    high = sorted(n for n, v in lab.names.items() if degs[v] == 14)
    assert high == ["w4", "w5", "w6", "w7"]


@pytest.mark.parametrize("m", [2, 3, 4, 6, 7, 12, 31, 64])
def test_xm_certificate(m):
    cert = certify_xm(m)
    assert cert.passed, cert.failures()
    assert cert.h1.torsion == (m,)


def test_frozen_small_cases():
    c, cert = build_xm(2)
    assert c.fvector() == (26, 75, 50)
    c4 = build_xm(4)[1]
    assert c4.h1.free_rank == 0 and c4.h1.torsion == (4,)


def test_group_complex():
    c = build_group_complex([2, 4])
    assert homology(c, 1).torsion == (2, 4)
    with pytest.raises(ValueError):
        build_group_complex([4, 6])
    with pytest.raises(ValueError):
        build_group_complex([])


def test_rp2_flag():
    c = rp2_flag()
    assert c.fvector() == (11, 30, 20)
    assert c.is_flag()
    assert c == clique_complex(c.skeleton_graph())
    assert str(homology(c, 1)) == "Z/2"
    assert max(c.degrees()) == 6


def test_named_complex():
    assert named_complex("rp2") == rp2_flag()
    assert named_complex("xm:3").fvector() == (26, 82, 56)
    with pytest.raises(ValueError):
        named_complex("torus")


def test_construction_error_is_runtime_error():
    assert issubclass(ConstructionError, RuntimeError)
