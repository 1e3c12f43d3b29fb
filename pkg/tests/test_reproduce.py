import pytest

from flagtorsion.reproduce import (
    expected_t1,
    reproduce,
    t4_samples,
    verify_xm_range,
)
from flagtorsion.construction import BinaryDecomposition


@pytest.mark.parametrize("table", ["T1", "T2", "T3", "T4", "counts", "lemma51"])
def test_tables_reproduce(table):
    rep = reproduce(table)
    assert rep.passed, rep.text()
    assert rep.checks


def test_t5_disagrees_only_at_size_seven():
    rep = reproduce("T5")
    assert [c.cell for c in rep.failures()] == ["|V(H)|=7 max edges", "|V(H)|=7 ratio"]
    assert [c.actual for c in rep.failures()] == [14, 2]


def test_t4_samples_cover_each_residue():
    ks = {BinaryDecomposition.of(m).k for m in t4_samples()}
    assert ks == set(range(13, 21))
    deltas = {BinaryDecomposition.of(m).delta for m in t4_samples()}
    assert deltas == {0, 1, 2, 3}


def test_expected_t1_shape():
    assert expected_t1(4) == {4: {0, 1, 10, 11}, 5: {2, 3, 8, 9}, 6: {4, 5, 6, 7}}


def test_verify_range():
    certs = verify_xm_range(2, 5)
    assert [c.m for c in certs] == [2, 3, 4, 5]
    assert all(c.passed for c in certs)
    with pytest.raises(ValueError):
        verify_xm_range(1, 3)


def test_unknown_table():
    with pytest.raises(ValueError):
        reproduce("T9")
    text = reproduce("lemma51").text()
    assert text.startswith("lemma51: PASS")
