"""Recompute every reference table from the constructions and diff it cell by cell.

Expected values are transcribed once below. Formulas that the tables state
in terms of ``k`` and ``n_k`` are evaluated exactly with ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .construction import (
    BinaryDecomposition,
    ConstructionCertificate,
    build_punctured_sphere,
    build_sphere_stage,
    build_telescope,
    certify_xm,
    holed_sphere,
    rp2_flag,
    sphere_stage,
    xm,
)
from .density import essential_density

TABLE_IDS = ("T1", "T2", "T3", "T4", "T5", "counts", "lemma51")


@dataclass
class Check:
    cell: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class Report:
    table: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, cell: str, expected, actual) -> None:
        self.checks.append(Check(cell, expected, actual))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {
            "table": self.table,
            "passed": self.passed,
            "cells": len(self.checks),
            "failures": [
                {"cell": c.cell, "expected": _plain(c.expected), "actual": _plain(c.actual)} for c in self.failures()
            ],
            "notes": self.notes,
        }

    def text(self) -> str:
        head = f"{self.table}: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} cells, {len(self.failures())} mismatched)"
        lines = [head]
        lines += [f"  mismatch {c.cell}: expected {_plain(c.expected)}, got {_plain(c.actual)}" for c in self.failures()]
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    return x


def _degree_classes(lab, prefix: str = "w") -> dict[int, set[int]]:
    """Degree -> indices ``j`` of the vertices named ``{prefix}{j}``."""
    degs = lab.complex.degrees()
    out: dict[int, set[int]] = {}
    for name, v in lab.names.items():
        tail = name[len(prefix):]
        if name.startswith(prefix) and tail.isdigit():
            out.setdefault(degs[v], set()).add(int(tail))
    return out


# -- T1: vertex degrees of T_i ---------------------------------------------


def expected_t1(i: int) -> dict[int, set[int]]:
    if i == 0:
        return {3: {0, 1, 2, 3}}
    if i == 1:
        # printed as w0..w3, w5, w6; T_1 has vertices w0..w5 only
        return {4: {0, 1, 2, 3, 4, 5}}
    if i == 2:
        return {4: {0, 1, 6, 7}, 5: {2, 3, 4, 5}}
    return {4: {0, 1, 2 * i + 2, 2 * i + 3}, 5: {2, 3, 2 * i, 2 * i + 1}, 6: set(range(4, 2 * i))}


def reproduce_t1(max_i: int = 10) -> Report:
    rep = Report("T1")
    for i in range(max_i + 1):
        got = _degree_classes(sphere_stage(i))
        for deg, verts in sorted(expected_t1(i).items()):
            rep.add(f"T_{i} degree {deg}", verts, got.get(deg, set()))
        rep.add(f"T_{i} degrees present", set(expected_t1(i)), set(got))
    rep.notes.append("T_1 row read as w0..w5 (the printed w6 is not a vertex of T_1)")
    return rep


# -- T2: vertex degrees of T~_i for k = 0 mod 4 ------------------------


def expected_t2(i: int) -> dict[int, set[int]]:
    if i == 0:
        return {6: {2, 3}, 7: {1}, 9: {0}}
    if i == 1:
        return {8: {4, 5}, 9: {2, 3}, 10: {1}, 12: {0}}
    if i == 2:
        return {8: {6, 7}, 10: {1}, 11: {4, 5}, 12: {0, 2, 3}}
    return {
        8: {2 * i + 2, 2 * i + 3},
        10: {1},
        11: {2 * i, 2 * i + 1},
        12: {0, 2, 3},
        14: set(range(4, 2 * i)),
    }


def reproduce_t2(max_i: int = 6) -> Report:
    rep = Report("T2")
    for i in range(max_i + 1):
        k = 4 * i + 4
        lab = holed_sphere(k)
        got = _degree_classes(lab)
        for deg, verts in sorted(expected_t2(i).items()):
            rep.add(f"T~_{i} (k={k}) degree {deg}", verts, got.get(deg, set()))
        rep.add(f"T~_{i} (k={k}) degrees present", set(expected_t2(i)), set(got))
        degs = lab.complex.degrees()
        wp = {degs[v] for n, v in lab.names.items() if n.startswith("w'")}
        us = {degs[v] for n, v in lab.names.items() if n.startswith("u")}
        rep.add(f"T~_{i} (k={k}) w' degrees", {6}, wp)
        rep.add(f"T~_{i} (k={k}) u degrees", {4, 5}, us)
    # the other residues: which w_j reach degree 14 (and 12) for i >= 3
    for i in range(3, max_i + 1):
        for delta in (1, 2, 3):
            k = 4 * i + 4 - delta
            got = _degree_classes(holed_sphere(k))
            if delta == 1:
                rep.add(f"k={k} degree 14", set(range(4, 2 * i)), got.get(14, set()))
            else:
                rep.add(f"k={k} degree 14", set(range(4, 2 * i - 1)), got.get(14, set()))
                rep.add(f"k={k} degree 12", {0, 2, 3, 2 * i - 1}, got.get(12, set()))
    return rep


# -- T3 and T4: counts for k >= 13 --------------------------------------

Y2_ROWS = {
    0: ((Fraction(13, 2), Fraction(-4)), (Fraction(37, 2), Fraction(-18)), (Fraction(11), Fraction(-12))),
    1: ((Fraction(13, 2), Fraction(-3, 2)), (Fraction(37, 2), Fraction(-21, 2)), (Fraction(11), Fraction(-7))),
    2: ((Fraction(13, 2), Fraction(0)), (Fraction(37, 2), Fraction(-6)), (Fraction(11), Fraction(-4))),
    3: ((Fraction(13, 2), Fraction(5, 2)), (Fraction(37, 2), Fraction(3, 2)), (Fraction(11), Fraction(1))),
}

X_ROWS = {
    0: ((Fraction(5, 2), Fraction(0)), (Fraction(29, 2), Fraction(-14)), (Fraction(11), Fraction(-12))),
    1: ((Fraction(5, 2), Fraction(5, 2)), (Fraction(29, 2), Fraction(-13, 2)), (Fraction(11), Fraction(-7))),
    2: ((Fraction(5, 2), Fraction(4)), (Fraction(29, 2), Fraction(-2)), (Fraction(11), Fraction(-4))),
    3: ((Fraction(5, 2), Fraction(13, 2)), (Fraction(29, 2), Fraction(11, 2)), (Fraction(11), Fraction(1))),
}


def reproduce_t3(k_max: int = 40) -> Report:
    rep = Report("T3")
    for k in range(13, k_max + 1):
        delta = (-k) % 4
        want = tuple(a * k + b for a, b in Y2_ROWS[delta])
        got = build_punctured_sphere(k).fvector()
        rep.add(f"Y_2 k={k} (delta={delta}) f-vector", want, tuple(Fraction(x) for x in got))
    return rep


def t4_samples(k_values=range(13, 21), nk_offsets=range(-1, 4)) -> list[int]:
    """Values of ``m`` with ``k`` ones in binary and top exponent ``n_k``.

    ``m = 2^0 + ... + 2^{k-2} + 2^{n_k}``, which needs ``n_k >= k - 1``.
    """
    out = []
    for k in k_values:
        for off in nk_offsets:
            nk = k + off
            if nk >= k - 1:
                out.append(sum(1 << e for e in range(k - 1)) + (1 << nk))
    return out


def reproduce_t4(samples: list[int] | None = None) -> Report:
    rep = Report("T4")
    for m in samples if samples is not None else t4_samples():
        dec = BinaryDecomposition.of(m)
        k, nk, delta = dec.k, dec.nk, dec.delta
        (va, vb), (ea, eb), (fa, fb) = X_ROWS[delta]
        want = (va * k + 12 * nk + vb, ea * k + 40 * nk + eb, fa * k + 28 * nk + fb)
        c = xm(m).complex
        rep.add(f"X (k={k}, n_k={nk}, delta={delta}) f-vector", want, tuple(Fraction(x) for x in c.fvector()))
        rep.add(f"X (k={k}, n_k={nk}) maxdeg <= 12", True, max(c.degrees()) <= 12)
    rep.notes.append("k >= 13 forces n_k >= k - 1, so n_k is sampled from k-1..k+3")
    return rep


# -- T5 and the density check -----------------------------------------------

T5_ROWS = {
    1: (0, (1,), Fraction(0)),
    2: (1, (1, 2), Fraction(1, 2)),
    3: (3, (1, 2, 6), Fraction(1)),
    4: (5, (1, 2, 5, 6), Fraction(5, 4)),
    5: (7, (1, 2, 4, 5, 6), Fraction(7, 5)),
    6: (10, (1, 4, 7, 8, 9, 11), Fraction(5, 3)),
    7: (13, (1, 2, 4, 7, 8, 9, 11), Fraction(13, 7)),
    8: (17, (1, 2, 4, 6, 7, 8, 9, 11), Fraction(17, 8)),
    9: (21, (1, 2, 3, 4, 6, 7, 8, 9, 11), Fraction(7, 3)),
    10: (25, (1, 2, 3, 4, 5, 6, 7, 8, 9, 11), Fraction(5, 2)),
    11: (30, tuple(range(1, 12)), Fraction(30, 11)),
}


def reproduce_t5() -> Report:
    rep = Report("T5")
    c = rp2_flag()
    g = c.skeleton_graph()
    table = essential_density(g).per_size_max_edges
    for s, (edges, verts, ratio) in T5_ROWS.items():
        best, _ = table[s]
        ids = {v - 1 for v in verts}
        induced = sum(1 for u, v in g.edges if u in ids and v in ids)
        rep.add(f"|V(H)|={s} max edges", edges, best)
        rep.add(f"|V(H)|={s} listed set induces max edges", edges, induced)
        rep.add(f"|V(H)|={s} ratio", ratio, Fraction(best, s))
    return rep


def reproduce_lemma51() -> Report:
    rep = Report("lemma51")
    g = rp2_flag().skeleton_graph()
    for mode in ("exhaustive", "maxflow"):
        r = essential_density(g, mode)
        rep.add(f"{mode} density", Fraction(30, 11), r.density)
        rep.add(f"{mode} strictly balanced", True, r.strictly_balanced)
    rep.add("vertices, edges", (11, 30), (g.n, g.num_edges))
    return rep


# -- closed-form counts -------------------------------------------------------


def reproduce_counts(max_nk: int = 10, max_i: int = 10, max_k: int = 12) -> Report:
    rep = Report("counts")
    for nk in range(1, max_nk + 1):
        c = build_telescope(nk)
        rep.add(f"Y_1 n_k={nk} f-vector", (12 * nk + 4, 40 * nk + 4, 28 * nk), c.fvector())
        rep.add(f"Y_1 n_k={nk} maxdeg", 6 if nk == 1 else 9, max(c.degrees()))
    for i in range(max_i + 1):
        rep.add(f"T_{i} f-vector", (2 * i + 4, 6 * i + 6, 4 * i + 4), build_sphere_stage(i).fvector())
    for k in range(1, max_k + 1):
        delta = (-k) % 4
        want = (6 * k + 2 * delta + 2, 17 * k + 6 * delta, 10 * k + 4 * delta)
        rep.add(f"Y_2 k={k} f-vector", want, build_punctured_sphere(k).fvector())
    for m in range(2, 65):
        dec = BinaryDecomposition.of(m)
        k, nk, delta = dec.k, dec.nk, dec.delta
        want = (2 * k + 12 * nk + 6 + 2 * delta, 13 * k + 40 * nk + 4 + 6 * delta, 10 * k + 28 * nk + 4 * delta)
        rep.add(f"X_{m} f-vector", want, xm(m).complex.fvector())
    return rep


REPRODUCERS = {
    "T1": reproduce_t1,
    "T2": reproduce_t2,
    "T3": reproduce_t3,
    "T4": reproduce_t4,
    "T5": reproduce_t5,
    "counts": reproduce_counts,
    "lemma51": reproduce_lemma51,
}


def reproduce(table_id: str) -> Report:
    try:
        fn = REPRODUCERS[table_id]
    except KeyError:
        raise ValueError(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS)}") from None
    return fn()


def verify_xm_range(m_min: int, m_max: int) -> list[ConstructionCertificate]:
    """Certificates for every ``X_m`` with ``m_min <= m <= m_max``."""
    if not 2 <= m_min <= m_max:
        raise ValueError("need 2 <= m_min <= m_max")
    return [certify_xm(m) for m in range(m_min, m_max + 1)]
