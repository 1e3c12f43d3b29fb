"""Flag complexes with prescribed torsion in first homology.

The complex ``X_m`` glues a telescope of punctured projective planes to a
sphere with ``k`` square holes (``k`` = number of ones in the binary
expansion of ``m``). Every builder keeps a map from the conventional vertex
names (``v3``, ``v'5``, ``w7``, ``w'3,7``, ``u4``, ``w7.1``) to integer ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexes import Graph, SimplicialComplex, clique_complex, disjoint_union
from .homology import HomologyGroup, chain_vector, homology, is_boundary, is_cycle


class ConstructionError(RuntimeError):
    """A built complex failed one of its own integrity checks."""


@dataclass(frozen=True)
class BinaryDecomposition:
    m: int
    exponents: tuple[int, ...]

    @classmethod
    def of(cls, m: int) -> BinaryDecomposition:
        if m < 2:
            raise ValueError(f"m must be at least 2, got {m}")
        return cls(m, tuple(i for i in range(m.bit_length()) if m >> i & 1))

    @property
    def k(self) -> int:
        return len(self.exponents)

    @property
    def nk(self) -> int:
        return self.exponents[-1]

    @property
    def delta(self) -> int:
        return (-self.k) % 4


@dataclass
class Labeled:
    """A complex plus the name -> vertex id map used by the construction."""

    complex: SimplicialComplex
    names: dict[str, int]

    def ids(self, *names: str) -> list[int]:
        return [self.names[x] for x in names]

    def name_of(self) -> dict[int, str]:
        out: dict[int, str] = {}
        for name, i in self.names.items():
            out.setdefault(i, name)
        return out


def _from_named_edges(order: Sequence[str], edges, max_dim: int = 2) -> Labeled:
    names = {x: i for i, x in enumerate(order)}
    g = Graph(len(order), [(names[a], names[b]) for a, b in edges])
    return Labeled(clique_complex(g, max_dim=max_dim), names)


# -- telescope -------------------------------------------------------------


def _block_triangles(i: int) -> list[tuple[str, str, str]]:
    """The 28 triangles of one punctured projective plane block."""

    def v(a):
        return f"v{4 * i + a}"

    def p(a):
        return f"v'{8 * i + a}"

    return [
        (v(0), v(1), p(0)), (v(1), p(1), p(0)), (p(1), v(4), p(0)), (v(1), v(2), p(1)),
        (p(1), v(2), p(2)), (p(1), p(2), v(5)), (p(1), v(5), v(4)), (v(2), v(3), p(2)),
        (p(2), v(3), p(3)), (p(2), p(3), v(5)), (p(3), v(3), v(0)), (p(3), v(0), p(4)),
        (p(3), p(4), v(6)), (p(3), v(6), v(5)), (p(4), v(0), v(1)), (p(4), v(1), p(5)),
        (p(4), p(5), v(6)), (p(5), v(1), v(2)), (p(5), v(2), p(6)), (p(5), p(6), v(7)),
        (p(5), v(7), v(6)), (p(6), v(2), v(3)), (p(6), v(3), p(7)), (p(6), p(7), v(7)),
        (p(7), v(3), v(0)), (p(7), v(0), p(0)), (p(7), p(0), v(4)), (p(7), v(4), v(7)),
    ]


def telescope(nk: int) -> Labeled:
    if nk < 1:
        raise ValueError(f"telescope needs at least one block, got nk={nk}")
    order = [f"v{j}" for j in range(4 * nk + 4)] + [f"v'{j}" for j in range(8 * nk)]
    names = {x: i for i, x in enumerate(order)}
    facets = [tuple(names[x] for x in t) for i in range(nk) for t in _block_triangles(i)]
    return Labeled(SimplicialComplex.from_facets(len(order), facets), names)


def telescope_square(lab: Labeled, i: int) -> list[tuple[int, list[int]]]:
    """The square cycle on ``v_{4i}..v_{4i+3}`` as chain terms."""
    a, b, c, d = lab.ids(*(f"v{4 * i + t}" for t in range(4)))
    return [(1, (a, b)), (1, (b, c)), (1, (c, d)), (-1, (a, d))]


def build_telescope(nk: int) -> SimplicialComplex:
    return telescope(nk).complex


# -- sphere stages ---------------------------------------------------------


def _sphere_edges(i: int) -> set[tuple[int, int]]:
    edges = {(a, b) for a in range(4) for b in range(a + 1, 4)}
    for s in range(i):
        a, b, c = 2 * s + 1, 2 * s + 2, 2 * s + 3
        x, y = 2 * s + 4, 2 * s + 5
        edges.discard((a, c))
        edges |= {(2 * s, x), (a, x), (c, x), (a, y), (b, y), (c, y), (x, y)}
    return edges


def sphere_stage(i: int) -> Labeled:
    """``T_i``: ``i`` flag bistellar moves applied to the tetrahedron boundary."""
    if i < 0:
        raise ValueError("stage index must be nonnegative")
    order = [f"w{j}" for j in range(2 * i + 4)]
    return _from_named_edges(order, [(f"w{a}", f"w{b}") for a, b in _sphere_edges(i)])


def build_sphere_stage(i: int) -> SimplicialComplex:
    return sphere_stage(i).complex


def coherent_orientation(c: SimplicialComplex) -> dict[tuple[int, ...], int]:
    """Signs making the triangles of a closed orientable surface coherent.

    The lexicographically first triangle gets ``+1`` (its increasing order).
    """
    tris = c.faces_of_dim(2)
    by_edge: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            by_edge.setdefault(e, []).append(t)

    def edge_sign(t, e):
        # coefficient of e in the boundary of the increasingly ordered t
        return -1 if e == (t[0], t[2]) else 1

    sign = {tris[0]: 1}
    queue = deque([tris[0]])
    while queue:
        t = queue.popleft()
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            for u in by_edge[e]:
                if u == t:
                    continue
                want = -sign[t] * edge_sign(t, e) * edge_sign(u, e)
                if u in sign:
                    if sign[u] != want:
                        raise ConstructionError("surface is not orientable")
                else:
                    sign[u] = want
                    queue.append(u)
    return sign


def _face_plan(i: int, k: int, faces: Sequence[tuple[int, int, int]]):
    """Split the faces of ``T_i`` into ``k`` hole faces and ``delta`` plain subdivisions."""
    delta = len(faces) - k
    named = [(2 * i + 1, 2 * i + 2, 2 * i + 3), (2 * i - 1, 2 * i + 2, 2 * i + 3), (2 * i, 2 * i + 1, 2 * i + 3)]
    present = set(faces)
    plain = [f for f in named if f in present][:delta]
    # at i = 0 the second named face does not exist; fall back to the lexicographically last faces
    for f in sorted(present, reverse=True):
        if len(plain) >= delta:
            break
        if f not in plain:
            plain.append(f)
    holes = [f for f in faces if f not in plain]
    return holes, plain


def _shared_vertex(faces):
    common = set(faces[0]).intersection(*faces[1:])
    return min(common) if common else None


def _wp(a: int, b: int) -> str:
    return f"w'{min(a, b)},{max(a, b)}"


def holed_sphere(k: int, replace_high_degree: bool = False) -> Labeled:
    """``T~_i`` (or ``Y_2`` when ``replace_high_degree``): a sphere with ``k`` square holes."""
    if k < 1:
        raise ValueError(f"need at least one hole, got k={k}")
    i = (k - 1) // 4
    base = sphere_stage(i)
    tc = base.complex
    faces = list(tc.faces_of_dim(2))
    holes, plain = _face_plan(i, k, faces)
    orient = coherent_orientation(tc)

    edges: set[tuple[str, str]] = set()
    for a, b in tc.faces_of_dim(1):
        edges |= {(f"w{a}", _wp(a, b)), (f"w{b}", _wp(a, b))}
    for j, (r, s, t) in enumerate(holes, start=1):
        if orient[r, s, t] < 0:
            s, t = t, s  # keep u indices counterclockwise in the surface orientation
        u0, u1, u2, u3 = (f"u{4 * j - 4 + x}" for x in range(4))
        wr, ws, wt = f"w{r}", f"w{s}", f"w{t}"
        rs, rt, st = _wp(r, s), _wp(r, t), _wp(s, t)
        edges |= {
            (wr, u0), (wr, u3), (u0, rs), (u1, rs), (ws, u1),
            (u1, st), (u2, st), (wt, u2), (u2, rt), (u3, rt),
            (u0, u1), (u1, u2), (u2, u3), (u0, u3),
        }
    apex = _shared_vertex(plain) if len(plain) == 3 and i == 0 else None
    for r, s, t in plain:
        if apex is not None and (r, s, t) == plain[-1]:
            # fan from the midpoint opposite the shared vertex; the midpoint
            # triangle would otherwise be an empty 3-cycle around it
            a, b = [x for x in (r, s, t) if x != apex]
            hub = _wp(a, b)
            edges |= {(hub, _wp(a, apex)), (hub, _wp(b, apex)), (hub, f"w{apex}")}
            continue
        edges |= {(_wp(r, s), _wp(r, t)), (_wp(r, s), _wp(s, t)), (_wp(r, t), _wp(s, t))}

    w_names = [f"w{j}" for j in range(2 * i + 4)]
    u_names = [f"u{x}" for x in range(4 * k)]
    wp_names = [_wp(a, b) for a, b in tc.faces_of_dim(1)]
    lab = _from_named_edges(w_names + u_names + wp_names, edges)
    if not replace_high_degree:
        return lab

    degs = lab.complex.degrees()
    high = [w for w in w_names if degs[lab.names[w]] == 14]
    if not high:
        return lab
    for w in high:
        edges = _replace_vertex(lab, w, edges)
    order = []
    for w in w_names:
        order += [f"{w}.1", f"{w}.2"] if w in high else [w]
    return _from_named_edges(order + u_names + wp_names, edges)


def _link_cycle(lab: Labeled, name: str) -> list[str]:
    c = lab.complex
    v = lab.names[name]
    inv = lab.name_of()
    adj: dict[int, list[int]] = {}
    for t in c.faces_of_dim(2):
        if v in t:
            a, b = [x for x in t if x != v]
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    if any(len(nb) != 2 for nb in adj.values()):
        raise ConstructionError(f"link of {name} is not a cycle")
    start = min(adj)
    cyc, prev, cur = [start], None, start
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == start:
            break
        cyc.append(nxt)
        prev, cur = cur, nxt
    if len(cyc) != len(adj):
        raise ConstructionError(f"link of {name} is not connected")
    return [inv[x] for x in cyc]


def _wp_key(name: str) -> tuple[int, int]:
    a, b = name[2:].split(",")
    return int(a), int(b)


def _replace_vertex(lab: Labeled, w: str, edges: set[tuple[str, str]]) -> set[tuple[str, str]]:
    """Split a degree-14 vertex into two degree-9 vertices.

    The two new vertices share an edge and both see a pair of ``w'``
    vertices lying 7 apart on the 14-gon link; each is coned over one of
    the two halves. Among admissible pairs the lexicographically least by
    name is used.
    """
    cyc = _link_cycle(lab, w)
    if len(cyc) != 14:
        raise ConstructionError(f"{w} has degree {len(cyc)}, expected 14")
    pairs = []
    for a in range(7):
        b = a + 7
        if cyc[a].startswith("w'") and cyc[b].startswith("w'"):
            pairs.append((tuple(sorted((_wp_key(cyc[a]), _wp_key(cyc[b])))), a, b))
    if not pairs:
        raise ConstructionError(f"no opposite w' pair around {w}")
    _, a, b = min(pairs)
    arc1 = [cyc[(a + t) % 14] for t in range(8)]
    arc2 = [cyc[(b + t) % 14] for t in range(8)]
    if lab.names[arc1[1]] > lab.names[arc2[1]]:
        arc1, arc2 = arc2, arc1
    w1, w2 = f"{w}.1", f"{w}.2"
    out = {e for e in edges if w not in e}
    out |= {(w1, x) for x in arc1} | {(w2, x) for x in arc2} | {(w1, w2)}
    return out


def hole_square(lab: Labeled, j: int) -> list[tuple[int, list[int]]]:
    """Boundary cycle of the ``j``-th hole (1-based) as chain terms."""
    a, b, c, d = lab.ids(*(f"u{4 * j - 4 + t}" for t in range(4)))
    return [(1, (a, b)), (1, (b, c)), (1, (c, d)), (-1, (a, d))]


def build_holed_sphere(k: int) -> SimplicialComplex:
    return holed_sphere(k).complex


def build_punctured_sphere(k: int) -> SimplicialComplex:
    return holed_sphere(k, replace_high_degree=True).complex


# -- expected counts -------------------------------------------------------


def expected_telescope_fvector(nk: int) -> tuple[int, int, int]:
    return 12 * nk + 4, 40 * nk + 4, 28 * nk


def expected_sphere_stage_fvector(i: int) -> tuple[int, int, int]:
    return 2 * i + 4, 6 * i + 6, 4 * i + 4


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ValueError(f"non-integral count {x}")
    return int(x)


_Y2_LARGE = {
    0: ((Fraction(13, 2), Fraction(-4)), (Fraction(37, 2), Fraction(-18)), (11, -12)),
    1: ((Fraction(13, 2), Fraction(-3, 2)), (Fraction(37, 2), Fraction(-21, 2)), (11, -7)),
    2: ((Fraction(13, 2), Fraction(0)), (Fraction(37, 2), Fraction(-6)), (11, -4)),
    3: ((Fraction(13, 2), Fraction(5, 2)), (Fraction(37, 2), Fraction(3, 2)), (11, 1)),
}

_X_LARGE = {
    0: ((Fraction(5, 2), 0), (Fraction(29, 2), -14), (11, -12)),
    1: ((Fraction(5, 2), Fraction(5, 2)), (Fraction(29, 2), Fraction(-13, 2)), (11, -7)),
    2: ((Fraction(5, 2), 4), (Fraction(29, 2), -2), (11, -4)),
    3: ((Fraction(5, 2), Fraction(13, 2)), (Fraction(29, 2), Fraction(11, 2)), (11, 1)),
}


def expected_punctured_sphere_fvector(k: int) -> tuple[int, int, int]:
    delta = (-k) % 4
    if k <= 12:
        return 6 * k + 2 * delta + 2, 17 * k + 6 * delta, 10 * k + 4 * delta
    return tuple(_as_int(a * k + b) for a, b in _Y2_LARGE[delta])


def expected_xm_fvector(k: int, nk: int) -> tuple[int, int, int]:
    delta = (-k) % 4
    if k <= 12:
        return (
            2 * k + 12 * nk + 6 + 2 * delta,
            13 * k + 40 * nk + 4 + 6 * delta,
            10 * k + 28 * nk + 4 * delta,
        )
    (va, vb), (ea, eb), (fa, fb) = _X_LARGE[delta]
    return (
        _as_int(va * k + 12 * nk + vb),
        _as_int(ea * k + 40 * nk + eb),
        _as_int(fa * k + 28 * nk + fb),
    )


# -- gluing ----------------------------------------------------------------


def glue(y1: Labeled, y2: Labeled, exponents: Sequence[int]) -> Labeled:
    """Identify hole ``j`` of ``y2`` with telescope square ``exponents[j-1]``."""
    ident = {}
    for j, e in enumerate(exponents, start=1):
        for t in range(4):
            ident[f"u{4 * j - 4 + t}"] = f"v{4 * e + t}"
    names = dict(y1.names)
    nxt = y1.complex.n
    y2_inv = y2.name_of()
    y2_map = {}
    for vid in range(y2.complex.n):
        name = y2_inv[vid]
        if name in ident:
            y2_map[vid] = y1.names[ident[name]]
        else:
            y2_map[vid] = nxt
            nxt += 1
        names[name] = y2_map[vid]
    facets = list(y1.complex.maximal_faces())
    facets += [tuple(y2_map[v] for v in f) for f in y2.complex.maximal_faces()]
    return Labeled(SimplicialComplex.from_facets(nxt, facets), names)


@dataclass
class ConstructionCertificate:
    m: int
    fvector: tuple[int, ...]
    expected_fvector: tuple[int, ...]
    maxdeg: int
    maxdeg_bound: int
    h1: HomologyGroup
    expected_h1: HomologyGroup
    is_flag: bool
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "fvector": list(self.fvector),
            "expected_fvector": list(self.expected_fvector),
            "maxdeg": self.maxdeg,
            "maxdeg_bound": self.maxdeg_bound,
            "h1": self.h1.as_dict(),
            "expected_h1": self.expected_h1.as_dict(),
            "is_flag": self.is_flag,
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def xm(m: int) -> Labeled:
    dec = BinaryDecomposition.of(m)
    return glue(telescope(dec.nk), holed_sphere(dec.k, replace_high_degree=True), dec.exponents)


def certify_xm(m: int, lab: Labeled | None = None) -> ConstructionCertificate:
    dec = BinaryDecomposition.of(m)
    lab = lab or xm(m)
    c = lab.complex
    fv = c.fvector()
    expected = expected_xm_fvector(dec.k, dec.nk)
    maxdeg = max(c.degrees())
    h1 = homology(c, 1)
    want = HomologyGroup(dec.k - 1, (m,))
    flag = c.is_flag()
    return ConstructionCertificate(
        m=m,
        fvector=fv,
        expected_fvector=expected,
        maxdeg=maxdeg,
        maxdeg_bound=12,
        h1=h1,
        expected_h1=want,
        is_flag=flag,
        checks={
            "flag": flag,
            "maxdeg": maxdeg <= 12,
            "fvector": fv == expected,
            "h1": h1 == want,
            "two_dimensional": c.dim == 2,
        },
    )


def build_xm(m: int, with_names: bool = False):
    """Build and certify ``X_m``; returns ``(complex, certificate)``.

    Raises ``ConstructionError`` if any certificate check fails.
    """
    lab = xm(m)
    cert = certify_xm(m, lab)
    if not cert.passed:
        raise ConstructionError(f"X_{m} failed checks: {', '.join(cert.failures())}")
    return (lab if with_names else lab.complex), cert


def build_group_complex(invariant_factors: Sequence[int]) -> SimplicialComplex:
    """Disjoint union of ``X_{m_i}``; torsion of ``H_1`` is ``Z/m_1 + ... + Z/m_r``."""
    fs = list(invariant_factors)
    if not fs:
        raise ValueError("need at least one invariant factor")
    if any(m < 2 for m in fs) or any(b % a for a, b in zip(fs, fs[1:])):
        raise ValueError(f"{fs} is not a divisibility chain of integers >= 2")
    return disjoint_union([build_xm(m)[0] for m in fs])


# -- minimal flag RP^2 -----------------------------------------------------

RP2_TRIANGLES = (
    (3, 2, 9), (3, 10, 9), (9, 2, 1), (9, 10, 11), (9, 1, 8), (9, 11, 8), (2, 6, 1),
    (10, 5, 11), (6, 1, 5), (5, 11, 6), (1, 5, 4), (1, 8, 4), (11, 6, 7), (11, 8, 7),
    (8, 7, 4), (5, 10, 4), (6, 2, 7), (10, 4, 3), (2, 7, 3), (3, 4, 7),
)


def rp2_flag() -> SimplicialComplex:
    """The 11-vertex flag triangulation of the projective plane; vertex ``v_j`` is id ``j-1``."""
    return SimplicialComplex.from_facets(11, [tuple(v - 1 for v in t) for t in RP2_TRIANGLES])


def rp2_labeled() -> Labeled:
    return Labeled(rp2_flag(), {f"v{j}": j - 1 for j in range(1, 12)})


# -- stage self-checks -----------------------------------------------------


def telescope_relations_hold(nk: int) -> bool:
    """``2 gamma_i - gamma_{i+1}`` is a boundary for every ``i < nk``."""
    lab = telescope(nk)
    c = lab.complex
    for i in range(nk):
        vec = [2 * a - b for a, b in zip(
            chain_vector(c, 1, telescope_square(lab, i)), chain_vector(c, 1, telescope_square(lab, i + 1))
        )]
        if not is_boundary(c, 1, vec):
            return False
    return True


def hole_sum_is_boundary(k: int) -> bool:
    lab = holed_sphere(k, replace_high_degree=True)
    c = lab.complex
    total = [0] * len(c.faces_of_dim(1))
    for j in range(1, k + 1):
        vec = chain_vector(c, 1, hole_square(lab, j))
        if not is_cycle(c, 1, vec):
            return False
        total = [a + b for a, b in zip(total, vec)]
    return is_boundary(c, 1, total)


def named_complex(spec: str) -> SimplicialComplex:
    """Resolve ``rp2`` or ``xm:<m>``."""
    if spec == "rp2":
        return rp2_flag()
    if spec.startswith("xm:"):
        return build_xm(int(spec[3:]))[0]
    raise ValueError(f"unknown pattern {spec!r}; expected 'rp2' or 'xm:<m>'")
