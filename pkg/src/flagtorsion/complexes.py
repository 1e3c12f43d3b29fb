"""Finite simple graphs and simplicial complexes.

Faces are strictly increasing tuples of integer vertex ids. That single
global order is also what fixes boundary orientations downstream, so every
constructor normalizes to it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "_nbrs")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e} out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(norm))
        nbrs = [0] * n
        for u, v in self.edges:
            nbrs[u] |= 1 << v
            nbrs[v] |= 1 << u
        self._nbrs = nbrs

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbor_mask(self, v: int) -> int:
        """Adjacency of ``v`` as an int bitset (bit ``u`` set iff ``uv`` is an edge)."""
        return self._nbrs[v]

    def neighbors(self, v: int) -> list[int]:
        mask, out = self._nbrs[v], []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._nbrs[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._nbrs[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self._nbrs]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
        verts = sorted(set(vertices))
        for v in verts:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range for n={self.n}")
        index = {v: i for i, v in enumerate(verts)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(verts), edges), index

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def graph_stats(g: Graph) -> tuple[int, Fraction, int]:
    """Return ``(maxdeg, average degree, edge count)``; average is exact."""
    if g.n == 0:
        return 0, Fraction(0), 0
    degs = g.degrees()
    return max(degs), Fraction(2 * g.num_edges, g.n), g.num_edges


class SimplicialComplex:
    """Downward-closed family of faces on vertices ``0..n-1``.

    ``faces[d]`` is the sorted list of ``d``-dimensional faces, each a
    strictly increasing ``(d+1)``-tuple. The empty face is implicit.
    """

    __slots__ = ("n", "faces", "_index")

    def __init__(self, n: int, faces: Sequence[Iterable[Sequence[int]]], check: bool = True):
        self.n = n
        dims = []
        for layer in faces:
            dims.append(sorted({tuple(f) for f in layer}))
        while dims and not dims[-1]:
            dims.pop()
        self.faces = tuple(tuple(layer) for layer in dims)
        self._index = None
        if check:
            self.validate()

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Sequence[int]]) -> SimplicialComplex:
        """Downward closure of ``facets``."""
        layers: list[set] = []
        for f in facets:
            f = tuple(sorted(f))
            if len(set(f)) != len(f):
                raise ValueError(f"repeated vertex in face {f}")
            for v in f:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range for n={n}")
            while len(layers) < len(f):
                layers.append(set())
            for size in range(1, len(f) + 1):
                layers[size - 1].update(combinations(f, size))
        return cls(n, layers, check=False)

    def validate(self) -> None:
        """Raise ``ValueError`` unless faces are increasing, in range and downward closed."""
        for d, layer in enumerate(self.faces):
            for f in layer:
                if len(f) != d + 1 or any(a >= b for a, b in zip(f, f[1:])):
                    raise ValueError(f"face {f} is not a strictly increasing {d + 1}-tuple")
                if f[0] < 0 or f[-1] >= self.n:
                    raise ValueError(f"face {f} out of range for n={self.n}")
        for d in range(1, len(self.faces)):
            below = set(self.faces[d - 1])
            for f in self.faces[d]:
                for sub in combinations(f, d):
                    if sub not in below:
                        raise ValueError(f"face {f} is missing its subface {sub}")

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.n == other.n and self.faces == other.faces

    def __hash__(self):
        return hash((self.n, self.faces))

    def __repr__(self):
        return f"SimplicialComplex(n={self.n}, f={self.fvector()})"

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def fvector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.faces)

    def faces_of_dim(self, d: int) -> tuple[tuple[int, ...], ...]:
        if d < 0 or d >= len(self.faces):
            return ()
        return self.faces[d]

    def face_index(self, d: int) -> dict[tuple[int, ...], int]:
        if self._index is None:
            self._index = [{f: i for i, f in enumerate(layer)} for layer in self.faces]
        if d < 0 or d >= len(self._index):
            return {}
        return self._index[d]

    def __contains__(self, face) -> bool:
        f = tuple(sorted(face))
        return f in self.face_index(len(f) - 1)

    def vertices(self) -> list[int]:
        return [f[0] for f in self.faces_of_dim(0)]

    def skeleton_graph(self) -> Graph:
        """The 1-skeleton as a ``Graph`` on the same ``n`` vertices."""
        return Graph(self.n, self.faces_of_dim(1))

    def maximal_faces(self) -> list[tuple[int, ...]]:
        out = []
        for d, layer in enumerate(self.faces):
            upper = self.faces_of_dim(d + 1)
            covered = {sub for f in upper for sub in combinations(f, d + 1)}
            out.extend(f for f in layer if f not in covered)
        return sorted(out)

    def is_flag(self) -> bool:
        """True iff the complex equals the clique complex of its 1-skeleton."""
        return self == clique_complex(self.skeleton_graph(), max_dim=None).restrict_to(self.vertices())

    def restrict_to(self, vertices: Iterable[int]) -> SimplicialComplex:
        """Faces inside ``vertices`` without re-indexing."""
        keep = set(vertices)
        return SimplicialComplex(
            self.n, [[f for f in layer if keep.issuperset(f)] for layer in self.faces], check=False
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.fvector()))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.faces_of_dim(1) if v in e)

    def degrees(self) -> list[int]:
        return self.skeleton_graph().degrees()

    def relabel(self, mapping: dict[int, int], n: int | None = None) -> SimplicialComplex:
        """Apply an injective vertex map and return the image complex."""
        n = self.n if n is None else n
        return SimplicialComplex(
            n, [[tuple(sorted(mapping[v] for v in f)) for f in layer] for layer in self.faces], check=False
        )

    def to_json(self) -> str:
        return dumps_complex(self)


def clique_complex(g: Graph, max_dim: int | None = None) -> SimplicialComplex:
    """Flag complex of ``g``: one ``d``-face per ``(d+1)``-clique, ``d <= max_dim``.

    Cliques are listed by ordered candidate-set expansion: each clique is
    grown only by common neighbours larger than its last vertex.
    """
    if max_dim is not None and max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    limit = g.n if max_dim is None else max_dim + 1
    higher = [g.neighbor_mask(v) >> (v + 1) << (v + 1) for v in range(g.n)]
    layers: list[list[tuple[int, ...]]] = [[] for _ in range(min(limit, max(g.n, 1)))]

    def grow(clique: tuple[int, ...], cand: int) -> None:
        layers[len(clique) - 1].append(clique)
        if len(clique) == limit:
            return
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            grow(clique + (w,), cand & higher[w])

    for v in range(g.n):
        grow((v,), higher[v])
    return SimplicialComplex(g.n, layers, check=False)


def induced_subcomplex(
    c: SimplicialComplex, alpha: Iterable[int]
) -> tuple[SimplicialComplex, dict[int, int]]:
    """Faces of ``c`` inside ``alpha``, densely re-indexed.

    Returns the complex and the old-to-new vertex map.
    """
    verts = sorted(set(alpha))
    for v in verts:
        if not 0 <= v < c.n:
            raise ValueError(f"vertex {v} out of range for n={c.n}")
    index = {v: i for i, v in enumerate(verts)}
    layers = [
        [tuple(index[v] for v in f) for f in layer if all(v in index for v in f)]
        for layer in c.faces
    ]
    return SimplicialComplex(len(verts), layers, check=False), index


def disjoint_union(parts: Sequence[SimplicialComplex]) -> SimplicialComplex:
    offset, facets = 0, []
    for part in parts:
        facets.extend(tuple(v + offset for v in f) for f in part.maximal_faces())
        offset += part.n
    return SimplicialComplex.from_facets(offset, facets)


# -- canonical JSON ---------------------------------------------------------


def _canonical(n: int, maximal: Iterable[Sequence[int]]) -> str:
    faces = sorted(list(f) for f in maximal)
    return json.dumps({"n": n, "maximal_faces": faces}, separators=(",", ":")) + "\n"


def dumps_complex(c: SimplicialComplex) -> str:
    return _canonical(c.n, c.maximal_faces())


def dumps_graph(g: Graph) -> str:
    isolated = [(v,) for v in range(g.n) if g.degree(v) == 0]
    return _canonical(g.n, list(g.edges) + isolated)


def loads_complex(text: str) -> SimplicialComplex:
    data = json.loads(text)
    return SimplicialComplex.from_facets(int(data["n"]), data["maximal_faces"])


def loads_graph(text: str) -> Graph:
    data = json.loads(text)
    n = int(data["n"])
    edges = []
    for f in data["maximal_faces"]:
        if len(f) > 2:
            raise ValueError(f"graph file has a face of size {len(f)}")
        if len(f) == 2:
            edges.append(f)
        elif len(f) == 1 and not 0 <= f[0] < n:
            raise ValueError(f"vertex {f[0]} out of range for n={n}")
    return Graph(n, edges)


def load(path) -> SimplicialComplex:
    with open(path) as fh:
        return loads_complex(fh.read())


def save(c: SimplicialComplex, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_complex(c))
