"""Induced-subgraph search and exact essential density.

Essential density ranges over all subgraphs, but deleting edges from a
vertex set never raises ``|E|/|V|``, so the maximum is always attained by
an induced subgraph. Both density modes therefore search vertex subsets:
exhaustively (bitmask DP over all ``2^n`` subsets) or through the
densest-subgraph min-cut reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .complexes import Graph

EXHAUSTIVE_LIMIT = 24
DEFAULT_BUDGET = 10**8

FOUND = "found"
NOT_FOUND = "not-found"
EXHAUSTED = "budget-exhausted"


@dataclass
class SearchResult:
    status: str
    embedding: tuple[int, ...] | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == FOUND


def _search_order(pattern: Graph) -> list[int]:
    n = pattern.n
    degs = pattern.degrees()
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        best = max(
            remaining,
            key=lambda u: ((pattern.neighbor_mask(u) & placed).bit_count(), degs[u], -u),
        )
        order.append(best)
        placed |= 1 << best
        remaining.discard(best)
    return order


def is_induced_embedding(pattern: Graph, host: Graph, emb, induced: bool = True) -> bool:
    """Pairwise check of ``emb`` (pattern vertex ``u`` -> host vertex ``emb[u]``)."""
    if len(emb) != pattern.n or len(set(emb)) != len(emb):
        return False
    if any(not 0 <= x < host.n for x in emb):
        return False
    for u in range(pattern.n):
        for v in range(u + 1, pattern.n):
            pe = pattern.has_edge(u, v)
            he = host.has_edge(emb[u], emb[v])
            if pe and not he:
                return False
            if induced and he and not pe:
                return False
    return True


def contains_induced(
    pattern: Graph, host: Graph, budget: int | None = DEFAULT_BUDGET, induced: bool = True
) -> SearchResult:
    """Backtracking search for an (induced) copy of ``pattern`` in ``host``.

    ``budget`` caps the number of search-tree nodes (candidate assignments);
    running out is reported as ``budget-exhausted``, never as not found.
    """
    k, n = pattern.n, host.n
    if k == 0:
        return SearchResult(FOUND, (), 0)
    if k > n:
        return SearchResult(NOT_FOUND, None, 0)
    order = _search_order(pattern)
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    hmask = [host.neighbor_mask(x) for x in range(n)]
    allowed = []
    for u in order:
        ok = 0
        for x in range(n):
            if hdeg[x] < pdeg[u]:
                continue
            if induced and (n - 1 - hdeg[x]) < (k - 1 - pdeg[u]):
                continue
            ok |= 1 << x
        allowed.append(ok)
    pos = {u: i for i, u in enumerate(order)}
    # for each depth, earlier positions adjacent / non-adjacent in the pattern
    earlier_nb = [[pos[w] for w in pattern.neighbors(u) if pos[w] < i] for i, u in enumerate(order)]
    earlier_non = [
        [j for j in range(i) if not pattern.has_edge(u, order[j])] for i, u in enumerate(order)
    ]
    image = [0] * k
    nodes = 0
    limit = budget if budget is not None else float("inf")

    def rec(depth: int, used: int):
        nonlocal nodes
        if depth == k:
            return True
        cand = allowed[depth] & ~used
        for j in earlier_nb[depth]:
            cand &= hmask[image[j]]
        if induced:
            for j in earlier_non[depth]:
                cand &= ~hmask[image[j]]
        while cand:
            if nodes >= limit:
                return None
            low = cand & -cand
            cand ^= low
            nodes += 1
            image[depth] = low.bit_length() - 1
            res = rec(depth + 1, used | low)
            if res is not False:
                return res
        return False

    res = rec(0, 0)
    if res is None:
        return SearchResult(EXHAUSTED, None, nodes)
    if not res:
        return SearchResult(NOT_FOUND, None, nodes)
    emb = [0] * k
    for i, u in enumerate(order):
        emb[u] = image[i]
    emb = tuple(emb)
    if not is_induced_embedding(pattern, host, emb, induced=induced):
        raise AssertionError("search returned an invalid embedding")
    return SearchResult(FOUND, emb, nodes)


# -- density ---------------------------------------------------------------


@dataclass
class DensityReport:
    density: Fraction
    witness: tuple[int, ...]
    strictly_balanced: bool
    per_size_max_edges: dict[int, tuple[int, tuple[int, ...]]] | None = field(default=None)

    def as_dict(self) -> dict:
        out = {
            "density": str(self.density),
            "witness": list(self.witness),
            "strictly_balanced": self.strictly_balanced,
        }
        if self.per_size_max_edges is not None:
            out["per_size_max_edges"] = {
                str(s): {"edges": e, "witness": list(w)} for s, (e, w) in self.per_size_max_edges.items()
            }
        return out


def _edge_counts(g: Graph) -> np.ndarray:
    """Edge count of every induced subgraph, indexed by bitmask.

    Vertex ``v`` sits at bit ``n-1-v`` so that, among equal-size subsets,
    the numerically largest mask is the lexicographically least tuple.
    """
    n = g.n
    nb = [0] * n
    for v in range(n):
        for u in g.neighbors(v):
            nb[v] |= 1 << (n - 1 - u)
    e = np.zeros(1 << n, dtype=np.int32)
    for b in range(n):
        v = n - 1 - b
        lo = 1 << b
        rest = np.arange(lo, dtype=np.int64)
        e[lo : 2 * lo] = e[:lo] + np.bitwise_count(rest & (nb[v] & (lo - 1))).astype(np.int32)
    return e


def _mask_to_tuple(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if mask >> (n - 1 - v) & 1)


def max_edges_by_size(g: Graph) -> dict[int, tuple[int, tuple[int, ...]]]:
    """For each size ``s``, the most edges on ``s`` vertices and the lexicographically least witness."""
    n = g.n
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search is limited to {EXHAUSTIVE_LIMIT} vertices (got {n}); use mode='maxflow'")
    if n == 0:
        return {}
    e = _edge_counts(g).astype(np.int64)
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.bitwise_count(masks)
    key = (e << n) | masks
    best = np.full(n + 1, -1, dtype=np.int64)
    np.maximum.at(best, sizes, key)
    out = {}
    for s in range(1, n + 1):
        b = int(best[s])
        out[s] = (b >> n, _mask_to_tuple(b & ((1 << n) - 1), n))
    return out


def _exhaustive(g: Graph) -> DensityReport:
    n = g.n
    table = max_edges_by_size(g)
    dens = max(Fraction(e, s) for s, (e, _) in table.items())
    witness = min(w for s, (e, w) in table.items() if Fraction(e, s) == dens)
    whole = Fraction(g.num_edges, n)
    strict = whole == dens and all(Fraction(e, s) < dens for s, (e, _) in table.items() if s < n)
    return DensityReport(dens, witness, strict, table)


def _min_cut_subset(g: Graph, lam: Fraction, skip: int | None = None):
    """Minimize ``lam*|S| - e(S)`` over vertex subsets; returns ``(value, S)``.

    Goldberg's network scaled by ``lam``'s denominator so every capacity is an integer.
    """
    import networkx as nx

    a, b = lam.numerator, lam.denominator
    verts = [v for v in range(g.n) if v != skip]
    edges = [(u, v) for u, v in g.edges if skip not in (u, v)]
    m = len(edges)
    deg = {v: 0 for v in verts}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for v in verts:
        net.add_edge("s", v, capacity=m * b)
        net.add_edge(v, "t", capacity=m * b + 2 * a - deg[v] * b)
    for u, v in edges:
        net.add_edge(u, v, capacity=b)
        net.add_edge(v, u, capacity=b)
    cut, (side, _) = nx.minimum_cut(net, "s", "t")
    subset = tuple(sorted(v for v in side if v != "s"))
    # cut = m*n*b + 2*(a*|S| - b*e(S))
    return Fraction(cut - m * len(verts) * b, 2 * b), subset


def _denser_than(g: Graph, lam: Fraction, skip: int | None = None) -> bool:
    """Whether some vertex subset has density strictly above ``lam``."""
    value, _ = _min_cut_subset(g, lam, skip)
    return value < 0


def _maxflow(g: Graph) -> DensityReport:
    n = g.n
    if g.num_edges == 0:
        return DensityReport(Fraction(0), (0,), n == 1)
    lo, hi = Fraction(0), Fraction(max(g.degrees()), 2)
    gap = Fraction(1, n * n)
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        if _denser_than(g, mid):
            lo = mid
        else:
            hi = mid
    # exactly one fraction with denominator <= n lies in (lo, hi]
    cands = {Fraction(lo.numerator * b // lo.denominator + 1, b) for b in range(1, n + 1)}
    cands = [c for c in cands if lo < c <= hi]
    if len(cands) != 1:
        raise AssertionError(f"density bracket ({lo}, {hi}] holds {cands}")
    dens = cands[0]
    _, witness = _min_cut_subset(g, dens - Fraction(1, 2 * n * n))
    whole = Fraction(g.num_edges, n)
    strict = whole == dens and not any(
        _denser_than(g, dens - Fraction(1, 2 * n * n), skip=v) for v in range(n)
    )
    return DensityReport(dens, witness, strict)


def essential_density(g: Graph, mode: Literal["exhaustive", "maxflow"] = "exhaustive") -> DensityReport:
    """Exact ``max |E(H)|/|V(H)|`` over nonempty subgraphs ``H`` of ``g``."""
    if g.n == 0:
        raise ValueError("essential density of the empty graph is undefined")
    if mode == "exhaustive":
        if g.n > EXHAUSTIVE_LIMIT:
            raise ValueError(
                f"exhaustive mode is limited to {EXHAUSTIVE_LIMIT} vertices (got {g.n}); use mode='maxflow'"
            )
        return _exhaustive(g)
    if mode == "maxflow":
        return _maxflow(g)
    raise ValueError(f"unknown mode {mode!r}")


def density_bounds(g: Graph) -> tuple[Fraction, Fraction]:
    """``(|E|/|V|, maxdeg/2)``, which bracket the essential density."""
    if g.n == 0:
        return Fraction(0), Fraction(0)
    return Fraction(g.num_edges, g.n), Fraction(max(g.degrees()), 2)
