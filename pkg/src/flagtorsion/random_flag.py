"""Seeded Erdos-Renyi graphs and random flag complexes.

Each unordered pair ``{u, v}`` (in lexicographic order, index ``t``) gets
the ``t``-th 64-bit word of a Philox stream keyed on the seed. Philox is
counter based, so word ``t`` depends only on ``(seed, t)``: the same
parameters give the same graph on any machine, and because every
probability is compared against the same word, the graph at ``p`` is a
subgraph of the graph at ``p' >= p`` (monotone coupling).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complexes import Graph, SimplicialComplex, clique_complex

_TWO64 = 1 << 64


def parse_probability(p) -> Fraction:
    """Exact probability from a decimal string, int, float or Fraction."""
    if isinstance(p, Fraction):
        q = p
    elif isinstance(p, float):
        q = Fraction(repr(p))
    else:
        q = Fraction(str(p).strip())
    if not 0 <= q <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return q


@dataclass(frozen=True)
class FlagModelParams:
    n: int
    p: Fraction
    seed: int = 0
    max_dim: int = 2

    def __post_init__(self):
        object.__setattr__(self, "p", parse_probability(self.p))
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not 0 <= self.seed < _TWO64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.max_dim < 2:
            raise ValueError("max_dim must be at least 2")

    @property
    def threshold(self) -> int:
        """Pairs whose uniform word is below this are edges."""
        return int(self.p * _TWO64)


def pair_uniforms(n: int, seed: int) -> np.ndarray:
    """One uint64 per pair ``(u, v)``, ``u < v``, in lexicographic order."""
    count = n * (n - 1) // 2
    bitgen = np.random.Philox(key=seed)
    return bitgen.random_raw(count).astype(np.uint64, copy=False)


def pair_index(u: int, v: int, n: int) -> int:
    """Position of pair ``u < v`` in the lexicographic pair order."""
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def sample_graph(params: FlagModelParams) -> Graph:
    n = params.n
    if n < 2 or params.p == 0:
        return Graph(n)
    iu, iv = np.triu_indices(n, k=1)
    if params.p == 1:
        keep = np.ones(len(iu), dtype=bool)
    else:
        keep = pair_uniforms(n, params.seed) < np.uint64(params.threshold)
    return Graph(n, zip(iu[keep].tolist(), iv[keep].tolist()))


def sample_flag_complex(params: FlagModelParams) -> SimplicialComplex:
    return clique_complex(sample_graph(params), max_dim=params.max_dim)
