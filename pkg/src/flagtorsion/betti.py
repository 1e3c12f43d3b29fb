"""Graded Betti numbers of Stanley-Reisner rings via Hochster's formula.

``beta_{i,j}(S/I) = sum over |alpha| = j of dim H~_{j-i-1}(c|alpha; k)``.
Field dimensions come from elimination over ``k``; torsion detection uses
integer Smith forms. The two never share intermediate results.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .complexes import SimplicialComplex
from .homology import (
    HomologyGroup,
    boundary_matrix,
    is_prime,
    prime_factors,
    rank_mod,
    smith_normal_form,
)

DEFAULT_MAX_SUBSETS = 1 << 24


class SubsetScanner:
    """Induced subcomplexes of ``c`` by vertex bitmask, with memoized homology.

    Subsets are visited by size, then lexicographically.
    """

    def __init__(self, c: SimplicialComplex):
        self.c = c
        self.face_masks = [[sum(1 << v for v in f) for f in layer] for layer in c.faces]
        self._field: dict[tuple[int, int], list[int]] = {}
        self._integer: dict[int, list[HomologyGroup]] = {}

    def subcomplex(self, mask: int) -> SimplicialComplex:
        verts = [v for v in range(self.c.n) if mask >> v & 1]
        index = {v: i for i, v in enumerate(verts)}
        layers = []
        for layer, masks in zip(self.c.faces, self.face_masks):
            kept = [tuple(index[v] for v in f) for f, fm in zip(layer, masks) if fm & ~mask == 0]
            if not kept:
                break
            layers.append(kept)
        return SimplicialComplex(len(verts), layers, check=False)

    def field_dims(self, mask: int, char: int) -> list[int]:
        """``[dim H~_{-1}, dim H~_0, ...]`` over a field of characteristic ``char``."""
        key = (mask, char)
        hit = self._field.get(key)
        if hit is None:
            sub = self.subcomplex(mask)
            top = sub.dim
            ranks = [0] + [rank_mod(boundary_matrix(sub, d, reduced=True), char) for d in range(top + 1)] + [0]
            # ranks[d + 1] is the rank of the map out of degree d
            counts = [1] + list(sub.fvector())
            hit = [counts[d + 1] - ranks[d + 1] - ranks[d + 2] for d in range(-1, top + 1)]
            self._field[key] = hit
        return hit

    def integer_homology(self, mask: int) -> list[HomologyGroup]:
        """Reduced integer homology ``[H~_{-1}, H~_0, ...]`` of the induced subcomplex."""
        hit = self._integer.get(mask)
        if hit is None:
            sub = self.subcomplex(mask)
            top = sub.dim
            forms = [smith_normal_form(boundary_matrix(sub, d, reduced=True)) for d in range(top + 1)]
            counts = [1] + list(sub.fvector())
            hit = []
            for d in range(-1, top + 1):
                below = forms[d].rank if d >= 0 else 0
                above = forms[d + 1] if d + 1 <= top else None
                free = counts[d + 1] - below - (above.rank if above else 0)
                hit.append(HomologyGroup(free, above.torsion if above else ()))
            self._integer[mask] = hit
        return hit


def _check_char(char: int) -> None:
    if char != 0 and not is_prime(char):
        raise ValueError(f"characteristic must be 0 or a prime, got {char}")


def _resolve_sizes(n: int, sizes: Iterable[int] | None, cap: int | None, max_subsets: int | None):
    chosen = sorted(set(range(n + 1) if sizes is None else sizes))
    for s in chosen:
        if not 0 <= s <= n:
            raise ValueError(f"subset size {s} outside 0..{n}")
    if cap is not None:
        chosen = [s for s in chosen if s <= cap]
    partial = chosen != list(range(n + 1))
    total = sum(comb(n, s) for s in chosen)
    if max_subsets is not None and total > max_subsets:
        raise ValueError(
            f"scan needs {total} induced subcomplexes (n={n}), above the limit of {max_subsets}; "
            "restrict the subset sizes or raise max_subsets (--max-subsets) to override"
        )
    return chosen, partial


def _masks_of_size(n: int, s: int):
    for alpha in combinations(range(n), s):
        yield alpha, sum(1 << v for v in alpha)


@dataclass
class BettiTable:
    char: int
    n: int
    entries: dict[tuple[int, int], int]
    sizes: tuple[int, ...] | None = None

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    @property
    def partial(self) -> bool:
        return self.sizes is not None

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def to_text(self) -> str:
        """Grid with columns ``i`` and rows ``j - i``, zeros shown as dots."""
        nz = self.nonzero()
        if not nz:
            return "(empty)\n"
        cols = range(max(i for i, _ in nz) + 1)
        rows = range(max(j - i for i, j in nz) + 1)
        cells = [["total:"] + [str(self.total(i)) for i in cols]]
        for r in rows:
            cells.append([f"{r}:"] + [str(nz[(i, i + r)]) if (i, i + r) in nz else "." for i in cols])
        head = [""] + [str(i) for i in cols]
        width = [max(len(row[c]) for row in cells + [head]) for c in range(len(head))]
        lines = [" ".join(x.rjust(w) for x, w in zip(head, width))]
        lines += [" ".join(x.rjust(w) for x, w in zip(row, width)) for row in cells]
        return "\n".join(line.rstrip() for line in lines) + "\n"

    def as_dict(self) -> dict:
        out = {
            "char": self.char,
            "n": self.n,
            "entries": [[i, j, b] for (i, j), b in self.nonzero().items()],
        }
        if self.sizes is not None:
            out["partial_sizes"] = list(self.sizes)
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":")) + "\n"


def betti_table(
    c: SimplicialComplex,
    char: int = 0,
    sizes: Iterable[int] | None = None,
    max_subsets: int | None = DEFAULT_MAX_SUBSETS,
    scanner: SubsetScanner | None = None,
) -> BettiTable:
    """Betti table of ``S/I_c`` over a field of characteristic ``char``.

    ``sizes`` restricts the columns ``j`` that are computed; the table is
    then marked partial.
    """
    _check_char(char)
    chosen, partial = _resolve_sizes(c.n, sizes, None, max_subsets)
    scan = scanner or SubsetScanner(c)
    entries: dict[tuple[int, int], int] = {}
    for j in chosen:
        for _, mask in _masks_of_size(c.n, j):
            for d, dim in enumerate(scan.field_dims(mask, char), start=-1):
                if dim:
                    i = j - d - 1
                    entries[(i, j)] = entries.get((i, j), 0) + dim
    return BettiTable(char, c.n, entries, tuple(chosen) if partial else None)


@dataclass
class TorsionReport:
    primes: set[int]
    witness: dict[int, tuple[tuple[int, ...], int]]
    partial: bool = False
    sizes: tuple[int, ...] | None = None
    invariant_factors: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "primes": sorted(self.primes),
            "witness": {
                str(p): {"alpha": list(a), "dim": d, "torsion": list(self.invariant_factors.get(p, ()))}
                for p, (a, d) in sorted(self.witness.items())
            },
            "partial": self.partial,
            "sizes": list(self.sizes) if self.sizes is not None else None,
        }


def torsion_primes(
    c: SimplicialComplex,
    subset_size_cap: int | None = None,
    sizes: Iterable[int] | None = None,
    primes_up_to: int | None = None,
    max_subsets: int | None = DEFAULT_MAX_SUBSETS,
    scanner: SubsetScanner | None = None,
) -> TorsionReport:
    """Primes dividing a torsion coefficient of some induced subcomplex.

    The first witness ``(alpha, d)`` found for each prime, scanning by size
    then lexicographically, is kept.
    """
    chosen, partial = _resolve_sizes(c.n, sizes, subset_size_cap, max_subsets)
    scan = scanner or SubsetScanner(c)
    primes: set[int] = set()
    witness: dict[int, tuple[tuple[int, ...], int]] = {}
    factors: dict[int, tuple[int, ...]] = {}
    for s in chosen:
        for alpha, mask in _masks_of_size(c.n, s):
            for d, h in enumerate(scan.integer_homology(mask), start=-1):
                for t in h.torsion:
                    for p in prime_factors(t):
                        if primes_up_to is not None and p > primes_up_to:
                            continue
                        if p not in primes:
                            primes.add(p)
                            witness[p] = (alpha, d)
                            factors[p] = h.torsion
    return TorsionReport(primes, witness, partial, tuple(chosen) if partial else None, factors)


@dataclass
class SemicontinuityResult:
    holds: bool
    strict: list[tuple[int, int]]
    rational: BettiTable
    modular: BettiTable

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "strict": [list(x) for x in self.strict],
            "char0": self.rational.as_dict(),
            f"char{self.modular.char}": self.modular.as_dict(),
        }


def semicontinuity_check(
    c: SimplicialComplex,
    ell: int,
    sizes: Iterable[int] | None = None,
    max_subsets: int | None = DEFAULT_MAX_SUBSETS,
    scanner: SubsetScanner | None = None,
) -> SemicontinuityResult:
    """Compare Betti tables over Q and F_ell; ``strict`` lists positions where F_ell is larger."""
    if not is_prime(ell):
        raise ValueError(f"ell must be prime, got {ell}")
    scan = scanner or SubsetScanner(c)
    sizes = None if sizes is None else list(sizes)
    q = betti_table(c, 0, sizes, max_subsets, scan)
    f = betti_table(c, ell, sizes, max_subsets, scan)
    keys = sorted(set(q.entries) | set(f.entries))
    holds = all(q[k] <= f[k] for k in keys)
    strict = [k for k in keys if q[k] < f[k]]
    return SemicontinuityResult(holds, strict, q, f)


def tables_differ(c: SimplicialComplex, ell: int, scanner: SubsetScanner | None = None) -> bool:
    return bool(semicontinuity_check(c, ell, scanner=scanner).strict)


def predicted_gap(c: SimplicialComplex, ell: int, sizes: Sequence[int] | None = None,
                  scanner: SubsetScanner | None = None) -> dict[tuple[int, int], int]:
    """``beta^F_ell - beta^Q`` predicted from integer homology by universal coefficients."""
    chosen, _ = _resolve_sizes(c.n, sizes, None, None)
    scan = scanner or SubsetScanner(c)
    gap: dict[tuple[int, int], int] = {}
    for j in chosen:
        for _, mask in _masks_of_size(c.n, j):
            groups = scan.integer_homology(mask)
            for idx, h in enumerate(groups):
                hits = sum(1 for t in h.torsion if t % ell == 0)
                if not hits:
                    continue
                d = idx - 1
                # torsion in H~_d shows up in degrees d and d + 1 over F_ell
                for dd in (d, d + 1):
                    key = (j - dd - 1, j)
                    gap[key] = gap.get(key, 0) + hits
    return gap
