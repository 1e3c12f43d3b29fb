"""Integer simplicial homology through Smith normal form.

Matrices are stored sparsely with Python ints, so no entry ever
overflows. Ranks over a prime field are computed by a separate
elimination mod p; nothing in that path reuses the Smith form, which is
what lets the two be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .complexes import SimplicialComplex


class IntegerMatrix:
    """Sparse integer matrix; ``entries`` maps ``(row, col)`` to a nonzero int."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], int] | None = None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for (i, j), a in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if a:
                self.entries[i, j] = int(a)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> IntegerMatrix:
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(r, c, {(i, j): a for i, row in enumerate(rows) for j, a in enumerate(row) if a})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries.get(key, 0)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), a in self.entries.items():
            out[i][j] = a
        return out

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.cols, self.rows, {(j, i): a for (i, j), a in self.entries.items()})

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, dict[int, int]] = {}
        for (k, j), b in other.entries.items():
            by_row.setdefault(k, {})[j] = b
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, {}).items():
                acc[i, j] = acc.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def hstack(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        ent = dict(self.entries)
        ent.update({(i, j + self.cols): a for (i, j), a in other.entries.items()})
        return IntegerMatrix(self.rows, self.cols + other.cols, ent)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> IntegerMatrix:
        return IntegerMatrix(
            self.rows, self.cols, {(row_perm[i], col_perm[j]): a for (i, j), a in self.entries.items()}
        )

    def dump(self) -> str:
        """Plain-text integer grid, one row per line."""
        return "\n".join(" ".join(str(a) for a in row) for row in self.to_dense())

    def _row_dicts(self) -> dict[int, dict[int, int]]:
        rows: dict[int, dict[int, int]] = {}
        for (i, j), a in self.entries.items():
            rows.setdefault(i, {})[j] = a
        return rows


@dataclass(frozen=True)
class SmithForm:
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = self.torsion
        if any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"bad torsion chain {t}")

    def __str__(self):
        parts = (["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else [])
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def as_dict(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


def _chain_from_diagonal(diag: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors from any diagonal form (unimodular-equivalent)."""
    ones, rest = 0, []
    for d in diag:
        d = abs(d)
        if d == 1:
            ones += 1
        elif d:
            rest.append(d)
    # pairwise (gcd, lcm) sweeps turn a diagonal into a divisibility chain
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    out = [1] * ones + [d for d in rest if d == 1] + [d for d in rest if d != 1]
    return tuple(sorted(out))


def smith_normal_form(m: IntegerMatrix) -> SmithForm:
    """Invariant factors of ``m``.

    Sparse elimination that always pivots on an entry of least absolute
    value (cheapest by Markowitz count among ties). When the pivot does not
    divide its row or column the remainders become the new, smaller
    candidates, so the loop terminates.
    """
    rows = m._row_dicts()
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    diag: list[int] = []

    while rows:
        best = None
        for i, row in rows.items():
            rl = len(row)
            for j, a in row.items():
                key = (abs(a), (rl - 1) * (len(cols[j]) - 1))
                if best is None or key < best[0]:
                    best = (key, i, j)
                    if key == (1, 0):
                        break
            if best[0] == (1, 0):
                break
        _, r, c = best
        prow = rows[r]
        p = prow[c]
        clean = True
        for i in list(cols[c]):
            if i == r:
                continue
            row = rows[i]
            q = row[c] // p
            for j, b in prow.items():
                v = row.get(j, 0) - q * b
                if v:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = v
                elif j in row:
                    del row[j]
                    cols[j].discard(i)
            if c in row:
                clean = False
            if not row:
                del rows[i]
        if not clean:
            continue
        # column c now holds only p; column ops only touch row r
        for j in list(prow):
            if j == c:
                continue
            v = prow[j] - (prow[j] // p) * p
            if v:
                prow[j] = v
                clean = False
            else:
                del prow[j]
                cols[j].discard(r)
        if not clean:
            continue
        diag.append(p)
        del rows[r]
        cols[c].discard(r)
    return SmithForm(_chain_from_diagonal(diag))


def naive_smith_normal_form(m: IntegerMatrix) -> SmithForm:
    """Textbook dense reduction to diagonal form, kept as a test oracle."""
    a = m.to_dense()
    nr, nc = m.rows, m.cols
    diag = []
    t = 0
    while t < min(nr, nc):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        done = False
        diag.append(a[t][t])
        t += 1
    return SmithForm(_chain_from_diagonal(diag))


def rank_mod(m: IntegerMatrix, char: int) -> int:
    """Rank over Q (``char == 0``) or over the prime field F_char."""
    if char == 0:
        return _rank_rational(m)
    if not is_prime(char):
        raise ValueError(f"characteristic must be 0 or a prime, got {char}")
    rows = []
    for row in m._row_dicts().values():
        red = {j: a % char for j, a in row.items() if a % char}
        if red:
            rows.append(red)
    rank = 0
    while rows:
        row = rows.pop()
        c = min(row)
        inv = pow(row[c], -1, char)
        rank += 1
        nxt = []
        for other in rows:
            a = other.get(c)
            if a:
                f = a * inv % char
                for j, b in row.items():
                    v = (other.get(j, 0) - f * b) % char
                    if v:
                        other[j] = v
                    else:
                        other.pop(j, None)
            if other:
                nxt.append(other)
        rows = nxt
    return rank


def _rank_rational(m: IntegerMatrix) -> int:
    """Fraction-free integer row elimination (rows rescaled by their content)."""
    rows = [dict(r) for r in m._row_dicts().values()]
    rank = 0
    while rows:
        row = rows.pop()
        c = min(row, key=lambda j: (abs(row[j]), j))
        p = row[c]
        rank += 1
        nxt = []
        for other in rows:
            a = other.get(c)
            if a:
                new = {}
                for j in set(other) | set(row):
                    v = p * other.get(j, 0) - a * row.get(j, 0)
                    if v:
                        new[j] = v
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                other = {j: v // g for j, v in new.items()} if g > 1 else new
            if other:
                nxt.append(other)
        rows = nxt
    return rank


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# -- boundary maps ----------------------------------------------------------


def boundary_matrix(c: SimplicialComplex, d: int, reduced: bool = False) -> IntegerMatrix:
    """Boundary map from ``d``-chains to ``(d-1)``-chains.

    Column of ``(v_0 < ... < v_d)`` carries ``(-1)^i`` in the row of the face
    omitting ``v_i``. With ``reduced`` the map at ``d == 0`` is the
    augmentation (one all-ones row for the empty face).
    """
    cols = c.faces_of_dim(d)
    if d == 0:
        if reduced:
            return IntegerMatrix(1, len(cols), {(0, j): 1 for j in range(len(cols))})
        return IntegerMatrix(0, len(cols))
    if d < 0:
        nrows = 1 if (reduced and d == -1) else 0
        return IntegerMatrix(0, nrows)
    index = c.face_index(d - 1)
    ent = {}
    for j, f in enumerate(cols):
        for i in range(d + 1):
            ent[index[f[:i] + f[i + 1:]], j] = -1 if i % 2 else 1
    return IntegerMatrix(len(c.faces_of_dim(d - 1)), len(cols), ent)


def chain_count(c: SimplicialComplex, d: int, reduced: bool = False) -> int:
    if d == -1:
        return 1 if reduced else 0
    return len(c.faces_of_dim(d))


def homology(c: SimplicialComplex, d: int, reduced: bool = False) -> HomologyGroup:
    """``H_d(c; Z)`` as free rank plus torsion invariant factors."""
    if d < -1 or (d == -1 and not reduced):
        return HomologyGroup(0)
    n_d = chain_count(c, d, reduced)
    if n_d == 0:
        return HomologyGroup(0)
    rank_d = smith_normal_form(boundary_matrix(c, d, reduced)).rank if d >= 0 else 0
    upper = smith_normal_form(boundary_matrix(c, d + 1, reduced))
    return HomologyGroup(n_d - rank_d - upper.rank, upper.torsion)


def homology_all(c: SimplicialComplex, reduced: bool = False) -> list[HomologyGroup]:
    """``[H_0, ..., H_dim]`` (starting at ``H_{-1}`` when reduced), one SNF per boundary map."""
    lo = -1 if reduced else 0
    top = c.dim
    forms = {d: smith_normal_form(boundary_matrix(c, d, reduced)) for d in range(max(lo, 0), top + 2)}
    out = []
    for d in range(lo, top + 1):
        n_d = chain_count(c, d, reduced)
        rank_d = forms[d].rank if d >= 0 else 0
        upper = forms[d + 1]
        out.append(HomologyGroup(n_d - rank_d - upper.rank, upper.torsion if n_d else ()))
    return out


def homology_dim_mod(c: SimplicialComplex, d: int, char: int, reduced: bool = False) -> int:
    """Dimension of ``H_d(c; k)`` for ``k`` of characteristic ``char``, by field elimination."""
    if char != 0 and not is_prime(char):
        raise ValueError(f"characteristic must be 0 or a prime, got {char}")
    if d < -1 or (d == -1 and not reduced):
        return 0
    n_d = chain_count(c, d, reduced)
    if n_d == 0:
        return 0
    rank_d = rank_mod(boundary_matrix(c, d, reduced), char) if d >= 0 else 0
    return n_d - rank_d - rank_mod(boundary_matrix(c, d + 1, reduced), char)


def uct_dimension(groups: Sequence[HomologyGroup], d: int, char: int, offset: int = 0) -> int:
    """Field-coefficient dimension predicted from integer homology.

    ``groups[d - offset]`` is ``H_d``; ``char`` 0 gives the free rank.
    """

    def get(k):
        i = k - offset
        return groups[i] if 0 <= i < len(groups) else HomologyGroup(0)

    h = get(d)
    if char == 0:
        return h.free_rank
    return (
        h.free_rank
        + sum(1 for t in h.torsion if t % char == 0)
        + sum(1 for t in get(d - 1).torsion if t % char == 0)
    )


def in_integer_image(m: IntegerMatrix, b: Sequence[int]) -> bool:
    """Whether the integer vector ``b`` lies in the Z-span of the columns of ``m``.

    Appending ``b`` leaves the lattice unchanged iff rank and the product of
    invariant factors (the gcd of maximal minors) both stay the same.
    """
    col = IntegerMatrix(m.rows, 1, {(i, 0): x for i, x in enumerate(b) if x})
    before = smith_normal_form(m)
    after = smith_normal_form(m.hstack(col))
    if after.rank != before.rank:
        return False
    prod_a = prod_b = 1
    for x in before.invariant_factors:
        prod_a *= x
    for x in after.invariant_factors:
        prod_b *= x
    return prod_a == prod_b


def chain_vector(c: SimplicialComplex, d: int, terms: Iterable[tuple[int, Sequence[int]]]) -> list[int]:
    """Coefficient vector of ``sum coeff * [v_0, ..., v_d]`` in the face basis.

    Each face is oriented by the listed vertex order and re-expressed in
    the increasing order with the permutation sign.
    """
    index = c.face_index(d)
    vec = [0] * len(c.faces_of_dim(d))
    for coeff, verts in terms:
        verts = list(verts)
        sign = 1
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                if verts[i] > verts[j]:
                    sign = -sign
        key = tuple(sorted(verts))
        if key not in index:
            raise KeyError(f"{key} is not a {d}-face")
        vec[index[key]] += sign * coeff
    return vec


def is_boundary(c: SimplicialComplex, d: int, vec: Sequence[int]) -> bool:
    """Whether a ``d``-chain is an integral boundary of ``(d+1)``-chains."""
    return in_integer_image(boundary_matrix(c, d + 1), vec)


def is_cycle(c: SimplicialComplex, d: int, vec: Sequence[int]) -> bool:
    m = boundary_matrix(c, d)
    out = [0] * m.rows
    for (i, j), a in m.entries.items():
        out[i] += a * vec[j]
    return not any(out)
