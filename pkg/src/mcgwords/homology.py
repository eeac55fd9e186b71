"""Exact integer linear algebra on H_1 of a closed genus-g surface.

Classes are integer vectors in the ordered basis ``a_1, b_1, ..., a_g, b_g``
with ``<a_i, b_i> = +1``.  Mapping classes act through 2g x 2g integer
matrices.  Everything is plain Python ``int`` so identity tests are exact.

Products follow functional composition: the factorization ``t_1 t_2 ... t_m``
has image ``T_1 T_2 ... T_m`` and ``w t_c w^{-1}`` is the twist about
``Sp(w) c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import gcd
from operator import mul
from typing import Iterable, Sequence

HomClass = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class DimensionError(ValueError):
    pass


def basis_vector(g: int, index: int) -> HomClass:
    v = [0] * (2 * g)
    v[index] = 1
    return tuple(v)


def a_class(g: int, i: int) -> HomClass:
    """The class a_i (1-based)."""
    return basis_vector(g, 2 * (i - 1))


def b_class(g: int, i: int) -> HomClass:
    """The class b_i (1-based); b_0 and b_{g+1} are zero."""
    if i < 1 or i > g:
        return (0,) * (2 * g)
    return basis_vector(g, 2 * (i - 1) + 1)


def add(u: Sequence[int], v: Sequence[int], scale: int = 1) -> HomClass:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return tuple(x + scale * y for x, y in zip(u, v))


def neg(u: Sequence[int]) -> HomClass:
    return tuple(-x for x in u)


def is_zero(u: Sequence[int]) -> bool:
    return not any(u)


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    """Symplectic intersection pairing, ``<a_i, b_i> = 1``."""
    if len(u) != len(v) or len(u) % 2:
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(map(mul, u[0::2], v[1::2])) - sum(map(mul, u[1::2], v[0::2]))


def mod2(u: Sequence[int]) -> HomClass:
    return tuple(x % 2 for x in u)


def canonical_sign(u: Sequence[int]) -> HomClass:
    """Representative of +-u whose first nonzero entry is positive."""
    for x in u:
        if x:
            return tuple(u) if x > 0 else neg(u)
    return tuple(u)


@dataclass(frozen=True)
class SpElement:
    """A 2g x 2g integer matrix acting on column vectors."""

    matrix: Matrix

    @property
    def size(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, g: int) -> "SpElement":
        n = 2 * g
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "SpElement") -> "SpElement":
        if self.size != other.size:
            raise DimensionError("size mismatch")
        cols = list(zip(*other.matrix))
        return SpElement(
            tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in self.matrix)
        )

    def apply(self, v: Sequence[int]) -> HomClass:
        if len(v) != self.size:
            raise DimensionError(f"length mismatch: {len(v)} vs {self.size}")
        return tuple(sum(x * y for x, y in zip(row, v)) for row in self.matrix)

    def inverse(self) -> "SpElement":
        # M^{-1} = -J M^T J for symplectic M.
        j = _j_matrix(self.size // 2)
        mt = SpElement(tuple(zip(*self.matrix)))
        out = j @ mt @ j
        return SpElement(tuple(tuple(-x for x in row) for row in out.matrix))

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0) for i, row in enumerate(self.matrix) for j, x in enumerate(row)
        )

    def is_symplectic(self) -> bool:
        n = self.size
        cols = list(zip(*self.matrix))
        for i in range(n):
            for j in range(n):
                want = 0
                if i % 2 == 0 and j == i + 1:
                    want = 1
                elif i % 2 == 1 and j == i - 1:
                    want = -1
                if pairing(cols[i], cols[j]) != want:
                    return False
        return True

    def conjugate(self, by: "SpElement") -> "SpElement":
        return by @ self @ by.inverse()


def _j_matrix(g: int) -> SpElement:
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for k in range(0, n, 2):
        rows[k][k + 1] = 1
        rows[k + 1][k] = -1
    return SpElement(tuple(tuple(r) for r in rows))


def transvection(c: Sequence[int]) -> SpElement:
    """Homology action x -> x + <x, c> c of the twist about a curve of class c."""
    n = len(c)
    if n % 2:
        raise DimensionError("odd length class")
    # <x, c> = sum_k x_k * jc_k
    jc = [0] * n
    for k in range(0, n, 2):
        jc[k] = c[k + 1]
        jc[k + 1] = -c[k]
    return SpElement(
        tuple(tuple(int(i == j) + c[i] * jc[j] for j in range(n)) for i in range(n))
    )


def twist_vector(v: Sequence[int], c: Sequence[int], power: int = 1) -> HomClass:
    """v + power * <v, c> c, the action of the power-th twist power on v."""
    k = (sum(map(mul, v[0::2], c[1::2])) - sum(map(mul, v[1::2], c[0::2]))) * power
    if not k:
        return tuple(v)
    return tuple(x + k * y for x, y in zip(v, c))


def twist_product(classes: Sequence[tuple[Sequence[int], int]], g: int) -> SpElement:
    """Matrix of T_1^{s_1} ... T_k^{s_k} for (class, sign) pairs, computed
    column by column (the last factor acts first)."""
    n = 2 * g
    cols = []
    for j in range(n):
        v = tuple(int(i == j) for i in range(n))
        for c, s in reversed(classes):
            v = twist_vector(v, c, s)
        cols.append(v)
    return SpElement(tuple(zip(*cols)))


def product(elements: Iterable[SpElement], g: int) -> SpElement:
    return reduce(lambda x, y: x @ y, elements, SpElement.identity(g))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class AbelianGroupDesc:
    rank: int
    torsion: tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
            # a leftover remainder gives a smaller pivot
            rest = [(i, t) for i in range(t + 1, m) if a[i][t]] + [(t, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                i, j = min(rest, key=lambda ij: abs(a[ij[0]][ij[1]]))
                if i != t:
                    a[t], a[i] = a[i], a[t]
                else:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                done = False
                continue
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p]
            if bad:
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int | None = None) -> AbelianGroupDesc:
    """Cokernel of the map Z^cols -> Z^rows given by ``rows``."""
    m = len(rows)
    if m == 0:
        return AbelianGroupDesc(0)
    diag = smith_diagonal(rows)
    return AbelianGroupDesc(m - len(diag), tuple(d for d in diag if d > 1))


def minors_gcd_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors via gcds of k x k minors (slow; used as a test oracle)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        d = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                d = gcd(d, _det([[rows[i][j] for j in ci] for i in ri]))
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def _det(a: list[list[int]]) -> int:
    # Bareiss fraction-free elimination.
    a = [row[:] for row in a]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def h1_cokernel(classes: Sequence[Sequence[int]], g: int) -> AbelianGroupDesc:
    """Z^{2g} modulo the span of ``classes``."""
    for c in classes:
        if len(c) != 2 * g:
            raise DimensionError(f"class of length {len(c)} in genus {g}")
    if not classes:
        return AbelianGroupDesc(2 * g)
    columns = [list(col) for col in zip(*classes)]
    return smith_invariants(columns)
