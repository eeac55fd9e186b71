"""Independent oracles for the test suite.

Nothing here imports mcgwords: classes, matrices, determinants and the
closed-form invariants are recomputed from scratch with dense lists.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


# -- homology ----------------------------------------------------------------

def basis(g, k):
    v = [0] * (2 * g)
    v[k] = 1
    return v


def a(g, i):
    return basis(g, 2 * (i - 1))


def b(g, i):
    if i < 1 or i > g:
        return [0] * (2 * g)
    return basis(g, 2 * (i - 1) + 1)


def chain_class(g, j):
    """c_{2i} = a_i, c_{2i-1} = b_{i-1} + b_i."""
    if j % 2 == 0:
        return a(g, j // 2)
    i = (j + 1) // 2
    return [x + y for x, y in zip(b(g, i - 1), b(g, i))]


def pair(u, v):
    return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(len(u) // 2))


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(x, y):
    n = len(y[0])
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(n)] for i in range(len(x))]


def tv(c, sign=1):
    """Matrix of x -> x + sign <x, c> c."""
    n = len(c)
    cols = []
    for j in range(n):
        e = basis(n // 2, j)
        k = pair(e, c) * sign
        cols.append([e[i] + k * c[i] for i in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def apply(m, v):
    return [sum(m[i][k] * v[k] for k in range(len(v))) for i in range(len(m))]


def product(classes, g, signs=None):
    """T_1 T_2 ... T_m (functional order)."""
    m = identity(2 * g)
    for idx, c in enumerate(classes):
        m = matmul(m, tv(c, 1 if signs is None else signs[idx]))
    return m


def conj_class(g, conj, base):
    """Class of w t_base w^{-1} for w = [(class, sign), ...]."""
    m = identity(2 * g)
    for c, s in conj:
        m = matmul(m, tv(c, s))
    return apply(m, base)


def mod2(v):
    return [x % 2 for x in v]


def add(*vs):
    return [sum(t) for t in zip(*vs)]


# -- integer linear algebra -----------------------------------------------------

def det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det(minor)
    return total


def invariant_factors(m):
    """d_k = D_k / D_{k-1} with D_k the gcd of the k x k minors."""
    rows, cols = len(m), len(m[0]) if m else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        d = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                d = gcd(d, det([[m[i][j] for j in ci] for i in ri]))
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def cokernel(m):
    """(rank, torsion) of Z^rows / image(m)."""
    f = invariant_factors(m)
    return len(m) - len(f), [d for d in f if d > 1]


# -- closed forms -----------------------------------------------------------------

def endo(g, s0, sh=()):
    s = Fraction(-(g + 1), 2 * g + 1) * s0
    for h, n in sh:
        s += (Fraction(4 * h * (g - h), 2 * g + 1) - 1) * n
    return s


def y_row(g, k):
    """Theorem 7.1 closed forms for Y(g,k)."""
    return {
        "e": 4 * g * g + 2 * g + 6 - (g - 2) * k,
        "sigma": -2 * (g + 1) ** 2 + (g - 2) * k,
        "b2plus": g * g - g + 1,
        "b2minus": 3 * g * g + 3 * g + 3 - (g - 2) * k,
    }


def h_lengths(g):
    return {"H": 8 * g + 4, "H1": 7 * g + 6, "H2": 6 * g + 8, "I": (2 * g + 1) * (2 * g + 2),
            "G": 4 * g * (2 * g + 1)}


def discrepancy_type_2g2(g, k):
    return Fraction(2 * (g - 1) * (g - 2) * k, 2 * g + 1)


def discrepancy_type_g1(g, k):
    return Fraction(g * (g - 2) * k, 2 * g + 1)


def boundary_class(g, k):
    """Class of each boundary curve of the odd chain c_1 .. c_k: c_1 - c_3 + c_5 - ..."""
    v = [0] * (2 * g)
    for t, j in enumerate(range(1, k + 1, 2)):
        v = [x + (-1) ** t * y for x, y in zip(v, chain_class(g, j))]
    return v
