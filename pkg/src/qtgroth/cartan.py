"""Finite-type Cartan data, Weyl group action and inverse quantum Cartan matrices.

Nodes are numbered from 1.  Weights are integer vectors in the basis of
fundamental weights; roots can also be expressed in the simple-root basis via
:func:`root_coords`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Sequence, Tuple

from .errors import DepthError, ValidationError

__all__ = [
    "CartanData",
    "WeightVector",
    "InverseQCartanTable",
    "build_cartan",
    "inverse_qcartan",
    "closed_form_B",
    "weyl_apply",
    "simple_root",
    "fundamental_weight",
    "root_coords",
    "from_root_coords",
    "roots_of_word",
    "longest_word",
]


@dataclass(frozen=True)
class CartanData:
    kind: str
    n: int
    C: Tuple[Tuple[int, ...], ...]
    r: Tuple[int, ...]
    Bsym: Tuple[Tuple[int, ...], ...]

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    def c(self, i: int, j: int) -> int:
        return self.C[i - 1][j - 1]

    def ri(self, i: int) -> int:
        return self.r[i - 1]

    def neighbours(self, i: int) -> Tuple[int, ...]:
        return tuple(j for j in self.nodes if j != i and self.c(i, j) != 0)

    def dual_coxeter(self) -> int:
        return self.n + 1 if self.kind == "A" else 2 * self.n - 1

    def num_positive_roots(self) -> int:
        return self.n * (self.n + 1) // 2 if self.kind == "A" else self.n * self.n

    def check_node(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.n):
            raise ValidationError(f"node {i!r} out of range 1..{self.n} for {self.kind}_{self.n}")

    def __str__(self) -> str:
        return f"{self.kind}_{self.n}"


@dataclass(frozen=True)
class WeightVector:
    """Exact weight in the basis of fundamental weights."""

    coords: Tuple[int, ...]

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-a for a in self.coords))

    def scale(self, k: int) -> "WeightVector":
        return WeightVector(tuple(k * a for a in self.coords))


def build_cartan(kind: str, n: int) -> CartanData:
    """Cartan matrix in Kac's labelling; for B_n the short root is node n."""
    kind = str(kind).upper()
    if kind not in ("A", "B"):
        raise ValidationError(f"unsupported Cartan type {kind!r}; expected A or B")
    if not isinstance(n, int) or n < (1 if kind == "A" else 2):
        raise ValidationError(f"unsupported rank {n!r} for type {kind}")
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2
        if i + 1 < n:
            C[i][i + 1] = C[i + 1][i] = -1
    if kind == "A":
        r = [1] * n
    else:
        r = [2] * (n - 1) + [1]
        C[n - 1][n - 2] = -2
    Bsym = tuple(tuple(r[i] * C[i][j] for j in range(n)) for i in range(n))
    return CartanData(kind, n, tuple(map(tuple, C)), tuple(r), Bsym)


# --- weights -----------------------------------------------------------------

def simple_root(cartan: CartanData, i: int) -> WeightVector:
    cartan.check_node(i)
    return WeightVector(tuple(cartan.c(j, i) for j in cartan.nodes))


def fundamental_weight(cartan: CartanData, i: int) -> WeightVector:
    cartan.check_node(i)
    return WeightVector(tuple(int(j == i) for j in cartan.nodes))


def weyl_apply(cartan: CartanData, i: int, w: WeightVector) -> WeightVector:
    cartan.check_node(i)
    return w - simple_root(cartan, i).scale(w.coords[i - 1])


@lru_cache(maxsize=None)
def _scaled_inverse(cartan: CartanData) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
    """(d, M) with M = d * C^{-1} an integer matrix; Gaussian elimination over the rationals."""
    n = cartan.n
    rows = [[Fraction(cartan.c(i, j)) for j in cartan.nodes] + [Fraction(int(i == k)) for k in cartan.nodes]
            for i in cartan.nodes]
    for col in range(n):
        piv = next(k for k in range(col, n) if rows[k][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for k in range(n):
            if k != col and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[col])]
    inv = [row[n:] for row in rows]
    d = 1
    for row in inv:
        for x in row:
            d = d * x.denominator // gcd(d, x.denominator)
    return d, tuple(tuple(int(x * d) for x in row) for row in inv)


def _solve_root_coords(cartan: CartanData, w: WeightVector) -> Tuple[Fraction, ...]:
    d, inv = _scaled_inverse(cartan)
    return tuple(Fraction(sum(a * b for a, b in zip(row, w.coords)), d) for row in inv)


def root_coords(cartan: CartanData, w: WeightVector) -> Tuple[int, ...]:
    """Coordinates of a root-lattice element in the simple-root basis."""
    a = _solve_root_coords(cartan, w)
    if any(x.denominator != 1 for x in a):
        raise ValidationError(f"{w.coords} is not in the root lattice")
    return tuple(int(x) for x in a)


def from_root_coords(cartan: CartanData, a: Sequence[int]) -> WeightVector:
    return WeightVector(tuple(sum(cartan.c(k, j) * a[j - 1] for j in cartan.nodes)
                              for k in cartan.nodes))


def pairing(cartan: CartanData, mu: WeightVector, nu: WeightVector):
    """The invariant form, normalised so that (alpha_i, alpha_i) = 2 r_i."""
    a = _solve_root_coords(cartan, mu)
    val = sum(a[j - 1] * cartan.ri(j) * nu.coords[j - 1] for j in cartan.nodes)
    return int(val) if val.denominator == 1 else val


def roots_of_word(cartan: CartanData, word: Sequence[int]) -> Tuple[WeightVector, ...]:
    """The roots s_{i_1}...s_{i_{k-1}}(alpha_{i_k}); raises if the word is not reduced."""
    roots = []
    seen = set()
    for k, ik in enumerate(word):
        cartan.check_node(ik)
        beta = simple_root(cartan, ik)
        for i in reversed(word[:k]):
            beta = weyl_apply(cartan, i, beta)
        a = root_coords(cartan, beta)
        if any(x < 0 for x in a) or a in seen:
            raise ValidationError(
                f"word {tuple(word)} is not reduced: position {k + 1} gives root {a}")
        seen.add(a)
        roots.append(beta)
    return tuple(roots)


def longest_word(cartan: CartanData) -> Tuple[int, ...]:
    """A fixed reduced expression of the longest element, built greedily."""
    word = []
    rho = WeightVector((1,) * cartan.n)
    w = rho
    # apply simple reflections while some coordinate stays positive
    while True:
        i = next((j for j in cartan.nodes if w.coords[j - 1] > 0), None)
        if i is None:
            break
        w = weyl_apply(cartan, i, w)
        word.append(i)
    return tuple(reversed(word))


# --- inverse quantum Cartan matrix --------------------------------------------

@dataclass(frozen=True)
class InverseQCartanTable:
    """Coefficients of the inverse quantum Cartan matrix, expanded in z^{-1}.

    ``value(j, i, r)`` is the coefficient of z^r in the (j, i) entry; it is
    zero for r > -r_j and tabulated down to r = -depth.
    """

    cartan: CartanData
    depth: int
    table: Dict[Tuple[int, int, int], int] = field(repr=False)

    def value(self, j: int, i: int, r: int) -> int:
        if r > -self.cartan.ri(j):
            return 0
        if r < -self.depth:
            raise DepthError(
                f"c~_{j}{i}({r}) requested but the table only reaches depth {self.depth}")
        return self.table[(j, i, r)]

    __call__ = value

    def row(self, j: int, i: int, lo: int, hi: int = -1, step: int = 1):
        return [self.value(j, i, r) for r in range(hi, lo - 1, -step)]


def _qint_exponents(c: int) -> range:
    m = abs(c)
    return range(-(m - 1), m, 2)


def inverse_qcartan(cartan: CartanData, depth: int | None = None) -> InverseQCartanTable:
    """Solve C(z) C~(z) = 1 degree by degree, lowest term first."""
    if depth is None:
        depth = 4 * cartan.dual_coxeter()
    if not isinstance(depth, int) or depth < 1:
        raise ValidationError(f"depth must be a positive integer, got {depth!r}")
    nodes = list(cartan.nodes)
    offdiag = {j: [(k, list(_qint_exponents(cartan.c(j, k))))
                   for k in nodes if k != j and cartan.c(j, k) != 0] for j in nodes}
    table: Dict[Tuple[int, int, int], int] = {}

    def get(j, i, r):
        if r > -cartan.ri(j):
            return 0
        return table[(j, i, r)]

    order = sorted(nodes, key=lambda j: -cartan.ri(j))
    for level in range(-1, -depth - 1, -1):
        for j in order:
            rj = cartan.ri(j)
            if level > -rj:
                continue
            for i in nodes:
                val = int(j == i and level == -rj) - get(j, i, level + 2 * rj)
                for k, exps in offdiag[j]:
                    for a in exps:
                        val += get(k, i, level + rj - a)
                table[(j, i, level)] = val
    return InverseQCartanTable(cartan, depth, table)


def closed_form_B(n: int, j: int, i: int, r: int) -> int:
    """Explicit 0/+-1 formula for type B_n, extended by antiperiodicity."""
    if n < 2 or not (1 <= i <= n and 1 <= j <= n):
        raise ValidationError(f"invalid arguments for B_{n}: j={j}, i={i}")
    rj = 2 if j < n else 1
    if r > -rj:
        return 0
    period = 4 * n - 2
    sign = 1
    while r < -period:
        r += period
        sign = -sign
    if i != n:
        if r % 2:
            return 0
        k = -r // 2
        if k >= n:
            k = 2 * n - 1 - k
        kp, km = k + j, k - j
        inside = (i + 1 <= kp <= 2 * n - i - 1 and 1 - i <= km <= i - 1
                  and (kp - i - 1) % 2 == 0 and (km - 1 + i) % 2 == 0)
        return sign * int(inside or kp >= 2 * n - i)
    if r % 2 == 0:
        return 0
    k = (-r - 1) // 2
    if k >= n:
        k = 2 * n - 2 - k
    d = k + j - n
    return sign * int(d >= 0 and d % 2 == 0)
