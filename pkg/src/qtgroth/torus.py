"""Exact arithmetic in the quantum torus of Y-variables.

Elements are finite sums ``sum_m c_m(t^{1/2}) * [m]`` where ``[m]`` is the
bar-invariant commutative monomial attached to a Laurent monomial ``m`` and
``c_m`` is a Laurent polynomial in ``t^{1/2}``.  Products follow

    [m1] [m2] = t^{N(m1, m2)/2} [m1 m2],   N = sum u1 u2 gamma.
"""

from __future__ import annotations

from collections import defaultdict
from functools import total_ordering
from operator import add, mul
from typing import Dict, Iterable, Iterator, Mapping, Tuple

import numpy as np

from .cartan import CartanData, InverseQCartanTable, build_cartan, inverse_qcartan
from .errors import DepthError, ValidationError

__all__ = [
    "YMonomial",
    "TLaurent",
    "QuantumTorus",
    "TorusElement",
    "gamma",
    "a_monomial",
    "nakajima_leq",
    "torus_for",
]


@total_ordering
class YMonomial:
    """A Laurent monomial in commuting variables Y_{i,r}, stored as sorted (i, r, e)."""

    __slots__ = ("items", "_hash")

    def __init__(self, exps: Mapping[Tuple[int, int], int] | Iterable = ()):
        if isinstance(exps, Mapping):
            pairs = exps.items()
        else:
            pairs = (((i, r), e) for i, r, e in exps)
        acc: Dict[Tuple[int, int], int] = defaultdict(int)
        for (i, r), e in pairs:
            acc[(int(i), int(r))] += int(e)
        self.items = tuple(sorted((i, r, e) for (i, r), e in acc.items() if e))
        self._hash = hash(self.items)

    @classmethod
    def Y(cls, i: int, r: int, e: int = 1) -> "YMonomial":
        return cls({(i, r): e})

    @classmethod
    def one(cls) -> "YMonomial":
        return _ONE

    @classmethod
    def _raw(cls, items: tuple) -> "YMonomial":
        obj = cls.__new__(cls)
        obj.items = items
        obj._hash = hash(items)
        return obj

    def exps(self) -> Dict[Tuple[int, int], int]:
        return {(i, r): e for i, r, e in self.items}

    def u(self, i: int, r: int) -> int:
        for a, b, e in self.items:
            if a == i and b == r:
                return e
        return 0

    def __mul__(self, other: "YMonomial") -> "YMonomial":
        if not other.items:
            return self
        if not self.items:
            return other
        acc = dict(((i, r), e) for i, r, e in self.items)
        for i, r, e in other.items:
            acc[(i, r)] = acc.get((i, r), 0) + e
        return YMonomial._raw(tuple(sorted((i, r, e) for (i, r), e in acc.items() if e)))

    def inverse(self) -> "YMonomial":
        return YMonomial._raw(tuple((i, r, -e) for i, r, e in self.items))

    def __truediv__(self, other: "YMonomial") -> "YMonomial":
        return self * other.inverse()

    def __pow__(self, k: int) -> "YMonomial":
        if k == 0:
            return _ONE
        return YMonomial._raw(tuple((i, r, e * k) for i, r, e in self.items))

    def is_dominant(self) -> bool:
        return all(e > 0 for _, _, e in self.items)

    def support(self) -> frozenset:
        return frozenset((i, r) for i, r, _ in self.items)

    def degree(self) -> int:
        return sum(e for _, _, e in self.items)

    def levels(self) -> Tuple[int, ...]:
        return tuple(sorted({r for _, r, _ in self.items}))

    def is_one(self) -> bool:
        return not self.items

    def __eq__(self, other) -> bool:
        return isinstance(other, YMonomial) and self.items == other.items

    def __lt__(self, other: "YMonomial") -> bool:
        return self.items < other.items

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Tuple[int, int, int]]:
        return iter(self.items)

    def __str__(self) -> str:
        if not self.items:
            return "1"
        # ascending spectral parameter, then node, matches the usual display
        out = []
        for i, r, e in sorted(self.items, key=lambda x: (x[1], x[0])):
            out.append(f"Y({i},{r})" + ("" if e == 1 else f"^{e}"))
        return "".join(out)

    def __repr__(self) -> str:
        return f"YMonomial({str(self)!r})"


_ONE = YMonomial()


class TLaurent:
    """Laurent polynomial in t^{1/2}; keys are exponents in half units."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.c = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, halfpow: int = 0, coeff: int = 1) -> "TLaurent":
        return cls({halfpow: coeff})

    def __add__(self, other: "TLaurent") -> "TLaurent":
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return TLaurent(out)

    def __neg__(self) -> "TLaurent":
        return TLaurent({k: -v for k, v in self.c.items()})

    def __sub__(self, other: "TLaurent") -> "TLaurent":
        return self + (-other)

    def __mul__(self, other) -> "TLaurent":
        if isinstance(other, int):
            return TLaurent({k: v * other for k, v in self.c.items()})
        out: Dict[int, int] = defaultdict(int)
        for a, x in self.c.items():
            for b, y in other.c.items():
                out[a + b] += x * y
        return TLaurent(out)

    __rmul__ = __mul__

    def shift(self, halfpow: int) -> "TLaurent":
        return TLaurent({k + halfpow: v for k, v in self.c.items()})

    def bar(self) -> "TLaurent":
        return TLaurent({-k: v for k, v in self.c.items()})

    def at_one(self) -> int:
        return sum(self.c.values())

    def is_zero(self) -> bool:
        return not self.c

    def is_bar_invariant(self) -> bool:
        return self.c == self.bar().c

    def single_power(self):
        """Return the half-power if this is exactly t^{h/2}, else None."""
        if len(self.c) == 1:
            (k, v), = self.c.items()
            if v == 1:
                return k
        return None

    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.c.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.c == ({0: other} if other else {})
        return isinstance(other, TLaurent) and self.c == other.c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.c.items())))

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c, reverse=True):
            v = self.c[k]
            if k == 0:
                term = f"{v}"
            else:
                power = f"{k // 2}" if k % 2 == 0 else f"{k}/2"
                base = "t" if power == "1" else f"t^{power}" if k > 0 else f"t^({power})"
                term = base if v == 1 else f"-{base}" if v == -1 else f"{v}*{base}"
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"TLaurent({self.c})"


def gamma(table: InverseQCartanTable, i: int, r: int, j: int, s: int) -> int:
    """The t-commutation exponent between Y_{i,r} and Y_{j,s}."""
    if r == s:
        return 0
    rj = table.cartan.ri(j)
    v = table.value
    if r > s:
        # two of the four terms vanish when r > s
        return v(j, i, -rj - r + s) - v(j, i, rj - r + s)
    return v(j, i, rj + r - s) - v(j, i, -rj + r - s)


def a_monomial(cartan: CartanData, i: int, r: int) -> YMonomial:
    """The root monomial A_{i,r}."""
    cartan.check_node(i)
    ri = cartan.ri(i)
    exps = {(i, r - ri): 1, (i, r + ri): 1}
    for j in cartan.nodes:
        c = cartan.c(j, i)
        if j == i or c == 0:
            continue
        for a in range(-(-c - 1), -c, 2):
            exps[(j, r + a)] = exps.get((j, r + a), 0) - 1
    return YMonomial(exps)


def nakajima_leq(cartan: CartanData, m1: YMonomial, m2: YMonomial):
    """Decide m1 <= m2 in the Nakajima order.

    Returns ``(True, v)`` with ``m1 = m2 * prod A_{i,a}^{-v[(i,a)]}`` or
    ``(False, None)``.  Each A_{i,a} has a unique lowest variable Y_{i,a-r_i}
    (exponent +1), so the quotient m2/m1 is peeled from its lowest level.
    """
    rest = m2 / m1
    witness: Dict[Tuple[int, int], int] = {}
    if rest.is_one():
        return True, witness
    top = max(rest.levels())
    while not rest.is_one():
        low = min(r for _, r, _ in rest.items)
        for i, r, e in rest.items:
            if r != low:
                continue
            a = r + cartan.ri(i)
            if e < 0 or r + 2 * cartan.ri(i) > top:
                return False, None
            witness[(i, a)] = witness.get((i, a), 0) + e
        factor = YMonomial(())
        for i, r, e in rest.items:
            if r == low:
                factor = factor * a_monomial(cartan, i, r + cartan.ri(i)) ** e
        rest = rest / factor
    return True, witness


class QuantumTorus:
    """The algebra: Cartan data plus a lazily deepened inverse quantum Cartan table."""

    def __init__(self, cartan: CartanData, depth: int | None = None):
        self.cartan = cartan
        self.table = inverse_qcartan(cartan, depth)
        self._gamma: Dict[Tuple[int, int, int], int] = {}

    def _deepen(self, need: int) -> None:
        depth = self.table.depth
        while depth < need:
            depth *= 2
        self.table = inverse_qcartan(self.cartan, depth)

    def gamma(self, i: int, r: int, j: int, s: int) -> int:
        key = (i, j, r - s)
        g = self._gamma.get(key)
        if g is None:
            try:
                g = gamma(self.table, i, r, j, s)
            except DepthError:
                self._deepen(abs(r - s) + 2 * max(self.cartan.r))
                g = gamma(self.table, i, r, j, s)
            self._gamma[key] = g
        return g

    def N(self, m1: YMonomial, m2: YMonomial) -> int:
        g = self.gamma
        return sum(u * v * g(i, r, j, s) for i, r, u in m1.items for j, s, v in m2.items)

    # constructors
    def element(self, terms: Mapping[YMonomial, TLaurent | int] | None = None) -> "TorusElement":
        return TorusElement(self, terms or {})

    def one(self) -> "TorusElement":
        return TorusElement(self, {_ONE: TLaurent.monomial(0)})

    def mono(self, m: YMonomial, halfpow: int = 0, coeff: int = 1) -> "TorusElement":
        return TorusElement(self, {m: TLaurent.monomial(halfpow, coeff)})

    def Y(self, i: int, r: int) -> "TorusElement":
        """The generator Y~_{i,r} = t^{1/2} [Y_{i,r}]."""
        return self.mono(YMonomial.Y(i, r), 1)

    def A(self, i: int, r: int) -> YMonomial:
        return a_monomial(self.cartan, i, r)

    def t(self, halfpow: int) -> "TorusElement":
        return self.mono(_ONE, halfpow)

    def __repr__(self) -> str:
        return f"QuantumTorus({self.cartan})"


_TORI: Dict[Tuple[str, int], QuantumTorus] = {}


def torus_for(kind: str, n: int) -> QuantumTorus:
    key = (kind.upper(), n)
    if key not in _TORI:
        _TORI[key] = QuantumTorus(build_cartan(kind, n))
    return _TORI[key]


class TorusElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: QuantumTorus, terms: Mapping):
        self.algebra = algebra
        clean: Dict[YMonomial, TLaurent] = {}
        for m, c in terms.items():
            if type(c) is TLaurent:
                pass
            elif isinstance(c, int):
                c = TLaurent.monomial(0, c)
            elif isinstance(c, Mapping):
                c = TLaurent(c)
            if not c.is_zero():
                clean[m] = c
        self.terms = clean

    def _same(self, other: "TorusElement") -> None:
        if other.algebra is not self.algebra and other.algebra.cartan != self.algebra.cartan:
            raise ValidationError("torus elements belong to different algebras")

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._same(other)
        out: Dict[YMonomial, Dict[int, int]] = {m: dict(c.c) for m, c in self.terms.items()}
        for m, c in other.terms.items():
            d = out.setdefault(m, {})
            for k, v in c.c.items():
                d[k] = d.get(k, 0) + v
        return TorusElement(self.algebra, out)

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __mul__(self, other) -> "TorusElement":
        if isinstance(other, int):
            return TorusElement(self.algebra, {m: c * other for m, c in self.terms.items()})
        if isinstance(other, TLaurent):
            return TorusElement(self.algebra, {m: c * other for m, c in self.terms.items()})
        self._same(other)
        return TorusElement(self.algebra, _product_terms(self.algebra, self.terms, other.terms))

    def __rmul__(self, other) -> "TorusElement":
        if isinstance(other, (int, TLaurent)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "TorusElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def shift(self, halfpow: int) -> "TorusElement":
        return TorusElement(self.algebra, {m: c.shift(halfpow) for m, c in self.terms.items()})

    def inverse(self) -> "TorusElement":
        """Inverse of a single term t^{h/2}[m]; other elements are not units."""
        if len(self.terms) != 1:
            raise ValidationError("only single-term elements are invertible in the torus")
        (m, c), = self.terms.items()
        h = c.single_power()
        if h is None:
            raise ValidationError(f"coefficient {c} is not a unit")
        return TorusElement(self.algebra, {m.inverse(): TLaurent.monomial(-h)})

    def bar(self) -> "TorusElement":
        return TorusElement(self.algebra, {m: c.bar() for m, c in self.terms.items()})

    def truncate(self, window) -> "TorusElement":
        allowed = set(window)
        return TorusElement(self.algebra, {m: c for m, c in self.terms.items()
                                           if all((i, r) in allowed for i, r, _ in m.items)})

    def ev_t1(self) -> Dict[YMonomial, int]:
        out = {}
        for m, c in self.terms.items():
            v = c.at_one()
            if v:
                out[m] = v
        return out

    def coefficient(self, m: YMonomial) -> TLaurent:
        return self.terms.get(m, TLaurent())

    def dominant_part(self) -> "TorusElement":
        return TorusElement(self.algebra, {m: c for m, c in self.terms.items() if m.is_dominant()})

    def monomials(self):
        return list(self.terms)

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-m.degree(), m.items)):
            c = self.terms[m]
            cs = str(c)
            if cs == "1":
                parts.append(f"[{m}]")
            else:
                parts.append(f"({cs})[{m}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TorusElement({self})"


# --- products --------------------------------------------------------------------

_VECTOR_THRESHOLD = 4000
_CHUNK = 1 << 22


def _expand(terms: Mapping, where: Dict[Tuple[int, int], int], width: int):
    rows, powers, coeffs = [], [], []
    for m, c in terms.items():
        v = [0] * width
        for i, r, e in m.items:
            v[where[(i, r)]] = e
        for h, x in c.c.items():
            rows.append(v)
            powers.append(h)
            coeffs.append(x)
    return rows, powers, coeffs


def _product_terms(algebra: "QuantumTorus", left: Mapping, right: Mapping) -> Dict[YMonomial, TLaurent]:
    """Twisted product of two term dictionaries, [m1][m2] = t^{N/2}[m1 m2]."""
    positions = sorted({(i, r) for m in (*left, *right) for i, r, _ in m.items})
    width = len(positions)
    where = {p: k for k, p in enumerate(positions)}
    g = algebra.gamma
    gram = [[g(i, r, j, s) for j, s in positions] for i, r in positions]
    a_rows, a_pow, a_cf = _expand(left, where, width)
    b_rows, b_pow, b_cf = _expand(right, where, width)
    if len(a_rows) * len(b_rows) < _VECTOR_THRESHOLD:
        return _product_small(positions, gram, a_rows, a_pow, a_cf, b_rows, b_pow, b_cf)
    return _product_vector(positions, gram, a_rows, a_pow, a_cf, b_rows, b_pow, b_cf)


def _to_monomial(positions, key) -> YMonomial:
    nz = [k for k, e in enumerate(key) if e]
    return YMonomial._raw(tuple((positions[k][0], positions[k][1], key[k]) for k in nz))


def _product_small(positions, gram, a_rows, a_pow, a_cf, b_rows, b_pow, b_cf):
    acc: Dict[Tuple[int, ...], Dict[int, int]] = {}
    cols = list(zip(*gram)) if gram else []
    for v1, h1, x in zip(a_rows, a_pow, a_cf):
        form = [sum(map(mul, v1, col)) for col in cols]
        for v2, h2, y in zip(b_rows, b_pow, b_cf):
            k = h1 + h2 + sum(map(mul, form, v2))
            d = acc.setdefault(tuple(map(add, v1, v2)), {})
            d[k] = d.get(k, 0) + x * y
    return {_to_monomial(positions, key): TLaurent(d) for key, d in acc.items()}


def _pack(keys: np.ndarray, lo: np.ndarray, radix: np.ndarray) -> np.ndarray:
    """Encode bounded integer rows exactly as a few int64 columns."""
    acc, place, out = None, 1, []
    for k in range(keys.shape[1]):
        if place * int(radix[k]) >= (1 << 62):
            out.append(acc)
            acc, place = None, 1
        term = (keys[:, k].astype(np.int64) - int(lo[k])) * place
        acc = term if acc is None else acc + term
        place *= int(radix[k])
    if acc is not None:
        out.append(acc)
    if not out:
        out.append(np.zeros(len(keys), dtype=np.int64))
    return np.stack(out, axis=1)


def _group(columns: np.ndarray, weights: np.ndarray):
    """Sort rows of an int64 matrix, returning (first-row indices, summed weights)."""
    if len(columns) == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    order = np.lexsort(columns.T[::-1])
    sorted_cols = columns[order]
    fresh = np.ones(len(order), dtype=bool)
    fresh[1:] = np.any(sorted_cols[1:] != sorted_cols[:-1], axis=1)
    starts = np.flatnonzero(fresh)
    return order[starts], np.add.reduceat(weights[order], starts)


class DenseProduct:
    """Unreduced terms of a product of two elements as exponent rows over fixed positions."""

    def __init__(self, algebra: "QuantumTorus", positions, left: Mapping, right: Mapping):
        self.positions = list(positions)
        where = {p: k for k, p in enumerate(self.positions)}
        width = len(self.positions)
        g = algebra.gamma
        G = np.asarray([[g(i, r, j, s) for j, s in self.positions] for i, r in self.positions],
                       dtype=np.int64).reshape(width, width)
        a_rows, a_pow, a_cf = _expand(left, where, width)
        b_rows, b_pow, b_cf = _expand(right, where, width)
        A = np.asarray(a_rows, dtype=np.int64).reshape(len(a_rows), width)
        B = np.asarray(b_rows, dtype=np.int64).reshape(len(b_rows), width)
        shift = (A @ G) @ B.T + np.asarray(a_pow, dtype=np.int64)[:, None] + np.asarray(b_pow, dtype=np.int64)[None, :]
        self.keys = (A[:, None, :] + B[None, :, :]).reshape(-1, width).astype(np.int16)
        self.powers = shift.ravel()
        self.weights = (np.asarray(a_cf, dtype=np.int64)[:, None]
                        * np.asarray(b_cf, dtype=np.int64)[None, :]).ravel()

    def coefficient(self, m: YMonomial) -> TLaurent:
        target = np.zeros(len(self.positions), dtype=np.int16)
        where = {p: k for k, p in enumerate(self.positions)}
        for i, r, e in m.items:
            if (i, r) not in where:
                return TLaurent()
            target[where[(i, r)]] = e
        hit = np.all(self.keys == target, axis=1)
        out: Dict[int, int] = {}
        for h, w in zip(self.powers[hit].tolist(), self.weights[hit].tolist()):
            out[h] = out.get(h, 0) + w
        return TLaurent(out)


def dense_combination_vanishes(parts) -> bool:
    """Whether sum of sign * t^{shift/2} * product over (DenseProduct, shift, sign) is zero."""
    keys = np.concatenate([d.keys for d, _, _ in parts])
    powers = np.concatenate([d.powers + shift for d, shift, _ in parts])
    weights = np.concatenate([d.weights * sign for d, _, sign in parts])
    if len(keys) == 0:
        return True
    lo = keys.min(axis=0)
    radix = keys.max(axis=0).astype(np.int64) - lo + 1
    packed = _pack(keys, lo, radix)
    columns = np.concatenate([packed, powers[:, None]], axis=1)
    _, sums = _group(columns, weights)
    return not np.any(sums)


def _reduce(records, weights):
    lo = records.min(axis=0)
    radix = records.max(axis=0).astype(np.int64) - lo + 1
    first, sums = _group(_pack(records, lo, radix), weights)
    return records[first], sums
def _product_vector(positions, gram, a_rows, a_pow, a_cf, b_rows, b_pow, b_cf):
    A = np.asarray(a_rows, dtype=np.int64).reshape(len(a_rows), len(positions))
    B = np.asarray(b_rows, dtype=np.int64).reshape(len(b_rows), len(positions))
    G = np.asarray(gram, dtype=np.int64).reshape(len(positions), len(positions))
    shift = (A @ G) @ B.T + np.asarray(a_pow)[:, None] + np.asarray(b_pow)[None, :]
    weight = np.asarray(a_cf, dtype=np.int64)[:, None] * np.asarray(b_cf, dtype=np.int64)[None, :]
    step = max(1, _CHUNK // max(1, len(b_rows) * (len(positions) + 1)))
    parts, part_weights = [], []
    for lo in range(0, len(a_rows), step):
        keys = A[lo:lo + step, None, :] + B[None, :, :]
        rec = np.concatenate([keys, shift[lo:lo + step, :, None]], axis=2).reshape(-1, len(positions) + 1)
        u, w = _reduce(rec, weight[lo:lo + step].ravel())
        parts.append(u)
        part_weights.append(w)
    uniq, sums = _reduce(np.concatenate(parts), np.concatenate(part_weights))
    out: Dict[YMonomial, Dict[int, int]] = {}
    for row, w in zip(uniq.tolist(), sums.tolist()):
        if w:
            d = out.setdefault(_to_monomial(positions, row[:-1]), {})
            d[row[-1]] = w
    return {m: TLaurent(d) for m, d in out.items()}
