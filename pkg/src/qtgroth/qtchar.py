"""q-characters of KR modules, their t-lifts, standard (q,t)-characters and the
Kazhdan-Lusztig algorithm for simple (q,t)-characters.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from .cartan import CartanData
from .errors import ConsistencyError, IdentityViolation, ValidationError
from .torus import (DenseProduct, QuantumTorus, TLaurent, TorusElement, YMonomial, a_monomial,
                    dense_combination_vanishes)

__all__ = [
    "KRLabel",
    "CharacterTable",
    "KLResult",
    "kr_monomial",
    "fm_character",
    "qchar_kr",
    "ft_lift",
    "kr_lift",
    "et_standard",
    "dominant_closure",
    "kl_decompose",
    "decompose_standard",
    "bar_transition",
    "verify_tsystem",
    "s_term_factors",
    "weight_height",
]


@dataclass(frozen=True)
class KRLabel:
    i: int
    k: int
    r: int

    def monomial(self, cartan: CartanData) -> YMonomial:
        return kr_monomial(cartan, self.i, self.k, self.r)


def kr_monomial(cartan: CartanData, i: int, k: int, r: int) -> YMonomial:
    """m^{(i)}_{k,r} = Y_{i,r} Y_{i,r+2r_i} ... (k factors)."""
    if k < 0:
        raise ValidationError(f"KR length must be nonnegative, got {k}")
    if k == 0 or i == 0:
        return YMonomial.one()
    cartan.check_node(i)
    step = 2 * cartan.ri(i)
    return YMonomial({(i, r + step * s): 1 for s in range(k)})


@dataclass(frozen=True)
class CharacterTable:
    label: object
    value: Mapping[YMonomial, int] = field(repr=False)

    def monomials(self) -> List[YMonomial]:
        return sorted(self.value)

    def dominant(self) -> List[YMonomial]:
        return sorted(m for m in self.value if m.is_dominant())

    def is_thin(self) -> bool:
        return all(v == 1 for v in self.value.values())

    def __len__(self) -> int:
        return len(self.value)


# --- Frenkel-Mukhin style expansion ---------------------------------------------

def _strings(values: Dict[int, int], step: int) -> List[Tuple[int, int]]:
    """Split a multiset of spectral values into strings (start, length) in general position."""
    pool = dict(values)
    out = []
    while pool:
        a = min(pool)
        length = 0
        while pool.get(a + step * length, 0) > 0:
            pool[a + step * length] -= 1
            if pool[a + step * length] == 0:
                del pool[a + step * length]
            length += 1
        out.append((a, length))
    return out


def _sl2_expansion(cartan: CartanData, j: int, jpart: Dict[int, int]) -> Dict[YMonomial, Tuple[int, int]]:
    """Node-j string character as {product of A_j^{-1}: (multiplicity, number of factors)}."""
    d = cartan.ri(j)
    result = {YMonomial.one(): (1, 0)}
    for a, k in _strings(jpart, 2 * d):
        chain = [YMonomial.one()]
        acc = YMonomial.one()
        for s in range(k):
            acc = acc / a_monomial(cartan, j, a + (2 * k - 1 - 2 * s) * d)
            chain.append(acc)
        nxt: Dict[YMonomial, Tuple[int, int]] = {}
        for m, (c, depth) in result.items():
            for length, x in enumerate(chain):
                key = m * x
                old = nxt.get(key, (0, depth + length))[0]
                nxt[key] = (old + c, depth + length)
        result = nxt
    return result


def fm_character(cartan: CartanData, highest: YMonomial, cap: int = 200000) -> Dict[YMonomial, int]:
    """Expand a dominant monomial node by node until every monomial is covered.

    The result is the q-character when the module is special (a unique
    dominant monomial), which holds for KR modules.
    """
    if not highest.is_dominant():
        raise ValidationError(f"{highest} is not dominant")
    nodes = list(cartan.nodes)
    coeff: Dict[YMonomial, int] = {}
    colour = {j: defaultdict(int) for j in nodes}
    depth = {highest: 0}
    frontier: Dict[int, set] = defaultdict(set)
    frontier[0].add(highest)
    while frontier:
        level = min(frontier)
        for m in sorted(frontier.pop(level)):
            if len(coeff) >= cap:
                raise ConsistencyError(f"character expansion exceeded {cap} monomials")
            s = 1 if m == highest else max(colour[j][m] for j in nodes)
            coeff[m] = s
            exps = m.exps()
            for j in nodes:
                jpart = {r: e for (i, r), e in exps.items() if i == j}
                if any(e < 0 for e in jpart.values()):
                    if colour[j][m] < s:
                        raise ConsistencyError(
                            f"monomial {m} is not covered by the node-{j} strings")
                    continue
                extra = s - colour[j][m]
                if extra <= 0:
                    continue
                for a, (c, steps) in _sl2_expansion(cartan, j, jpart).items():
                    mm = m * a
                    colour[j][mm] += extra * c
                    if mm not in depth:
                        depth[mm] = level + steps
                        frontier[depth[mm]].add(mm)
    return coeff


def qchar_kr(cartan: CartanData, label: KRLabel) -> CharacterTable:
    """q-character of the KR module W^{(i)}_{k,r}; checked thin and affine-minuscule."""
    if label.k < 0:
        raise ValidationError("KR length must be nonnegative")
    high = kr_monomial(cartan, label.i, label.k, label.r)
    if high.is_one():
        return CharacterTable(label, {high: 1})
    chi = fm_character(cartan, high)
    fat = [m for m, c in chi.items() if c != 1]
    if fat:
        raise ConsistencyError(f"KR character {label} is not thin: {fat[0]} has multiplicity {chi[fat[0]]}")
    dom = [m for m in chi if m.is_dominant()]
    if dom != [high]:
        raise ConsistencyError(f"KR character {label} has dominant monomials {dom}")
    return CharacterTable(label, chi)


# --- t-lifts and standard modules ---------------------------------------------

def ft_lift(torus: QuantumTorus, table: CharacterTable) -> TorusElement:
    """Sum of commutative monomials over a thin character."""
    return torus.element({m: c for m, c in table.value.items()})


_KR_CACHE: Dict[Tuple[int, str, int, int, int], Dict[YMonomial, int]] = {}


def _shift(m: YMonomial, r: int) -> YMonomial:
    return YMonomial._raw(tuple((i, s + r, e) for i, s, e in m.items))


def kr_lift(torus: QuantumTorus, i: int, k: int, r: int) -> TorusElement:
    """F_t(m^{(i)}_{k,r}) as the lift of the thin KR character (memoised up to shift)."""
    if k == 0 or i == 0:
        return torus.one()
    cartan = torus.cartan
    key = (id(torus), cartan.kind, cartan.n, i, k)
    if key not in _KR_CACHE:
        _KR_CACHE[key] = qchar_kr(cartan, KRLabel(i, k, 0)).value
    return torus.element({_shift(m, r): c for m, c in _KR_CACHE[key].items()})


def et_standard(torus: QuantumTorus, m: YMonomial) -> TorusElement:
    """Ordered product of fundamental lifts over increasing r, normalised at m."""
    if not m.is_dominant():
        raise ValidationError(f"{m} is not dominant")
    out = torus.one()
    for i, r, e in sorted(m.items, key=lambda x: (x[1], x[0])):
        f = kr_lift(torus, i, 1, r)
        for _ in range(e):
            out = out * f
    lead = out.coefficient(m).single_power()
    if lead is None:
        raise ConsistencyError(f"leading coefficient of E_t({m}) is not a power of t")
    return out.shift(-lead)


_ET_CACHE: Dict[Tuple[int, YMonomial], TorusElement] = {}


def _et(torus: QuantumTorus, m: YMonomial) -> TorusElement:
    key = (id(torus), m)
    if key not in _ET_CACHE:
        _ET_CACHE[key] = et_standard(torus, m)
    return _ET_CACHE[key]


def weight_height(cartan: CartanData, m: YMonomial) -> Fraction:
    """Height of the weight of m; strictly monotone along the Nakajima order."""
    from .cartan import WeightVector, _solve_root_coords
    w = [0] * cartan.n
    for i, _, e in m.items:
        w[i - 1] += e
    return sum(_solve_root_coords(cartan, WeightVector(tuple(w))))


def _order_key(cartan: CartanData, m: YMonomial):
    return (weight_height(cartan, m), m.items)


def dominant_closure(torus: QuantumTorus, m: YMonomial, window=None, cap: int = 5000) -> List[YMonomial]:
    """Dominant monomials reachable through standard characters, sorted increasingly."""
    if window is not None and not window.contains(m):
        raise ValidationError(f"{m} is not in the window")
    found = {m}
    pending = [m]
    while pending:
        x = pending.pop()
        for mm in _et(torus, x).terms:
            if mm.is_dominant() and mm not in found:
                if window is not None and not window.contains(mm):
                    raise ConsistencyError(f"closure of {m} leaves the window at {mm}")
                found.add(mm)
                pending.append(mm)
                if len(found) > cap:
                    raise ConsistencyError(f"dominant closure of {m} exceeded {cap} monomials")
    return sorted(found, key=lambda x: _order_key(torus.cartan, x))


@dataclass
class KLResult:
    m: YMonomial
    Lt: TorusElement
    P: Dict[YMonomial, TLaurent]
    supportWindow: object = None

    def nontrivial(self) -> Dict[YMonomial, TLaurent]:
        return {k: v for k, v in self.P.items() if k != self.m}


_LT_CACHE: Dict[Tuple[int, YMonomial], Tuple[TorusElement, Dict[YMonomial, TLaurent]]] = {}


def _peel_polynomial(c: TLaurent) -> TLaurent:
    """The part of c in t^{-1/2}Z[t^{-1/2}] not explained by a bar-invariant summand."""
    keys = set(c.c) | {-h for h in c.c}
    return TLaurent({h: c.c.get(h, 0) - c.c.get(-h, 0) for h in keys if h < 0})


def _simple(torus: QuantumTorus, m: YMonomial) -> Tuple[TorusElement, Dict[YMonomial, TLaurent]]:
    key = (id(torus), m)
    if key in _LT_CACHE:
        return _LT_CACHE[key]
    closure = dominant_closure(torus, m)
    y = _et(torus, m)
    P: Dict[YMonomial, TLaurent] = {m: TLaurent.monomial(0)}
    for lower in reversed(closure[:-1]):
        corr = _peel_polynomial(y.coefficient(lower))
        if corr.is_zero():
            continue
        if any(h % 2 for h in corr.c):
            raise ConsistencyError(f"non-integral power of t in the KL polynomial at {lower}: {corr}")
        P[lower] = corr
        y = y - _simple(torus, lower)[0] * corr
    if not y.is_bar_invariant():
        raise ConsistencyError(f"L_t({m}) is not bar-invariant")
    _LT_CACHE[key] = (y, P)
    return y, P


def kl_decompose(torus: QuantumTorus, m: YMonomial, window=None) -> KLResult:
    """Simple (q,t)-character L_t(m) and the polynomials P with E_t = sum P L_t."""
    if not m.is_dominant():
        raise ValidationError(f"{m} is not dominant")
    if window is not None:
        dominant_closure(torus, m, window)
    Lt, P = _simple(torus, m)
    return KLResult(m, Lt, dict(P), window)


def decompose_standard(torus: QuantumTorus, m: YMonomial) -> Dict[YMonomial, int]:
    """Multiplicities of simple modules in the standard module at t = 1."""
    return {k: v.at_one() for k, v in kl_decompose(torus, m).P.items() if v.at_one()}


def bar_transition(torus: QuantumTorus, m: YMonomial) -> Dict[Tuple[YMonomial, YMonomial], TLaurent]:
    """Matrix r with bar(E_t(a)) = sum_b r[a, b] E_t(b) over the dominant closure of m."""
    closure = dominant_closure(torus, m)
    out: Dict[Tuple[YMonomial, YMonomial], TLaurent] = {}
    for a in closure:
        x = _et(torus, a).bar()
        for b in reversed(closure):
            c = x.coefficient(b)
            if not c.is_zero():
                out[(a, b)] = c
                x = x - _et(torus, b) * c
        if any(mm.is_dominant() for mm in x.terms):
            raise ConsistencyError(f"bar(E_t({a})) does not expand in the standard basis")
    return out


# --- quantum T-system ------------------------------------------------------------

def s_term_factors(cartan: CartanData, i: int, k: int, r: int) -> List[Tuple[int, int, int]]:
    """KR labels (node, length, start) whose product forms the second T-system term."""
    n = cartan.n
    if cartan.kind != "B":
        return [(j, k, r + 1) for j in cartan.neighbours(i)]
    if i <= n - 2:
        return [(i - 1, k, r + 2), (i + 1, k, r + 2)]
    if i == n - 1:
        return [(n - 2, k, r + 2), (n, 2 * k, r + 1)]
    half, odd = divmod(k, 2)
    return [(n - 1, half + odd, r + 1), (n - 1, half, r + 3)]


def _dense(torus: QuantumTorus, positions, labels) -> DenseProduct:
    factors = [kr_lift(torus, *lab) for lab in labels] + [torus.one()] * (2 - len(labels))
    return DenseProduct(torus, positions, factors[0].terms, factors[1].terms)


def verify_tsystem(torus: QuantumTorus, i: int, k: int, r: int) -> Dict[str, int]:
    """Check the quantum T-system at (i, k, r); returns the exponents as half-powers of t.

    The identity checked, term by term, is
    F(W_{k,r}) F(W_{k,r+2r_i}) = t^{alpha/2} F(W_{k+1,r}) F(W_{k-1,r+2r_i}) + t^{beta/2} S.
    """
    cartan = torus.cartan
    cartan.check_node(i)
    if k < 1:
        raise ValidationError(f"T-system length must be positive, got {k}")
    step = 2 * cartan.ri(i)
    lhs_labels = [(i, k, r), (i, k, r + step)]
    first_labels = [(i, k + 1, r), (i, k - 1, r + step)]
    second_labels = s_term_factors(cartan, i, k, r)
    lifts = [kr_lift(torus, *lab) for lab in lhs_labels + first_labels + second_labels]
    positions = sorted({(a, b) for f in lifts for m in f.terms for a, b, _ in m.items})
    lhs = _dense(torus, positions, lhs_labels)
    first = _dense(torus, positions, first_labels)
    second = _dense(torus, positions, second_labels)

    lead = kr_monomial(cartan, i, k, r) * kr_monomial(cartan, i, k, r + step)
    a_lhs, a_first = lhs.coefficient(lead).single_power(), first.coefficient(lead).single_power()
    if a_lhs is None or a_first is None:
        raise IdentityViolation(f"T-system at {(i, k, r)}: leading coefficient is not a power of t")
    alpha = a_lhs - a_first
    top = YMonomial.one()
    for lab in second_labels:
        top = top * kr_monomial(cartan, *lab)
    residual = lhs.coefficient(top) - first.coefficient(top).shift(alpha)
    b_rest, b_second = residual.single_power(), second.coefficient(top).single_power()
    if b_rest is None or b_second is None:
        raise IdentityViolation(f"T-system at {(i, k, r)}: second term does not match")
    beta = b_rest - b_second
    if not dense_combination_vanishes([(lhs, 0, 1), (first, alpha, -1), (second, beta, -1)]):
        raise IdentityViolation(f"T-system at {(i, k, r)} fails beyond the leading terms")
    return {"alpha": alpha, "beta": beta}
