"""Compatible pairs, their mutations and quantum seeds evaluated in a Y-torus.

Matrices are stored as nested tuples indexed by positions in ``J`` (rows) and
``Je`` (columns of the exchange matrix); vertex labels are arbitrary hashables.
Cluster variables never live in a skew field: a seed carries the images of its
variables in a concrete :class:`~qtgroth.torus.QuantumTorus`, and exchange
relations are checked there without division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, List, Mapping, Optional, Sequence, Set, Tuple

from .cartan import CartanData, fundamental_weight, pairing, weyl_apply
from .errors import ConsistencyError, ValidationError
from .torus import TorusElement

__all__ = [
    "CompatiblePair",
    "ToricFrame",
    "QuantumSeed",
    "ExchangeData",
    "initial_pair",
    "pair_of_quiver",
    "pair_arrows",
    "btilde_quiver",
    "mutate_pair",
    "frame_eval",
    "initial_seed",
    "mutate_seed",
    "exchange_rhs",
]

Matrix = Tuple[Tuple[int, ...], ...]


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> List[List[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def _transpose(a: Sequence[Sequence[int]]) -> List[List[int]]:
    return [list(c) for c in zip(*a)]


def _freeze(a) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in a)


@dataclass(frozen=True)
class CompatiblePair:
    J: Tuple[Hashable, ...]
    Je: Tuple[Hashable, ...]
    Lambda: Matrix = field(repr=False)
    Btilde: Matrix = field(repr=False)
    d: Tuple[int, ...] = ()

    @property
    def Jf(self) -> Tuple[Hashable, ...]:
        ex = set(self.Je)
        return tuple(v for v in self.J if v not in ex)

    def index(self, v: Hashable) -> int:
        try:
            return self.J.index(v)
        except ValueError:
            raise ValidationError(f"{v!r} is not a vertex of the pair") from None

    def column(self, k: Hashable) -> int:
        try:
            return self.Je.index(k)
        except ValueError:
            raise ValidationError(f"{k!r} is not an exchangeable vertex") from None

    def lam(self, a: Hashable, b: Hashable) -> int:
        return self.Lambda[self.index(a)][self.index(b)]

    def b(self, a: Hashable, k: Hashable) -> int:
        return self.Btilde[self.index(a)][self.column(k)]

    def bvec(self, k: Hashable) -> Tuple[int, ...]:
        c = self.column(k)
        return tuple(row[c] for row in self.Btilde)

    def compatibility_product(self) -> List[List[int]]:
        """The Je x J matrix with entries sum_k b_{k i} lambda_{k j}."""
        return _matmul(_transpose(self.Btilde), self.Lambda)

    def check(self) -> Tuple[int, ...]:
        """Verify compatibility; returns the diagonal vector d."""
        n = len(self.J)
        for row in self.Lambda:
            if len(row) != n:
                raise ValidationError("Lambda must be square over J")
        if any(self.Lambda[a][b] != -self.Lambda[b][a] for a in range(n) for b in range(n)):
            raise ConsistencyError("Lambda is not skew-symmetric")
        prod = self.compatibility_product()
        d = []
        for c, k in enumerate(self.Je):
            kk = self.index(k)
            for j in range(n):
                if j != kk and prod[c][j] != 0:
                    raise ConsistencyError(
                        f"pair is not compatible at ({k!r}, {self.J[j]!r}): {prod[c][j]}")
            if prod[c][kk] <= 0:
                raise ConsistencyError(f"pair is not compatible: d at {k!r} is {prod[c][kk]}")
            d.append(prod[c][kk])
        return tuple(d)

    def relabel(self, mapping: Mapping[Hashable, Hashable]) -> "CompatiblePair":
        return CompatiblePair(tuple(mapping[v] for v in self.J), tuple(mapping[v] for v in self.Je),
                              self.Lambda, self.Btilde, self.d)


def _with_d(J, Je, Lam, B) -> CompatiblePair:
    pair = CompatiblePair(tuple(J), tuple(Je), _freeze(Lam), _freeze(B))
    d = pair.check()
    return CompatiblePair(pair.J, pair.Je, pair.Lambda, pair.Btilde, d)


def initial_pair(cartan: CartanData, word: Sequence[int],
                 labels: Optional[Sequence[Hashable]] = None) -> CompatiblePair:
    """The pair attached to a reduced word of the longest element."""
    word = tuple(word)
    ell = len(word)
    if ell != cartan.num_positive_roots():
        raise ValidationError(f"word of length {ell} is not a reduced word of the longest element")
    from .cartan import roots_of_word
    roots_of_word(cartan, word)
    labels = tuple(labels) if labels is not None else tuple(range(1, ell + 1))
    if len(labels) != ell or len(set(labels)) != ell:
        raise ValidationError("labels must be distinct and match the word length")

    plus = []
    for s in range(ell):
        nxt = next((t for t in range(s + 1, ell) if word[t] == word[s]), ell)
        plus.append(nxt)
    # w_{<=s} varpi_{i_s}
    moved = []
    for s in range(ell):
        w = fundamental_weight(cartan, word[s])
        for i in reversed(word[:s + 1]):
            w = weyl_apply(cartan, i, w)
        moved.append(w)
    fund = [fundamental_weight(cartan, i) for i in word]
    Lam = [[0] * ell for _ in range(ell)]
    for s in range(ell):
        for t in range(s + 1, ell):
            val = pairing(cartan, fund[s] - moved[s], fund[t] + moved[t])
            Lam[s][t], Lam[t][s] = val, -val
    ex = [t for t in range(ell) if plus[t] < ell]
    B = [[0] * len(ex) for _ in range(ell)]
    for s in range(ell):
        for c, t in enumerate(ex):
            cst = cartan.c(word[s], word[t])
            if t == plus[s]:
                B[s][c] = 1
            elif s == plus[t]:
                B[s][c] = -1
            elif s < t < plus[s] < plus[t]:
                B[s][c] = cst
            elif t < s < plus[t] < plus[s]:
                B[s][c] = -cst
    pair = _with_d(labels, [labels[t] for t in ex], Lam, B)
    expected = tuple(2 * cartan.ri(word[t]) for t in ex)
    if pair.d != expected:
        raise ConsistencyError(f"compatibility diagonal {pair.d} differs from {expected}")
    return pair


def pair_of_quiver(quiver) -> CompatiblePair:
    """Initial pair of a (twisted) AR quiver, indexed by its vertices."""
    from .quivers import TwistedARQuiver, compatible_reading, reading_order
    plain = quiver.bar if isinstance(quiver, TwistedARQuiver) else quiver
    order = reading_order(plain)
    word = compatible_reading(plain, order)
    return initial_pair(plain.cartan, word, order)


def pair_arrows(pair: CompatiblePair) -> Set[Tuple[Hashable, Hashable]]:
    """Arrows a -> b with b_{a,b} = 1 or b_{b,a} = -1."""
    out = set()
    ex = set(pair.Je)
    for a in pair.J:
        for b in pair.J:
            if a == b:
                continue
            if (b in ex and pair.b(a, b) > 0) or (a in ex and pair.b(b, a) < 0):
                out.add((a, b))
    return out


def btilde_quiver(tw) -> Set[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Exchange quiver of a twisted AR quiver from its four explicit arrow families."""
    from .quivers import TwistedARQuiver
    if not isinstance(tw, TwistedARQuiver):
        raise ValidationError("btilde_quiver needs a twisted AR quiver")
    n = tw.n
    cartan = tw.cartan_B
    verts = set(tw.bar.vertices)
    ex = set(tw.exchangeable())
    arrows = set()
    for (i, r) in verts:
        if (i, r - 2 * cartan.ri(i)) in verts:
            arrows.add(((i, r), (i, r - 2 * cartan.ri(i))))
        if i <= n - 1:
            for j in (i - 1, i + 1):
                if 1 <= j <= n - 1 and (j, r + 2) in ex:
                    arrows.add(((i, r), (j, r + 2)))
        if i == n - 1 and (n, r + 1) in ex:
            arrows.add(((i, r), (n, r + 1)))
        if i == n and (n - 1, r + 3) in ex:
            arrows.add(((i, r), (n - 1, r + 3)))
    computed = pair_arrows(pair_of_quiver(tw))
    if computed != arrows:
        missing = sorted(arrows - computed)
        extra = sorted(computed - arrows)
        raise ConsistencyError(f"exchange quiver mismatch: missing {missing}, unexpected {extra}")
    return arrows


def mutate_pair(pair: CompatiblePair, k: Hashable) -> CompatiblePair:
    if k not in pair.Je:
        raise ValidationError(f"cannot mutate at frozen or unknown vertex {k!r}")
    n, m = len(pair.J), len(pair.Je)
    kk, kc = pair.index(k), pair.column(k)
    E = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        E[i][kk] = -1 if i == kk else max(0, -pair.Btilde[i][kc])
    F = [[int(i == j) for j in range(m)] for i in range(m)]
    for j in range(m):
        F[kc][j] = -1 if j == kc else max(0, pair.Btilde[kk][j])
    Lam = _matmul(_matmul(_transpose(E), pair.Lambda), E)
    B = _matmul(_matmul(E, pair.Btilde), F)
    return _with_d(pair.J, pair.Je, Lam, B)


# --- frames and seeds ------------------------------------------------------------

@dataclass(frozen=True)
class ToricFrame:
    """M(c) = X^{eta c} over the initial torus; LambdaM is the induced form."""

    eta: Matrix
    LambdaM: Matrix

    @classmethod
    def identity(cls, pair: CompatiblePair) -> "ToricFrame":
        n = len(pair.J)
        return cls(_freeze([[int(i == j) for j in range(n)] for i in range(n)]), pair.Lambda)

    def apply(self, c: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(row[j] * c[j] for j in range(len(c))) for row in self.eta)


def _ordered_power(form: Matrix, c: Sequence[int]) -> int:
    return sum(c[s] * c[t] * form[s][t] for s in range(len(c)) for t in range(s + 1, len(c)))


def frame_eval(form: Matrix, images: Sequence[TorusElement], c: Sequence[int]) -> TorusElement:
    """Image of M(c) = v^{-1/2 sum_{s<t} c_s c_t L_st} X_1^{c_1} ... X_l^{c_l} with v^{1/2} -> t^{-1/2}.

    Negative entries need invertible (single-term) images.
    """
    if len(c) != len(images):
        raise ValidationError("coefficient vector and images differ in length")
    if not images:
        raise ValidationError("no basis images supplied")
    out = images[0].algebra.one()
    for x, e in zip(images, c):
        if e:
            out = out * (x ** e)
    return out.shift(_ordered_power(form, c))


@dataclass(frozen=True)
class QuantumSeed:
    pair: CompatiblePair
    variables: Tuple[TorusElement, ...] = field(repr=False)
    labels: Tuple[object, ...] = ()

    def variable(self, v: Hashable) -> TorusElement:
        return self.variables[self.pair.index(v)]

    def label(self, v: Hashable):
        return self.labels[self.pair.index(v)] if self.labels else None

    @property
    def frame(self) -> ToricFrame:
        n = len(self.pair.J)
        return ToricFrame(_freeze([[int(i == j) for j in range(n)] for i in range(n)]), self.pair.Lambda)


def initial_seed(pair: CompatiblePair, images: Mapping[Hashable, TorusElement],
                 labels: Optional[Mapping[Hashable, object]] = None) -> QuantumSeed:
    missing = [v for v in pair.J if v not in images]
    if missing:
        raise ValidationError(f"no image for vertices {missing}")
    return QuantumSeed(pair, tuple(images[v] for v in pair.J),
                       tuple(labels[v] for v in pair.J) if labels else ())


@dataclass(frozen=True)
class ExchangeData:
    k: Hashable
    plus: Tuple[int, ...]       # sum over b_jk > 0 of b_jk e_j
    minus: Tuple[int, ...]      # sum over b_jk < 0 of -b_jk e_j
    plus_power: int             # Lambda_M(e_k, plus)
    minus_power: int            # Lambda_M(e_k, minus)


def exchange_rhs(seed: QuantumSeed, data: ExchangeData) -> TorusElement:
    """Image of X_k * X'_k = v^{L(e_k,b+)/2} M(b+) + v^{L(e_k,b-)/2} M(b-)."""
    form = seed.pair.Lambda
    plus = frame_eval(form, seed.variables, data.plus).shift(-data.plus_power)
    minus = frame_eval(form, seed.variables, data.minus).shift(-data.minus_power)
    return plus + minus


def mutate_seed(seed: QuantumSeed, k: Hashable,
                new_variable: Optional[TorusElement] = None,
                new_label=None) -> Tuple[QuantumSeed, ExchangeData]:
    """Mutate at k; the new variable is supplied or obtained by dividing by a unit X_k."""
    pair = seed.pair
    if k not in pair.Je:
        raise ValidationError(f"cannot mutate at frozen or unknown vertex {k!r}")
    col = pair.bvec(k)
    kk = pair.index(k)
    plus = tuple(max(0, b) for b in col)
    minus = tuple(max(0, -b) for b in col)
    row = pair.Lambda[kk]
    data = ExchangeData(k, plus, minus,
                        sum(x * y for x, y in zip(row, plus)),
                        sum(x * y for x, y in zip(row, minus)))
    if new_variable is None:
        xk = seed.variables[kk]
        if len(xk.terms) != 1:
            raise ValidationError(f"variable at {k!r} is not a unit; supply the mutated variable")
        new_variable = xk.inverse() * exchange_rhs(seed, data)
    variables = list(seed.variables)
    variables[kk] = new_variable
    labels = list(seed.labels)
    if labels:
        labels[kk] = new_label
    return QuantumSeed(mutate_pair(pair, k), tuple(variables), tuple(labels)), data
