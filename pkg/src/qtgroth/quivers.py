"""Dynkin quivers of type A, (combinatorial) AR quivers and twisted AR quivers.

Spectral coordinates of quiver vertices are stored doubled, so the half-integer
columns created by the twisting procedure remain integers.  A vertex of a
spectrally labelled quiver is the pair ``(residue, doubled column)``; vertices
of combinatorial quivers built from a word are keyed by their root written in
the simple-root basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .cartan import CartanData, build_cartan, root_coords, roots_of_word
from .errors import ConsistencyError, ValidationError

__all__ = [
    "QuiverSpec",
    "LabelledARQuiver",
    "TwistedARQuiver",
    "MonomialWindow",
    "CommClass",
    "ar_quiver",
    "comb_ar_quiver",
    "twist",
    "compatible_reading",
    "k_of",
    "window",
    "order_ops",
    "reflect_root",
    "adapted_word",
    "all_orientations",
    "twisted_convexity_violations",
    "twisted_xi_values",
]

Vertex = Hashable


# --- Dynkin quivers ------------------------------------------------------------

@dataclass(frozen=True)
class QuiverSpec:
    """An orientation of the A_n Dynkin diagram with a height function."""

    n: int
    arrows: FrozenSet[Tuple[int, int]]
    xi: Tuple[int, ...]

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[Tuple[int, int]], anchor: int = 0) -> "QuiverSpec":
        arrows = frozenset((int(a), int(b)) for a, b in arrows)
        if n < 1:
            raise ValidationError("quiver rank must be positive")
        for i in range(1, n):
            fw, bw = (i, i + 1) in arrows, (i + 1, i) in arrows
            if fw == bw:
                raise ValidationError(f"edge {i}-{i + 1} must carry exactly one arrow")
        if len(arrows) != n - 1:
            raise ValidationError("arrows must join neighbouring nodes only")
        xi = [anchor]
        for i in range(1, n):
            xi.append(xi[-1] - 1 if (i + 1, i) in arrows else xi[-1] + 1)
        return cls(n, arrows, tuple(xi))

    @classmethod
    def from_xi(cls, xi: Sequence[int]) -> "QuiverSpec":
        xi = tuple(int(x) for x in xi)
        arrows = set()
        for i in range(1, len(xi)):
            d = xi[i] - xi[i - 1]
            if d == 1:
                arrows.add((i, i + 1))
            elif d == -1:
                arrows.add((i + 1, i))
            else:
                raise ValidationError(f"ill-formed height function: xi({i})={xi[i - 1]}, xi({i + 1})={xi[i]}")
        return cls(len(xi), frozenset(arrows), xi)

    @classmethod
    def sink_chain(cls, n: int, anchor: int = 0) -> "QuiverSpec":
        """The linear quiver n -> n-1 -> ... -> 1 (node 1 is the sink)."""
        return cls.from_arrows(n, [(i + 1, i) for i in range(1, n)], anchor)

    def height(self, i: int) -> int:
        return self.xi[i - 1]

    def to_dict(self) -> dict:
        return {"n": self.n, "arrows": sorted(map(list, self.arrows)), "xi": list(self.xi)}


def all_orientations(n: int, anchor: int = 0) -> List[QuiverSpec]:
    out = []
    for bits in itertools.product((0, 1), repeat=max(n - 1, 0)):
        arrows = [(i, i + 1) if b else (i + 1, i) for i, b in zip(range(1, n), bits)]
        out.append(QuiverSpec.from_arrows(n, arrows, anchor))
    return out


# --- roots in the simple-root basis -------------------------------------------

def reflect_root(cartan: CartanData, i: int, a: Sequence[int]) -> Tuple[int, ...]:
    pair = sum(cartan.c(i, j) * a[j - 1] for j in cartan.nodes)
    out = list(a)
    out[i - 1] -= pair
    return tuple(out)


def _unit(n: int, i: int) -> Tuple[int, ...]:
    return tuple(int(j == i) for j in range(1, n + 1))


def _is_positive(a: Sequence[int]) -> bool:
    return all(x >= 0 for x in a) and any(a)


# --- labelled quivers ----------------------------------------------------------

@dataclass(frozen=True)
class LabelledARQuiver:
    """Vertices carry a residue, a positive root and (optionally) a doubled column."""

    rank: int                      # the roots live in type A_rank
    kindtag: str                   # plain | combinatorial | twistedHat | twistedBar
    vertices: Tuple[Vertex, ...]
    arrows: FrozenSet[Tuple[Vertex, Vertex]]
    residue: Mapping[Vertex, int] = field(repr=False)
    roots: Mapping[Vertex, Tuple[int, ...]] = field(repr=False)
    column: Mapping[Vertex, int] = field(default_factory=dict, repr=False)

    @property
    def cartan(self) -> CartanData:
        return build_cartan("A", self.rank)

    def successors(self, v: Vertex) -> List[Vertex]:
        return [b for a, b in self.arrows if a == v]

    def predecessors(self, v: Vertex) -> List[Vertex]:
        return [a for a, b in self.arrows if b == v]

    def root_arrows(self) -> FrozenSet[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        return frozenset((self.roots[a], self.roots[b]) for a, b in self.arrows)

    def root_residues(self) -> Dict[Tuple[int, ...], int]:
        return {self.roots[v]: self.residue[v] for v in self.vertices}

    def same_as(self, other: "LabelledARQuiver") -> bool:
        """Equality as root-labelled quivers with residues."""
        return (self.root_arrows() == other.root_arrows()
                and self.root_residues() == other.root_residues())

    def vertex_of_root(self, root: Tuple[int, ...]) -> Vertex:
        for v in self.vertices:
            if self.roots[v] == tuple(root):
                return v
        raise KeyError(root)

    def has_path(self, src: Vertex, dst: Vertex) -> bool:
        stack, seen = [src], {src}
        while stack:
            v = stack.pop()
            if v == dst:
                return True
            for w in self.successors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def __len__(self) -> int:
        return len(self.vertices)


def adapted_word(q: QuiverSpec) -> Tuple[int, ...]:
    """Nodes in decreasing height: each node is a sink once its predecessors are reflected."""
    return tuple(sorted(range(1, q.n + 1), key=lambda i: (-q.height(i), i)))


def ar_quiver(q: QuiverSpec) -> LabelledARQuiver:
    """AR quiver of the path algebra, labelled by (node, doubled spectral value)."""
    cartan = build_cartan("A", q.n)
    word = adapted_word(q)
    labels: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for k, i in enumerate(word):
        gamma = _unit(q.n, i)
        for j in reversed(word[:k]):
            gamma = reflect_root(cartan, j, gamma)
        r = q.height(i)
        beta = gamma
        while _is_positive(beta):
            labels[(i, 2 * r)] = beta
            for j in reversed(word):
                beta = reflect_root(cartan, j, beta)
            r -= 2
    if len(labels) != cartan.num_positive_roots():
        raise ConsistencyError("AR quiver construction did not exhaust the positive roots")
    verts = tuple(sorted(labels, key=lambda v: (-v[1], v[0])))
    vset = set(verts)
    arrows = frozenset(((j, rr - 2), (i, rr)) for (i, rr) in verts for j in (i - 1, i + 1)
                       if (j, rr - 2) in vset)
    return LabelledARQuiver(q.n, "plain", verts, arrows, {v: v[0] for v in verts}, labels,
                            {v: v[1] for v in verts})


def comb_ar_quiver(cartan: CartanData, word: Sequence[int]) -> LabelledARQuiver:
    """Combinatorial AR quiver of the commutation class of a reduced word of w0."""
    word = tuple(word)
    roots = [root_coords(cartan, b) for b in roots_of_word(cartan, word)]
    if len(roots) != cartan.num_positive_roots():
        raise ValidationError("word is not a reduced expression of the longest element")
    arrows = set()
    for k in range(len(word)):
        for kp in range(k):
            if cartan.Bsym[word[k] - 1][word[kp] - 1] >= 0:
                continue
            if any(word[t] in (word[k], word[kp]) for t in range(kp + 1, k)):
                continue
            arrows.add((roots[k], roots[kp]))
    verts = tuple(roots)
    return LabelledARQuiver(cartan.n, "combinatorial", verts, frozenset(arrows),
                            {b: i for b, i in zip(roots, word)}, {b: b for b in roots})


def compatible_reading(quiver: LabelledARQuiver, order: Optional[Sequence[Vertex]] = None) -> Tuple[int, ...]:
    """Residue sequence of a topological order placing arrow targets first.

    Ties are broken by the highest column, then the smallest residue.
    """
    return tuple(quiver.residue[v] for v in reading_order(quiver))


def reading_order(quiver: LabelledARQuiver) -> List[Vertex]:
    out_deg = {v: 0 for v in quiver.vertices}
    preds: Dict[Vertex, List[Vertex]] = {v: [] for v in quiver.vertices}
    for a, b in quiver.arrows:
        out_deg[a] += 1
        preds[b].append(a)

    def key(v):
        return (-quiver.column.get(v, 0), quiver.residue[v], v)

    ready = sorted((v for v, d in out_deg.items() if d == 0), key=key)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for u in preds[v]:
            out_deg[u] -= 1
            if out_deg[u] == 0:
                ready.append(u)
        ready.sort(key=key)
    if len(order) != len(quiver.vertices):
        raise ValidationError("quiver has a cycle; no compatible reading exists")
    return order


# --- twisted AR quivers ---------------------------------------------------------

@dataclass(frozen=True)
class TwistedARQuiver:
    n: int
    flat: str
    source: QuiverSpec
    hat: LabelledARQuiver      # residues in 1..2n-1, doubled half-integer columns
    bar: LabelledARQuiver      # folded vertex labels, residues still in 1..2n-1
    fold: Mapping[Vertex, Vertex] = field(repr=False)   # hat vertex -> bar vertex

    @property
    def cartan_B(self) -> CartanData:
        return build_cartan("B", self.n)

    def bar_vertices(self) -> Tuple[Tuple[int, int], ...]:
        return self.bar.vertices

    def exchangeable(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(v for v in self.bar.vertices if order_ops(self, v, "+") is not None)

    def frozen(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(v for v in self.bar.vertices if order_ops(self, v, "+") is None)

    def column(self, i: int) -> List[int]:
        return sorted((r for (j, r) in self.bar.vertices if j == i), reverse=True)

    def to_dict(self) -> dict:
        return {
            "type": "twisted",
            "n": self.n,
            "flat": self.flat,
            "xi": list(self.source.xi),
            "arrows": sorted([list(a), list(b)] for a, b in self.bar.arrows),
            "vertices": [list(v) for v in self.bar.vertices],
        }


def _fold(n: int, i: int) -> int:
    return i if i <= n else 2 * n - i


def twist(q: QuiverSpec, flat: str) -> TwistedARQuiver:
    """Twisted AR quiver of type A_{2n-1} from a quiver of type A_{2n-2}."""
    if flat not in (">", "<"):
        raise ValidationError(f"flat must be '>' or '<', got {flat!r}")
    if q.n % 2 or q.n < 2:
        raise ValidationError("twisting needs a quiver of type A_{2n-2} with n >= 2")
    n = q.n // 2 + 1
    plain = ar_quiver(q)

    def rename(v):
        i, rr = v
        return (i + 1 if i >= n else i, rr)

    verts = {rename(v) for v in plain.vertices}
    arrows = set()
    for a, b in plain.arrows:
        a2, b2 = rename(a), rename(b)
        if {a2[0], b2[0]} == {n - 1, n + 1}:
            mid = (n, b2[1] - 1)
            verts.add(mid)
            arrows.add((a2, mid))
            arrows.add((mid, b2))
        else:
            arrows.add((a2, b2))
    special = [v for v in plain.vertices if v[0] in (n - 1, n)]
    if flat == ">":
        rr = max(v[1] for v in special)
        top = (n - 1, rr) if (n - 1, rr) in plain.vertices else (n + 1, rr)
        new = (n, rr + 1)
        verts.add(new)
        arrows.add((top, new))
    else:
        rr = min(v[1] for v in special)
        bottom = (n - 1, rr) if (n - 1, rr) in plain.vertices else (n + 1, rr)
        new = (n, rr - 1)
        verts.add(new)
        arrows.add((new, bottom))

    verts_t = tuple(sorted(verts, key=lambda v: (-v[1], v[0])))
    rank = 2 * n - 1
    hat = LabelledARQuiver(rank, "twistedHat", verts_t, frozenset(arrows),
                           {v: v[0] for v in verts_t}, {}, {v: v[1] for v in verts_t})
    order = reading_order(hat)
    cartan = build_cartan("A", rank)
    word = tuple(hat.residue[v] for v in order)
    roots = [root_coords(cartan, b) for b in roots_of_word(cartan, word)]
    if len(roots) != cartan.num_positive_roots():
        raise ConsistencyError("twisted quiver reading is not a reduced word of w0")
    rootmap = dict(zip(order, roots))
    hat = LabelledARQuiver(rank, "twistedHat", verts_t, frozenset(arrows),
                           dict(hat.residue), rootmap, dict(hat.column))
    fold = {v: (_fold(n, v[0]), v[1]) for v in verts_t}
    if len(set(fold.values())) != len(fold):
        raise ConsistencyError("folded labelling is not injective")
    bverts = tuple(sorted(fold.values(), key=lambda v: (v[0], -v[1])))
    inv = {b: a for a, b in fold.items()}
    bar = LabelledARQuiver(rank, "twistedBar", bverts,
                           frozenset((fold[a], fold[b]) for a, b in arrows),
                           {b: hat.residue[a] for b, a in inv.items()},
                           {b: rootmap[a] for b, a in inv.items()},
                           {b: b[1] for b in bverts})
    return TwistedARQuiver(n, flat, q, hat, bar, fold)


def twisted_xi_values(tw: TwistedARQuiver) -> Dict[int, int]:
    """Doubled maximal column per A-residue, predicted from the height function."""
    xi, n = tw.source.height, tw.n
    out = {}
    for i in range(1, 2 * n):
        if i <= n - 1:
            out[i] = 2 * xi(i)
        elif i == n:
            out[i] = xi(n - 1) + xi(n) + (2 if tw.flat == ">" else 0)
        else:
            out[i] = 2 * xi(i - 1)
    return out


# --- windows, orders and counts -------------------------------------------------

@dataclass(frozen=True)
class MonomialWindow:
    allowed: FrozenSet[Tuple[int, int]]
    flavor: str   # "A" or "B"

    def contains(self, m) -> bool:
        return m.is_dominant() and all((i, r) in self.allowed for i, r, _ in m.items)

    def __iter__(self):
        return iter(sorted(self.allowed))

    def __len__(self) -> int:
        return len(self.allowed)


def window(quiver) -> MonomialWindow:
    """Variables allowed in the monomial category attached to a quiver."""
    if isinstance(quiver, TwistedARQuiver):
        return MonomialWindow(frozenset(quiver.bar.vertices), "B")
    if quiver is None or not quiver.vertices:
        return MonomialWindow(frozenset(), "A")
    if quiver.kindtag == "twistedBar":
        return MonomialWindow(frozenset(quiver.vertices), "B")
    if quiver.kindtag == "plain":
        if any(rr % 2 for _, rr in quiver.vertices):
            raise ValidationError("plain AR quiver with half-integer columns")
        return MonomialWindow(frozenset((i, rr // 2) for i, rr in quiver.vertices), "A")
    raise ValidationError(f"no monomial window for a {quiver.kindtag} quiver")


def k_of(tw: TwistedARQuiver, i: int, r: int) -> int:
    """Number of vertices in column i at or above r in steps of 2 r_i."""
    if (i, r) not in set(tw.bar.vertices):
        raise ValidationError(f"({i},{r}) is not a vertex of the twisted quiver")
    step = 2 * tw.cartan_B.ri(i)
    return sum(1 for rp in tw.column(i) if rp >= r and (rp - r) % step == 0)


@dataclass(frozen=True)
class CommClass:
    representative: Tuple[int, ...]
    quiver: LabelledARQuiver

    @classmethod
    def of_word(cls, cartan: CartanData, word: Sequence[int]) -> "CommClass":
        return cls(tuple(word), comb_ar_quiver(cartan, word))

    def __contains__(self, word) -> bool:
        try:
            other = comb_ar_quiver(self.quiver.cartan, word)
        except ValidationError:
            return False
        return other.same_as(self.quiver)


def _reading_positions(quiver: LabelledARQuiver) -> List[Vertex]:
    return reading_order(quiver)


def order_ops(obj, k: Vertex, which: str, i: Optional[int] = None):
    """k^+, k^- or k^-(i) for a vertex, computed on a compatible reading.

    ``obj`` is a :class:`TwistedARQuiver` (vertices in folded labels) or a
    :class:`LabelledARQuiver`.  Returns ``None`` for the boundary sentinels.
    """
    quiver = obj.bar if isinstance(obj, TwistedARQuiver) else obj
    order = _reading_positions(quiver)
    pos = order.index(k)
    res = quiver.residue
    cartan = quiver.cartan
    if which == "+":
        return next((v for v in order[pos + 1:] if res[v] == res[k]), None)
    if which == "-":
        return next((v for v in reversed(order[:pos]) if res[v] == res[k]), None)
    if which == "-i":
        if i is None or cartan.c(i, res[k]) == 0:
            return None
        return next((v for v in reversed(order[:pos]) if res[v] == i), None)
    raise ValidationError(f"unknown order operation {which!r}")


def twisted_convexity_violations(tw: TwistedARQuiver) -> List[str]:
    """Check the segment and local arrow statements of twisted convexity."""
    n = tw.n
    errs: List[str] = []
    for i in range(1, 2 * n):
        cols = sorted(rr for (j, rr) in tw.hat.vertices if j == i)
        step = 2 if i == n else 4
        if cols != list(range(cols[0], cols[-1] + 1, step)):
            errs.append(f"residue {i}: columns {cols} are not a {step}-segment")
    V = set(tw.bar.vertices)
    A = tw.bar.arrows

    def outs(v):
        return {b for a, b in A if a == v}

    def ins(v):
        return {a for a, b in A if b == v}

    for (i, r) in V:
        if i <= n - 2 and (i, r + 4) in V:
            mid = {(j, r + 2) for j in (i - 1, i + 1) if j >= 1}
            if not mid <= V or outs((i, r)) != mid or ins((i, r + 4)) != mid:
                errs.append(f"statement (1) fails at ({i},{r + 2})")
        if i == n - 1 and (i, r + 4) in V:
            c = r + 2
            need = {(n, c - 1), (n, c + 1)} | ({(n - 2, c)} if n >= 3 else set())
            outs_ok = outs((i, r)) == ({(n - 2, c)} if n >= 3 else set()) | {(n, c - 1)}
            ins_ok = ins((i, r + 4)) == ({(n - 2, c)} if n >= 3 else set()) | {(n, c + 1)}
            if not need <= V or not outs_ok or not ins_ok:
                errs.append(f"statement (2) fails at ({n - 1},{c})")
        if i == n and (n, r + 2) in V:
            mid = (n - 1, r + 1)
            if mid not in V or outs((n, r)) != {mid} or ins((n, r + 2)) != {mid}:
                errs.append(f"statement (3) fails at ({n - 1},{r + 1})")
    return errs
