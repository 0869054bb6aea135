"""The isomorphism between the cluster torus of a twisted class and the truncated Y-torus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from .cluster import CompatiblePair, exchange_rhs, frame_eval, initial_seed, mutate_seed, pair_of_quiver
from .errors import ConsistencyError, IdentityViolation, ValidationError
from .qtchar import kr_lift, kr_monomial, s_term_factors, verify_tsystem
from .quivers import TwistedARQuiver, k_of, twisted_xi_values, window
from .torus import QuantumTorus, TorusElement, YMonomial, a_monomial, torus_for

__all__ = [
    "PhiT",
    "build_phiT",
    "verify_hom",
    "phiT_hatX",
    "frozen_generators",
    "truncated_kr",
    "kr_exchange_check",
]

Vertex = Tuple[int, int]


@dataclass(frozen=True)
class PhiT:
    quiver: TwistedARQuiver
    source: CompatiblePair
    images: Mapping[Vertex, TorusElement] = field(repr=False)
    torus: QuantumTorus = field(repr=False)
    convention: str = "v^(1/2) -> t^(-1/2)"

    def image_list(self) -> List[TorusElement]:
        return [self.images[v] for v in self.source.J]

    def kr_label(self, v: Vertex) -> Tuple[int, int, int]:
        return (v[0], k_of(self.quiver, *v), v[1])


def build_phiT(tw: TwistedARQuiver) -> PhiT:
    """Generator images X_(i,r) -> underline(m^{(i)}_{k(i,r), r})."""
    if not isinstance(tw, TwistedARQuiver):
        raise ValidationError("build_phiT needs a twisted AR quiver")
    torus = torus_for("B", tw.n)
    pair = pair_of_quiver(tw)
    images = {v: torus.mono(kr_monomial(torus.cartan, v[0], k_of(tw, *v), v[1])) for v in pair.J}
    return PhiT(tw, pair, images, torus)


def verify_hom(phi: PhiT) -> Dict[str, object]:
    """Compare Lambda(e_a, e_b) with -N(image_a, image_b) over all ordered pairs."""
    violations = []
    mono = {v: next(iter(x.terms)) for v, x in phi.images.items()}
    for a in phi.source.J:
        for b in phi.source.J:
            lam = phi.source.lam(a, b)
            n = phi.torus.N(mono[a], mono[b])
            if lam != -n:
                violations.append({"pair": (a, b), "Lambda": lam, "minusN": -n})
    count = len(phi.source.J) ** 2
    return {"pairs": count, "violations": violations, "ok": not violations}


def phiT_hatX(phi: PhiT, v: Vertex) -> TorusElement:
    """Image of the exchange monomial at v; must equal underline(A_{i, r - r_i})^{-1}."""
    pair = phi.source
    if v not in pair.Je:
        raise ValidationError(f"{v} is not an exchangeable vertex")
    img = frame_eval(pair.Lambda, phi.image_list(), pair.bvec(v))
    i, r = v
    target = a_monomial(phi.torus.cartan, i, r - phi.torus.cartan.ri(i)).inverse()
    if img != phi.torus.mono(target):
        raise ConsistencyError(f"exchange monomial at {v} maps to {img}, expected [{target}]")
    return img


def frozen_generators(phi: PhiT) -> Dict[int, Tuple[Vertex, TorusElement]]:
    """The frozen generators X'_Pi for each A-residue together with their images."""
    tw = phi.quiver
    n = tw.n
    doubled = twisted_xi_values(tw)
    out = {}
    pair = phi.source
    for a in range(1, 2 * n):
        col = doubled[a] - (2 if (tw.flat == ">" and a == n) else 0)
        pi = (a, col) if a <= n else (2 * n - a, col)
        if pi not in pair.J:
            raise ConsistencyError(f"frozen generator position {pi} is not a vertex")
        c = [0] * len(pair.J)
        c[pair.index(pi)] += 1
        if tw.flat == ">" and a == n:
            c[pair.index((n, doubled[n]))] -= 1
        img = frame_eval(pair.Lambda, phi.image_list(), c)
        expected = phi.torus.mono(YMonomial.Y(*pi))
        if img != expected:
            raise ConsistencyError(f"frozen generator at {pi} maps to {img}, expected {expected}")
        out[a] = (pi, img)
    return out


def truncated_kr(phi: PhiT, i: int, k: int, r: int) -> TorusElement:
    """F_t(m^{(i)}_{k,r}) with monomials outside the window discarded."""
    return kr_lift(phi.torus, i, k, r).truncate(window(phi.quiver))


def _chain_length(phi: PhiT, v: Vertex) -> int:
    i, r = v
    step = 2 * phi.torus.cartan.ri(i)
    bottom = r
    verts = set(phi.source.J)
    while (i, bottom - step) in verts:
        bottom -= step
    return k_of(phi.quiver, i, bottom)


def _trim(phi: PhiT, labels) -> List[Tuple[int, int, int]]:
    """Drop KR factors whose truncation is the unit."""
    return sorted(lab for lab in labels
                  if lab[0] > 0 and lab[1] > 0 and truncated_kr(phi, *lab) != phi.torus.one())


def _partners(phi: PhiT, label) -> Tuple[List, List]:
    """KR labels of the two T-system products for the exchange producing ``label``."""
    i, k, r = label
    step = 2 * phi.torus.cartan.ri(i)
    first = _trim(phi, [(i, k + 1, r), (i, k - 1, r + step)])
    second = _trim(phi, s_term_factors(phi.torus.cartan, i, k, r))
    return first, second


def kr_exchange_check(phi: PhiT, vertex: Optional[Vertex] = None) -> Dict[str, object]:
    """Replay the shifting mutation sequence and check every exchange against the T-system.

    Every vertex starts with the truncated KR character whose string runs from
    it to the top of its chain.  A vertex at chain position j in a chain of
    length m is mutated m - j times, each time moving its string down one step.
    Mutations are scheduled greedily: the first pending vertex (highest r
    first) whose T-system partners are all present in the current cluster is
    mutated next.  Each exchange is checked against the exchange relation, the
    truncated quantum T-system and the expected neighbour sets.
    """
    torus, cartan, pair = phi.torus, phi.torus.cartan, phi.source
    labels = {v: phi.kr_label(v) for v in pair.J}
    images = {v: truncated_kr(phi, *labels[v]) for v in pair.J}
    for v in pair.J:
        if images[v] != phi.images[v]:
            raise ConsistencyError(f"truncated KR character at {v} differs from the generator image")
    seed = initial_seed(pair, images, labels)
    pending = {v: _chain_length(phi, v) - k_of(phi.quiver, *v) for v in pair.Je}
    order = sorted(pair.Je, key=lambda v: (-v[1], v[0]))
    records = []
    while any(pending.values()):
        present = set(seed.labels)
        chosen = None
        for v in order:
            if not pending[v]:
                continue
            i, k, start = seed.label(v)
            target = (i, k, start - 2 * cartan.ri(i))
            first, second = _partners(phi, target)
            if set(first) <= present and set(second) <= present:
                chosen = (v, target, first, second)
                break
        if chosen is None:
            stuck = sorted(v for v in order if pending[v])
            raise IdentityViolation(f"no vertex among {stuck} has its T-system partners in the cluster")
        v, target, first, second = chosen
        i, k, r = target
        old_var = seed.variable(v)
        new_var = truncated_kr(phi, *target)
        nxt, data = mutate_seed(seed, v, new_var, target)
        if old_var * new_var != exchange_rhs(seed, data):
            raise IdentityViolation(f"exchange relation at {v} fails for {target}")
        ab = verify_tsystem(torus, i, k, r)
        prod_first = truncated_kr(phi, i, k + 1, r) * truncated_kr(phi, i, k - 1, r + 2 * cartan.ri(i))
        prod_second = torus.one()
        for lab in s_term_factors(cartan, i, k, r):
            prod_second = prod_second * truncated_kr(phi, *lab)
        if new_var * old_var != prod_first.shift(ab["alpha"]) + prod_second.shift(ab["beta"]):
            raise IdentityViolation(f"truncated T-system at {target} fails")
        plus = sorted(seed.label(u) for u, c in zip(pair.J, data.plus) if c)
        minus = sorted(seed.label(u) for u, c in zip(pair.J, data.minus) if c)
        if sorted([plus, minus]) != sorted([first, second]):
            raise IdentityViolation(
                f"exchange neighbours at {v} are {plus} and {minus}, expected {first} and {second}")
        records.append({"vertex": v, "old": seed.label(v), "new": target,
                        "alpha": ab["alpha"], "beta": ab["beta"],
                        "neighbours": {"plus": plus, "minus": minus}})
        pending[v] -= 1
        seed = nxt
    if vertex is not None:
        if vertex not in pair.Je:
            raise ValidationError(f"{vertex} is not an exchangeable vertex")
        records = [rec for rec in records if rec["vertex"] == vertex]
    return {"exchanges": len(records), "records": records, "ok": True}
