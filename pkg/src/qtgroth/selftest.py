"""Acceptance checks runnable from the command line.

Each check returns a :class:`Check`; ``run`` executes a level's worth of them.
``fast`` restricts every check to rank 2, ``full`` runs the stated scale.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from .cartan import build_cartan, closed_form_B, inverse_qcartan
from .cluster import initial_pair, mutate_pair, pair_of_quiver
from .correspondence import JA, JB, fundamental_dictionary, transport
from .errors import QtGrothError
from .io import parse_monomial
from .qtchar import KRLabel, kl_decompose, kr_lift, kr_monomial, qchar_kr, verify_tsystem
from .quivers import (QuiverSpec, all_orientations, ar_quiver, compatible_reading, twist,
                      twisted_convexity_violations, window)
from .reference import AB_DICTIONARY, INVERSE_CARTAN_B2, INVERSE_CARTAN_B5
from .torus import TLaurent, YMonomial, a_monomial, torus_for
from .bridge import build_phiT, kr_exchange_check, phiT_hatX, verify_hom

__all__ = ["Check", "CHECKS", "run", "spin_expansion"]


@dataclass
class Check:
    number: int
    name: str
    ok: bool
    seconds: float
    budget: float
    detail: str = ""

    @property
    def within_budget(self) -> bool:
        return self.seconds < self.budget

    def line(self) -> str:
        status = "PASS" if self.ok and self.within_budget else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"[{status}] {self.number:2d} {self.name}: {self.seconds:.2f}s / {self.budget:g}s{tail}"


def _ranks(level: str, full: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(n for n in full if n <= 2) if level == "fast" else full


def _table_matches(n: int, reference) -> Tuple[bool, str]:
    table = inverse_qcartan(build_cartan("B", n), 64)
    bad = []
    for i, (columns, nonzero) in reference.items():
        for j in range(1, n + 1):
            for r in columns:
                if table.value(j, i, r) != nonzero.get((j, r), 0):
                    bad.append((j, i, r))
    return not bad, f"{len(bad)} mismatches" if bad else ""


def check_b2_table(level: str) -> Tuple[bool, str]:
    return _table_matches(2, INVERSE_CARTAN_B2)


def check_b5_table(level: str) -> Tuple[bool, str]:
    return _table_matches(5, INVERSE_CARTAN_B5)


def check_closed_form(level: str) -> Tuple[bool, str]:
    ranks = (2, 3) if level == "fast" else (2, 3, 4, 5, 6)
    for n in ranks:
        period = 4 * n - 2
        table = inverse_qcartan(build_cartan("B", n), 2 * period + 2)
        for j in range(1, n + 1):
            for i in range(1, n + 1):
                for r in range(0, -2 * period - 1, -1):
                    if closed_form_B(n, j, i, r) != table.value(j, i, r):
                        return False, f"B_{n} entry ({j},{i},{r})"
                    if r - period >= -2 * period and table.value(j, i, r - period) != -table.value(j, i, r):
                        return False, f"B_{n} antiperiodicity at ({j},{i},{r})"
    return True, ""


def spin_expansion(n: int, r: int) -> Dict[YMonomial, int]:
    """The spin character written as a sum over decreasing sequences n > i_1 > ... > i_k >= 0."""
    cartan = build_cartan("B", n)
    out: Dict[YMonomial, int] = {}
    for k in range(n + 1):
        for seq in itertools.combinations(range(n - 1, -1, -1), k):
            m = YMonomial.Y(n, r)
            for block, top in enumerate(seq, start=1):
                start = r + 4 * block - 3
                for step in range(top + 1):
                    m = m * a_monomial(cartan, n - step, start + 2 * step).inverse()
            out[m] = out.get(m, 0) + 1
    return out


def check_spin(level: str) -> Tuple[bool, str]:
    for n in _ranks(level, (2, 3, 4)):
        cartan = build_cartan("B", n)
        got = qchar_kr(cartan, KRLabel(n, 1, 0)).value
        if got != spin_expansion(n, 0) or len(got) != 2 ** n:
            return False, f"B_{n} spin character differs"
    b2 = {parse_monomial(s) for s in ("Y(2,0)", "Y(1,1)Y(2,2)^-1", "Y(1,5)^-1Y(2,4)", "Y(2,6)^-1")}
    if set(qchar_kr(build_cartan("B", 2), KRLabel(2, 1, 0)).value) != b2:
        return False, "B_2 four-term set differs"
    return True, ""


def check_tsystem(level: str) -> Tuple[bool, str]:
    count = 0
    for n in _ranks(level, (2, 3)):
        torus = torus_for("B", n)
        for i in range(1, n + 1):
            for k in range(1, 4):
                for r in (0, 1):
                    verify_tsystem(torus, i, k, r)
                    count += 1
    return True, f"{count} identities"


def _twisted(level: str):
    for n in _ranks(level, (2, 3)):
        for q in all_orientations(2 * n - 2):
            for flat in "<>":
                yield n, twist(q, flat)


def check_hom(level: str) -> Tuple[bool, str]:
    count = 0
    for _, tw in _twisted(level):
        phi = build_phiT(tw)
        if not verify_hom(phi)["ok"]:
            return False, f"violations for {tw.source.xi} {tw.flat}"
        for v in phi.source.Je:
            phiT_hatX(phi, v)
        count += 1
    return True, f"{count} quivers"


def check_exchange(level: str) -> Tuple[bool, str]:
    total = 0
    for n in _ranks(level, (2, 3)):
        for flat in "<>":
            total += kr_exchange_check(build_phiT(twist(QuiverSpec.sink_chain(2 * n - 2), flat)))["exchanges"]
    return True, f"{total} exchanges"


def check_length_two(level: str) -> Tuple[bool, str]:
    for n in _ranks(level, (2, 3)):
        torus = torus_for("B", n)
        for r in (0, 1):
            for p in range(1, 2 * n + 3):
                m = YMonomial.Y(n, r) * YMonomial.Y(n, r + 2 * p)
                extra = kl_decompose(torus, m).nontrivial()
                if p % 2 and p <= 2 * n - 1:
                    lower = YMonomial.Y(n - (p + 1) // 2, r + p) if p < 2 * n - 1 else YMonomial.one()
                    if extra != {lower: TLaurent.monomial(-2)}:
                        return False, f"B_{n}, r={r}, p={p}: {extra}"
                elif extra:
                    return False, f"B_{n}, r={r}, p={p}: unexpected {extra}"
    return True, ""


def _kr_monomials(tw, cartan):
    win = window(tw)
    for i in range(1, tw.n + 1):
        for r in tw.column(i):
            k = 1
            while win.contains(kr_monomial(cartan, i, k, r)):
                yield i, k, r
                k += 1


def check_kr_simple(level: str) -> Tuple[bool, str]:
    seen = set()
    for n, tw in _twisted(level):
        torus = torus_for("B", n)
        for i, k, r in _kr_monomials(tw, torus.cartan):
            m = kr_monomial(torus.cartan, i, k, r)
            if (n, m) in seen:
                continue
            seen.add((n, m))
            res = kl_decompose(torus, m, window(tw))
            if res.Lt != kr_lift(torus, i, k, r):
                return False, f"L_t({m}) differs from the thin lift"
            if k == 1 and res.nontrivial():
                return False, f"fundamental {m} has lower terms"
    return True, f"{len(seen)} KR monomials"


def _dominant_upto(win, degree: int):
    cells = sorted(win)
    for d in range(1, degree + 1):
        for combo in itertools.combinations_with_replacement(cells, d):
            exps: Dict[Tuple[int, int], int] = {}
            for cell in combo:
                exps[cell] = exps.get(cell, 0) + 1
            yield YMonomial(exps)


def check_positivity(level: str) -> Tuple[bool, str]:
    torus = torus_for("B", 2)
    count = 0
    for q in all_orientations(2):
        for flat in "<>":
            win = window(twist(q, flat))
            for m in _dominant_upto(win, 3):
                res = kl_decompose(torus, m, win)
                if not all(c.nonnegative() for c in res.P.values()):
                    return False, f"negative KL coefficient for {m}"
                if not all(c.nonnegative() for c in res.Lt.truncate(win).terms.values()):
                    return False, f"negative truncated L_t coefficient for {m}"
                count += 1
    return True, f"{count} monomials"


def check_dictionary(level: str) -> Tuple[bool, str]:
    for (n, direction), rows in AB_DICTIONARY.items():
        if level == "fast" and n > 2:
            continue
        got = {str(a): b for a, b in fundamental_dictionary(n, direction)}
        for src, dst in rows:
            if got.get(str(parse_monomial(src))) != parse_monomial(dst):
                return False, f"n={n} {direction}: {src}"
    rng = random.Random(20240611)
    for n in _ranks(level, (2, 3)):
        verts_a, verts_b = JA(n), JB(n)
        for _ in range(100):
            c = {v: rng.randint(0, 3) for v in verts_a if rng.random() < 0.5}
            c = {k: v for k, v in c.items() if v}
            if transport(transport(c, n, "AtoB"), n, "BtoA") != c:
                return False, f"round trip fails for {c}"
            d = {v: rng.randint(0, 3) for v in verts_b if rng.random() < 0.5}
            d = {k: v for k, v in d.items() if v}
            if transport(transport(d, n, "BtoA"), n, "AtoB") != d:
                return False, f"round trip fails for {d}"
    return True, ""


def check_structure(level: str) -> Tuple[bool, str]:
    rng = random.Random(7)
    top = 3 if level == "fast" else 5
    for n in range(2, top + 1):
        torus = torus_for("B", n)
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            for r in range(-6, 7):
                if torus.gamma(i, r, j, 0) != -torus.gamma(j, 0, i, r):
                    return False, f"gamma not skew at B_{n} ({i},{r},{j},0)"
    torus = torus_for("B", 2)
    gens = [torus.mono(YMonomial.Y(i, r), rng.randint(-2, 2)) for i in (1, 2) for r in range(0, 6)]
    for _ in range(30):
        x, y, z = (sum(rng.sample(gens, 2), torus.element()) for _ in range(3))
        if (x * y) * z != x * (y * z):
            return False, "multiplication is not associative"
        if (x * y).bar() != y.bar() * x.bar() or x.bar().bar() != x:
            return False, "bar is not an anti-involution"
    for rank in range(2, 5):
        cartan = build_cartan("A", rank)
        for q in all_orientations(rank):
            pair = initial_pair(cartan, compatible_reading(ar_quiver(q)))
            for _ in range(3):
                k = rng.choice(pair.Je)
                once = mutate_pair(pair, k)
                once.check()
                if mutate_pair(once, k) != pair:
                    return False, f"mutation at {k} is not an involution"
                pair = once
    for n in range(2, top + 1):
        for q in all_orientations(2 * n - 2):
            for flat in "<>":
                tw = twist(q, flat)
                errs = twisted_convexity_violations(tw)
                if errs:
                    return False, errs[0]
                if n <= 3:
                    pair = pair_of_quiver(tw)
                    k = rng.choice(pair.Je)
                    if mutate_pair(mutate_pair(pair, k), k) != pair:
                        return False, f"twisted mutation at {k} is not an involution"
    return True, ""


CHECKS: List[Tuple[int, str, Callable[[str], Tuple[bool, str]], float]] = [
    (1, "inverse quantum Cartan B_2 table", check_b2_table, 0.1),
    (2, "inverse quantum Cartan B_5 tables", check_b5_table, 0.1),
    (3, "closed form against recurrence", check_closed_form, 1.0),
    (4, "spin q-characters", check_spin, 1.0),
    (5, "quantum T-system", check_tsystem, 30.0),
    (6, "torus isomorphism", check_hom, 30.0),
    (7, "exchange relations as T-systems", check_exchange, 60.0),
    (8, "length-two standard modules", check_length_two, 30.0),
    (9, "KR modules are simple thin lifts", check_kr_simple, 30.0),
    (10, "positivity of KL polynomials and L_t", check_positivity, 60.0),
    (11, "A/B dictionary and round trips", check_dictionary, 10.0),
    (12, "structural properties", check_structure, 60.0),
]


def run(level: str = "fast", only=None) -> List[Check]:
    if level not in ("fast", "full"):
        raise ValueError(f"level must be fast or full, got {level!r}")
    out = []
    for number, name, fn, budget in CHECKS:
        if only and number not in only:
            continue
        start = time.perf_counter()
        try:
            ok, detail = fn(level)
        except QtGrothError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(Check(number, name, ok, time.perf_counter() - start, budget, detail))
    return out
