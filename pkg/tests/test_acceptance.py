"""The twelve acceptance criteria, each exact and timed against its budget."""

import itertools
import random

import pytest

from qtgroth.bridge import build_phiT, kr_exchange_check, phiT_hatX, verify_hom
from qtgroth.cartan import build_cartan, closed_form_B, inverse_qcartan
from qtgroth.cluster import initial_pair, mutate_pair, pair_of_quiver
from qtgroth.correspondence import JA, JB, fundamental_dictionary, transport
from qtgroth.io import parse_monomial
from qtgroth.qtchar import KRLabel, et_standard, kl_decompose, kr_lift, kr_monomial, qchar_kr, verify_tsystem
from qtgroth.quivers import all_orientations, ar_quiver, compatible_reading, twist, twisted_convexity_violations, \
    window
from qtgroth.torus import TLaurent, YMonomial, a_monomial, torus_for

# --- reference data ------------------------------------------------------------------

# per i: displayed parameters r, then rows j = 1..n; blank entries are zero
B2_TABLES = {
    1: ([-2, -4, -6, -8, -10, -12, -14, -16],
        {1: [1, 1, 0, -1, -1, 0, 1, 1],
         2: [1, 1, 0, -1, -1, 0, 1, 1]}),
    2: ([-1, -3, -5, -7, -9, -11, -13, -15],
        {1: [0, 1, 0, 0, -1, 0, 0, 1],
         2: [1, 0, 1, -1, 0, -1, 1, 0]}),
}

_EVEN = [-2, -4, -6, -8, -10, -12, -14, -16, -18]
B5_TABLES = {
    1: (_EVEN, {1: [1, 0, 0, 0, 0, 0, 0, 1, 0],
                2: [0, 1, 0, 0, 0, 0, 1, 0, 0],
                3: [0, 0, 1, 0, 0, 1, 0, 0, 0],
                4: [0, 0, 0, 1, 1, 0, 0, 0, 0],
                5: [0, 0, 0, 1, 1, 0, 0, 0, 0]}),
    2: (_EVEN, {1: [0, 1, 0, 0, 0, 0, 1, 0, 0],
                2: [1, 0, 1, 0, 0, 1, 0, 1, 0],
                3: [0, 1, 0, 1, 1, 0, 1, 0, 0],
                4: [0, 0, 1, 1, 1, 1, 0, 0, 0],
                5: [0, 0, 1, 1, 1, 1, 0, 0, 0]}),
    3: (_EVEN, {1: [0, 0, 1, 0, 0, 1, 0, 0, 0],
                2: [0, 1, 0, 1, 1, 0, 1, 0, 0],
                3: [1, 0, 1, 1, 1, 1, 0, 1, 0],
                4: [0, 1, 1, 1, 1, 1, 1, 0, 0],
                5: [0, 1, 1, 1, 1, 1, 1, 0, 0]}),
    4: (_EVEN, {1: [0, 0, 0, 1, 1, 0, 0, 0, 0],
                2: [0, 0, 1, 1, 1, 1, 0, 0, 0],
                3: [0, 1, 1, 1, 1, 1, 1, 0, 0],
                4: [1, 1, 1, 1, 1, 1, 1, 1, 0],
                5: [1, 1, 1, 1, 1, 1, 1, 1, 0]}),
    5: ([-1, -3, -5, -7, -9, -11, -13, -15, -17],
        {1: [0, 0, 0, 0, 1, 0, 0, 0, 0],
         2: [0, 0, 0, 1, 0, 1, 0, 0, 0],
         3: [0, 0, 1, 0, 1, 0, 1, 0, 0],
         4: [0, 1, 0, 1, 0, 1, 0, 1, 0],
         5: [1, 0, 1, 0, 1, 0, 1, 0, 1]}),
}

DICTIONARY = {
    (2, "AtoB"): """
        Y(1,0) Y(1,0) | Y(1,-2) Y(2,-5) | Y(1,-4) Y(2,-3) | Y(2,-1) Y(2,-1)
        Y(2,-3) Y(2,-5)Y(2,-3) | Y(3,-2) Y(1,-2)""",
    (2, "BtoA"): """
        Y(1,0) Y(1,0) | Y(1,-4) Y(1,-4)Y(1,-2) | Y(2,-1) Y(2,-1) | Y(2,-3) Y(1,-4)
        Y(2,-5) Y(1,-2) | Y(1,-2) Y(3,-2)""",
    (3, "AtoB"): """
        Y(1,0) Y(1,0) | Y(1,-2) Y(1,-4) | Y(1,-4) Y(3,-11) | Y(1,-6) Y(3,-5) | Y(1,-8) Y(1,-12)
        Y(2,-1) Y(2,-2) | Y(2,-3) Y(3,-7) | Y(2,-5) Y(3,-5)Y(3,-11) | Y(2,-7) Y(3,-9)
        Y(3,-2) Y(3,-3) | Y(3,-4) Y(3,-7)Y(3,-5) | Y(3,-6) Y(3,-11)Y(3,-9)
        Y(4,-3) Y(2,-4) | Y(4,-5) Y(2,-8) | Y(5,-4) Y(1,-6)""",
    (3, "BtoA"): """
        Y(1,0) Y(1,0) | Y(1,-4) Y(1,-2) | Y(1,-8) Y(1,-6)Y(1,-4) | Y(1,-12) Y(1,-8)
        Y(2,-2) Y(2,-1) | Y(2,-6) Y(2,-3)Y(1,-6) | Y(2,-10) Y(1,-4)Y(2,-7)
        Y(3,-3) Y(3,-2) | Y(3,-5) Y(1,-6) | Y(3,-7) Y(2,-3) | Y(3,-9) Y(2,-7) | Y(3,-11) Y(1,-4)
        Y(2,-4) Y(4,-3) | Y(2,-8) Y(4,-5) | Y(1,-6) Y(5,-4)""",
}

TSYSTEM_EXPONENTS = {
    (2, 1): [(1, -1), (3, 1), (2, 0)], (2, 2): [(1, -1), (1, 0), (2, 0)],
    (3, 1): [(1, -1), (2, 0), (2, 0)], (3, 2): [(0, -2), (1, -1), (3, 1)],
    (3, 3): [(1, -1), (1, 0), (1, -1)],
}


def _dictionary_pairs(text):
    pairs = []
    for chunk in text.replace("\n", "|").split("|"):
        if chunk.strip():
            src, dst = chunk.split()
            pairs.append((parse_monomial(src), parse_monomial(dst)))
    return pairs


def _twisted(ranks):
    for n in ranks:
        for q in all_orientations(2 * n - 2):
            for flat in "<>":
                yield n, twist(q, flat)


def _spin_oracle(n, r):
    cartan = build_cartan("B", n)
    out = {}
    for k in range(n + 1):
        for seq in itertools.combinations(range(n - 1, -1, -1), k):
            m = YMonomial.Y(n, r)
            for block, top in enumerate(seq, start=1):
                for step in range(top + 1):
                    m = m * a_monomial(cartan, n - step, r + 4 * block - 3 + 2 * step).inverse()
            out[m] = out.get(m, 0) + 1
    return out


def _kr_monomials(tw):
    cartan = tw.cartan_B
    win = window(tw)
    for i in range(1, tw.n + 1):
        for r in tw.column(i):
            k = 1
            while win.contains(kr_monomial(cartan, i, k, r)):
                yield i, k, r
                k += 1


def _tables_match(n, tables, depth):
    table = inverse_qcartan(build_cartan("B", n), depth)
    for i, (columns, rows) in tables.items():
        for j, row in rows.items():
            assert [table.value(j, i, r) for r in columns] == row, (n, j, i)
        skipped = [r for r in range(-1, columns[-1] - 1, -1) if r not in columns]
        assert all(table.value(j, i, r) == 0 for j in rows for r in skipped), (n, i)


# --- criteria ----------------------------------------------------------------------------


def test_01_inverse_cartan_b2(criterion):
    with criterion(1, "inverse quantum Cartan B_2", 0.1):
        _tables_match(2, B2_TABLES, 16)


def test_02_inverse_cartan_b5(criterion):
    with criterion(2, "inverse quantum Cartan B_5", 0.1):
        _tables_match(5, B5_TABLES, 18)


def test_03_closed_form_and_antiperiodicity(criterion):
    with criterion(3, "closed form and antiperiodicity", 1.0):
        for n in range(2, 7):
            period = 4 * n - 2
            table = inverse_qcartan(build_cartan("B", n), 2 * period)
            for j, i in itertools.product(range(1, n + 1), repeat=2):
                for r in range(-1, -2 * period - 1, -1):
                    assert closed_form_B(n, j, i, r) == table.value(j, i, r)
                    if r - period >= -2 * period:
                        assert table.value(j, i, r - period) == -table.value(j, i, r)


def test_04_spin_q_characters(criterion):
    with criterion(4, "spin q-characters", 1.0):
        for n in (2, 3, 4):
            got = dict(qchar_kr(build_cartan("B", n), KRLabel(n, 1, 0)).value)
            assert got == _spin_oracle(n, 0)
            assert len(got) == 2 ** n and set(got.values()) == {1}
        b2 = qchar_kr(build_cartan("B", 2), KRLabel(2, 1, 0)).value
        assert set(b2) == {parse_monomial(s) for s in
                           ("Y(2,0)", "Y(1,1)Y(2,2)^-1", "Y(1,5)^-1Y(2,4)", "Y(2,6)^-1")}


def test_05_quantum_t_system(criterion):
    with criterion(5, "quantum T-system", 30.0):
        for n in (2, 3):
            torus = torus_for("B", n)
            for i in range(1, n + 1):
                for k in (1, 2, 3):
                    for r in (0, 1):
                        found = verify_tsystem(torus, i, k, r)
                        assert (found["alpha"], found["beta"]) == TSYSTEM_EXPONENTS[(n, i)][k - 1]


def test_06_torus_isomorphism(criterion):
    with criterion(6, "torus isomorphism", 30.0):
        count = 0
        for _, tw in _twisted((2, 3)):
            phi = build_phiT(tw)
            report = verify_hom(phi)
            assert report["violations"] == []
            cartan = phi.torus.cartan
            for v in phi.source.Je:
                i, r = v
                target = a_monomial(cartan, i, r - cartan.ri(i)).inverse()
                assert phiT_hatX(phi, v) == phi.torus.mono(target)
            count += 1
        assert count == 2 * (2 + 8)


def test_07_exchange_is_t_system(criterion):
    with criterion(7, "exchange relations as T-systems", 60.0):
        for _, tw in _twisted((2, 3)):
            phi = build_phiT(tw)
            report = kr_exchange_check(phi)
            assert report["ok"]
            exchanged = {rec["vertex"] for rec in report["records"]}
            movable = {v for v in phi.source.Je if any(s < v[1] for s in tw.column(v[0]))}
            assert exchanged == movable


def test_08_length_two_standard_modules(criterion):
    with criterion(8, "length-two standard modules", 30.0):
        for n in (2, 3):
            torus = torus_for("B", n)
            for r in (0, 1):
                for p in range(1, 2 * n + 3):
                    m = YMonomial.Y(n, r) * YMonomial.Y(n, r + 2 * p)
                    res = kl_decompose(torus, m)
                    if p % 2 and p <= 2 * n - 1:
                        node = n - (p + 1) // 2
                        lower = YMonomial.Y(node, r + p) if node else YMonomial.one()
                        assert res.nontrivial() == {lower: TLaurent.monomial(-2)}
                        expected = res.Lt + kl_decompose(torus, lower).Lt.shift(-2) if node \
                            else res.Lt + torus.t(-2)
                        assert et_standard(torus, m) == expected
                    else:
                        assert res.nontrivial() == {}
                        assert et_standard(torus, m) == res.Lt


def test_09_kr_modules_are_thin_simple(criterion):
    with criterion(9, "KR simples are thin lifts", 30.0):
        seen = set()
        for n, tw in _twisted((2, 3)):
            torus = torus_for("B", n)
            for i, k, r in _kr_monomials(tw):
                m = kr_monomial(torus.cartan, i, k, r)
                if (n, m) in seen:
                    continue
                seen.add((n, m))
                res = kl_decompose(torus, m, window(tw))
                assert res.Lt == kr_lift(torus, i, k, r)
                if k == 1:
                    assert res.nontrivial() == {}
        assert len(seen) > 50


@pytest.mark.xfail(strict=True, reason="KR monomials of length two or more have nontrivial "
                                       "KL polynomials, given by the T-system")
def test_09_literal_every_kr_standard_module_is_simple():
    for n, tw in _twisted((2,)):
        torus = torus_for("B", n)
        for i, k, r in _kr_monomials(tw):
            assert kl_decompose(torus, kr_monomial(torus.cartan, i, k, r)).nontrivial() == {}


def test_10_positivity(criterion):
    with criterion(10, "positivity of KL polynomials and L_t", 60.0):
        count = 0
        torus = torus_for("B", 2)
        for _, tw in _twisted((2,)):
            win = window(tw)
            cells = sorted(win)
            for d in (1, 2, 3):
                for combo in itertools.combinations_with_replacement(cells, d):
                    m = YMonomial({c: combo.count(c) for c in set(combo)})
                    res = kl_decompose(torus, m, win)
                    assert all(poly.nonnegative() for poly in res.P.values())
                    assert all(c.nonnegative() for c in res.Lt.truncate(win).terms.values())
                    count += 1
        assert count == 4 * (6 + 21 + 56)


def test_11_ab_dictionary(criterion):
    with criterion(11, "A/B dictionary and round trips", 10.0):
        for (n, direction), text in DICTIONARY.items():
            expected = _dictionary_pairs(text)
            assert len(expected) == (6 if n == 2 else 15)
            got = dict(fundamental_dictionary(n, direction))
            assert len(got) == len(expected)
            for src, dst in expected:
                assert got[src] == dst, (n, direction, str(src))
        rng = random.Random(20240611)
        for n in (2, 3):
            for _ in range(100):
                c = {v: rng.randint(1, 4) for v in JA(n) if rng.random() < 0.5}
                assert transport(transport(c, n, "AtoB"), n, "BtoA") == c
                d = {v: rng.randint(1, 4) for v in JB(n) if rng.random() < 0.5}
                assert transport(transport(d, n, "BtoA"), n, "AtoB") == d


def test_12_structural_properties(criterion):
    with criterion(12, "structural properties", 60.0):
        rng = random.Random(7)
        for n in range(2, 6):
            torus = torus_for("B", n)
            for i, j in itertools.product(range(1, n + 1), repeat=2):
                for d in range(-12, 13):
                    assert torus.gamma(i, d, j, 0) == -torus.gamma(j, 0, i, d)
        b2 = torus_for("B", 2)
        gens = [b2.mono(YMonomial.Y(i, r), rng.randint(-2, 2)) for i in (1, 2) for r in range(6)]
        for _ in range(30):
            x, y, z = (sum(rng.sample(gens, 2), b2.element()) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert (x * y).bar() == y.bar() * x.bar() and x.bar().bar() == x
        for rank in (2, 3, 4):
            for q in all_orientations(rank):
                pair = initial_pair(build_cartan("A", rank), compatible_reading(ar_quiver(q)))
                for k in pair.Je:
                    once = mutate_pair(pair, k)
                    assert once.check() == pair.d
                    assert mutate_pair(once, k) == pair
        for n, tw in _twisted((2, 3, 4, 5)):
            assert twisted_convexity_violations(tw) == []
            if n <= 3:
                pair = pair_of_quiver(tw)
                for k in pair.Je:
                    assert mutate_pair(mutate_pair(pair, k), k) == pair
