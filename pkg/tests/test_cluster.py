import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtgroth.bridge import build_phiT
from qtgroth.cartan import build_cartan
from qtgroth.cluster import (btilde_quiver, exchange_rhs, initial_pair, initial_seed, mutate_pair, mutate_seed,
                             pair_arrows, pair_of_quiver)
from qtgroth.errors import ValidationError
from qtgroth.quivers import QuiverSpec, all_orientations, ar_quiver, compatible_reading, twist


def matrix_mutation(b, rows, cols, k_row, k_col):
    """Textbook exchange-matrix mutation on an extended (rows x cols) matrix."""
    out = [list(r) for r in b]
    for i in range(rows):
        for j in range(cols):
            if i == k_row or j == k_col:
                out[i][j] = -b[i][j]
            else:
                bik, bkj = b[i][k_col], b[k_row][j]
                sign = (bik > 0) - (bik < 0)
                out[i][j] = b[i][j] + sign * max(bik * bkj, 0)
    return tuple(tuple(r) for r in out)


def _pairs():
    out = []
    for rank in (2, 3, 4):
        cartan = build_cartan("A", rank)
        for q in all_orientations(rank):
            out.append(initial_pair(cartan, compatible_reading(ar_quiver(q))))
    return out


PAIRS = _pairs()


def test_initial_pair_diagonal():
    cartan = build_cartan("B", 2)
    pair = initial_pair(cartan, (1, 2, 1, 2))
    assert pair.Je == (1, 2)
    assert pair.d == (4, 2)


def test_initial_pair_rejects_short_words():
    with pytest.raises(ValidationError):
        initial_pair(build_cartan("A", 3), (1, 2, 1))


@pytest.mark.parametrize("index", range(len(PAIRS)))
def test_mutation_matches_matrix_rule(index):
    pair = PAIRS[index]
    for k in pair.Je:
        mutated = mutate_pair(pair, k)
        expected = matrix_mutation(pair.Btilde, len(pair.J), len(pair.Je), pair.index(k), pair.column(k))
        assert mutated.Btilde == expected
        assert mutated.d == pair.d


@given(st.sampled_from(PAIRS), st.lists(st.integers(0, 100), min_size=1, max_size=6))
def test_mutation_preserves_compatibility_and_is_involutive(pair, picks):
    for p in picks:
        k = pair.Je[p % len(pair.Je)]
        once = mutate_pair(pair, k)
        assert once.check() == pair.d
        assert mutate_pair(once, k) == pair
        pair = once


def test_frozen_mutation_rejected():
    pair = PAIRS[0]
    frozen = pair.Jf[0]
    with pytest.raises(ValidationError):
        mutate_pair(pair, frozen)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twisted_exchange_quiver_families(n):
    for q in all_orientations(2 * n - 2):
        for flat in "<>":
            tw = twist(q, flat)
            arrows = btilde_quiver(tw)
            assert arrows == pair_arrows(pair_of_quiver(tw))


def test_twisted_pair_lives_on_the_type_a_word():
    tw = twist(QuiverSpec.sink_chain(4), "<")
    pair = pair_of_quiver(tw)
    assert set(pair.J) == set(tw.bar.vertices)
    assert set(pair.Je) == set(tw.exchangeable())
    assert set(pair.d) == {2}


def test_seed_mutation_with_unit_variables():
    phi = build_phiT(twist(QuiverSpec.sink_chain(2), ">"))
    seed = initial_seed(phi.source, phi.images)
    for k in phi.source.Je:
        nxt, data = mutate_seed(seed, k)
        assert seed.variable(k) * nxt.variable(k) == exchange_rhs(seed, data)
        assert nxt.pair == mutate_pair(seed.pair, k)


def test_seed_needs_every_image():
    pair = PAIRS[0]
    with pytest.raises(ValidationError):
        initial_seed(pair, {})
