import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _dictionary_oracle import a_to_b, b_to_a
from qtgroth.correspondence import (JA, JB, LusztigParam, ThreeMove, WellArrangedMap, beta_move, delta_B,
                                    fundamental_dictionary, hat_JA, relabel_to_JA, run_transform, transport,
                                    tropical_braid)
from qtgroth.errors import ValidationError
from qtgroth.quivers import QuiverSpec, ar_quiver, twist


def _chain(rank):
    return QuiverSpec.from_xi([-(i - 1) for i in range(1, rank + 1)])


def _as_cells(monomial):
    return tuple(sorted((i, r) for i, r, _ in monomial.items))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_type_b_cells(n):
    delta = delta_B(n)
    assert len(delta.support) == n * (2 * n - 1)
    assert delta.is_well_arranged() and delta.is_reduced()
    assert len(JB(n)) == len(JA(n)) == n * (2 * n - 1)


def test_type_b_cells_rank_five_contains_extremes():
    support = delta_B(5).support
    assert (5, -7) in support
    assert (9, -14) in support
    assert (5, -21) in support


def test_move_counts():
    for n, count in [(2, 1), (3, 3), (4, 6), (5, 10)]:
        moves, delta = run_transform(n)
        assert len(moves) == count
        assert delta == hat_JA(n)


def test_single_move_for_rank_two():
    moved, move = beta_move(delta_B(2), 2, -4)
    assert move.before == ((2, -3), (1, -4), (2, -5))
    assert move.after == ((1, -3), (2, -4), (1, -5))
    assert moved == hat_JA(2)


@pytest.mark.parametrize("i0,rr0", [(2, -2), (3, -4), (2, -3), (1, -4), (2, 2)])
def test_move_preconditions(i0, rr0):
    with pytest.raises(ValidationError):
        beta_move(delta_B(2), i0, rr0)


def test_grid_bounds_enforced():
    with pytest.raises(ValidationError):
        WellArrangedMap(2, frozenset({(1, 2)}))
    with pytest.raises(ValidationError):
        WellArrangedMap(3, frozenset({(6, -2)}))


def test_parameters_must_live_on_support():
    delta = delta_B(2)
    with pytest.raises(ValidationError):
        LusztigParam(delta, {(1, -1): 1})
    with pytest.raises(ValidationError):
        LusztigParam(delta, {(1, 0): -1})
    assert LusztigParam(delta, {(1, 0): 2, (2, -3): 0}).nonzero() == {(1, 0): 2}


@given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 20))
def test_tropical_braid_is_involutive_and_weight_preserving(a, b, c):
    x, y, z = tropical_braid(a, b, c)
    assert tropical_braid(x, y, z) == (a, b, c)
    # sums of adjacent entries swap places
    assert a + b == y + z and b + c == x + y


def test_three_move_round_trip():
    move = ThreeMove(2, -4, ((2, -3), (1, -4), (2, -5)), ((1, -3), (2, -4), (1, -5)))
    c = {(2, -3): 2, (1, -4): 1, (2, -5): 5, (3, 0): 7}
    assert move.backward(move.forward(c)) == c
    assert move.forward(c)[(3, 0)] == 7


@pytest.mark.parametrize("n", [2, 3, 4])
def test_relabel_table_matches_column_rank(n):
    _, delta = run_transform(n)
    images = relabel_to_JA({cell: 1 for cell in delta.support}, n)
    assert sorted(images) == sorted(JA(n))
    with pytest.raises(ValidationError):
        relabel_to_JA({(1, 1): 1}, n)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_fundamental_images_match_closed_forms(n):
    forward = {_as_cells(a): _as_cells(b) for a, b in fundamental_dictionary(n, "AtoB")}
    backward = {_as_cells(a): _as_cells(b) for a, b in fundamental_dictionary(n, "BtoA")}
    assert forward == {k: tuple(sorted(v)) for k, v in a_to_b(n).items()}
    assert backward == {k: tuple(sorted(v)) for k, v in b_to_a(n).items()}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_transport_conserves_weight(n, seed):
    rng = random.Random(seed)
    tw = twist(_chain(2 * n - 2), "<")
    unfold = {((a if a <= n else 2 * n - a), rr): (a, rr) for a, rr in tw.hat.vertices}
    plain = ar_quiver(_chain(2 * n - 1))
    for _ in range(40):
        c = {v: rng.randint(1, 4) for v in JB(n) if rng.random() < 0.4}
        d = transport(c, n, "BtoA")
        weight_b = [sum(c[v] * tw.hat.roots[unfold[v]][t] for v in c) for t in range(2 * n - 1)]
        weight_a = [sum(d[v] * plain.roots[(v[0], 2 * v[1])][t] for v in d) for t in range(2 * n - 1)]
        assert weight_a == weight_b


def _params(cells):
    return st.dictionaries(st.sampled_from(cells), st.integers(1, 5), max_size=len(cells))


@pytest.mark.parametrize("n", [2, 3, 4])
@given(data=st.data())
def test_round_trips(n, data):
    c = data.draw(_params(JA(n)))
    assert transport(transport(c, n, "AtoB"), n, "BtoA") == c
    d = data.draw(_params(JB(n)))
    assert transport(transport(d, n, "BtoA"), n, "AtoB") == d


def test_zero_maps_to_zero():
    assert transport({}, 3, "AtoB") == {}
    assert transport({(1, 0): 0}, 3, "BtoA") == {}


def test_transport_validation():
    with pytest.raises(ValidationError):
        transport({(1, 1): 1}, 2, "AtoB")
    with pytest.raises(ValidationError):
        transport({(1, 0): -1}, 2, "BtoA")
    with pytest.raises(ValidationError):
        transport({}, 2, "sideways")
    with pytest.raises(ValidationError):
        delta_B(1)
