"""Lusztig parameter transport between the type B window and the type A_{2n-1} window.

Positions of the grid live in ``(residue, doubled column)`` coordinates, with
residues in ``1..2n-1`` and doubled columns running from ``0`` down to
``-4(2n-3)`` (``-5`` when n = 2).  A well-arranged map is the set of occupied positions.  The
type B class is the twisted AR quiver of the linear sink chain with ``'<'``;
the type A class is the AR quiver of the linear sink chain of rank ``2n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Tuple

from .cartan import build_cartan
from .errors import ConsistencyError, ValidationError
from .quivers import QuiverSpec, ar_quiver, comb_ar_quiver, reading_order, twist
from .torus import YMonomial

__all__ = [
    "WellArrangedMap",
    "ThreeMove",
    "LusztigParam",
    "delta_B",
    "hat_JA",
    "beta_move",
    "run_transform",
    "relabel_to_JA",
    "transport",
    "fundamental_dictionary",
    "tropical_braid",
    "JA",
    "JB",
]

Cell = Tuple[int, int]


def _lowest(n: int) -> int:
    # the spin row of the type B class reaches -(6n - 7) in doubled units, one
    # half step below -4(2n - 3) when n = 2
    return min(-4 * (2 * n - 3), -(6 * n - 7))


def _commute(i: int, j: int) -> bool:
    return abs(i - j) != 1


@dataclass(frozen=True)
class WellArrangedMap:
    n: int
    support: FrozenSet[Cell]

    def __post_init__(self):
        low = _lowest(self.n)
        for a, rr in self.support:
            if not (1 <= a <= 2 * self.n - 1 and low <= rr <= 0):
                raise ValidationError(f"cell {(a, rr)} lies outside the grid for n={self.n}")

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.support

    def __len__(self) -> int:
        return len(self.support)

    def columns(self) -> Dict[int, List[int]]:
        cols: Dict[int, List[int]] = {}
        for a, rr in self.support:
            cols.setdefault(rr, []).append(a)
        return {rr: sorted(v) for rr, v in cols.items()}

    def is_well_arranged(self) -> bool:
        return all(_commute(a, b) for res in self.columns().values()
                   for x, a in enumerate(res) for b in res[x + 1:])

    def reading(self) -> List[Cell]:
        """Cells in reading order: columns from 0 downwards, residues ascending inside a column."""
        return sorted(self.support, key=lambda c: (-c[1], c[0]))

    def word(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.reading())

    def permutation(self) -> Tuple[int, ...]:
        """The Weyl group element of the reading, as a permutation of 1..2n in one-line form."""
        perm = list(range(1, 2 * self.n + 1))
        for a in self.word():
            perm[a - 1], perm[a] = perm[a], perm[a - 1]
        return tuple(perm)

    def is_reduced(self) -> bool:
        perm = self.permutation()
        inversions = sum(1 for x in range(len(perm)) for y in range(x + 1, len(perm)) if perm[x] > perm[y])
        return inversions == len(self.support)


@dataclass(frozen=True)
class LusztigParam:
    """A parameter on a well-arranged map: cell -> nonnegative integer."""

    delta: WellArrangedMap
    c: Mapping[Cell, int]

    def __post_init__(self):
        for cell, value in self.c.items():
            if cell not in self.delta:
                raise ValidationError(f"parameter cell {cell} is not in the support")
            if value < 0:
                raise ValidationError(f"parameter at {cell} is negative")

    def value(self, cell: Cell) -> int:
        return self.c.get(cell, 0)

    def nonzero(self) -> Dict[Cell, int]:
        return {k: v for k, v in self.c.items() if v}


def tropical_braid(left: int, middle: int, right: int) -> Tuple[int, int, int]:
    """Lusztig's piecewise-linear change of parameters across a braid move (i,j,i) -> (j,i,j)."""
    low = min(left, right)
    return middle + right - low, low, left + middle - low


@dataclass(frozen=True)
class ThreeMove:
    """One braid move between adjacent columns, with its parameter rule."""

    residue: int
    column: int            # doubled, even
    before: Tuple[Cell, Cell, Cell]
    after: Tuple[Cell, Cell, Cell]

    def forward(self, c: Mapping[Cell, int]) -> Dict[Cell, int]:
        return self._move(c, self.before, self.after)

    def backward(self, c: Mapping[Cell, int]) -> Dict[Cell, int]:
        return self._move(c, self.after, self.before)

    @staticmethod
    def _move(c, src, dst) -> Dict[Cell, int]:
        out = {k: v for k, v in c.items() if k not in src}
        for cell, value in zip(dst, tropical_braid(*(c.get(s, 0) for s in src))):
            if value:
                out[cell] = value
        return out


def delta_B(n: int) -> WellArrangedMap:
    """Occupied cells of the type B twisted class (doubled columns)."""
    if n < 2:
        raise ValidationError("the correspondence needs n >= 2")
    cells = set()
    for a in range(n + 1, 2 * n):
        cells.update((a, 2 * (-a + 2 - 2 * k)) for k in range(2 * n - a))
    cells.update((n, -2 * n + 3 - 2 * k) for k in range(2 * n - 1))
    for a in range(1, n):
        cells.update((a, 2 * (-a + 1 - 2 * k)) for k in range(2 * n - 1 - a))
    delta = WellArrangedMap(n, frozenset(cells))
    if not (delta.is_well_arranged() and delta.is_reduced()):
        raise ConsistencyError("type B cell set is not well-arranged and reduced")
    tw = twist(_sink_chain(2 * n - 2), "<")
    if set(tw.hat.vertices) != cells:
        raise ConsistencyError("type B cell set differs from the twisted AR quiver")
    return delta


def hat_JA(n: int) -> WellArrangedMap:
    """The cell set reached after all braid moves, written out directly."""
    cells = set()
    for a in range(1, n):
        cells.update((a, 2 * (-a + 1 - 2 * k)) for k in range(n - a))
    cells.update((a, -4 * n + 2 * a + 3) for a in range(1, n + 1))
    for a in range(2, n + 1):
        cells.update((a, 2 * (-2 * n + a - 2 * k)) for k in range(a - 1))
    cells.update((a, -4 * n - 2 * a + 5) for a in range(1, n))
    for a in range(1, n - 1):
        cells.update((a, 2 * (-2 * n - a + 1 - 2 * k)) for k in range(n - 1 - a))
    for a in range(n + 1, 2 * n):
        cells.update((a, 2 * (-a + 2 - 2 * k)) for k in range(2 * n - a))
    return WellArrangedMap(n, frozenset(cells))


def _sink_chain(rank: int) -> QuiverSpec:
    """Linear quiver rank -> ... -> 1 with height 0 at vertex 1."""
    return QuiverSpec.from_xi([-(i - 1) for i in range(1, rank + 1)])


def beta_move(delta: WellArrangedMap, i0: int, rr0: int) -> Tuple[WellArrangedMap, ThreeMove]:
    """Braid move at residue ``i0`` and doubled column ``rr0`` (even)."""
    n = delta.n
    if rr0 % 2 or not (_lowest(n) < rr0 < 0) or not (2 <= i0 <= 2 * n - 1):
        raise ValidationError(f"no braid move at residue {i0}, doubled column {rr0}")
    for side in (rr0 + 1, rr0 - 1):
        present = {a for a, rr in delta.support if rr == side}
        if present != {i0}:
            raise ValidationError(f"column {side} must hold exactly residue {i0}, found {sorted(present)}")
    if (i0 - 1, rr0) not in delta or (i0 + 1, rr0) in delta:
        raise ValidationError(f"column {rr0} must hold residue {i0 - 1} and not {i0 + 1}")
    before = ((i0, rr0 + 1), (i0 - 1, rr0), (i0, rr0 - 1))
    after = ((i0 - 1, rr0 + 1), (i0, rr0), (i0 - 1, rr0 - 1))
    support = (delta.support - set(before)) | set(after)
    moved = WellArrangedMap(n, frozenset(support))
    if not moved.is_well_arranged() or moved.permutation() != delta.permutation():
        raise ConsistencyError(f"braid move at {(i0, rr0)} broke the reading")
    return moved, ThreeMove(i0, rr0, before, after)


def _move_schedule(n: int) -> List[Tuple[int, int]]:
    """(residue, doubled column) of every move, in the order they are applied."""
    schedule = []
    for a in range(n, 1, -1):
        for k in range(a - 2, -1, -1):
            schedule.append((a, 2 * (-2 * n + a - 2 * k)))
    return schedule


_TRANSFORMS: Dict[int, Tuple[List[ThreeMove], WellArrangedMap]] = {}


def run_transform(n: int) -> Tuple[List[ThreeMove], WellArrangedMap]:
    """Apply the braid moves to the type B class; the result is checked against the type A class."""
    if n in _TRANSFORMS:
        return _TRANSFORMS[n]
    delta = delta_B(n)
    moves = []
    for a, rr in _move_schedule(n):
        delta, move = beta_move(delta, a, rr)
        if not delta.is_reduced():
            raise ConsistencyError(f"reading stopped being reduced after the move at {(a, rr)}")
        moves.append(move)
    if delta != hat_JA(n):
        raise ConsistencyError("transformed cell set differs from the expected type A cell set")
    cartan = build_cartan("A", 2 * n - 1)
    if not comb_ar_quiver(cartan, delta.word()).same_as(_type_A_class(n)):
        raise ConsistencyError("transformed reading is not in the class of the linear type A quiver")
    _TRANSFORMS[n] = (moves, delta)
    return moves, delta


def _type_A_class(n: int):
    q = ar_quiver(_sink_chain(2 * n - 1))
    cartan = build_cartan("A", 2 * n - 1)
    return comb_ar_quiver(cartan, [q.residue[v] for v in reading_order(q)])


def JA(n: int) -> List[Cell]:
    """Vertices (residue, column) of the type A_{2n-1} AR quiver, plain integer columns."""
    return sorted(((a, -a + 1 - 2 * k) for a in range(1, 2 * n) for k in range(2 * n - a)),
                  key=lambda c: (c[0], -c[1]))


def relabel_to_JA(c: Mapping[Cell, int], n: int) -> Dict[Cell, int]:
    """Move a parameter on the transformed cells to the type A vertex set.

    Within each residue, the cell that has ``k`` cells above it goes to the
    vertex ``(residue, -residue + 1 - 2k)``.
    """
    table = _relabel_table(n)
    out = {}
    for cell, value in c.items():
        if cell not in table:
            raise ValidationError(f"{cell} is not a transformed cell for n={n}")
        if value:
            out[table[cell]] = value
    return out


def _relabel_table(n: int) -> Dict[Cell, Cell]:
    _, delta = run_transform(n)
    table = {}
    for a, rr in delta.support:
        above = sum(1 for b, ss in delta.support if b == a and ss > rr)
        table[(a, rr)] = (a, -a + 1 - 2 * above)
    return table


def _fold(n: int, a: int) -> int:
    return a if a <= n else 2 * n - a


def _check_direction(direction: str) -> str:
    key = direction.replace("->", "to").replace("→", "to").replace("2", "to").upper()
    if key not in ("ATOB", "BTOA"):
        raise ValidationError(f"direction must be AtoB or BtoA, got {direction!r}")
    return key


def transport(c: Mapping[Cell, int], n: int, direction: str) -> Dict[Cell, int]:
    """Carry a parameter across the correspondence.

    ``AtoB`` takes a parameter keyed by type A vertices ``(i, r)`` and returns
    one keyed by type B vertices ``(i, doubled r)``; ``BtoA`` is the inverse.
    Zero entries are dropped.
    """
    key = _check_direction(direction)
    moves, hat = run_transform(n)
    table = _relabel_table(n)
    delta_b = delta_B(n)
    to_b = {cell: (_fold(n, cell[0]), cell[1]) for cell in delta_b.support}
    if key == "ATOB":
        back = {v: k for k, v in table.items()}
        cur = {}
        for vertex, value in c.items():
            if vertex not in back:
                raise ValidationError(f"{vertex} is not a type A vertex for n={n}")
            if value < 0:
                raise ValidationError(f"parameter at {vertex} is negative")
            if value:
                cur[back[vertex]] = value
        for move in reversed(moves):
            cur = move.backward(cur)
        return {to_b[cell]: value for cell, value in cur.items()}
    from_b = {v: k for k, v in to_b.items()}
    cur = {}
    for vertex, value in c.items():
        if vertex not in from_b:
            raise ValidationError(f"{vertex} is not a type B vertex for n={n}")
        if value < 0:
            raise ValidationError(f"parameter at {vertex} is negative")
        if value:
            cur[from_b[vertex]] = value
    for move in moves:
        cur = move.forward(cur)
    return relabel_to_JA(cur, n)


def JB(n: int) -> List[Cell]:
    """Type B vertices ``(i, doubled r)`` of the twisted window."""
    return sorted({(_fold(n, a), rr) for a, rr in delta_B(n).support}, key=lambda c: (c[0], -c[1]))


def _monomial(c: Mapping[Cell, int]) -> YMonomial:
    return YMonomial({k: v for k, v in c.items() if v})


def fundamental_dictionary(n: int, direction: str) -> List[Tuple[YMonomial, YMonomial]]:
    """Images of all fundamental highest monomials, in vertex order of the source side."""
    key = _check_direction(direction)
    sources = JA(n) if key == "ATOB" else JB(n)
    return [(YMonomial.Y(*v), _monomial(transport({v: 1}, n, key))) for v in sources]
