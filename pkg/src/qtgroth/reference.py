"""Reference values used by the self-test.

Inverse quantum Cartan tables map ``i`` to ``(displayed columns r, nonzero
entries {(j, r): value})``; every displayed entry not listed is zero.
"""

INVERSE_CARTAN_B2 = {
    1: ([-2, -4, -6, -8, -10, -12, -14, -16],
        {(1, -2): 1, (1, -4): 1, (1, -8): -1, (1, -10): -1, (1, -14): 1, (1, -16): 1,
         (2, -2): 1, (2, -4): 1, (2, -8): -1, (2, -10): -1, (2, -14): 1, (2, -16): 1}),
    2: ([-1, -3, -5, -7, -9, -11, -13, -15],
        {(1, -3): 1, (1, -9): -1, (1, -15): 1,
         (2, -1): 1, (2, -5): 1, (2, -7): -1, (2, -11): -1, (2, -13): 1}),
}

_EVEN = [-2, -4, -6, -8, -10, -12, -14, -16, -18]

INVERSE_CARTAN_B5 = {
    1: (_EVEN, {(1, -2): 1, (1, -16): 1, (2, -4): 1, (2, -14): 1, (3, -6): 1, (3, -12): 1,
                (4, -8): 1, (4, -10): 1, (5, -8): 1, (5, -10): 1}),
    2: (_EVEN, {(1, -4): 1, (1, -14): 1, (2, -2): 1, (2, -6): 1, (2, -12): 1, (2, -16): 1,
                (3, -4): 1, (3, -8): 1, (3, -10): 1, (3, -14): 1, (4, -6): 1, (4, -8): 1,
                (4, -10): 1, (4, -12): 1, (5, -6): 1, (5, -8): 1, (5, -10): 1, (5, -12): 1}),
    3: (_EVEN, {(1, -6): 1, (1, -12): 1, (2, -4): 1, (2, -8): 1, (2, -10): 1, (2, -14): 1,
                (3, -2): 1, (3, -6): 1, (3, -8): 1, (3, -10): 1, (3, -12): 1, (3, -16): 1,
                (4, -4): 1, (4, -6): 1, (4, -8): 1, (4, -10): 1, (4, -12): 1, (4, -14): 1,
                (5, -4): 1, (5, -6): 1, (5, -8): 1, (5, -10): 1, (5, -12): 1, (5, -14): 1}),
    4: (_EVEN, {(1, -8): 1, (1, -10): 1, (2, -6): 1, (2, -8): 1, (2, -10): 1, (2, -12): 1,
                (3, -4): 1, (3, -6): 1, (3, -8): 1, (3, -10): 1, (3, -12): 1, (3, -14): 1,
                (4, -2): 1, (4, -4): 1, (4, -6): 1, (4, -8): 1, (4, -10): 1, (4, -12): 1,
                (4, -14): 1, (4, -16): 1, (5, -2): 1, (5, -4): 1, (5, -6): 1, (5, -8): 1,
                (5, -10): 1, (5, -12): 1, (5, -14): 1, (5, -16): 1}),
    5: ([-1, -3, -5, -7, -9, -11, -13, -15, -17],
        {(1, -9): 1, (2, -7): 1, (2, -11): 1, (3, -5): 1, (3, -9): 1, (3, -13): 1,
         (4, -3): 1, (4, -7): 1, (4, -11): 1, (4, -15): 1,
         (5, -1): 1, (5, -5): 1, (5, -9): 1, (5, -13): 1, (5, -17): 1}),
}

# simple-module dictionaries between the type A_{2n-1} and type B_n windows,
# as (source monomial, target monomial) literal pairs
AB_DICTIONARY = {
    (2, "AtoB"): [
        ("Y(1,0)", "Y(1,0)"), ("Y(1,-2)", "Y(2,-5)"), ("Y(1,-4)", "Y(2,-3)"),
        ("Y(2,-1)", "Y(2,-1)"), ("Y(2,-3)", "Y(2,-5)Y(2,-3)"), ("Y(3,-2)", "Y(1,-2)"),
    ],
    (2, "BtoA"): [
        ("Y(1,0)", "Y(1,0)"), ("Y(1,-4)", "Y(1,-4)Y(1,-2)"), ("Y(2,-1)", "Y(2,-1)"),
        ("Y(2,-3)", "Y(1,-4)"), ("Y(2,-5)", "Y(1,-2)"), ("Y(1,-2)", "Y(3,-2)"),
    ],
    (3, "AtoB"): [
        ("Y(1,0)", "Y(1,0)"), ("Y(1,-2)", "Y(1,-4)"), ("Y(1,-4)", "Y(3,-11)"),
        ("Y(1,-6)", "Y(3,-5)"), ("Y(1,-8)", "Y(1,-12)"), ("Y(2,-1)", "Y(2,-2)"),
        ("Y(2,-3)", "Y(3,-7)"), ("Y(2,-5)", "Y(3,-5)Y(3,-11)"), ("Y(2,-7)", "Y(3,-9)"),
        ("Y(3,-2)", "Y(3,-3)"), ("Y(3,-4)", "Y(3,-7)Y(3,-5)"), ("Y(3,-6)", "Y(3,-11)Y(3,-9)"),
        ("Y(4,-3)", "Y(2,-4)"), ("Y(4,-5)", "Y(2,-8)"), ("Y(5,-4)", "Y(1,-6)"),
    ],
    (3, "BtoA"): [
        ("Y(1,0)", "Y(1,0)"), ("Y(1,-4)", "Y(1,-2)"), ("Y(1,-8)", "Y(1,-6)Y(1,-4)"),
        ("Y(1,-12)", "Y(1,-8)"), ("Y(2,-2)", "Y(2,-1)"), ("Y(2,-6)", "Y(2,-3)Y(1,-6)"),
        ("Y(2,-10)", "Y(1,-4)Y(2,-7)"), ("Y(3,-3)", "Y(3,-2)"), ("Y(3,-5)", "Y(1,-6)"),
        ("Y(3,-7)", "Y(2,-3)"), ("Y(3,-9)", "Y(2,-7)"), ("Y(3,-11)", "Y(1,-4)"),
        ("Y(2,-4)", "Y(4,-3)"), ("Y(2,-8)", "Y(4,-5)"), ("Y(1,-6)", "Y(5,-4)"),
    ],
}
