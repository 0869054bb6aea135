"""Closed-form images of fundamental monomials across the A/B correspondence."""


def a_to_b(n):
    out = {}
    for i in range(1, n):
        for k in range(n - i):
            out[((i, -i + 1 - 2 * k),)] = ((i, -2 * i + 2 - 4 * k),)
    for i in range(1, n + 1):
        out[((i, -2 * n + i + 1),)] = ((n, -6 * n + 4 * i + 3),)
    for i in range(2, n + 1):
        for k in range(i - 1):
            out[((i, -2 * n + i - 1 - 2 * k),)] = ((n, -2 * n + 1 - 4 * k), (n, -6 * n + 4 * i - 1 - 4 * k))
    for i in range(1, n):
        out[((i, -2 * n - i + 1),)] = ((n, -2 * n - 4 * i + 5),)
    for i in range(1, n - 1):
        for k in range(n - 1 - i):
            out[((i, -2 * n - i - 1 - 2 * k),)] = ((i, -4 * n - 2 * i + 2 - 4 * k),)
    for i in range(n + 1, 2 * n):
        for k in range(2 * n - i):
            out[((i, -i + 1 - 2 * k),)] = ((2 * n - i, -2 * i + 4 - 4 * k),)
    return out


def b_to_a(n):
    out = {}
    for i in range(1, n):
        for k in range(n - i):
            out[((i, -2 * i + 2 - 4 * k),)] = ((i, -i + 1 - 2 * k),)
        for k in range(i):
            out[((i, -4 * n + 2 * i + 2 - 4 * k),)] = ((i - k, -2 * n + i + 1 - k), (1 + k, -2 * n - k))
    for i in range(1, n - 1):
        for k in range(n - 1 - i):
            out[((i, -4 * n - 2 * i + 2 - 4 * k),)] = ((i, -2 * n - i - 1 - 2 * k),)
    for k in range(n):
        out[((n, -2 * n + 3 - 4 * k),)] = ((n - k, -n + 1 - k),)
    for k in range(n - 1):
        out[((n, -2 * n + 1 - 4 * k),)] = ((1 + k, -2 * n - k),)
    for i in range(1, n):
        for k in range(n - i):
            out[((n - i, -2 * n - 2 * i + 4 - 4 * k),)] = ((n + i, -n - i + 1 - 2 * k),)
    return out
