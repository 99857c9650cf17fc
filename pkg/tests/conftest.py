"""Shared instance builders and verified parameter pools for the suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fano212.cyclotomic import cyc
from fano212.model import (
    ModelTriple,
    Side,
    determinantal_quartic,
    model_from_matrices,
    quartic_smooth,
    validate_model,
)

# (order, weights, exponents) combinations verified to admit smooth swap
# instances; spans orders 2, 4, 6, 8 with varied weights and exponents.
SWAP_COMBOS = [
    (2, (0, 0, 0, 0), (0, 0, 0)),
    (2, (0, 0, 0, 0), (0, 0, 1)),
    (2, (1, 1, 1, 1), (0, 1, 1)),
    (2, (1, 1, 1, 1), (1, 1, 1)),
    (4, (0, 0, 2, 2), (0, 1, 2)),
    (4, (0, 0, 2, 2), (0, 1, 3)),
    (4, (0, 0, 2, 2), (0, 2, 3)),
    (4, (0, 0, 2, 2), (1, 2, 3)),
    (4, (1, 1, 3, 3), (0, 1, 2)),
    (4, (1, 1, 3, 3), (0, 2, 3)),
    (6, (0, 0, 2, 4), (0, 2, 4)),
    (6, (0, 0, 2, 4), (0, 3, 4)),
    (6, (0, 0, 2, 4), (0, 2, 3)),
    (6, (0, 2, 2, 4), (0, 2, 5)),
    (6, (0, 2, 2, 4), (0, 2, 4)),
    (6, (1, 1, 3, 5), (1, 3, 4)),
    (6, (1, 1, 3, 5), (1, 3, 5)),
    (6, (0, 2, 4, 4), (0, 1, 4)),
    (6, (0, 2, 4, 4), (1, 2, 4)),
    (8, (0, 2, 4, 6), (0, 1, 4)),
    (8, (0, 2, 4, 6), (0, 3, 4)),
    (8, (0, 2, 4, 6), (0, 4, 5)),
    (8, (1, 3, 5, 7), (0, 1, 5)),
    (8, (1, 3, 5, 7), (0, 3, 7)),
    (8, (1, 3, 5, 7), (1, 2, 5)),
]

# (order, weights, weights2, exponents) for diagonal non-swap actions.
DIAGONAL_COMBOS = [
    (2, (0, 0, 1, 1), (0, 1, 0, 1), (0, 0, 1)),
    (2, (0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1)),
    (2, (0, 1, 1, 0), (0, 0, 1, 1), (0, 0, 1)),
    (4, (0, 1, 2, 3), (0, 2, 1, 3), (0, 0, 1)),
    (4, (0, 1, 2, 3), (0, 2, 1, 3), (0, 0, 3)),
    (4, (0, 1, 2, 3), (0, 2, 1, 3), (0, 1, 1)),
]


def random_rational_matrix(rng, lo=-3, hi=3):
    return [[Fraction(rng.randint(lo, hi)) for _ in range(4)] for _ in range(4)]


def planted_quartic_point_model(seed: int, point=(1, 1, 2), entry_range=3):
    """A valid model with a known rational point on its determinantal
    quartic: the third matrix is corrected by a rank-one term so the pencil
    member at `point` acquires a kernel."""
    rng = random.Random(seed)
    p = [Fraction(v) for v in point]
    while True:
        m1 = random_rational_matrix(rng, -entry_range, entry_range)
        m2 = random_rational_matrix(rng, -entry_range, entry_range)
        m3 = random_rational_matrix(rng, -entry_range, entry_range)
        u = [Fraction(rng.randint(-2, 2)) for _ in range(4)]
        uu = sum(x * x for x in u)
        if uu == 0:
            continue
        b = [
            [p[0] * m1[j][k] + p[1] * m2[j][k] + p[2] * m3[j][k] for k in range(4)]
            for j in range(4)
        ]
        bu = [sum(b[j][k] * u[k] for k in range(4)) for j in range(4)]
        delta = [
            [Fraction(-bu[j] * u[k], p[2] * uu) for k in range(4)] for j in range(4)
        ]
        m3 = [[m3[j][k] + delta[j][k] for k in range(4)] for j in range(4)]
        try:
            model = model_from_matrices([m1, m2, m3])
            validate_model(model)
            q = determinantal_quartic(model)
        except Exception:
            continue
        pt = [cyc(v) for v in p]
        if not q.evaluate(pt).is_zero():
            continue
        if not quartic_smooth(q):
            continue
        return model, tuple(pt)


def adjugate4(m):
    a = [[Fraction(0)] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            rows = [r for r in range(4) if r != i]
            cols = [c for c in range(4) if c != j]
            s = [[m[r][c] for c in cols] for r in rows]
            d = (
                s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1])
                - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
                + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0])
            )
            a[j][i] = (-1) ** (i + j) * d
    return a


def singular_quartic_model(seed: int, entry_range=1):
    """A valid model whose determinantal quartic is singular at (1, 0, 0):
    the first matrix is singular and the trace pairings of its adjugate with
    the other two matrices are corrected to zero."""
    rng = random.Random(seed)
    while True:
        m1 = random_rational_matrix(rng, -entry_range, entry_range)
        m1[3] = [m1[0][k] + m1[1][k] for k in range(4)]
        adj = adjugate4(m1)
        if all(v == 0 for row in adj for v in row):
            continue
        m2 = random_rational_matrix(rng, -entry_range, entry_range)
        m3 = random_rational_matrix(rng, -entry_range, entry_range)

        def fix(m):
            t = sum(adj[i][j] * m[j][i] for i in range(4) for j in range(4))
            for i in range(4):
                for j in range(4):
                    if adj[i][j] != 0:
                        m[j][i] -= t / adj[i][j]
                        return True
            return False

        if not (fix(m2) and fix(m3)):
            continue
        try:
            model = model_from_matrices([m1, m2, m3])
            validate_model(model)
            q = determinantal_quartic(model)
        except Exception:
            continue
        p = [cyc(1), cyc(0), cyc(0)]
        if q.evaluate(p).is_zero() and all(
            q.derivative(i).evaluate(p).is_zero() for i in range(3)
        ):
            return model


@pytest.fixture(scope="session")
def planted_model():
    return planted_quartic_point_model(seed=7)


@pytest.fixture(scope="session")
def singular_model():
    return singular_quartic_model(seed=11)
