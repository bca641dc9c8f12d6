"""Builders and independent reference computations shared by the test modules."""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from importlib import resources
from pathlib import Path

from mvmoment.exactalg import ExtScalar
from mvmoment.model import ActionModel, StratumDatum, load_file

FIXTURES = Path(__file__).parent / "fixtures"


def corpus_path(name: str) -> str:
    return str(resources.files("mvmoment") / "corpus" / name)


def corpus_model(name: str) -> ActionModel:
    return load_file(corpus_path(name + ".json"))


def fixture_model(name: str) -> ActionModel:
    return load_file(FIXTURES / (name + ".json"))


def rand_matrix(rng: random.Random, rows: int, cols: int, lo: int, hi: int) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def rand_unimodular(rng: random.Random, n: int, steps: int = 8) -> list[list[int]]:
    """Random product of elementary row operations, signs and swaps."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n == 1:
            m[0][0] *= -1
            continue
        i, j = rng.sample(range(n), 2)
        op = rng.randrange(3)
        if op == 0:
            k = rng.choice([-2, -1, 1, 2])
            m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        elif op == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return m


def det(m) -> Fraction:
    """Leibniz formula; fine for the tiny matrices used here."""
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = Fraction(sign)
        for r, c in enumerate(perm):
            term *= m[r][c]
        total += term
    return total


def determinantal_divisors(m, ncols: int) -> list[int]:
    """Elementary divisors as ratios of gcds of k x k minors."""
    rows = len(m)
    gcds = [1]
    for k in range(1, min(rows, ncols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(ncols), k):
                g = math.gcd(g, int(det([[m[r][c] for c in cs] for r in rs])))
        if g == 0:
            break
        gcds.append(g)
    return [gcds[k] // gcds[k - 1] for k in range(1, len(gcds))]


def ext(*coeffs) -> ExtScalar:
    """``ext(a, b)`` is ``a + b*s1``."""
    return ExtScalar({i: Fraction(c) for i, c in enumerate(coeffs) if c})


def rand_ext(rng: random.Random, n_symbols: int) -> ExtScalar:
    return ExtScalar({k: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for k in range(n_symbols) if rng.random() < 0.6})


def stratum(label, stab, weights, r_p, anchor) -> StratumDatum:
    return StratumDatum(
        label,
        tuple(tuple(r) for r in stab),
        tuple(tuple(w) for w in weights),
        r_p,
        tuple(Fraction(x) for x in anchor),
    )


def period_model(periods, n: int, symbols=("1",), strata=(), half_dim=None, complete=False) -> ActionModel:
    rows = tuple(tuple(x if isinstance(x, ExtScalar) else ext(x) for x in row) for row in periods)
    return ActionModel(
        torus_dim=n,
        half_dim=n if half_dim is None else half_dim,
        betti1=len(rows),
        symbols=tuple(symbols),
        strata=tuple(strata),
        periods=rows,
        complete_strata=complete,
    )


def rand_period_model(rng: random.Random, max_b1: int = 4, max_n: int = 3, max_symbols: int = 2) -> ActionModel:
    n = rng.randint(1, max_n)
    b1 = rng.randint(0, max_b1)
    s = rng.randint(1, max_symbols)
    symbols = ("1", "s1")[:s]
    periods = []
    for _ in range(b1):
        row = []
        for _ in range(n):
            row.append(rand_ext(rng, s) if rng.random() < 0.7 else ExtScalar())
        periods.append(tuple(row))
    return period_model(periods, n, symbols)
