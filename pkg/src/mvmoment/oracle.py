"""Brute-force reference implementations used to cross-check the main code paths.

Nothing here imports from the rest of the package except for reading plain
fields off a cone or root system; duplication of small routines is on purpose.
They are slow and meant for small test instances only.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence


def lattice_generates(vectors: Sequence[Sequence[int]], n: int, bound: int) -> bool:
    """Is every standard basis vector of Z^n an integer combination with coefficients in [-bound, bound]?

    All but the last vector's coefficients are enumerated; the last coefficient
    is then forced, and accepted only if it is an integer within the bound.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    vecs = [list(map(int, v)) for v in vectors]
    if n == 0:
        return True
    if not vecs:
        return False
    rng = range(-bound, bound + 1)
    *head, last = vecs
    for i in range(n):
        target = [int(j == i) for j in range(n)]
        found = False
        for coeffs in itertools.product(rng, repeat=len(head)):
            rest = [t - sum(c * v[k] for c, v in zip(coeffs, head)) for k, t in enumerate(target)]
            if _integer_multiple(rest, last, bound):
                found = True
                break
        if not found:
            return False
    return True


def _integer_multiple(rest: list[int], v: list[int], bound: int) -> bool:
    lam = None
    for r, x in zip(rest, v):
        if x == 0:
            if r != 0:
                return False
            continue
        if r % x:
            return False
        q = r // x
        if lam is None:
            lam = q
        elif lam != q:
            return False
    if lam is None:
        return True  # rest == 0 and v == 0
    return abs(lam) <= bound


def _fm_feasible(rows: list[tuple[list[Fraction], Fraction, bool]], nvars: int) -> bool:
    """Feasibility of ``{ a.x = b (eq) / a.x >= b }`` by Fourier-Motzkin elimination."""
    for var in range(nvars):
        eq = next((r for r in rows if r[2] and r[0][var] != 0), None)
        if eq is not None:
            a, b, _ = eq
            out = []
            for r in rows:
                if r is eq:
                    continue
                c = r[0][var]
                if c == 0:
                    out.append(r)
                    continue
                f = c / a[var]
                out.append(([x - f * y for x, y in zip(r[0], a)], r[1] - f * b, r[2]))
            rows = out
            continue
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        rows = [r for r in rows if r[0][var] == 0]
        for p in pos:
            for q in neg:
                fp, fq = p[0][var], -q[0][var]
                rows.append(([fq * x + fp * y for x, y in zip(p[0], q[0])], fq * p[1] + fp * q[1], False))
    for a, b, is_eq in rows:
        if is_eq and b != 0:
            return False
        if not is_eq and b > 0:
            return False
    return True


def cone_membership_by_lp_free_search(c, x: Sequence) -> bool:
    """Decide ``x in cone(c.generators) + span(c.lineality)`` without using the H-rep.

    Unknowns: nonnegative weights on generators, free weights on lineality.
    """
    gens = [list(map(Fraction, g)) for g in c.generators]
    lin = [list(map(Fraction, l)) for l in c.lineality]
    cols = gens + lin
    nv = len(cols)
    dim = len(x)
    rows = []
    for k in range(dim):
        rows.append(([col[k] for col in cols], Fraction(x[k]), True))
    for i in range(len(gens)):
        rows.append(([Fraction(int(j == i)) for j in range(nv)], Fraction(0), False))
    return _fm_feasible(rows, nv)


def weyl_orbit(r, x: Sequence) -> set[tuple[Fraction, ...]]:
    """Closure of ``{x}`` under the simple reflections ``x -> x - <a_i, x> a_i^vee``."""
    roots = [list(map(Fraction, a)) for a in r.simple_roots]
    coroots = [list(map(Fraction, a)) for a in r.coroots]
    start = tuple(Fraction(v) for v in x)
    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for a, av in zip(roots, coroots):
                s = sum(ai * pi for ai, pi in zip(a, p))
                q = tuple(pi - s * vi for pi, vi in zip(p, av))
                if q not in orbit:
                    orbit.add(q)
                    nxt.append(q)
        frontier = nxt
        if len(orbit) > 100000:
            raise RuntimeError("orbit does not close; Weyl group is not finite")
    return orbit
