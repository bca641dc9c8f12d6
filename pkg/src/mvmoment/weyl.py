"""Weyl chambers from root data and chamber cross-sections of image polytopes.

Coordinates: a point ``x`` pairs with a simple root ``a`` by the dot product,
and the simple reflection is ``x -> x - <a, x> a_vee``.  When coroots are not
given they default to the standard basis, which means the simple roots are the
rows of the Cartan matrix (e.g. A2 is ``(2, -1), (-1, 2)``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import dot, rank
from .geometry import (
    Cone,
    EmptyPolytopeError,
    PolySet,
    Polytope,
    cone_from_inequalities,
    polytope_from_inequalities,
    product_polyset,
)


class RootSystemError(ValueError):
    pass


class ChamberMissError(ValueError):
    pass


@dataclass(frozen=True)
class RootSystem:
    simple_roots: tuple[tuple[int, ...], ...]
    coroots: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def dim(self) -> int:
        return len(self.simple_roots[0]) if self.simple_roots else 0

    def cartan_matrix(self) -> list[list[Fraction]]:
        return [[dot(a, b) for b in self.coroots] for a in self.simple_roots]

    def reflect(self, i: int, x: Sequence) -> tuple[Fraction, ...]:
        s = dot(self.simple_roots[i], x)
        return tuple(Fraction(p) - s * v for p, v in zip(x, self.coroots[i]))


def make_root_system(simple_roots: Sequence[Sequence[int]], coroots: Sequence[Sequence[int]] | None = None) -> RootSystem:
    roots = tuple(tuple(int(x) for x in a) for a in simple_roots)
    if coroots is None:
        k = len(roots)
        cor = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    else:
        cor = tuple(tuple(x for x in a) for a in coroots)
    r = RootSystem(roots, cor)
    problems = root_system_problems(r)
    if problems:
        raise RootSystemError("; ".join(problems))
    return r


def root_system_problems(r: RootSystem) -> list[str]:
    """Everything wrong with the root data, as messages; empty means valid."""
    out = []
    k = r.rank
    if k == 0:
        return ["no simple roots"]
    d = r.dim
    if any(len(a) != d for a in r.simple_roots) or len(r.coroots) != k or any(len(a) != d for a in r.coroots):
        return ["simple roots and coroots must be k vectors of one common length"]
    if rank(r.simple_roots, d) != k:
        out.append("simple roots are linearly dependent")
    if rank(r.coroots, d) != k:
        out.append("coroots are linearly dependent")
    cartan = r.cartan_matrix()
    for i in range(k):
        for j in range(k):
            c = cartan[i][j]
            if c.denominator != 1:
                out.append(f"Cartan entry ({i},{j}) = {c} is not an integer")
            elif i == j and c != 2:
                out.append(f"Cartan entry ({i},{i}) = {c}, expected 2")
            elif i != j and c > 0:
                out.append(f"Cartan entry ({i},{j}) = {c} is positive")
            elif i != j and (c == 0) != (cartan[j][i] == 0):
                out.append(f"Cartan entries ({i},{j}) and ({j},{i}) disagree on vanishing")
            elif i < j and cartan[i][j] * cartan[j][i] > 3:
                out.append(f"Cartan entries ({i},{j}) give an infinite Weyl group")
    return out


# shipped families, Cartan-matrix rows as simple roots
FAMILIES = {
    "A1": ((2,),),
    "A1xA1": ((2, 0), (0, 2)),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "C2": ((2, -1), (-2, 2)),
}


def family(name: str) -> RootSystem:
    try:
        return make_root_system(FAMILIES[name])
    except KeyError:
        raise RootSystemError(f"unknown root family {name!r}; known: {', '.join(FAMILIES)}") from None


def weyl_chamber(r: RootSystem) -> Cone:
    """``{x : <a_i, x> >= 0}`` for the simple roots."""
    problems = root_system_problems(r)
    if problems:
        raise RootSystemError("; ".join(problems))
    return cone_from_inequalities(r.simple_roots, (), r.dim)


def clip_to_chamber(full: Polytope, chamber: Cone) -> Polytope:
    """``full`` intersected with ``chamber`` x (everything) on the trailing coordinates."""
    s = chamber.ambient_dim
    n = full.ambient_dim
    if s > n:
        raise ValueError("chamber has more coordinates than the polytope")
    pad = (Fraction(0),) * (n - s)
    facets = list(full.facets) + [(tuple(h) + pad, Fraction(0)) for h in chamber.inequalities]
    equations = list(full.equations) + [(tuple(e) + pad, Fraction(0)) for e in chamber.equations]
    try:
        return polytope_from_inequalities(facets, equations, n)
    except EmptyPolytopeError:
        raise ChamberMissError("image misses the chamber") from None


def cross_section_image(full: Polytope, chamber: Cone, tc_dim: int) -> PolySet:
    """Clip the authored image polytope to the chamber and append ``tc_dim`` free directions."""
    return product_polyset(clip_to_chamber(full, chamber), tc_dim)
