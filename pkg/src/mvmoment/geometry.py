"""Rational polyhedral cones and polytopes.

Both representations are kept on every object.  Conversion uses the double
description method with the algebraic adjacency test, exact rationals
throughout.  Objects are stored in a canonical form, so dataclass equality is
set equality:

* lineality spaces are reduced echelon bases;
* rays are projected onto the orthogonal complement of the lineality space,
  scaled to coprime integers, sorted;
* inequality normals are projected onto the complement of the equation span,
  scaled to coprime integers, sorted;
* equation spans are reduced echelon bases scaled to coprime integers.

Desk scale is ambient dimension <= 6 with a few dozen generators.  The number
of intermediate rays in double description can grow like ``m ** floor(d/2)``;
past :data:`MAX_INTERMEDIATE_RAYS` a :class:`ComplexityLimitError` is raised
instead of grinding on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactalg import (
    dot,
    primitive,
    project_out,
    rank,
    rational_kernel,
    rref,
)

MAX_INTERMEDIATE_RAYS = 20000

Vec = tuple  # tuple[Fraction, ...]


class GeometryError(ValueError):
    pass


class DimensionMismatchError(GeometryError):
    pass


class ComplexityLimitError(GeometryError):
    pass


class EmptyPolytopeError(GeometryError):
    pass


class UnboundedError(GeometryError):
    pass


class DegeneratePolytopeError(GeometryError):
    pass


def _vec(v) -> Vec:
    return tuple(Fraction(x) for x in v)


def _check_dims(vectors, dim: int | None) -> int:
    vectors = list(vectors)
    if dim is None:
        if not vectors:
            raise DimensionMismatchError("ambient dimension cannot be inferred from no vectors")
        dim = len(vectors[0])
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatchError(f"expected vectors of length {dim}, got {len(v)}")
    return dim


def _echelon_basis(vectors: Sequence[Sequence], dim: int) -> tuple[Vec, ...]:
    if not vectors:
        return ()
    return tuple(tuple(row) for row in rref(vectors, dim)[0])


def _int_echelon_basis(vectors: Sequence[Sequence], dim: int) -> tuple[Vec, ...]:
    return tuple(_vec(primitive(row)) for row in _echelon_basis(vectors, dim))


def _canonical_rays(rays: Sequence[Sequence], against: Sequence[Sequence]) -> tuple[Vec, ...]:
    out = set()
    for r in rays:
        p = project_out(r, against)
        if any(p):
            out.add(_vec(primitive(p)))
    return tuple(sorted(out))


def h_to_v(inequalities: Sequence[Sequence], equations: Sequence[Sequence], dim: int) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """Extreme rays and lineality basis of ``{x : A x >= 0, E x = 0}`` (canonical)."""
    constraints = [(_vec(a), True) for a in equations] + [(_vec(a), False) for a in inequalities]
    lin: list[Vec] = [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    rays: list[Vec] = []
    seen: list[Vec] = []

    for a, is_eq in constraints:
        k = next((i for i, l in enumerate(lin) if dot(a, l) != 0), None)
        if k is not None:
            l = lin.pop(k)
            s = dot(a, l)
            if s < 0:
                l, s = tuple(-x for x in l), -s
            lin = [tuple(x - (dot(a, q) / s) * y for x, y in zip(q, l)) for q in lin]
            rays = [tuple(x - (dot(a, r) / s) * y for x, y in zip(r, l)) for r in rays]
            if not is_eq:
                rays.append(l)
            seen.append(a)
            continue

        vals = [dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        new = [r for r, v in zip(rays, vals) if v == 0]
        if not is_eq:
            new.extend(pos)
        d_eff = dim - len(lin)
        tight = {r: frozenset(i for i, c in enumerate(seen) if dot(c, r) == 0) for r in pos + neg}
        for p in pos:
            ap = dot(a, p)
            for q in neg:
                common = tight[p] & tight[q]
                if len(common) < d_eff - 2:
                    continue
                if rank([seen[i] for i in common], dim) != d_eff - 2:
                    continue
                aq = dot(a, q)
                new.append(tuple(ap * y - aq * x for x, y in zip(p, q)))
        if len(new) > MAX_INTERMEDIATE_RAYS:
            raise ComplexityLimitError(
                f"double description exceeded {MAX_INTERMEDIATE_RAYS} intermediate rays"
            )
        rays = new
        seen.append(a)

    lin_basis = _echelon_basis(lin, dim)
    return _canonical_rays(rays, lin_basis), lin_basis


@dataclass(frozen=True)
class Cone:
    """A polyhedral cone ``cone(generators) + span(lineality)``.

    Also ``{x : <h, x> >= 0 for h in inequalities, <e, x> = 0 for e in equations}``.
    """

    ambient_dim: int
    generators: tuple[Vec, ...]
    lineality: tuple[Vec, ...]
    inequalities: tuple[Vec, ...]
    equations: tuple[Vec, ...]

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionMismatchError("point has the wrong dimension")
        return all(dot(h, x) >= 0 for h in self.inequalities) and all(dot(e, x) == 0 for e in self.equations)

    def contains_cone(self, other: Cone) -> bool:
        return all(self.contains(g) for g in other.generators) and all(
            self.contains(l) and self.contains(tuple(-x for x in l)) for l in other.lineality
        )


def cone_from_generators(gens: Sequence[Sequence], lineality: Sequence[Sequence] = (), dim: int | None = None) -> Cone:
    dim = _check_dims(list(gens) + list(lineality), dim)
    # H-rep of C = generators of the dual cone
    ineqs, eqs = h_to_v(gens, lineality, dim)
    rays, lin = h_to_v(ineqs, eqs, dim)
    return Cone(dim, rays, lin, ineqs, _int_echelon_basis(eqs, dim))


def cone_from_inequalities(ineqs: Sequence[Sequence], equations: Sequence[Sequence] = (), dim: int | None = None) -> Cone:
    dim = _check_dims(list(ineqs) + list(equations), dim)
    rays, lin = h_to_v(ineqs, equations, dim)
    return cone_from_generators(rays, lin, dim)


def dual_cone(c: Cone) -> Cone:
    """``{t : <g, t> >= 0 for generators g, <l, t> = 0 for lineality l}``."""
    return cone_from_generators(c.inequalities, c.equations, c.ambient_dim)


def interior_dual_point(c: Cone) -> tuple[int, ...] | None:
    """A point of the relative interior of the dual cone, or None if there is none.

    The point is the sum of the dual's extreme rays made primitive.  It is
    strictly positive on every generator of ``c`` and vanishes on its
    lineality.  None is returned when ``c`` is a linear subspace.
    """
    if not c.inequalities:
        return None
    total = [sum(col, Fraction(0)) for col in zip(*c.inequalities)]
    theta = primitive(total)
    if not all(dot(g, theta) > 0 for g in c.generators):
        return None
    assert all(dot(l, theta) == 0 for l in c.lineality)
    return theta


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class Polytope:
    """Bounded polytope; facets ``(h, c)`` mean ``<h, x> >= c``, equations ``<g, x> = d``."""

    ambient_dim: int
    vertices: tuple[Vec, ...]
    facets: tuple[tuple[Vec, Fraction], ...]
    equations: tuple[tuple[Vec, Fraction], ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionMismatchError("point has the wrong dimension")
        return all(dot(h, x) >= c for h, c in self.facets) and all(dot(g, x) == d for g, d in self.equations)

    def active_facets(self, v: Sequence) -> list[int]:
        return [i for i, (h, c) in enumerate(self.facets) if dot(h, v) == c]


def _split_affine(row: Vec) -> tuple[Vec, Fraction]:
    # homogenized row (h, h0) encodes <h, x> + h0 >= 0, i.e. <h, x> >= -h0
    return tuple(row[:-1]), -row[-1]


def _polytope_from_cone(cone: Cone) -> Polytope:
    dim = cone.ambient_dim - 1
    if cone.lineality or any(r[-1] <= 0 for r in cone.generators):
        raise UnboundedError("polyhedron is unbounded")
    if not cone.generators:
        raise EmptyPolytopeError("polytope is empty")
    vertices = tuple(sorted(tuple(x / r[-1] for x in r[:-1]) for r in cone.generators))
    facets = []
    for row in cone.inequalities:
        h, c = _split_affine(row)
        if any(dot(h, v) == c for v in vertices):
            facets.append((h, c))
    equations = tuple(_split_affine(row) for row in cone.equations)
    return Polytope(dim, vertices, tuple(sorted(facets)), equations)


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    if not points:
        raise EmptyPolytopeError("convex hull of no points")
    dim = _check_dims(points, None)
    lifted = [_vec(p) + (Fraction(1),) for p in points]
    return _polytope_from_cone(cone_from_generators(lifted, (), dim + 1))


def polytope_from_inequalities(
    facets: Sequence[tuple[Sequence, object]],
    equations: Sequence[tuple[Sequence, object]] = (),
    dim: int | None = None,
) -> Polytope:
    """Vertices of ``{x : <h, x> >= c, <g, x> = d}``; raises if empty or unbounded."""
    dim = _check_dims([h for h, _ in facets] + [g for g, _ in equations], dim)
    ineqs = [_vec(h) + (-Fraction(c),) for h, c in facets]
    ineqs.append(tuple(Fraction(0) for _ in range(dim)) + (Fraction(1),))
    eqs = [_vec(g) + (-Fraction(d),) for g, d in equations]
    rays, lin = h_to_v(ineqs, eqs, dim + 1)
    if lin or any(r[-1] == 0 for r in rays):
        raise UnboundedError("polyhedron is unbounded")
    if not rays:
        raise EmptyPolytopeError("polytope is empty")
    return convex_hull([tuple(x / r[-1] for x in r[:-1]) for r in rays])


def polytope_edges(p: Polytope) -> list[tuple[int, int]]:
    """Index pairs of vertices joined by an edge."""
    if len(p.vertices) < 2:
        return []
    eq_normals = [g for g, _ in p.equations]
    active = [set(p.active_facets(v)) for v in p.vertices]
    edges = []
    for i in range(len(p.vertices)):
        for j in range(i + 1, len(p.vertices)):
            common = [p.facets[k][0] for k in sorted(active[i] & active[j])]
            if rank(common + eq_normals, p.ambient_dim) == p.ambient_dim - 1:
                edges.append((i, j))
    return edges


def normal_fan(p: Polytope) -> dict[Vec, Cone]:
    """Vertex -> cone spanned by the outward normals of the facets through it."""
    if p.equations:
        raise DegeneratePolytopeError("degenerate: use relative fan")
    fan = {}
    for v in p.vertices:
        outward = [tuple(-x for x in p.facets[k][0]) for k in p.active_facets(v)]
        fan[v] = cone_from_generators(outward, (), p.ambient_dim)
    return fan


# ---------------------------------------------------------------------------
# polytope times subspace


@dataclass(frozen=True)
class PolySet:
    """``{x in R^n : frame . x in polytope}``: a polytope times the kernel of ``frame``.

    ``frame`` has one row per polytope coordinate; ``subspace`` is the
    reduced echelon basis of its kernel (the free directions).
    """

    polytope: Polytope
    frame: tuple[Vec, ...]
    subspace: tuple[Vec, ...]
    ambient_dim: int


def make_polyset(polytope: Polytope, frame: Sequence[Sequence], ambient_dim: int) -> PolySet:
    frame = tuple(_vec(r) for r in frame)
    if len(frame) != polytope.ambient_dim or any(len(r) != ambient_dim for r in frame):
        raise DimensionMismatchError("frame does not match polytope and ambient dimensions")
    if rank(frame, ambient_dim) != len(frame):
        raise GeometryError("frame rows must be independent")
    return PolySet(polytope, frame, tuple(rational_kernel(frame, ambient_dim)), ambient_dim)


def product_polyset(polytope: Polytope, free_dim: int) -> PolySet:
    """``polytope x R^free_dim`` with the polytope in the leading coordinates."""
    d = polytope.ambient_dim
    n = d + free_dim
    frame = [[int(i == j) for j in range(n)] for i in range(d)]
    return make_polyset(polytope, frame, n)


def contains(s: PolySet, x: Sequence) -> bool:
    if len(x) != s.ambient_dim:
        raise DimensionMismatchError("point has the wrong dimension")
    return s.polytope.contains(tuple(dot(row, x) for row in s.frame))
