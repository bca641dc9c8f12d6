"""Behaviour of the image under small equivariant changes of the symplectic form.

A small change cannot move discrete data, so two models count as a small
perturbation of each other exactly when their per-stratum weight data agree.
In that case the exact subalgebra has to agree too.  At the level of the
polytope only edge lengths may move; vertex angles (the normal fan) stay.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import primitive
from .geometry import (
    DegeneratePolytopeError,
    DimensionMismatchError,
    Polytope,
    convex_hull,
    normal_fan,
)
from .model import ActionModel
from .momentum import Check, Report, exact_subalgebra


class IncomparableModelsError(ValueError):
    pass


class ClosureError(ValueError):
    """Edge lengths do not close up; ``defect`` is the sum of the edge vectors."""

    def __init__(self, defect):
        self.defect = tuple(defect)
        super().__init__(f"edge lengths do not close: defect {[str(x) for x in self.defect]}")


def _weight_data(m: ActionModel) -> dict:
    return {s.label: (s.stabilizer_basis, tuple(sorted(s.weights)), s.r_p) for s in m.strata}


def te_stable(m1: ActionModel, m2: ActionModel) -> Report:
    """Compare exact subalgebras of two models that differ by a small perturbation."""
    for name in ("torus_dim", "half_dim", "betti1"):
        if getattr(m1, name) != getattr(m2, name):
            raise IncomparableModelsError(f"models differ in {name}")
    if sorted(s.label for s in m1.strata) != sorted(s.label for s in m2.strata):
        raise IncomparableModelsError("models have different stratum labels")
    w1, w2 = _weight_data(m1), _weight_data(m2)
    differing = sorted(k for k in w1 if w1[k] != w2[k])
    if differing:
        return Report((Check("small perturbation", False, f"weight data differ at {differing}"),))
    e1, e2 = exact_subalgebra(m1), exact_subalgebra(m2)
    same = e1.basis == e2.basis
    return Report(
        (
            Check("small perturbation", True, "weight data agree"),
            Check("t_e equal", same, f"{[list(b) for b in e1.basis]} vs {[list(b) for b in e2.basis]}"),
        )
    )


def stability_status(report: Report) -> str:
    first = report.checks[0]
    if not first.passed:
        return "not a small perturbation"
    return "equal" if report.ok else "violation"


def fans_equal(p1: Polytope, p2: Polytope) -> bool:
    if p1.ambient_dim != p2.ambient_dim:
        raise DimensionMismatchError("polytopes live in different dimensions")
    f1, f2 = normal_fan(p1), normal_fan(p2)
    return set(f1.values()) == set(f2.values())


# ---------------------------------------------------------------------------
# polygons


def polygon_cycle(p: Polytope) -> list[tuple[Fraction, ...]]:
    """Vertices counterclockwise, starting at the lexicographically smallest one."""
    if p.ambient_dim != 2 or p.dim != 2:
        raise DegeneratePolytopeError("edge-length machinery needs a 2-dimensional polygon")
    start = p.vertices[0]
    rest = [v for v in p.vertices if v != start]

    # all other vertices lie in the half plane x >= start.x; sort by angle via cross products
    def key(v):
        dx, dy = v[0] - start[0], v[1] - start[1]
        return _Slope(dx, dy)

    return [start] + sorted(rest, key=key)


class _Slope:
    __slots__ = ("dx", "dy")

    def __init__(self, dx, dy):
        self.dx, self.dy = dx, dy

    def __lt__(self, other):
        # counterclockwise order of directions within a half plane
        return self.dx * other.dy - self.dy * other.dx > 0


@dataclass(frozen=True)
class EdgeLengthAssignment:
    polytope: Polytope
    lengths: tuple[Fraction, ...]


def polygon_edges(p: Polytope) -> list[tuple[tuple[int, int], Fraction]]:
    """Primitive integer direction and lattice length of every edge, in cyclic order."""
    cyc = polygon_cycle(p)
    out = []
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        vec = [y - x for x, y in zip(a, b)]
        d = primitive(vec)
        k = next(i for i in range(2) if d[i])
        out.append((d, vec[k] / d[k]))
    return out


def edge_lengths(p: Polytope) -> tuple[Fraction, ...]:
    return tuple(length for _, length in polygon_edges(p))


def reassign_edge_lengths(a: EdgeLengthAssignment) -> Polytope:
    """Walk the boundary with the original edge directions and new lengths."""
    edges = polygon_edges(a.polytope)
    if len(a.lengths) != len(edges):
        raise ValueError(f"need {len(edges)} lengths, got {len(a.lengths)}")
    lengths = [Fraction(x) for x in a.lengths]
    if any(x <= 0 for x in lengths):
        raise ValueError("edge lengths must be positive")
    point = list(polygon_cycle(a.polytope)[0])
    walk = [tuple(point)]
    for (d, _), length in zip(edges, lengths):
        point = [x + length * y for x, y in zip(point, d)]
        walk.append(tuple(point))
    defect = tuple(x - y for x, y in zip(walk[-1], walk[0]))
    if any(defect):
        raise ClosureError(defect)
    return convex_hull(walk[:-1])

