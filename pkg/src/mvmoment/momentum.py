"""Structure results for a symplectic torus action, computed from an :class:`ActionModel`.

Conventions.  The Lie algebra t is Q^n with its integral lattice Z^n; t* is
Q^n with the dual pairing.  A stratum's weights are covectors on its
stabilizer, in coordinates of ``stabilizer_basis``.  They are pushed into t*
by extending the stabilizer basis with :func:`hermite_complement` and letting
the embedded weight vanish on the complement.  The resulting wedge
``cone(weights) + Ann(t_p)`` does not depend on that choice, since two choices
differ by an element of ``Ann(t_p)``.

Exactness comes from two directions.  The period matrix is the source of
truth: ``t_e = {theta : periods . theta = 0}``.  Independently, a stratum whose
wedge is pointed transversally to its orbit gives a direction ``theta`` that
is strictly positive on its weights; the Hamiltonian of such a direction has a
local minimum there, hence is exact.  Those certificates must land in the
period kernel, otherwise the model contradicts itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .exactalg import (
    ExtScalar,
    determinant,
    dot,
    ext_expand_columns,
    ext_linear_combination,
    ext_rank,
    generic_rank,
    hermite_complement,
    hermite_normal_form,
    integer_kernel,
    inverse,
    primitive,
    rank,
    rational_kernel,
    rref,
    smith_normal_form,
    transpose,
)
from .geometry import (
    Cone,
    DimensionMismatchError,
    PolySet,
    Polytope,
    convex_hull,
    cone_from_generators,
    interior_dual_point,
    make_polyset,
    polytope_edges,
)
from .model import ActionModel, ModelValidationError, StratumDatum, stratum_violations


class MomentumError(ValueError):
    pass


class InconsistentModelError(MomentumError):
    """The authored data contradicts one of the structure theorems."""

    def __init__(self, message: str, stratum: str | None = None):
        self.stratum = stratum
        where = f"stratum {stratum!r}: " if stratum is not None else ""
        super().__init__(where + message)


class IncompleteStrataError(MomentumError):
    pass


class PreconditionError(MomentumError):
    pass


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    stratum: str | None = None


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violations(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


# ---------------------------------------------------------------------------
# local data


def stratum_frame(s: StratumDatum, n: int) -> list[tuple[int, ...]]:
    """Stabilizer basis followed by its Hermite complement: a basis of Z^n."""
    return [tuple(r) for r in s.stabilizer_basis] + hermite_complement(s.stabilizer_basis, n)


def embedded_weights(s: StratumDatum, n: int) -> list[tuple[int, ...]]:
    """Weights as covectors on t: same values on the stabilizer basis, zero on the complement."""
    if not s.weights:
        return []
    frame = stratum_frame(s, n)
    finv = inverse(frame)
    out = []
    for w in s.weights:
        vals = list(w) + [0] * (n - len(w))
        a = [dot(row, vals) for row in finv]
        out.append(tuple(int(x) for x in a))
    return out


def _require_valid_stratum(s: StratumDatum, m: ActionModel) -> None:
    violations = stratum_violations(s, m.torus_dim, m.half_dim)
    if violations:
        raise ModelValidationError(violations)


def local_wedge(s: StratumDatum, m: ActionModel) -> Cone:
    """``cone(weights) + Ann(t_p)`` in t*: the local image of the momentum map at ``s``."""
    _require_valid_stratum(s, m)
    n = m.torus_dim
    lineality = rational_kernel(s.stabilizer_basis, n) if s.stabilizer_basis else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]
    return cone_from_generators(embedded_weights(s, n), lineality, n)


def check_effective(s: StratumDatum, torus_dim: int | None = None) -> bool:
    """At a fixed point: do the weights generate Z^n?  (all Smith divisors equal 1)"""
    n = len(s.momentum_anchor) if torus_dim is None else torus_dim
    if s.n_p != n:
        raise PreconditionError("effectiveness test requires a fixed point")
    if n == 0:
        return True
    weights = embedded_weights(s, n)
    if not weights:
        return False
    divisors = smith_normal_form(weights, n).divisors()
    return len(divisors) == n and all(d == 1 for d in divisors)


def _certificate(s: StratumDatum, m: ActionModel) -> tuple[int, ...] | None:
    n = m.torus_dim
    if s.n_p == 0:
        return None
    wedge = local_wedge(s, m)
    if len(wedge.lineality) != n - s.n_p:
        return None  # weight cone is not pointed inside t_p*
    theta = interior_dual_point(wedge)
    if theta is None:
        return None
    if not all(dot(w, theta) > 0 for w in embedded_weights(s, n) if any(w)):
        return None
    return theta


def exactness_cone(m: ActionModel) -> tuple[list[tuple[str, tuple[int, ...]]], list[tuple[int, ...]]]:
    """Exact directions witnessed by local minima, and the subspace they span."""
    certs = []
    for s in m.strata:
        theta = _certificate(s, m)
        if theta is not None:
            certs.append((s.label, theta))
    span = []
    if certs:
        echelon = rref([t for _, t in certs], m.torus_dim)[0]
        span = hermite_normal_form([primitive(row) for row in echelon], m.torus_dim)
    return certs, span


# ---------------------------------------------------------------------------
# periods


def _n_symbols(m: ActionModel) -> int:
    return len(m.symbols)


def period_expansion(m: ActionModel) -> list[list[Fraction]]:
    """Rational (b1 * symbols) x n matrix whose kernel is the exact subalgebra."""
    return ext_expand_columns(m.periods, _n_symbols(m), m.torus_dim)


def periods_of(theta: Sequence, m: ActionModel) -> list[ExtScalar]:
    """The periods of the Hamiltonian of ``theta`` over the H_1 basis."""
    if len(theta) != m.torus_dim:
        raise DimensionMismatchError(f"direction must have length {m.torus_dim}")
    return [ext_linear_combination(theta, row) for row in m.periods]


@dataclass(frozen=True)
class ExactSubalgebra:
    basis: tuple[tuple[int, ...], ...]
    complement_basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def exact_subalgebra(m: ActionModel) -> ExactSubalgebra:
    """``t_e`` from the period kernel, saturated in Z^n, with a rational complement ``t_c``."""
    n = m.torus_dim
    expanded = period_expansion(m)
    basis = integer_kernel(expanded, n)
    certs, _ = exactness_cone(m)
    for label, theta in certs:
        if any(dot(row, theta) != 0 for row in expanded):
            raise InconsistentModelError(
                f"local minimum direction {list(theta)} has nonzero periods", stratum=label
            )
    complement = hermite_complement(basis, n)
    return ExactSubalgebra(tuple(basis), tuple(complement))


def rationality_degree(theta: Sequence, m: ActionModel) -> int:
    """Dimension of the Q-span of the periods of ``theta``."""
    values = periods_of(theta, m)
    if not values:
        return 0
    return ext_rank([values], _n_symbols(m), len(values))


def quotient_rank_of_kernel(theta: Sequence, m: ActionModel) -> int:
    """``rank(H_1 / ker)`` for the period map of ``theta``, through the Smith form of the kernel."""
    values = periods_of(theta, m)
    b1 = len(values)
    if b1 == 0:
        return 0
    # kernel of gamma -> integral: {k : sum_j k_j * values_j = 0}
    kernel = integer_kernel(ext_expand_columns([values], _n_symbols(m), b1), b1)
    if not kernel:
        return b1
    divisors = smith_normal_form(kernel, b1).divisors()
    return b1 - len(divisors)


def _row_expansion(m: ActionModel) -> list[list[Fraction]]:
    # b1 x (n * symbols): row j lists every coefficient of every period on gamma_j
    S = _n_symbols(m)
    return [[c for x in row for c in x.expand(S)] for row in m.periods]


def generic_degree_and_kernel(m: ActionModel) -> tuple[int, list[tuple[int, ...]]]:
    """Rank of the deck group, and the common kernel in Z^{b1} of all period maps."""
    b1 = m.betti1
    if b1 == 0:
        return 0, []
    rows = _row_expansion(m)
    width = m.torus_dim * _n_symbols(m)
    kernel = integer_kernel(transpose(rows, width), b1) if width else [
        tuple(int(i == j) for j in range(b1)) for i in range(b1)
    ]
    return b1 - len(kernel), kernel


def period_consistency(m: ActionModel, te: ExactSubalgebra | None = None) -> tuple[int, int]:
    """(real rank of the periods on t_c, dim t_c), symbols read as indeterminates.

    A genuine action has equal numbers: any real direction with zero periods is
    exact, and exact directions form a rational subspace.
    """
    te = exact_subalgebra(m) if te is None else te
    deck = deck_vectors(m, te)
    nc = len(te.complement_basis)
    return (generic_rank(deck, nc) if deck else 0), nc


def deck_vectors(m: ActionModel, te: ExactSubalgebra) -> list[tuple[ExtScalar, ...]]:
    """Periods of the t_c basis directions over each H_1 generator (t_c* coordinates)."""
    return [tuple(ext_linear_combination(c, row) for c in te.complement_basis) for row in m.periods]


def check_degree_bounds(m: ActionModel) -> Report:
    n = m.torus_dim
    te = exact_subalgebra(m)
    degree, _ = generic_degree_and_kernel(m)
    checks = []
    if te.dim == 0:
        checks.append(Check("generic degree >= n when t_e = 0", degree >= n, f"degree {degree}, n {n}"))
    checks.append(
        Check("dim t_e >= n - b1", te.dim >= n - m.betti1, f"dim t_e {te.dim}, n - b1 {n - m.betti1}")
    )
    real_rank, nc = period_consistency(m, te)
    checks.append(Check("periods span t_c*", real_rank == nc, f"rank {real_rank}, dim t_c {nc}"))
    return Report(tuple(checks))


# ---------------------------------------------------------------------------
# global image


@dataclass(frozen=True)
class MomentumImage:
    image: PolySet
    vertex_witnesses: dict = field(hash=False)
    deck_vectors: tuple[tuple[ExtScalar, ...], ...]
    exact: ExactSubalgebra

    @property
    def polytope(self) -> Polytope:
        return self.image.polytope


def _is_te_fixed(s: StratumDatum, te: ExactSubalgebra, n: int) -> bool:
    if not te.basis:
        return True
    return rank(list(s.stabilizer_basis) + list(te.basis), n) == s.n_p


def momentum_image(m: ActionModel) -> MomentumImage:
    """``P x t_c*``: the hull of the T_e-fixed anchors read on t_e, times the free directions."""
    if not m.complete_strata:
        raise IncompleteStrataError("model does not list all T_e-fixed strata; refusing to build the image")
    n = m.torus_dim
    te = exact_subalgebra(m)
    points, owners = [], []
    for s in m.strata:
        if _is_te_fixed(s, te, n):
            points.append(tuple(dot(e, s.momentum_anchor) for e in te.basis))
            owners.append(s.label)
    if not points:
        raise InconsistentModelError("no stratum is fixed by the exact subtorus")
    poly = convex_hull(points)
    witnesses = {}
    for v in poly.vertices:
        witnesses[v] = owners[points.index(v)]
    deck = deck_vectors(m, te)
    real_rank, nc = period_consistency(m, te)
    if real_rank != nc:
        raise InconsistentModelError(f"deck vectors span only {real_rank} of {nc} free directions")
    image = make_polyset(poly, te.basis, n)
    return MomentumImage(image, witnesses, tuple(deck), te)


def _lift(te: ExactSubalgebra, coords: Sequence) -> tuple[Fraction, ...]:
    """The covector with the given values on t_e and zero on t_c."""
    frame = list(te.basis) + list(te.complement_basis)
    finv = inverse(frame)
    vals = list(coords) + [0] * len(te.complement_basis)
    return tuple(dot(row, vals) for row in finv)


def verify_local_global(m: ActionModel, img: MomentumImage) -> Report:
    """Containment of the global image in every translated local wedge, and edge checks at vertices."""
    n = m.torus_dim
    te = img.exact
    poly = img.polytope
    free = img.image.subspace
    checks = []
    wedges = {s.label: local_wedge(s, m) for s in m.strata}
    for s in m.strata:
        w = wedges[s.label]
        base = tuple(dot(e, s.momentum_anchor) for e in te.basis)
        bad_free = [list(f) for f in free if not (w.contains(f) and w.contains(tuple(-x for x in f)))]
        checks.append(
            Check(
                "free directions in wedge",
                not bad_free,
                f"free directions leaving the wedge: {bad_free}" if bad_free else "",
                s.label,
            )
        )
        bad_vertices = []
        for v in poly.vertices:
            d = _lift(te, [a - b for a, b in zip(v, base)])
            if not w.contains(d):
                bad_vertices.append(v)
        checks.append(
            Check(
                "image in anchored wedge",
                not bad_vertices,
                f"vertices outside: {[list(map(str, v)) for v in bad_vertices]}" if bad_vertices else "",
                s.label,
            )
        )

    edges = polytope_edges(poly)
    for idx, v in enumerate(poly.vertices):
        s = m.stratum(img.vertex_witnesses[v])
        if not s.is_fixed_point(n):
            continue
        w = wedges[s.label]
        nbrs = [poly.vertices[j if i == idx else i] for i, j in edges if idx in (i, j)]
        dirs = [tuple(b - a for a, b in zip(v, u)) for u in nbrs]
        bad = [d for d in dirs if not w.contains(_lift(te, d))]
        checks.append(
            Check(
                "edge directions in wedge",
                not bad,
                f"edges leaving the wedge: {[list(map(str, d)) for d in bad]}" if bad else "",
                s.label,
            )
        )
        if m.half_dim == n and poly.dim == n == te.dim and check_effective(s, n):
            prim = [primitive(d) for d in dirs]
            unimodular = len(prim) == n and abs(determinant(prim)) == 1
            checks.append(
                Check("delzant corner", unimodular, f"primitive edge directions {[list(p) for p in prim]}", s.label)
            )
    return Report(tuple(checks))


class HamiltonianVerdict(NamedTuple):
    verdict: bool
    certificate: tuple[int, ...]
    stratum: str


def half_dim_hamiltonian(m: ActionModel) -> HamiltonianVerdict:
    """An n-torus on a 2n-manifold with an effective fixed point acts in a Hamiltonian way."""
    n = m.torus_dim
    if m.half_dim != n:
        raise PreconditionError(f"needs half dimension N = n, got N={m.half_dim}, n={n}")
    fixed = [s for s in m.strata if s.is_fixed_point(n) and check_effective(s, n)]
    if not fixed:
        raise PreconditionError("no fixed point with effective weights")
    s = fixed[0]
    theta = interior_dual_point(local_wedge(s, m))
    if theta is None:
        raise InconsistentModelError("effective fixed point without a pointed wedge", stratum=s.label)
    te = exact_subalgebra(m)
    if te.dim != n:
        raise InconsistentModelError(
            f"the action must be Hamiltonian but the periods leave dim t_e = {te.dim} < {n}"
        )
    return HamiltonianVerdict(True, theta, s.label)


__all__ = [
    "Check",
    "ExactSubalgebra",
    "HamiltonianVerdict",
    "IncompleteStrataError",
    "InconsistentModelError",
    "MomentumImage",
    "PreconditionError",
    "Report",
    "check_degree_bounds",
    "check_effective",
    "deck_vectors",
    "embedded_weights",
    "exact_subalgebra",
    "exactness_cone",
    "generic_degree_and_kernel",
    "half_dim_hamiltonian",
    "local_wedge",
    "momentum_image",
    "period_consistency",
    "quotient_rank_of_kernel",
    "rationality_degree",
    "verify_local_global",
]
