import dataclasses
from fractions import Fraction as F

import pytest

from helpers import corpus_model, fixture_model
from mvmoment.geometry import DegeneratePolytopeError, DimensionMismatchError, convex_hull
from mvmoment.stability import (
    ClosureError,
    EdgeLengthAssignment,
    IncomparableModelsError,
    edge_lengths,
    fans_equal,
    polygon_cycle,
    polygon_edges,
    reassign_edge_lengths,
    stability_status,
    te_stable,
)

SQUARE = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
SQUARE2 = convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)])
RECT = convex_hull([(0, 0), (1, 0), (0, 2), (1, 2)])
TRIANGLE = convex_hull([(0, 0), (1, 0), (0, 1)])


def flip_weight(m, label):
    strata = []
    for s in m.strata:
        if s.label == label:
            w = (tuple(-x for x in s.weights[0]),) + s.weights[1:]
            s = dataclasses.replace(s, weights=w)
        strata.append(s)
    return dataclasses.replace(m, strata=tuple(strata))


# --- exact subalgebra under perturbation -------------------------------------


def test_scaled_cp2_keeps_te():
    r = te_stable(corpus_model("cp2"), corpus_model("cp2_scaled"))
    assert stability_status(r) == "equal" and r.ok


def test_flipped_weight_is_not_a_small_perturbation():
    m = corpus_model("cp2")
    r = te_stable(m, flip_weight(m, "p0"))
    assert stability_status(r) == "not a small perturbation"


def test_identical_models():
    m = corpus_model("s2xt2")
    assert stability_status(te_stable(m, m)) == "equal"


def test_moved_anchor_is_still_comparable():
    r = te_stable(corpus_model("cp2"), fixture_model("cp2_perturbed"))
    assert stability_status(r) == "equal"


def test_te_stable_is_symmetric():
    a, b = corpus_model("cp2"), flip_weight(corpus_model("cp2"), "p1")
    assert stability_status(te_stable(a, b)) == stability_status(te_stable(b, a))


def test_violation_when_periods_differ():
    a = corpus_model("torus2")
    b = dataclasses.replace(a, periods=(a.periods[0], (a.periods[0][0], a.periods[0][1])))
    r = te_stable(a, b)
    assert stability_status(r) == "violation"


def test_incomparable_models():
    with pytest.raises(IncomparableModelsError):
        te_stable(corpus_model("cp1"), corpus_model("cp2"))
    with pytest.raises(IncomparableModelsError):
        te_stable(corpus_model("cp2"), corpus_model("cp1xcp1"))


# --- normal fans -------------------------------------------------------------


def test_fan_examples():
    assert fans_equal(SQUARE, SQUARE2)
    assert fans_equal(SQUARE, RECT)
    assert not fans_equal(SQUARE, TRIANGLE)


def test_fans_equal_is_an_equivalence_on_a_small_corpus():
    corpus = [SQUARE, SQUARE2, RECT, TRIANGLE, convex_hull([(0, 0), (3, 0), (0, 3)])]
    for a in corpus:
        assert fans_equal(a, a)
        for b in corpus:
            assert fans_equal(a, b) == fans_equal(b, a)
            for c in corpus:
                if fans_equal(a, b) and fans_equal(b, c):
                    assert fans_equal(a, c)


def test_fans_need_full_dimension_and_same_space():
    with pytest.raises(DegeneratePolytopeError):
        fans_equal(SQUARE, convex_hull([(0, 0), (1, 1)]))
    with pytest.raises(DimensionMismatchError):
        fans_equal(SQUARE, convex_hull([(0,), (1,)]))


# --- edge lengths ------------------------------------------------------------


def test_cycle_is_counterclockwise_from_smallest_vertex():
    assert polygon_cycle(SQUARE) == [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert [d for d, _ in polygon_edges(SQUARE)] == [(1, 0), (0, 1), (-1, 0), (0, -1)]


def test_lattice_lengths():
    hexagon = convex_hull([(0, 0), (2, 0), (3, 1), (3, 3), (1, 3), (0, 2)])
    assert edge_lengths(hexagon) == (2, 1, 2, 2, 1, 2)


def test_reassign_to_rectangle():
    p = reassign_edge_lengths(EdgeLengthAssignment(SQUARE, (1, 2, 1, 2)))
    assert p == convex_hull([(0, 0), (1, 0), (1, 2), (0, 2)])
    assert fans_equal(p, SQUARE)


def test_reassign_without_closure_reports_shift():
    with pytest.raises(ClosureError) as info:
        reassign_edge_lengths(EdgeLengthAssignment(SQUARE, (1, 2, 1, 3)))
    assert info.value.defect == (0, -1)


def test_original_lengths_rebuild_original():
    for p in (SQUARE, RECT, TRIANGLE, convex_hull([(0, 0), (2, 0), (3, 1), (3, 3), (1, 3), (0, 2)])):
        assert reassign_edge_lengths(EdgeLengthAssignment(p, edge_lengths(p))) == p


def test_success_iff_closure():
    hexagon = convex_hull([(0, 0), (2, 0), (3, 1), (3, 3), (1, 3), (0, 2)])
    dirs = [d for d, _ in polygon_edges(hexagon)]
    for lengths in [(1, 1, 1, 1, 1, 1), (2, 1, 1, 3, 1, 1), (1, 2, 1, 1, 2, 1), (3, 1, 2, 2, 1, 3)]:
        total = [sum(F(x) * d[k] for x, d in zip(lengths, dirs)) for k in range(2)]
        try:
            q = reassign_edge_lengths(EdgeLengthAssignment(hexagon, lengths))
        except ClosureError as exc:
            assert any(total) and list(exc.defect) == total
        else:
            assert not any(total) and fans_equal(q, hexagon)


def test_reassign_input_errors():
    with pytest.raises(ValueError):
        reassign_edge_lengths(EdgeLengthAssignment(SQUARE, (1, 1, 1)))
    with pytest.raises(ValueError):
        reassign_edge_lengths(EdgeLengthAssignment(SQUARE, (1, 0, 1, 0)))
    with pytest.raises(DegeneratePolytopeError):
        reassign_edge_lengths(EdgeLengthAssignment(convex_hull([(0, 0), (1, 0)]), (1, 1)))
