from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from corpus import one_per_shape
from oracles import box_lattice_points, hull_contains
from snakepoly import lp
from snakepoly.errors import DomainError, ParseError
from snakepoly.laurent import LaurentPolynomial
from snakepoly.matching import enumerate_matchings, lifted_vector
from snakepoly.polytope import (LiftedPolytope, RationalPolytope, contains_point, is_empty_polytope,
                                is_saturated, lattice_points, newton_polytope, vertex_set)

small = st.integers(-3, 3)


def points(dim, max_size=7):
    return st.lists(st.tuples(*[small] * dim), min_size=1, max_size=max_size)


# ---------------------------------------------------------------------------
# exact LP


def test_lp_examples():
    assert lp.bounds([[1, 1]], [1], [3, -1]) == (-1, 3)
    assert lp.feasible([[1, 1]], [1])
    assert not lp.feasible([[1, 1]], [-1])
    assert lp.bounds([[1, 1]], [-1], [1, 0]) is None
    assert lp.feasible([], [])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(2, 5), st.data())
def test_lp_matches_scipy(rows, cols, data):
    A = [data.draw(st.lists(small, min_size=cols, max_size=cols)) for _ in range(rows)]
    b = data.draw(st.lists(small, min_size=rows, max_size=rows))
    A.append([1] * cols)  # keeps the region bounded
    b.append(data.draw(st.integers(0, 4)))
    c = data.draw(st.lists(small, min_size=cols, max_size=cols))
    ours = lp.bounds(A, b, c)
    ref_min = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    ref_max = linprog([-x for x in c], A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    assert lp.feasible(A, b) == (ref_min.status == 0)
    if ours is None:
        assert ref_min.status == 2
    else:
        assert isinstance(ours[0], Fraction)
        assert abs(float(ours[0]) - ref_min.fun) < 1e-7
        assert abs(float(ours[1]) + ref_max.fun) < 1e-7


# ---------------------------------------------------------------------------
# polytopes


def test_segment():
    P = RationalPolytope([(0, 0), (0, 2)])
    assert lattice_points(P) == [(0, 0), (0, 1), (0, 2)]
    assert not is_empty_polytope(P)
    assert is_saturated(P, [(0, 0), (0, 1), (0, 2)])
    assert not is_saturated(P, [(0, 0), (0, 2)])


def test_simplex_and_collinear():
    simplex = RationalPolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert len(lattice_points(simplex)) == 4 and is_empty_polytope(simplex)
    line = RationalPolytope([(0, 0), (1, 1), (3, 3)])
    assert sorted(map(tuple, vertex_set(line))) == [(0, 0), (3, 3)]


def test_example_not_empty():
    P = RationalPolytope([(2, 0, 1, 1), (1, 1, 1, 1), (0, 2, 1, 1)])
    assert not is_empty_polytope(P)
    assert len(vertex_set(P)) == 2


def test_membership():
    P = RationalPolytope([(0, 0), (2, 0), (0, 2)])
    assert contains_point(P, (1, 1)) and contains_point(P, (Fraction(1, 2), Fraction(1, 3)))
    assert not contains_point(P, (2, 1))
    with pytest.raises(DomainError):
        contains_point(P, (1, 1, 1))
    with pytest.raises(DomainError):
        RationalPolytope([])


def test_rational_generators():
    P = RationalPolytope([(Fraction(1, 2), 0), (Fraction(5, 2), 0), (Fraction(1, 2), 3)])
    assert lattice_points(P) == box_lattice_points(P)


def test_json_round_trip():
    P = RationalPolytope([(Fraction(1, 3), 2), (4, -1)])
    Q = RationalPolytope.from_json(P.to_json())
    assert Q.generators == P.generators
    with pytest.raises(ParseError):
        RationalPolytope.from_json("{bad")


def test_newton_polytope():
    L = LaurentPolynomial(["a", "b"], {(1, 0): 1, (-1, 2): 3})
    P = newton_polytope(L)
    assert P.dim == 2 and len(P.generators) == 2
    mono = newton_polytope(LaurentPolynomial(["a"], {(4,): 1}))
    assert lattice_points(mono) == [(4,)]


def test_saturation_needs_points_inside():
    P = RationalPolytope([(0,), (2,)])
    with pytest.raises(DomainError):
        is_saturated(P, [(5,)])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3).flatmap(points))
def test_lattice_points_match_box_scan(pts):
    P = RationalPolytope(pts)
    assert lattice_points(P) == box_lattice_points(P)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 6).flatmap(lambda d: st.lists(st.tuples(*[st.integers(0, 2)] * d), min_size=2, max_size=6)))
def test_lattice_points_match_box_scan_up_to_dim6(pts):
    P = RationalPolytope(pts)
    assert lattice_points(P) == box_lattice_points(P)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(points))
def test_vertices_are_the_extreme_generators(pts):
    P = RationalPolytope(pts)
    gens = [tuple(g) for g in P.generators]
    expected = sorted(g for g in gens if not (len(gens) > 1 and hull_contains([h for h in gens if h != g], g)))
    assert sorted(tuple(v) for v in vertex_set(P)) == expected


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(points))
def test_generators_inside_and_translation(pts):
    P = RationalPolytope(pts)
    assert all(contains_point(P, g) for g in pts)
    shift = [7] * P.dim
    Q = RationalPolytope([tuple(x + s for x, s in zip(p, shift)) for p in pts])
    assert lattice_points(Q) == [tuple(x + s for x, s in zip(p, shift)) for p in lattice_points(P)]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(points))
def test_predicates_are_consistent(pts):
    P = RationalPolytope(pts)
    pts_in = lattice_points(P)
    verts = {tuple(v) for v in vertex_set(P)}
    assert is_empty_polytope(P) == all(p in verts for p in pts_in)
    assert is_saturated(P, pts_in)


# ---------------------------------------------------------------------------
# lifted matching polytopes


@pytest.mark.parametrize("pc", [False, True])
def test_lifted_polytopes_are_empty(pc):
    for G in one_per_shape(["polygon:5", "polygon:6", "punctured:3"]):
        P = LiftedPolytope(G, pc)
        vectors = sorted(lifted_vector(G, M, pc) for M in enumerate_matchings(G))
        assert sorted(tuple(int(x) for x in g) for g in P.generators) == vectors
        assert lattice_points(P) == vectors
        assert P.h_integer_points() == vectors
        assert is_empty_polytope(P)
        for v in vectors:
            assert P.satisfies(v)
            assert sum(v[:len(G.edges)]) == G.t + 1
        # a non-matching 0/1 vector fails the vertex rows
        bad = list(vectors[0])
        bad[0] = 1 - bad[0]
        assert not P.satisfies(bad)
