"""Exact polytopes in vertex representation.

All predicates reduce to the small exact linear programs of :mod:`.lp`.
Points are first mapped to coordinates on their affine hull (a subset of
the original coordinates on which the hull projects injectively), so the
programs stay small and full dimensional.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, lcm
from typing import Iterable, Optional, Sequence

from . import lp
from .errors import DomainError, ParseError
from .matching import (WeightVector, bottom_matching, coordinate_keys, enumerate_matchings,
                       lifted_vector)
from .snake import SIDES, SnakeGraph

Point = tuple


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _is_int(x) -> bool:
    return Fraction(x).denominator == 1


class RationalPolytope:
    """Convex hull of finitely many rational points."""

    def __init__(self, generators: Iterable[Sequence], dim: Optional[int] = None):
        pts = []
        seen = set()
        for g in generators:
            p = tuple(_frac(x) for x in g)
            if p not in seen:
                seen.add(p)
                pts.append(p)
        if not pts:
            raise DomainError("a polytope needs at least one generator")
        d = len(pts[0]) if dim is None else dim
        if any(len(p) != d for p in pts):
            raise DomainError("generators of different dimensions")
        self.dim = d
        self.generators: tuple[Point, ...] = tuple(sorted(pts))

    def __repr__(self):
        return f"RationalPolytope(dim={self.dim}, {len(self.generators)} generators)"

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "generators": [[str(x) for x in g] for g in self.generators]}

    @classmethod
    def from_json(cls, obj) -> "RationalPolytope":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad polytope JSON: {exc}") from exc
        try:
            dim = obj.get("dim")
            return cls(obj["generators"], None if dim is None else int(dim))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad polytope object: {exc}") from exc

    @cached_property
    def hull(self) -> "_AffineChart":
        return _AffineChart(self.generators)


class _AffineChart:
    """Coordinates of the affine hull of a point set.

    ``free`` lists original coordinates that determine a point of the hull;
    ``lift`` recovers the remaining ones.
    """

    def __init__(self, pts: Sequence[Point]):
        base = pts[0]
        d = len(base)
        rows = [[p[k] - base[k] for k in range(d)] for p in pts[1:]]
        basis, free = _row_basis(rows, d)
        self.base = base
        self.free = free
        self.rank = len(free)
        # Each basis vector is in reduced row echelon form on ``free``, so a
        # hull point with free coordinates x is base + sum (x_i - base_i) v_i.
        self.basis = basis
        self.points = [tuple(p[k] for k in free) for p in pts]

    def lift(self, x: Sequence) -> tuple:
        out = list(self.base)
        for xi, f, v in zip(x, self.free, self.basis):
            delta = xi - self.base[f]
            if delta:
                for k, vk in enumerate(v):
                    if vk:
                        out[k] += delta * vk
        return tuple(out)

    def coords(self, q: Sequence) -> Optional[tuple]:
        """Free coordinates of ``q`` if it lies on the hull, else None."""
        x = tuple(Fraction(q[k]) for k in self.free)
        return x if self.lift(x) == tuple(Fraction(v) for v in q) else None


def _row_basis(rows: list[list[Fraction]], d: int):
    """Reduced row echelon basis of the row space and its pivot columns."""
    rows = [list(r) for r in rows if any(r)]
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for col in range(d):
        pivot_row = next((r for r in rows if r[col] != 0), None)
        if pivot_row is None:
            continue
        rows.remove(pivot_row)
        inv = 1 / pivot_row[col]
        pivot_row = [x * inv for x in pivot_row]
        for lst in (rows, basis):
            for i, r in enumerate(lst):
                if r[col]:
                    f = r[col]
                    lst[i] = [x - f * y for x, y in zip(r, pivot_row)]
        rows = [r for r in rows if any(r)]
        basis.append(pivot_row)
        pivots.append(col)
    return basis, pivots


def _scaled_system(points: Sequence[Point], target: Sequence, k: int):
    """Integer rows for ``sum l_i = 1, sum l_i p_i[:k] = target[:k]``."""
    A = [[1] * len(points)]
    b = [1]
    for j in range(k):
        col = [p[j] for p in points] + [Fraction(target[j])]
        s = lcm(*(Fraction(x).denominator for x in col))
        A.append([int(x * s) for x in col[:-1]])
        b.append(int(col[-1] * s))
    return A, b


def _in_hull(points: Sequence[Point], q: Sequence) -> bool:
    A, b = _scaled_system(points, q, len(q))
    return lp.feasible(A, b)


def contains_point(P: RationalPolytope, q: Sequence) -> bool:
    """Exact membership test ``q in conv(generators)``."""
    if len(q) != P.dim:
        raise DomainError(f"point of dimension {len(q)} tested against a {P.dim}-polytope")
    x = P.hull.coords(q)
    if x is None:
        return False
    return _in_hull(P.hull.points, x)


class _Projections:
    """Distinct projections of the chart points onto leading coordinates."""

    def __init__(self, pts: Sequence[Point]):
        self.levels = [sorted({p[:k] for p in pts}) for k in range(len(pts[0]) + 1)] if pts else []

    def slice_bounds(self, prefix: tuple, j: int):
        pts = self.levels[j + 1]
        A, b = _scaled_system(pts, prefix, j)
        s = lcm(*(p[j].denominator for p in pts))
        c = [int(p[j] * s) for p in pts]
        res = lp.bounds(A, b, c)
        if res is None:
            return None
        return res[0] / s, res[1] / s

    def slice_feasible(self, prefix: tuple) -> bool:
        pts = self.levels[len(prefix)]
        A, b = _scaled_system(pts, prefix, len(prefix))
        return lp.feasible(A, b)


def lattice_points(P: RationalPolytope) -> list[tuple[int, ...]]:
    """All integer points of ``P``, sorted.

    Branch and prune over the chart coordinates, left to right.  At each
    node the range of the next coordinate on the slice through the current
    prefix is an interval.  When generators share the prefix, the integers
    between their extreme values are in range for free and the interval is
    only probed one step beyond each end (a feasibility program, falling
    back to exact min/max when the probe succeeds).  Otherwise the min and
    max come from the linear program directly.
    """
    chart = P.hull
    if chart.rank == 0:
        p = P.generators[0]
        return [tuple(int(x) for x in p)] if all(_is_int(x) for x in p) else []
    proj = _Projections(chart.points)
    r = chart.rank
    found = []

    def descend(prefix: tuple, j: int):
        if j == r:
            q = chart.lift(prefix)
            if all(x.denominator == 1 for x in q):
                found.append(tuple(int(x) for x in q))
            return
        seen = sorted({p[j] for p in proj.levels[j + 1] if p[:j] == prefix})
        if seen:
            lo_i, hi_i = ceil(seen[0]), floor(seen[-1])
            if proj.slice_feasible(prefix + (Fraction(lo_i - 1 if _is_int(seen[0]) else floor(seen[0])),)):
                lo_i = ceil(proj.slice_bounds(prefix, j)[0])
            if proj.slice_feasible(prefix + (Fraction(hi_i + 1 if _is_int(seen[-1]) else ceil(seen[-1])),)):
                hi_i = floor(proj.slice_bounds(prefix, j)[1])
        else:
            res = proj.slice_bounds(prefix, j)
            if res is None:
                return
            lo_i, hi_i = ceil(res[0]), floor(res[1])
        for v in range(lo_i, hi_i + 1):
            descend(prefix + (Fraction(v),), j + 1)

    descend((), 0)
    return sorted(found)


def vertex_set(P: RationalPolytope) -> list[Point]:
    """Generators not in the hull of the other generators.

    A generator that is the unique maximiser of a linear functional is a
    vertex; coordinate functionals settle most cases before any linear
    program is solved.
    """
    pts = P.hull.points
    n = len(pts)
    if n <= 2:
        return list(P.generators)
    known = [False] * n
    for k in range(len(pts[0])):
        for sign in (1, -1):
            vals = [sign * p[k] for p in pts]
            top = max(vals)
            winners = [i for i, v in enumerate(vals) if v == top]
            if len(winners) == 1:
                known[winners[0]] = True
    out = []
    for i, g in enumerate(P.generators):
        if known[i] or not _in_hull(pts[:i] + pts[i + 1:], pts[i]):
            out.append(g)
    return out


def newton_polytope(L) -> RationalPolytope:
    """Hull of the support of a Laurent polynomial."""
    supp = L.support()
    if not supp:
        raise DomainError("the zero polynomial has no Newton polytope")
    return RationalPolytope(supp, len(L.vars))


def is_saturated(P: RationalPolytope, support: Iterable[Sequence[int]]) -> bool:
    supp = {tuple(int(x) for x in s) for s in support}
    gens = {tuple(g) for g in P.generators}
    for s in supp:
        if tuple(Fraction(x) for x in s) not in gens and not contains_point(P, s):
            raise DomainError(f"support point {s} lies outside the polytope")
    return set(lattice_points(P)) <= supp


def is_empty_polytope(P: RationalPolytope, points: Optional[Iterable] = None) -> bool:
    """Every lattice point is a vertex; ``points`` may pass precomputed lattice points."""
    pts = lattice_points(P) if points is None else list(points)
    verts = {tuple(v) for v in vertex_set(P)}
    return all(tuple(Fraction(x) for x in p) in verts for p in pts)


# ---------------------------------------------------------------------------
# Lifted matching polytopes


class LiftedPolytope(RationalPolytope):
    """Hull of lifted matching vectors, with the known facet description.

    Coordinates are the distinct edges of ``G`` and, for pc, its tiles.
    ``equalities`` and the nonnegativity of every edge coordinate describe
    the same set.
    """

    def __init__(self, G: SnakeGraph, pc: bool = False):
        self.G = G
        self.pc = pc
        Ms = enumerate_matchings(G)
        self.M0 = bottom_matching(G)
        super().__init__([lifted_vector(G, M, pc, self.M0) for M in Ms])

    @cached_property
    def equalities(self) -> list[tuple[tuple[int, ...], int]]:
        """Rows ``(a, c)`` meaning ``a . w = c``.

        One row per vertex (its edges sum to one) and, for pc, one row per
        tile tying its indicator to a boundary edge ``e`` of the tile:
        ``y = w_e`` if ``e`` is not in the bottom matching, ``y = 1 - w_e`` if it is.
        """
        G = self.G
        ne = len(G.edges)
        width = ne + (G.t if self.pc else 0)
        rows = []
        for v in G.vertices:
            a = [0] * width
            for i, e in enumerate(G.edges):
                if v in e.ends:
                    a[i] = 1
            rows.append((tuple(a), 1))
        if self.pc:
            for j in range(G.t):
                e = _tile_boundary_edge(G, j)
                a = [0] * width
                a[ne + j] = 1
                if e in self.M0:
                    a[e] = 1
                    rows.append((tuple(a), 1))
                else:
                    a[e] = -1
                    rows.append((tuple(a), 0))
        return rows

    def h_integer_points(self) -> list[tuple[int, ...]]:
        """Integer solutions of the facet description, found by search over edges.

        The vertex rows force every edge coordinate into {0, 1}; the tile
        rows then fix the tile coordinates.
        """
        G = self.G
        ne = len(G.edges)
        verts = G.vertices
        incident = {v: [i for i, e in enumerate(G.edges) if v in e.ends] for v in verts}
        covered = dict.fromkeys(verts, False)
        w = [0] * ne
        out = []

        def search(i: int):
            if i == ne:
                if all(covered.values()):
                    out.append(self._complete(w))
                return
            a, b = G.edges[i].ends
            # an uncovered vertex whose last incident edge is i must take it
            for v in (a, b):
                if not covered[v] and incident[v][-1] < i:
                    return
            w[i] = 0
            if not ((not covered[a] and incident[a][-1] == i) or
                    (not covered[b] and incident[b][-1] == i)):
                search(i + 1)
            if not covered[a] and not covered[b]:
                w[i] = 1
                covered[a] = covered[b] = True
                search(i + 1)
                covered[a] = covered[b] = False
                w[i] = 0

        search(0)
        return sorted(out)

    def _complete(self, w: Sequence[int]) -> tuple[int, ...]:
        if not self.pc:
            return tuple(w)
        ne = len(self.G.edges)
        ys = []
        # each tile row reads y_j +- w_e = c with unit coefficient on y_j
        for a, c in self.equalities[len(self.G.vertices):]:
            ys.append(c - sum(x * y for x, y in zip(a[:ne], w)))
        return tuple(w) + tuple(ys)

    def satisfies(self, w: Sequence) -> bool:
        """Does ``w`` satisfy the facet description?"""
        ne = len(self.G.edges)
        if any(x < 0 for x in w[:ne]):
            return False
        return all(sum(a_i * x for a_i, x in zip(a, w)) == c for a, c in self.equalities)


def _tile_boundary_edge(G: SnakeGraph, j: int) -> int:
    for s in SIDES:
        e = G.tile_edges[j][s]
        if e not in G.interior_edges:
            return e
    raise DomainError(f"tile {j} has no boundary edge")


def lifted_matching_polytope(G: SnakeGraph, pc: bool = False) -> LiftedPolytope:
    return LiftedPolytope(G, pc)


def project_pi(v: Sequence, G: SnakeGraph, mode: str, arcs=None, boundary=None) -> WeightVector:
    """Sum lifted coordinates by label into the weight vector space of ``mode``."""
    keys = coordinate_keys(G, mode, arcs, boundary)
    acc = dict.fromkeys(keys, 0)
    ne = len(G.edges)
    for e, x in zip(G.edges, v[:ne]):
        if mode != "bd" and e.label in G.boundary_labels:
            continue
        acc[e.label] += x
    if mode == "pc":
        for j, x in enumerate(v[ne:ne + G.t]):
            acc["y_" + G.tiles[j].square] += x
    n = len(keys) if mode == "nf" else (len(keys) // 2 if mode == "pc" else
                                         len(tuple(G.arc_labels if arcs is None else arcs)))
    return WeightVector(mode, keys, tuple(acc[k] for k in keys), n)
