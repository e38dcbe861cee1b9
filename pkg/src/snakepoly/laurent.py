"""Sparse Laurent polynomials and the snake graph expansion formulas.

Variables are ordered as: arcs of the triangulation in canonical order, then
boundary segments (bd mode) or ``y_`` variables (pc mode).  In nf mode only
the arc variables occur.
"""

from __future__ import annotations

import json
from collections import defaultdict
from typing import Mapping, Optional, Sequence

from .errors import DomainError, ParseError
from .matching import (MODES, bottom_matching, enclosed_tiles, enumerate_matchings,
                       reduced_weight_vector, rho_symmetric_matchings)
from .snake import SnakeGraph, build_snake_graph, radius_end_subgraphs
from .surface import (CoverTriangulation, IdealTriangulation, TaggedArc, TaggedTriangulation,
                      Variant, flip_tagging, loop_around, tagged_to_ideal)

Exponent = tuple[int, ...]


class LaurentPolynomial:
    """Integer Laurent polynomial stored as ``{exponent tuple: coefficient}``."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Optional[Mapping[Exponent, int]] = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise DomainError(f"exponent {exp} does not match {n} variables")
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def monomial(cls, vars: Sequence[str], exp: Exponent, coef: int = 1) -> "LaurentPolynomial":
        return cls(vars, {tuple(exp): coef})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "LaurentPolynomial":
        exp = [0] * len(vars)
        exp[list(vars).index(name)] = 1
        return cls.monomial(vars, exp)

    def _check(self, other: "LaurentPolynomial"):
        if other.vars != self.vars:
            raise DomainError("Laurent polynomials over different variables")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.vars, out)

    def __neg__(self):
        return LaurentPolynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return LaurentPolynomial(self.vars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def shift(self, exp: Exponent, sign: int = 1) -> "LaurentPolynomial":
        """Multiply (sign=1) or divide (sign=-1) by the monomial with exponent ``exp``."""
        return LaurentPolynomial(self.vars, {tuple(a + sign * b for a, b in zip(e, exp)): c
                                             for e, c in self.terms.items()})

    def substitute(self, new_vars: Sequence[str],
                   images: Mapping[str, Mapping[str, int]]) -> "LaurentPolynomial":
        """Replace each variable by a monomial in ``new_vars``.

        ``images[v]`` maps new variable names to exponents; a variable missing
        from ``images`` keeps its name, which must then occur in ``new_vars``.
        """
        new_vars = tuple(new_vars)
        pos = {v: i for i, v in enumerate(new_vars)}
        columns = []
        for v in self.vars:
            col = [0] * len(new_vars)
            for w, k in images.get(v, {v: 1}).items():
                if w not in pos:
                    raise DomainError(f"variable {w!r} is not among the new variables")
                col[pos[w]] += k
            columns.append(col)
        out: dict = defaultdict(int)
        for e, c in self.terms.items():
            img = [0] * len(new_vars)
            for k, col in zip(e, columns):
                if k:
                    for i, x in enumerate(col):
                        img[i] += k * x
            out[tuple(img)] += c
        return LaurentPolynomial(new_vars, out)

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPolynomial":
        """Rename variables in place (the variable order is kept)."""
        return LaurentPolynomial([mapping.get(v, v) for v in self.vars], self.terms)

    def support(self) -> list[Exponent]:
        return sorted(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def to_json(self) -> dict:
        return {"vars": list(self.vars),
                "terms": [{"exp": list(e), "coef": c} for e, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj) -> "LaurentPolynomial":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad polynomial JSON: {exc}") from exc
        try:
            vars = [str(v) for v in obj["vars"]]
            terms: dict = defaultdict(int)
            for t in obj["terms"]:
                exp = tuple(int(x) for x in t["exp"])
                if len(exp) != len(vars):
                    raise ParseError(f"term {t} has the wrong number of exponents")
                terms[exp] += int(t["coef"])
            return cls(vars, terms)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad polynomial object: {exc}") from exc

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self})"


def variable_index(T: TaggedTriangulation, mode: str) -> tuple[str, ...]:
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}")
    arcs = tuple(a.name for a in T.arcs)
    if mode == "bd":
        return arcs + tuple(s.name for s in T.surface.segments)
    if mode == "pc":
        return arcs + tuple("y_" + a for a in arcs)
    return arcs


def _label_images(T: TaggedTriangulation, ideal: IdealTriangulation, mode: str) -> dict:
    """Where each snake graph label of the ideal triangulation lands.

    A loop around the radius r stands for the product of the variables of r
    and its notched twin.  On coefficients the loop tile carries the y of the
    notched twin and the tile of r carries y_r over that same y, which is
    what seed mutation produces.
    """
    images: dict[str, dict[str, int]] = {}
    for arc in ideal.arcs:
        images[arc.name] = {arc.name: 1}
        images["y_" + arc.name] = {"y_" + arc.name: 1}
    loop = ideal.loop
    if loop is not None:
        r = TaggedArc.radius(T.surface, loop.a)
        plain, notched = r.name, r.flipped().name
        images[loop.name] = {plain: 1, notched: 1}
        images["y_" + loop.name] = {"y_" + notched: 1}
        images["y_" + plain] = {"y_" + plain: 1, "y_" + notched: -1}
    if mode == "bd":
        for seg in T.surface.segments:
            images[seg.name] = {seg.name: 1}
    return images


def _accumulate(vars, images, weights, denominator) -> LaurentPolynomial:
    pos = {v: i for i, v in enumerate(vars)}
    den = [0] * len(vars)
    for lab in denominator:
        for v, k in images[lab].items():
            den[pos[v]] += k
    terms: dict = defaultdict(int)
    for w in weights:
        exp = [-x for x in den]
        for lab, count in w.items():
            if count:
                for v, k in images[lab].items():
                    exp[pos[v]] += k * count
        terms[tuple(exp)] += 1
    return LaurentPolynomial(vars, terms)


def _weights(G: SnakeGraph, matchings, mode: str):
    M0 = bottom_matching(G)
    for M in matchings:
        w: dict[str, int] = defaultdict(int)
        for e in M:
            lab = G.edges[e].label
            if mode == "bd" or lab not in G.boundary_labels:
                w[lab] += 1
        if mode == "pc":
            for j in enclosed_tiles(G, M, M0):
                w["y_" + G.tiles[j].square] += 1
        yield w


def expand_plain(T: TaggedTriangulation, gamma: TaggedArc, mode: str,
                 ideal: Optional[IdealTriangulation] = None) -> LaurentPolynomial:
    """Sum of matching weights over the crossing monomial, for an ordinary arc.

    ``T`` must have a plain radius behind every notched one; ``gamma`` may be
    a chord, plain radius or loop.
    """
    ideal = ideal or tagged_to_ideal(T)
    vars = variable_index(T, mode)
    if gamma in ideal.arcs:
        images = _label_images(T, ideal, mode)
        return _accumulate(vars, images, [{gamma.name: 1}], [])
    G = build_snake_graph(ideal, gamma)
    images = _label_images(T, ideal, mode)
    return _accumulate(vars, images, _weights(G, enumerate_matchings(G), mode),
                       [t.square for t in G.tiles])


def expand_notched(T: TaggedTriangulation, gamma: TaggedArc, mode: str) -> LaurentPolynomial:
    """Expansion of a notched radius with respect to ``T``.

    Three cases: the plain radius is in ``T`` (divide the loop expansion by
    its variable), ``T`` is symmetric under the tag flip (swap the twin
    variables), or the general sum over symmetric matchings of the loop graph.
    """
    if not (gamma.is_radius and gamma.notched):
        raise DomainError(f"{gamma} is not a notched radius")
    if gamma in T.arcs:
        return expand(T, gamma, mode)
    if T.all_notched:
        return _via_tag_flip(T, gamma, mode)
    sigma = gamma.plain()
    if T.is_tag_symmetric:
        L = expand_plain(T, sigma, mode)
        swap = {}
        for r in T.radii:
            swap[r.name] = r.flipped().name
            swap["y_" + r.name] = "y_" + r.flipped().name
        return _reorder(L.rename(swap), L.vars)
    ideal = tagged_to_ideal(T)
    lam = loop_around(sigma)
    if sigma in T.arcs:
        L = expand_plain(T, lam, mode, ideal)
        exp = [1 if v == sigma.name else 0 for v in L.vars]
        return L.shift(exp, -1)
    cover = CoverTriangulation(ideal)
    d = len(cover.crossing_path(sigma).arcs)
    G = build_snake_graph(ideal, lam)
    radius_names = {r.name for r in ideal.radii}
    ends = radius_end_subgraphs(G, d, radius_names)
    vars = variable_index(T, mode)
    images = _label_images(T, ideal, mode)
    arcs = [a.name for a in ideal.arcs]
    boundary = [s.name for s in T.surface.segments]
    weights = []
    for M in rho_symmetric_matchings(G, ends):
        w = reduced_weight_vector(G, ends, M, mode, arcs, boundary if mode == "bd" else None)
        weights.append(w.as_dict())
    return _accumulate(vars, images, weights, [t.square for t in G.tiles[d:]])


def _reorder(L: LaurentPolynomial, vars: Sequence[str]) -> LaurentPolynomial:
    return L.substitute(vars, {})


def _via_tag_flip(T: TaggedTriangulation, gamma: TaggedArc, mode: str) -> LaurentPolynomial:
    """Expand against the plain twin triangulation and rename back."""
    Tp = flip_tagging(T)
    L = expand(Tp, gamma.flipped(), mode)
    rename = {}
    for arc in Tp.arcs:
        rename[arc.name] = arc.flipped().name
        rename["y_" + arc.name] = "y_" + arc.flipped().name
    return _reorder(L.rename(rename), variable_index(T, mode))


def expand(T: TaggedTriangulation, gamma: TaggedArc, mode: str) -> LaurentPolynomial:
    """The Laurent expansion of the cluster variable of ``gamma`` in the seed ``T``."""
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}")
    if gamma.surface != T.surface:
        raise DomainError(f"{gamma} is not on {T.surface}")
    if gamma.variant is Variant.LOOP:
        raise DomainError("loops are not tagged arcs")
    vars = variable_index(T, mode)
    if gamma in T.arcs:
        return LaurentPolynomial.variable(vars, gamma.name)
    if T.all_notched:
        return _via_tag_flip(T, gamma, mode)
    if gamma.notched:
        return expand_notched(T, gamma, mode)
    return expand_plain(T, gamma, mode)


def support(L: LaurentPolynomial) -> list[Exponent]:
    return L.support()
