"""Polygons and once-punctured polygons with their tagged arcs and triangulations.

Everything geometric goes through a universal cover.  Boundary vertices lift
to integers on the real line of the upper half plane and the puncture lifts to
the point at infinity, so every arc becomes a family of chords whose crossings
are decided by interleaving of endpoints.  The polygon has a single lift; the
punctured polygon is periodic under ``x -> x + m``.  A self-folded triangle
unfolds in the cover to an ordinary triangle ``(a, a + m, infinity)``, so no
special casing is needed further downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Union

from .errors import DomainError, ParseError

# Cover points are integers, or None for the lift of the puncture.
Point = Optional[int]
Lift = tuple[Point, Point]


def _order(p: Point) -> tuple[int, int]:
    return (1, 0) if p is None else (0, p)


def _sorted_pair(p: Point, q: Point) -> Lift:
    return (p, q) if _order(p) <= _order(q) else (q, p)


def chords_cross(x: Lift, y: Lift) -> bool:
    """True when the cover chords ``x`` and ``y`` cross in their interiors."""
    if set(x) & set(y):
        return False
    lo, hi = sorted((_order(x[0]), _order(x[1])))
    inside = [lo < _order(p) < hi for p in y]
    return inside[0] != inside[1]


class Kind(str, Enum):
    POLYGON = "polygon"
    PUNCTURED = "punctured"


class Variant(str, Enum):
    CHORD = "chord"
    RADIUS = "radius"
    LOOP = "loop"


class Tag(str, Enum):
    PLAIN = "plain"
    NOTCHED = "notched"


class Side(str, Enum):
    """Side of a chord (travelled from its lower endpoint) holding the puncture."""

    LEFT = "L"
    RIGHT = "R"


_VARIANT_RANK = {Variant.CHORD: 0, Variant.RADIUS: 1, Variant.LOOP: 2}


@dataclass(frozen=True)
class MarkedSurface:
    kind: Kind
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 3:
            raise DomainError(f"a surface needs m >= 3 marked points, got {self.m!r}")
        object.__setattr__(self, "kind", Kind(self.kind))

    @classmethod
    def polygon(cls, m: int) -> "MarkedSurface":
        return cls(Kind.POLYGON, m)

    @classmethod
    def punctured(cls, m: int) -> "MarkedSurface":
        return cls(Kind.PUNCTURED, m)

    @classmethod
    def parse(cls, text: str) -> "MarkedSurface":
        """Parse ``polygon:6`` or ``punctured:4``."""
        try:
            kind, m = text.split(":")
            return cls(Kind(kind.strip()), int(m))
        except (ValueError, DomainError) as exc:
            raise ParseError(f"bad surface {text!r}: expected polygon:M or punctured:M") from exc

    @property
    def is_punctured(self) -> bool:
        return self.kind is Kind.PUNCTURED

    @property
    def rank(self) -> int:
        """Number of arcs in any triangulation."""
        return self.m if self.is_punctured else self.m - 3

    @property
    def segments(self) -> list["Segment"]:
        return [Segment(self, i) for i in range(self.m)]

    def __str__(self):
        return f"{self.kind.value}:{self.m}"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "m": self.m}

    @classmethod
    def from_json(cls, obj: dict) -> "MarkedSurface":
        try:
            return cls(Kind(obj["kind"]), int(obj["m"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad surface object {obj!r}") from exc

    def normalize(self, lift: Lift) -> Lift:
        """Translate a cover chord to a fixed representative of its orbit."""
        p, q = _sorted_pair(*lift)
        if not self.is_punctured or p is None:
            return (p, q)
        k = p // self.m
        return (p - k * self.m, None if q is None else q - k * self.m)

    def translates(self, lift: Lift, reach: int = 2) -> Iterable[Lift]:
        if not self.is_punctured:
            yield lift
            return
        p, q = lift
        for k in range(-reach, reach + 1):
            s = k * self.m
            yield (None if p is None else p + s, None if q is None else q + s)


@dataclass(frozen=True)
class Segment:
    """Boundary segment from vertex ``i`` to vertex ``i + 1`` (mod m)."""

    surface: MarkedSurface
    i: int

    @property
    def name(self) -> str:
        return f"z{self.i}"

    def lift(self) -> Lift:
        m = self.surface.m
        if not self.surface.is_punctured and self.i == m - 1:
            return (0, m - 1)
        return (self.i, self.i + 1)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TaggedArc:
    """A tagged arc; loops are only used as arcs of ideal triangulations.

    Chords run between boundary vertices ``a < b``; in the punctured polygon
    ``side`` says on which side of the chord, travelled from ``a`` to ``b``,
    the puncture lies.  Radii join vertex ``a`` to the puncture.  ``Loop(a)``
    is based at ``a`` and cuts out a once-punctured monogon.
    """

    surface: MarkedSurface
    variant: Variant
    a: int
    b: Optional[int] = None
    side: Optional[Side] = None
    tag: Tag = Tag.PLAIN

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "tag", Tag(self.tag))
        if self.side is not None:
            object.__setattr__(self, "side", Side(self.side))
        s, m = self.surface, self.surface.m
        if not 0 <= self.a < m:
            raise DomainError(f"vertex {self.a} out of range for {s}")
        if self.variant is Variant.CHORD:
            if self.b is None or not self.a < self.b < m:
                raise DomainError(f"chord needs 0 <= a < b < m, got {self.a}, {self.b}")
            if self.tag is not Tag.PLAIN:
                raise DomainError("only radii carry a notched tag")
            if s.is_punctured:
                if self.side is None:
                    raise DomainError("a chord of a punctured polygon needs a side")
                length = self.b - self.a if self.side is Side.LEFT else self.a + m - self.b
                if length < 2:
                    raise DomainError(f"chord {self.name} is homotopic to a boundary segment")
            else:
                if self.side is not None:
                    raise DomainError("polygon chords have no side")
                if self.b - self.a < 2 or (self.a, self.b) == (0, m - 1):
                    raise DomainError(f"chord ({self.a},{self.b}) is a boundary segment")
        else:
            if not s.is_punctured:
                raise DomainError(f"a polygon has no {self.variant.value}")
            if self.b is not None or self.side is not None:
                raise DomainError(f"a {self.variant.value} has a single endpoint")
            if self.variant is Variant.LOOP and self.tag is not Tag.PLAIN:
                raise DomainError("loops are never notched")

    @classmethod
    def chord(cls, surface: MarkedSurface, a: int, b: int, side: Optional[str] = None) -> "TaggedArc":
        a, b = min(a, b), max(a, b)
        return cls(surface, Variant.CHORD, a, b, None if side is None else Side(side))

    @classmethod
    def radius(cls, surface: MarkedSurface, a: int, tag: str = "plain") -> "TaggedArc":
        return cls(surface, Variant.RADIUS, a, tag=Tag(tag))

    @classmethod
    def loop(cls, surface: MarkedSurface, a: int) -> "TaggedArc":
        return cls(surface, Variant.LOOP, a)

    @property
    def is_radius(self) -> bool:
        return self.variant is Variant.RADIUS

    @property
    def notched(self) -> bool:
        return self.tag is Tag.NOTCHED

    @property
    def name(self) -> str:
        if self.variant is Variant.CHORD:
            return f"c{self.a}_{self.b}" + (self.side.value if self.side else "")
        if self.variant is Variant.RADIUS:
            return f"r{self.a}" + ("n" if self.notched else "")
        return f"l{self.a}"

    def __str__(self):
        return self.name

    def sort_key(self) -> tuple:
        return (_VARIANT_RANK[self.variant], self.a, self.b if self.b is not None else -1,
                self.side.value if self.side else "", self.tag is Tag.NOTCHED)

    def __lt__(self, other: "TaggedArc") -> bool:
        return self.sort_key() < other.sort_key()

    def plain(self) -> "TaggedArc":
        return TaggedArc(self.surface, self.variant, self.a, self.b, self.side)

    def flipped(self) -> "TaggedArc":
        if not self.is_radius:
            return self
        other = Tag.PLAIN if self.notched else Tag.NOTCHED
        return TaggedArc(self.surface, self.variant, self.a, tag=other)

    def lift(self) -> Lift:
        """A cover chord of the underlying ordinary arc, lower end first."""
        return _sorted_pair(*self.oriented_lift())

    def oriented_lift(self) -> Lift:
        """Cover chord travelled in the canonical direction.

        Chords start at their lower vertex, radii at their boundary vertex and
        loops go counterclockwise around the puncture from their basepoint.
        """
        m = self.surface.m
        if self.variant is Variant.RADIUS:
            return (self.a, None)
        if self.variant is Variant.LOOP:
            return (self.a, self.a + m)
        if self.side is Side.RIGHT:
            return (self.a + m, self.b)
        return (self.a, self.b)

    def to_json(self) -> dict:
        out = {"variant": self.variant.value, "a": self.a}
        if self.b is not None:
            out["b"] = self.b
        if self.side is not None:
            out["side"] = self.side.value
        if self.is_radius:
            out["tag"] = self.tag.value
        return out

    @classmethod
    def from_json(cls, surface: MarkedSurface, obj: dict) -> "TaggedArc":
        try:
            variant = Variant(obj["variant"])
            if variant is Variant.CHORD:
                return cls.chord(surface, int(obj["a"]), int(obj["b"]), obj.get("side"))
            if variant is Variant.RADIUS:
                return cls.radius(surface, int(obj["a"]), obj.get("tag", "plain"))
            return cls.loop(surface, int(obj["a"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise ParseError(f"bad arc object {obj!r}") from exc

    @classmethod
    def parse(cls, surface: MarkedSurface, text: str) -> "TaggedArc":
        """Parse a JSON object or a short name such as ``c0_2L``, ``r3n`` or ``l1``."""
        text = text.strip()
        if text.startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad arc JSON {text!r}") from exc
            return cls.from_json(surface, obj.get("arc", obj))
        for arc in enumerate_tagged_arcs(surface) + _loops(surface):
            if arc.name == text:
                return arc
        raise ParseError(f"no arc named {text!r} on {surface}")


Label = Union[TaggedArc, Segment]


def _loops(surface: MarkedSurface) -> list[TaggedArc]:
    return [TaggedArc.loop(surface, a) for a in range(surface.m)] if surface.is_punctured else []


def _same_surface(*objs) -> MarkedSurface:
    surfaces = {o.surface for o in objs}
    if len(surfaces) != 1:
        raise DomainError(f"objects live on different surfaces: {sorted(map(str, surfaces))}")
    return surfaces.pop()


def intersection_number(alpha: TaggedArc, beta: TaggedArc) -> int:
    """Minimal number of interior crossings of the underlying ordinary arcs."""
    surface = _same_surface(alpha, beta)
    if alpha.plain() == beta.plain():
        return 0
    x = alpha.lift()
    return sum(chords_cross(x, y) for y in surface.translates(beta.lift()))


def arcs_compatible(alpha: TaggedArc, beta: TaggedArc) -> bool:
    """Tagged compatibility: no crossing, and distinct radii carry equal tags."""
    _same_surface(alpha, beta)
    if alpha.is_radius and beta.is_radius:
        return alpha.a == beta.a or alpha.tag == beta.tag
    return intersection_number(alpha, beta) == 0


def enumerate_tagged_arcs(surface: MarkedSurface) -> list[TaggedArc]:
    """All tagged arcs of ``surface`` in canonical order."""
    m = surface.m
    arcs = []
    for a, b in combinations(range(m), 2):
        if not surface.is_punctured:
            if b - a >= 2 and (a, b) != (0, m - 1):
                arcs.append(TaggedArc.chord(surface, a, b))
            continue
        if b - a >= 2:
            arcs.append(TaggedArc.chord(surface, a, b, "L"))
        if a + m - b >= 2:
            arcs.append(TaggedArc.chord(surface, a, b, "R"))
    if surface.is_punctured:
        for a in range(m):
            arcs.append(TaggedArc.radius(surface, a, "plain"))
            arcs.append(TaggedArc.radius(surface, a, "notched"))
    return sorted(arcs)


def _check_arcs(surface: MarkedSurface, arcs: Iterable[TaggedArc]) -> tuple[TaggedArc, ...]:
    arcs = tuple(sorted(set(arcs)))
    for arc in arcs:
        if arc.surface != surface:
            raise DomainError(f"arc {arc} is not on {surface}")
    if len(arcs) != surface.rank:
        raise DomainError(f"a triangulation of {surface} has {surface.rank} arcs, got {len(arcs)}")
    return arcs


@dataclass(frozen=True)
class TaggedTriangulation:
    surface: MarkedSurface
    arcs: tuple[TaggedArc, ...]

    def __post_init__(self):
        arcs = _check_arcs(self.surface, self.arcs)
        for alpha, beta in combinations(arcs, 2):
            if not arcs_compatible(alpha, beta):
                raise DomainError(f"arcs {alpha} and {beta} are not compatible")
        if any(a.variant is Variant.LOOP for a in arcs):
            raise DomainError("a tagged triangulation cannot contain a loop")
        object.__setattr__(self, "arcs", arcs)

    def __contains__(self, arc: TaggedArc) -> bool:
        return arc in self.arcs

    def __iter__(self):
        return iter(self.arcs)

    @property
    def radii(self) -> list[TaggedArc]:
        return [a for a in self.arcs if a.is_radius]

    @property
    def is_tag_symmetric(self) -> bool:
        """True when flipping every tag gives back the same triangulation."""
        return flip_tagging(self) == self

    @property
    def all_notched(self) -> bool:
        radii = self.radii
        return bool(radii) and all(r.notched for r in radii) and not self.is_tag_symmetric

    def to_json(self) -> dict:
        return {"surface": self.surface.to_json(), "arcs": [a.to_json() for a in self.arcs]}

    @classmethod
    def from_json(cls, obj: dict, surface: Optional[MarkedSurface] = None) -> "TaggedTriangulation":
        try:
            surface = surface or MarkedSurface.from_json(obj["surface"])
            return cls(surface, tuple(TaggedArc.from_json(surface, a) for a in obj["arcs"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad triangulation object: {exc}") from exc

    @classmethod
    def parse(cls, surface: MarkedSurface, text: str) -> "TaggedTriangulation":
        """Parse JSON or a comma separated list of arc names."""
        text = text.strip()
        if text.startswith("{"):
            try:
                return cls.from_json(json.loads(text), surface)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad triangulation JSON {text!r}") from exc
        names = [t for t in text.split(",") if t.strip()]
        return cls(surface, tuple(TaggedArc.parse(surface, n) for n in names))

    def __str__(self):
        return ",".join(a.name for a in self.arcs)


@dataclass(frozen=True)
class IdealTriangulation:
    """Ordinary triangulation; may contain one loop enclosing a radius."""

    surface: MarkedSurface
    arcs: tuple[TaggedArc, ...]

    def __post_init__(self):
        arcs = _check_arcs(self.surface, self.arcs)
        for arc in arcs:
            if arc.notched:
                raise DomainError("ideal triangulations consist of plain arcs")
        for alpha, beta in combinations(arcs, 2):
            if intersection_number(alpha, beta):
                raise DomainError(f"arcs {alpha} and {beta} cross")
        object.__setattr__(self, "arcs", arcs)

    def __contains__(self, arc: TaggedArc) -> bool:
        return arc in self.arcs

    def __iter__(self):
        return iter(self.arcs)

    @property
    def loop(self) -> Optional[TaggedArc]:
        return next((a for a in self.arcs if a.variant is Variant.LOOP), None)

    @property
    def radii(self) -> list[TaggedArc]:
        return sorted((a for a in self.arcs if a.is_radius), key=lambda r: r.a)

    def __str__(self):
        return ",".join(a.name for a in self.arcs)


def enumerate_tagged_triangulations(surface: MarkedSurface) -> list[TaggedTriangulation]:
    """All tagged triangulations, each with arcs in canonical order.

    Plain backtracking over maximal compatible sets; every maximal set has
    exactly ``surface.rank`` arcs, which is asserted.
    """
    arcs = enumerate_tagged_arcs(surface)
    n = len(arcs)
    ok = [[arcs_compatible(arcs[i], arcs[j]) for j in range(n)] for i in range(n)]
    found = []

    def extend(chosen: list[int], candidates: list[int]):
        if not candidates:
            maximal = all(any(not ok[i][j] for j in chosen) for i in range(n) if i not in chosen)
            if maximal:
                found.append(chosen)
            return
        for pos, i in enumerate(candidates):
            extend(chosen + [i], [j for j in candidates[pos + 1:] if ok[i][j]])

    extend([], list(range(n)))
    out = []
    for chosen in found:
        if len(chosen) != surface.rank:
            raise DomainError(f"maximal compatible set of size {len(chosen)} on {surface}")
        out.append(TaggedTriangulation(surface, tuple(arcs[i] for i in chosen)))
    return out


def flip_tagging(obj):
    """Swap plain and notched on every radius of an arc or triangulation."""
    if isinstance(obj, TaggedArc):
        return obj.flipped()
    return TaggedTriangulation(obj.surface, tuple(a.flipped() for a in obj.arcs))


def tagged_to_ideal(T: TaggedTriangulation) -> IdealTriangulation:
    """Replace each notched radius whose plain partner is present by the loop around it."""
    plain_radii = {r.a for r in T.radii if not r.notched}
    arcs = []
    for arc in T.arcs:
        if arc.notched:
            if arc.a not in plain_radii:
                raise DomainError("notched radius without a plain partner; flip the tagging first")
            arcs.append(TaggedArc.loop(T.surface, arc.a))
        else:
            arcs.append(arc)
    return IdealTriangulation(T.surface, tuple(arcs))


def ideal_to_tagged(T: IdealTriangulation) -> TaggedTriangulation:
    arcs = [TaggedArc.radius(T.surface, a.a, "notched") if a.variant is Variant.LOOP else a
            for a in T.arcs]
    return TaggedTriangulation(T.surface, tuple(arcs))


# ---------------------------------------------------------------------------
# Crossings and the triangles along an arc


@dataclass(frozen=True)
class CrossingPath:
    """The arcs crossed by ``gamma`` in order, with the triangles in between.

    ``lifts[j]`` is the cover chord of the j-th crossed arc and ``triangles[j]``
    holds the three cover points of the triangle entered after crossing
    ``j`` arcs, so there is one more triangle than crossing.
    """

    gamma: TaggedArc
    arcs: tuple[TaggedArc, ...]
    lifts: tuple[Lift, ...]
    triangles: tuple[tuple[Point, Point, Point], ...]


class CoverTriangulation:
    """An ideal triangulation together with its lifted labels."""

    def __init__(self, T: IdealTriangulation):
        self.T = T
        self.surface = T.surface
        self.labels: dict[Lift, Label] = {}
        for arc in T.arcs:
            self.labels[self.surface.normalize(arc.lift())] = arc
        for seg in self.surface.segments:
            self.labels[self.surface.normalize(seg.lift())] = seg

    def label(self, p: Point, q: Point) -> Label:
        try:
            return self.labels[self.surface.normalize((p, q))]
        except KeyError:
            raise DomainError(f"cover chord ({p}, {q}) is not a side of the triangulation") from None

    def crossing_path(self, gamma: TaggedArc) -> CrossingPath:
        if gamma.surface != self.surface:
            raise DomainError(f"arc {gamma} is not on {self.surface}")
        if gamma.notched:
            raise DomainError("crossing sequences are defined for ordinary arcs")
        if gamma in self.T.arcs:
            return CrossingPath(gamma, (), (), ())
        x1, x2 = gamma.oriented_lift()
        hits = []
        for arc in self.T.arcs:
            if arc.plain() == gamma.plain():
                continue
            for lift in self.surface.translates(arc.lift()):
                if chords_cross((x1, x2), lift):
                    hits.append((arc, lift))

        # Circular position measured from just after x2.  Each crossed chord
        # separates x1 from x2, so the sides holding x1 form a nested chain.
        def pos(p: Point) -> tuple:
            return (0, _order(p)) if _order(p) > _order(x2) else (1, _order(p))

        def span(lift: Lift) -> tuple:
            return tuple(sorted((pos(lift[0]), pos(lift[1]))))

        hits.sort(key=lambda h: span(h[1])[0], reverse=True)
        hits.sort(key=lambda h: span(h[1])[1])
        lifts = [h[1] for h in hits]
        triangles = []
        ends = [(x1,)] + [tuple(l) for l in lifts] + [(x2,)]
        for before, after in zip(ends, ends[1:]):
            pts = set(before) | set(after)
            if len(pts) != 3:
                raise DomainError(f"consecutive crossings of {gamma} do not bound a triangle")
            triangles.append(tuple(sorted(pts, key=_order)))
        return CrossingPath(gamma, tuple(h[0] for h in hits), tuple(lifts), tuple(triangles))


def crossing_sequence(T: IdealTriangulation, gamma: TaggedArc) -> list[TaggedArc]:
    """Arcs of ``T`` crossed by the ordinary arc ``gamma``, in order and with multiplicity."""
    return list(CoverTriangulation(T).crossing_path(gamma).arcs)


def loop_around(rho: TaggedArc) -> TaggedArc:
    """The loop based at the endpoint of the radius ``rho`` and enclosing it."""
    if not rho.is_radius:
        raise DomainError(f"{rho} is not a radius")
    return TaggedArc.loop(rho.surface, rho.a)


@dataclass(frozen=True)
class RadialDecomposition:
    """Radii around the puncture and the regions between consecutive ones.

    ``eps[i]`` is the side opposite the puncture in the triangle between
    radii ``i`` and ``i + 1`` (the loop when there is a single radius),
    ``fans[i]`` are the remaining arcs inside that region and ``intervals[i]``
    the boundary vertices it touches, from ``basepoints[i]`` ccw to the next.
    """

    k: int
    radii: tuple[TaggedArc, ...]
    basepoints: tuple[int, ...]
    eps: tuple[Label, ...]
    fans: tuple[tuple[TaggedArc, ...], ...]
    intervals: tuple[tuple[int, ...], ...]


def radial_decomposition(T: IdealTriangulation) -> RadialDecomposition:
    surface = T.surface
    if not surface.is_punctured:
        raise DomainError("radial decomposition needs a punctured polygon")
    m = surface.m
    cover = CoverTriangulation(T)
    radii = tuple(T.radii)
    b = [r.a for r in radii]
    k = len(b)
    chords = [a for a in T.arcs if a.variant is Variant.CHORD]
    eps, fans, intervals = [], [], []
    for i in range(k):
        lo = b[i]
        hi = b[i + 1] if i + 1 < k else b[0] + m
        if k == 1:
            eps.append(T.loop)
        else:
            eps.append(cover.label(lo, hi))
        fan = []
        for arc in chords:
            p, q = arc.lift()
            for s in range(-2, 3):
                if lo <= p + s * m and q + s * m <= hi and arc != eps[-1]:
                    fan.append(arc)
                    break
        fans.append(tuple(fan))
        intervals.append(tuple(v % m for v in range(lo, hi + 1)))
    return RadialDecomposition(k, radii, tuple(b), tuple(eps), tuple(fans), tuple(intervals))
