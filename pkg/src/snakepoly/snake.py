"""Snake graphs: construction from crossing paths and raw JSON ingestion.

Tiles sit on the integer grid, tile 0 at the origin, each next tile east or
north of the previous one.  Every tile is the quadrilateral around a crossed
arc: the triangle entered before the crossing fills the south-west half and
the triangle after it the north-east half, with the crossed arc as the
NW-SE diagonal.  Odd tiles (counting from 1) keep the orientation of the
surface and even tiles reverse it.  The side shared with the next tile is the
uncrossed side of the triangle between the two crossings, so the shape word
falls out of the construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .errors import DomainError, IntegrityError, ParseError
from .surface import CoverTriangulation, IdealTriangulation, Lift, TaggedArc, _order

SIDES = ("S", "E", "N", "W")

GridPoint = tuple[int, int]


@dataclass(frozen=True)
class Tile:
    square: str
    S: str
    E: str
    N: str
    W: str

    def side(self, s: str) -> str:
        return getattr(self, s)


@dataclass(frozen=True)
class Edge:
    ends: tuple[GridPoint, GridPoint]
    label: str


def _segment(pos: GridPoint, side: str) -> tuple[GridPoint, GridPoint]:
    x, y = pos
    return {
        "S": ((x, y), (x + 1, y)),
        "E": ((x + 1, y), (x + 1, y + 1)),
        "N": ((x, y + 1), (x + 1, y + 1)),
        "W": ((x, y), (x, y + 1)),
    }[side]


@dataclass(frozen=True)
class SnakeGraph:
    """A snake graph with labelled tiles and edges.

    ``sources`` optionally records, per tile and side, the cover chord the
    edge came from; it is only present for graphs built from a surface.
    """

    shape: str
    tiles: tuple[Tile, ...]
    boundary_labels: frozenset[str] = frozenset()
    sources: Optional[tuple[dict, ...]] = field(default=None, compare=False, repr=False)
    period: Optional[int] = field(default=None, compare=False, repr=False)
    label_order: Optional[tuple[str, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.tiles:
            raise ParseError("a snake graph needs at least one tile")
        if len(self.shape) != len(self.tiles) - 1 or set(self.shape) - {"E", "N"}:
            raise ParseError(f"shape {self.shape!r} does not fit {len(self.tiles)} tiles")
        object.__setattr__(self, "boundary_labels", frozenset(self.boundary_labels))
        for j, step in enumerate(self.shape):
            here, there = (("E", "W") if step == "E" else ("N", "S"))
            a, b = self.tiles[j].side(here), self.tiles[j + 1].side(there)
            if a != b:
                raise ParseError(f"tile {j + 1}: shared edge labelled {b!r} but tile {j} says {a!r}")

    @property
    def t(self) -> int:
        return len(self.tiles)

    @cached_property
    def positions(self) -> tuple[GridPoint, ...]:
        pos = [(0, 0)]
        for step in self.shape:
            x, y = pos[-1]
            pos.append((x + 1, y) if step == "E" else (x, y + 1))
        return tuple(pos)

    @cached_property
    def _edge_data(self):
        edges: list[Edge] = []
        index: dict[tuple, int] = {}
        tile_edges = []
        for tile, pos in zip(self.tiles, self.positions):
            sides = {}
            for s in SIDES:
                seg = _segment(pos, s)
                if seg not in index:
                    index[seg] = len(edges)
                    edges.append(Edge(seg, tile.side(s)))
                sides[s] = index[seg]
            tile_edges.append(sides)
        return tuple(edges), tuple(tile_edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Distinct edges in canonical order: by tile, then S, E, N, W."""
        return self._edge_data[0]

    @property
    def tile_edges(self) -> tuple[dict, ...]:
        return self._edge_data[1]

    @cached_property
    def vertices(self) -> tuple[GridPoint, ...]:
        return tuple(sorted({p for e in self.edges for p in e.ends}))

    @cached_property
    def interior_edges(self) -> frozenset[int]:
        out = set()
        for j, step in enumerate(self.shape):
            out.add(self.tile_edges[j]["E" if step == "E" else "N"])
        return frozenset(out)

    @cached_property
    def boundary_edges(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.edges)) if i not in self.interior_edges)

    def is_corner(self, j: int) -> bool:
        """Tile ``j`` (0-based) turns the snake."""
        return 0 < j < self.t - 1 and self.shape[j - 1] != self.shape[j]

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """Every edge or square label, arcs first then boundary labels."""
        if self.label_order is not None:
            return self.label_order
        seen = []
        for tile in self.tiles:
            for lab in (tile.square,) + tuple(tile.side(s) for s in SIDES):
                if lab not in seen:
                    seen.append(lab)
        arcs = [l for l in seen if l not in self.boundary_labels]
        bd = [l for l in seen if l in self.boundary_labels]
        return tuple(arcs + bd)

    @property
    def arc_labels(self) -> tuple[str, ...]:
        return tuple(l for l in self.labels if l not in self.boundary_labels)

    def to_json(self) -> dict:
        out = {
            "shape": self.shape,
            "tiles": [{"square": t.square, **{s: t.side(s) for s in SIDES}} for t in self.tiles],
            "boundary_labels": sorted(self.boundary_labels),
        }
        if self.label_order is not None:
            out["labels"] = list(self.label_order)
        return out


def parse_raw_snake_graph(spec) -> SnakeGraph:
    """Build a snake graph from raw JSON (a dict or a JSON string).

    An optional ``labels`` list fixes the coordinate order of weight vectors.
    """
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ParseError(f"raw snake graph is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise ParseError("raw snake graph must be a JSON object")
    tiles = []
    for j, raw in enumerate(spec.get("tiles") or []):
        try:
            tiles.append(Tile(*(str(raw[k]) for k in ("square",) + SIDES)))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"tile {j}: needs square, S, E, N, W labels") from exc
    shape = spec.get("shape", "")
    if not isinstance(shape, str):
        raise ParseError("shape must be a string over E and N")
    order = spec.get("labels")
    G = SnakeGraph(shape, tuple(tiles), frozenset(map(str, spec.get("boundary_labels", []))),
                   label_order=tuple(order) if order is not None else None)
    if order is not None:
        used = {t.square for t in G.tiles} | {e.label for e in G.edges}
        if used - set(order) or len(set(order)) != len(order):
            raise ParseError("labels list must name every label exactly once")
    return G


def _ccw_sides(tri) -> list[Lift]:
    u, v, w = tri
    return [(u, v), (v, w), (w, u)]


def _rotate_to(sides: list[Lift], diag: Lift) -> list[Lift]:
    for i, s in enumerate(sides):
        if set(s) == set(diag):
            return sides[i:] + sides[:i]
    raise IntegrityError(f"diagonal {diag} is not a side of {sides}")


def _lift_key(lift: Lift) -> Lift:
    return tuple(sorted(lift, key=_order))


def build_snake_graph(T: IdealTriangulation, gamma: TaggedArc) -> SnakeGraph:
    """The snake graph of the ordinary arc ``gamma`` (a chord, radius or loop)."""
    cover = CoverTriangulation(T)
    path = cover.crossing_path(gamma)
    if not path.arcs:
        raise DomainError(f"{gamma} crosses no arc of the triangulation")
    tiles, sources = [], []
    shape = []
    for j, diag in enumerate(path.lifts):
        before = _rotate_to(_ccw_sides(path.triangles[j]), diag)
        after = _rotate_to(_ccw_sides(path.triangles[j + 1]), diag)
        if j % 2 == 0:
            place = {"W": before[1], "S": before[2], "E": after[1], "N": after[2]}
        else:
            place = {"S": before[1], "W": before[2], "N": after[1], "E": after[2]}
        if j + 1 < len(path.lifts):
            nxt = set(path.lifts[j + 1])
            shared = [s for s in ("E", "N") if set(place[s]) != nxt]
            if len(shared) != 1:
                raise IntegrityError("next crossing is not a side of the current triangle")
            shape.append(shared[0])
        tiles.append(Tile(path.arcs[j].name, *(cover.label(*place[s]).name for s in SIDES)))
        sources.append({s: _lift_key(place[s]) for s in SIDES})
    boundary = {seg.name for seg in T.surface.segments}
    used = {t.side(s) for t in tiles for s in SIDES}
    return SnakeGraph("".join(shape), tuple(tiles), frozenset(boundary & used),
                      sources=tuple(sources), period=T.surface.m if T.surface.is_punctured else None)


@dataclass(frozen=True)
class RadiusEndSubgraphs:
    """The two copies of a radius snake graph at the ends of a loop graph.

    ``edge_map`` sends each edge of the first copy to its partner in the
    second; ``h_edges`` are the first-copy edges whose label is not a radius.
    """

    d: int
    first: tuple[int, ...]
    second: tuple[int, ...]
    first_edges: frozenset[int]
    second_edges: frozenset[int]
    edge_map: dict
    h_edges: frozenset[int]


def radius_end_subgraphs(G: SnakeGraph, d: int, radius_labels=None) -> RadiusEndSubgraphs:
    """Locate the end copies of the radius graph inside the loop graph ``G``.

    The correspondence pairs tile ``i`` with tile ``t - 1 - i`` and sends
    each side to the side coming from the deck translate of the same cover
    chord; it is then checked to be a label preserving graph isomorphism.
    """
    t = G.t
    if 2 * d > t:
        raise DomainError(f"malformed loop graph: 2*{d} > {t} tiles")
    if d and (G.sources is None or G.period is None):
        raise DomainError("end copies need a graph built from a loop on a punctured polygon")
    if radius_labels is None:
        radius_labels = {l for l in G.labels if l.startswith("r")}
    first = tuple(range(d))
    second = tuple(range(t - d, t))
    edge_map: dict[int, int] = {}
    m = G.period
    for i in first:
        j = t - 1 - i
        partner = {G.sources[j][s]: G.tile_edges[j][s] for s in SIDES}
        for s in SIDES:
            p, q = G.sources[i][s]
            shifted = _lift_key((None if p is None else p + m, None if q is None else q + m))
            e, f = G.tile_edges[i][s], partner.get(shifted)
            if f is None or edge_map.setdefault(e, f) != f:
                raise IntegrityError(f"end copies of the loop graph do not match at tile {i}")
    first_edges = frozenset(edge_map)
    second_edges = frozenset(edge_map.values())
    if first_edges & second_edges or len(second_edges) != len(first_edges):
        raise IntegrityError("end copies overlap")
    _check_isomorphism(G, edge_map)
    h = frozenset(e for e in first_edges if G.edges[e].label not in radius_labels)
    return RadiusEndSubgraphs(d, first, second, first_edges, second_edges, edge_map, h)


def _check_isomorphism(G: SnakeGraph, edge_map: dict):
    vmap: dict = {}
    for e, f in edge_map.items():
        if G.edges[e].label != G.edges[f].label:
            raise IntegrityError("end copies disagree on labels")
    # Two edges meet in the first copy iff their images meet in the second.
    items = list(edge_map.items())
    for a, (e1, f1) in enumerate(items):
        for e2, f2 in items[a + 1:]:
            common = set(G.edges[e1].ends) & set(G.edges[e2].ends)
            image = set(G.edges[f1].ends) & set(G.edges[f2].ends)
            if len(common) != len(image):
                raise IntegrityError("end copies are not isomorphic")
            if common:
                (v,), (w,) = common, image
                if vmap.setdefault(v, w) != w:
                    raise IntegrityError("end copies are not isomorphic")


def unique_end_label(G: SnakeGraph) -> Optional[int]:
    """A boundary edge of the first or last tile whose label occurs once in ``G``."""
    counts: dict[str, int] = {}
    for e in G.edges:
        counts[e.label] = counts.get(e.label, 0) + 1
    for tile in sorted({0, G.t - 1}):
        for s in SIDES:
            e = G.tile_edges[tile][s]
            if e in G.interior_edges:
                continue
            if counts[G.edges[e].label] == 1:
                return e
    return None
