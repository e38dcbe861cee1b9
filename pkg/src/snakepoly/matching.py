"""Perfect matchings of snake graphs and the weights attached to them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import DomainError, IntegrityError
from .snake import SIDES, SnakeGraph, Tile

Matching = frozenset  # of edge indices

MODES = ("bd", "nf", "pc")


def enumerate_matchings(G: SnakeGraph) -> list[Matching]:
    """All perfect matchings, sorted lexicographically by sorted edge tuple.

    Tiles are swept left to right.  The state between tile ``j`` and tile
    ``j + 1`` is the set of already covered endpoints of their shared edge;
    every other vertex of tiles ``<= j`` must be covered exactly once.
    """
    return list(_matchings_by_shape(G.shape))


@lru_cache(maxsize=4096)
def _matchings_by_shape(shape: str) -> tuple[Matching, ...]:
    G = SnakeGraph(shape, tuple(_blank_tile() for _ in range(len(shape) + 1)))
    edges, tile_edges = G.edges, G.tile_edges
    seen: set[int] = set()
    states: dict[frozenset, list[tuple[int, ...]]] = {frozenset(): [()]}
    for j in range(G.t):
        new = [e for e in sorted(set(tile_edges[j].values())) if e not in seen]
        seen.update(new)
        corners = {p for s in SIDES for p in edges[tile_edges[j][s]].ends}
        if j + 1 < G.t:
            keep = set(edges[tile_edges[j + 1]["W" if shape[j] == "E" else "S"]].ends)
        else:
            keep = set()
        nxt: dict[frozenset, list[tuple[int, ...]]] = {}
        for covered, partials in states.items():
            for r in range(len(new) + 1):
                for pick in combinations(new, r):
                    ends = [p for e in pick for p in edges[e].ends]
                    if len(set(ends)) != len(ends) or set(ends) & covered:
                        continue
                    now = covered | set(ends)
                    if not (corners - keep) <= now:
                        continue
                    key = frozenset(now & keep)
                    nxt.setdefault(key, []).extend(p + pick for p in partials)
        states = nxt
    found = [frozenset(p) for p in states.get(frozenset(), [])]
    return tuple(sorted(found, key=lambda M: tuple(sorted(M))))


def _blank_tile() -> Tile:
    return Tile("", "", "", "", "")


def is_perfect_matching(G: SnakeGraph, M: Iterable[int], vertices=None) -> bool:
    vertices = set(G.vertices if vertices is None else vertices)
    ends = [p for e in M for p in G.edges[e].ends]
    return len(ends) == len(set(ends)) and set(ends) == vertices


def bottom_matching(G: SnakeGraph) -> Matching:
    """The all-boundary matching containing the south edge of the first tile.

    Every vertex of a snake graph lies on the outer cycle, which has even
    length, so alternate edges along that cycle form a perfect matching.
    """
    boundary = set(G.boundary_edges)
    at: dict = {}
    for e in boundary:
        for p in G.edges[e].ends:
            at.setdefault(p, []).append(e)
    start = G.tile_edges[0]["S"]
    cycle = [start]
    p = G.edges[start].ends[1]
    while True:
        e = next(f for f in at[p] if f != cycle[-1])
        if e == start:
            break
        cycle.append(e)
        a, b = G.edges[e].ends
        p = b if a == p else a
    M = frozenset(cycle[::2])
    if len(cycle) != 2 * G.t + 2 or not is_perfect_matching(G, M):
        raise IntegrityError("boundary cycle of the snake graph is malformed")
    return M


def enclosed_tiles(G: SnakeGraph, M: Matching, M0: Optional[Matching] = None) -> frozenset[int]:
    """Tiles inside the cycles of the symmetric difference with the bottom matching.

    A ray from the tile centre towards increasing x crosses the vertical
    edges of the difference; odd parity means enclosed.
    """
    if M0 is None:
        M0 = bottom_matching(G)
    diff = [G.edges[e].ends for e in M ^ M0]
    inside = set()
    for j, (x, y) in enumerate(G.positions):
        hits = sum(1 for (a, b) in diff if a[0] == b[0] and a[0] > x and min(a[1], b[1]) == y)
        if hits % 2:
            inside.add(j)
    return frozenset(inside)


@dataclass(frozen=True)
class WeightVector:
    mode: str
    keys: tuple[str, ...]
    values: tuple[int, ...]
    arc_count: int

    @property
    def arc_keys(self) -> tuple[str, ...]:
        return self.keys[: self.arc_count]

    @property
    def boundary_keys(self) -> Optional[tuple[str, ...]]:
        return self.keys[self.arc_count:] if self.mode == "bd" else None

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.keys, self.values))

    def __iter__(self):
        return iter(self.values)


def coordinate_keys(G: SnakeGraph, mode: str, arcs: Optional[Sequence[str]] = None,
                    boundary: Optional[Sequence[str]] = None) -> tuple[str, ...]:
    """Coordinate names: arc labels, then boundary labels (bd) or ``y_`` labels (pc)."""
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}")
    arcs = tuple(G.arc_labels if arcs is None else arcs)
    if mode == "bd":
        bd = [l for l in G.labels if l in G.boundary_labels] if boundary is None else boundary
        return arcs + tuple(bd)
    if mode == "nf":
        return arcs
    return arcs + tuple("y_" + a for a in arcs)


def weight_vector(G: SnakeGraph, M: Matching, mode: str, arcs=None, boundary=None,
                  M0: Optional[Matching] = None) -> WeightVector:
    """Label counts of ``M``; in pc mode followed by the labels of enclosed tiles."""
    keys = coordinate_keys(G, mode, arcs, boundary)
    counts = dict.fromkeys(keys, 0)
    for e in M:
        lab = G.edges[e].label
        if mode != "bd" and lab in G.boundary_labels:
            continue
        if lab not in counts:
            raise DomainError(f"label {lab!r} has no coordinate")
        counts[lab] += 1
    if mode == "pc":
        for j in enclosed_tiles(G, M, M0):
            counts["y_" + G.tiles[j].square] += 1
    n = len(keys) if mode == "nf" else (len(keys) // 2 if mode == "pc" else
                                         len(tuple(G.arc_labels if arcs is None else arcs)))
    return WeightVector(mode, keys, tuple(counts[k] for k in keys), n)


def lifted_vector(G: SnakeGraph, M: Matching, pc: bool = False,
                  M0: Optional[Matching] = None) -> tuple[int, ...]:
    """Indicator of ``M`` over distinct edges, then of enclosed tiles if ``pc``."""
    chi = [1 if e in M else 0 for e in range(len(G.edges))]
    if pc:
        inside = enclosed_tiles(G, M, M0)
        chi += [1 if j in inside else 0 for j in range(G.t)]
    return tuple(chi)


def rho_symmetric_matchings(G: SnakeGraph, ends, matchings=None) -> list[Matching]:
    """Matchings whose parts on the two end copies (radius edges dropped) correspond."""
    if matchings is None:
        matchings = enumerate_matchings(G)
    image = {ends.edge_map[e] for e in ends.h_edges}
    out = []
    for M in matchings:
        if {ends.edge_map[e] for e in M & ends.h_edges} == M & image:
            out.append(M)
    return out


def end_copy_graph(G: SnakeGraph, ends) -> SnakeGraph:
    """The first end copy as a snake graph of its own (tiles keep their positions)."""
    d = ends.d
    return SnakeGraph(G.shape[:d - 1], G.tiles[:d], G.boundary_labels)


def end_restrictions(G: SnakeGraph, ends, M: Matching) -> list[Optional[Matching]]:
    """``M`` on each end copy, pulled back to the first copy's own edge indices.

    Entries are None when the restriction is not a perfect matching of the copy.
    """
    H = end_copy_graph(G, ends)
    by_ends = {H.edges[i].ends: i for i in range(len(H.edges))}
    back = {f: e for e, f in ends.edge_map.items()}
    out = []
    for copy in (ends.first_edges, ends.second_edges):
        part = M & copy
        if copy is ends.second_edges:
            part = frozenset(back[f] for f in part)
        local = frozenset(by_ends[G.edges[e].ends] for e in part)
        out.append(local if is_perfect_matching(H, local) else None)
    return out


def reduced_weight_vector(G: SnakeGraph, ends, M: Matching, mode: str, arcs=None,
                          boundary=None) -> WeightVector:
    """Weight of ``M`` with the weight of one end restriction removed.

    The restriction is weighed as a matching of the radius graph, so in pc
    mode its enclosed tiles are taken relative to that graph's own bottom
    matching.  When both restrictions are perfect the two results must agree.
    """
    full = weight_vector(G, M, mode, arcs, boundary)
    if ends.d == 0:
        return full
    H = end_copy_graph(G, ends)
    results = []
    for local in end_restrictions(G, ends, M):
        if local is None:
            continue
        part = weight_vector(H, local, mode, full.arc_keys, full.boundary_keys)
        part_map = part.as_dict()
        vals = tuple(v - part_map.get(k, 0) for k, v in zip(full.keys, full.values))
        if min(vals) < 0:
            raise IntegrityError("end restriction weighs more than the matching")
        results.append(vals)
    if not results:
        raise IntegrityError("neither end restriction is a perfect matching of its copy")
    if len(set(results)) != 1:
        raise IntegrityError("the two end restrictions give different reduced weights")
    return WeightVector(mode, full.keys, results[0], full.arc_count)
