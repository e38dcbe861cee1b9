"""Find snake graphs on an annulus and on once- and twice-punctured tori whose
weight vectors reproduce the printed non-saturation examples.

Each surface is modelled as a quotient of a planar region by translations,
with a triangulation by straight segments; an arc is a straight segment
between lifts of marked points.  Crossings are found exactly in the plane
and the tiles are assembled with the same conventions as the package's own
builder (triangle before the crossing in the south-west half, odd tiles
keep the orientation).  Matching raw graphs are written to
src/snakepoly/data/.

Usage: python3 tools/surface_counterexamples.py [--write]
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction as F
from itertools import product
from math import gcd
from pathlib import Path

from snakepoly.matching import enumerate_matchings
from snakepoly.snake import SIDES, SnakeGraph, Tile
from snakepoly.verify import run_counterexample

DATA = Path(__file__).resolve().parent.parent / "src" / "snakepoly" / "data"


def orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def crossing_param(p, q, a, b):
    """Parameter along pq of a proper crossing with ab, else None."""
    d1, d2 = orient(p, q, a), orient(p, q, b)
    d3, d4 = orient(a, b, p), orient(a, b, q)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return F(d3, d3 - d4)
    return None


class PlanarModel:
    """Periodic straight triangulation: ``arcs`` and ``boundary`` are
    (label, p, q) segment representatives, ``periods`` the deck translations."""

    def __init__(self, arcs, boundary, periods):
        self.arcs = arcs
        self.boundary = boundary
        self.periods = periods
        self.table = {}
        for label, p, q in arcs + boundary:
            for shift in self.shifts(6):
                a = (p[0] + shift[0], p[1] + shift[1])
                b = (q[0] + shift[0], q[1] + shift[1])
                self.table[frozenset((a, b))] = label
        self.boundary_labels = {l for l, _, _ in boundary}

    def shifts(self, reach):
        if len(self.periods) == 1:
            (u,) = self.periods
            return [(k * u[0], k * u[1]) for k in range(-reach, reach + 1)]
        u, v = self.periods
        return [(i * u[0] + j * v[0], i * u[1] + j * v[1])
                for i in range(-reach, reach + 1) for j in range(-reach, reach + 1)]

    def label(self, a, b):
        return self.table[frozenset((a, b))]

    def snake(self, x1, x2):
        hits = []
        for seg, label in self.table.items():
            if label in self.boundary_labels:
                continue
            a, b = tuple(seg)
            t = crossing_param(x1, x2, a, b)
            if t is not None:
                hits.append((t, (a, b), label))
        hits.sort()
        if len({t for t, _, _ in hits}) != len(hits):
            return None
        ends = [(x1,)] + [h[1] for h in hits] + [(x2,)]
        tris = []
        for before, after in zip(ends, ends[1:]):
            pts = set(before) | set(after)
            if len(pts) != 3:
                return None
            u, v, w = sorted(pts)
            if orient(u, v, w) < 0:
                v, w = w, v
            tris.append([(u, v), (v, w), (w, u)])
        tiles, shape = [], []
        for j, (_, diag, name) in enumerate(hits):
            before = rotate_to(tris[j], diag)
            after = rotate_to(tris[j + 1], diag)
            if j % 2 == 0:
                place = {"W": before[1], "S": before[2], "E": after[1], "N": after[2]}
            else:
                place = {"S": before[1], "W": before[2], "N": after[1], "E": after[2]}
            if j + 1 < len(hits):
                nxt = set(hits[j + 1][1])
                shared = [s for s in ("E", "N") if set(place[s]) != nxt]
                shape.append(shared[0])
            tiles.append(Tile(name, *(self.label(*place[s]) for s in SIDES)))
        if not tiles:
            return None
        used = {t.side(s) for t in tiles for s in SIDES}
        return SnakeGraph("".join(shape), tuple(tiles), frozenset(self.boundary_labels & used))


def rotate_to(sides, diag):
    for i, s in enumerate(sides):
        if set(s) == set(diag):
            return sides[i:] + sides[:i]
    raise ValueError("diagonal is not a side")


def weight_set(G, labels):
    out = set()
    for M in enumerate_matchings(G):
        counts = dict.fromkeys(labels, 0)
        for e in M:
            counts[G.edges[e].label] += 1
        out.add(tuple(counts[l] for l in labels))
    return out


def find_order(G, labels, u, v, n_arcs):
    """A label order making ``u`` and ``v`` weight vectors of ``G``, arcs first."""
    arc_labels = [l for l in labels if l not in G.boundary_labels]
    bd_labels = [l for l in labels if l in G.boundary_labels]
    if len(arc_labels) != n_arcs:
        return None
    W = weight_set(G, arc_labels + bd_labels)
    for a in W:
        for b in W:
            # pair up coordinates: position i of the target takes a label with (a, b) values (u_i, v_i)
            order = assign(arc_labels + bd_labels, a, b, u, v, n_arcs)
            if order is not None:
                return order
    return None


def assign(labels, a, b, u, v, n_arcs):
    pool = {}
    for i, l in enumerate(labels):
        pool.setdefault((i < n_arcs, a[i], b[i]), []).append(l)
    order = []
    for i in range(len(u)):
        key = (i < n_arcs, u[i], v[i])
        if not pool.get(key):
            return None
        order.append(pool[key].pop(0))
    return order


def report(name, G, order):
    raw = G.to_json()
    raw["labels"] = order
    raw["name"] = name
    return raw


# ---------------------------------------------------------------------------


def annulus_models():
    """Strip 0 <= y <= 1 with marked points at integers on both lines, period 2.

    Triangulations use bridging arcs only: a zigzag of slopes given by
    where each top point connects along the bottom.
    """
    bottom = [("b0", (0, 0), (1, 0)), ("b1", (1, 0), (2, 0))]
    top = [("u0", (0, 1), (1, 1)), ("u1", (1, 1), (2, 1))]
    models = []
    # a bridging triangulation is a monotone staircase between the two lines
    for word in product("BT", repeat=4):
        if word.count("B") != 2:
            continue
        for offset in range(-3, 4):
            arcs = []
            bx, tx = 0, offset
            ok = True
            for i, step in enumerate(word):
                arcs.append((f"a{i}", (bx, 0), (tx, 1)))
                if step == "B":
                    bx += 1
                else:
                    tx += 1
            if (bx, tx) != (2, offset + 2):
                ok = False
            if ok:
                models.append((f"{''.join(word)}{offset}", PlanarModel(arcs, bottom + top, [(2, 0)])))
    return models


def annulus_search():
    u = (1, 1, 1, 2, 1, 0, 0, 1)
    v = (1, 3, 1, 0, 1, 0, 0, 1)
    for name, model in annulus_models():
        for x in range(0, 2):
            for y in range(-8, 9):
                G = model.snake((F(x), F(0)), (F(y), F(1)))
                if G is None or G.t != 6:
                    continue
                order = find_order(G, list(G.labels), u, v, 4)
                if order:
                    yield name, (x, y), G, order


def torus_model():
    arcs = [("a", (0, 0), (1, 0)), ("b", (0, 0), (0, 1)), ("c", (0, 0), (1, 1))]
    return PlanarModel(arcs, [], [(1, 0), (0, 1)])


def punctured_torus_search():
    model = torus_model()
    for p in range(1, 6):
        for q in range(-6, 7):
            if gcd(p, q) != 1 or (p, q) in ((1, 0), (1, 1)):
                continue
            G = model.snake((F(0), F(0)), (F(p), F(q)))
            if G is None:
                continue
            labels = list(G.labels)
            W = weight_set(G, labels)
            if all(x % 2 == 0 for w in W for x in w) and len(W) > 1:
                yield (p, q), G, labels


def twice_torus_models():
    """Lattice 2Z x Z with punctures at (0,0) and (1,0); unit squares split by
    a diagonal of either direction."""
    models = []
    for d0, d1 in product((1, -1), repeat=2):
        arcs = [("h0", (0, 0), (1, 0)), ("h1", (1, 0), (2, 0)),
                ("v0", (0, 0), (0, 1)), ("v1", (1, 0), (1, 1))]
        for i, d in enumerate((d0, d1)):
            arcs.append((f"d{i}", (i, 0), (i + 1, 1)) if d == 1 else (f"d{i}", (i + 1, 0), (i, 1)))
        models.append((f"{d0}{d1}", PlanarModel(arcs, [], [(2, 0), (0, 1)])))
    return models


def twice_torus_search():
    u = (2, 0, 1, 1, 1, 2)
    v = (0, 2, 1, 1, 1, 2)
    for name, model in twice_torus_models():
        for start in ((0, 0), (1, 0)):
            for p in range(-6, 7):
                for q in range(1, 5):
                    if gcd(p, q) != 1:
                        continue
                    end = (start[0] + p, q)
                    G = model.snake(tuple(map(F, start)), tuple(map(F, end)))
                    if G is None or G.t != 6:
                        continue
                    order = find_order(G, list(G.labels), u, v, 6)
                    if order:
                        yield name, (start, end), G, order


def main():
    write = "--write" in sys.argv
    found = {}
    for name, seg, G, order in annulus_search():
        print("annulus", name, seg, G.shape, order)
        found.setdefault("annulus", report(f"annulus {name} {seg}", G, order))
    tori = sorted(punctured_torus_search(), key=lambda hit: (hit[1].t, hit[0]))
    for seg, G, labels in tori:
        print("punctured torus", seg, G.t, G.shape)
    # a single tile is too degenerate to be instructive
    seg, G, labels = next(hit for hit in tori if hit[1].t > 1)
    found["punctured_torus"] = report(f"punctured torus {seg}", G, labels)
    for name, seg, G, order in twice_torus_search():
        print("twice punctured torus", name, seg, G.shape, order)
        found.setdefault("twice_punctured_torus", report(f"twice punctured torus {name} {seg}", G, order))
    for key, raw in found.items():
        from snakepoly.snake import parse_raw_snake_graph
        v = run_counterexample(parse_raw_snake_graph(raw))
        print(key, "saturated" if v.saturated else "unsaturated", v.witnesses)
        if write:
            DATA.mkdir(exist_ok=True)
            (DATA / f"{key}.json").write_text(json.dumps(raw, indent=1) + "\n")


if __name__ == "__main__":
    main()
