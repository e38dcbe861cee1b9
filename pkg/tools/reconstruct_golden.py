"""Search the 9-gon for a triangulation and labelling that reproduce the
printed matching example and the printed three-tile expansion.

Boundary segments are labelled d1..d9 by a dihedral relabelling of z0..z8;
arcs t1..t6 by any bijection.  Prints every consistent reconstruction.
"""

from itertools import permutations

from snakepoly.laurent import expand
from snakepoly.matching import bottom_matching, enclosed_tiles, enumerate_matchings
from snakepoly.snake import build_snake_graph
from snakepoly.surface import (MarkedSurface, enumerate_tagged_arcs,
                               enumerate_tagged_triangulations, tagged_to_ideal)

S = MarkedSurface.polygon(9)
ARCS = enumerate_tagged_arcs(S)

FIG_ARCS = {"t3", "t4"}
FIG_BD = {"d1", "d2", "d4", "d7"}
FIG_Y = {"t2", "t3", "t4", "t6"}

EXPANSION = {  # numerator terms over t2 t3 t4
    frozenset({"t1", "t2", "d1", "d5"}),
    frozenset({"t1", "t2", "t3", "t5"}),
    frozenset({"t1", "t4", "d1", "d6"}),
    frozenset({"t3", "t4", "d1", "d7"}),
}


def dihedral():
    for s in range(9):
        for sign in (1, -1):
            yield {f"z{(s + sign * k) % 9}": f"d{k + 1}" for k in range(9)}


def main():
    for T in enumerate_tagged_triangulations(S):
        ideal = tagged_to_ideal(T)
        names = [a.name for a in T.arcs]
        for gamma in ARCS:
            if gamma in T:
                continue
            G = build_snake_graph(ideal, gamma)
            if G.t != 5:
                continue
            M0 = bottom_matching(G)
            squares = [t.square for t in G.tiles]
            for M in enumerate_matchings(G):
                labs = [G.edges[e].label for e in M]
                arcs = {l for l in labs if l not in G.boundary_labels}
                bd = {l for l in labs if l in G.boundary_labels}
                ys = {squares[j] for j in enclosed_tiles(G, M, M0)}
                if len(arcs) != 2 or len(bd) != 4 or len(ys) != 4 or not arcs <= ys:
                    continue
                for dmap in dihedral():
                    if {dmap[b] for b in bd} != FIG_BD:
                        continue
                    for perm in permutations(names):
                        tmap = {a: f"t{i + 1}" for i, a in enumerate(perm)}
                        if {tmap[a] for a in arcs} != FIG_ARCS or {tmap[a] for a in ys} != FIG_Y:
                            continue
                        # the last two tiles are t5, t6 glued along d4
                        last = [tmap[s] for s in squares[-2:]]
                        if last != ["t5", "t6"] or dmap.get(G.tiles[-2].side("E" if G.shape[-1] == "E" else "N")) != "d4":
                            continue
                        hit = find_expansion(T, {**tmap, **dmap})
                        print("T", T, "gamma", gamma.name, "M", sorted(M), "map", {**tmap, **dmap},
                              "expansion arc", hit)


def find_expansion(T, rename):
    for gamma in ARCS:
        if gamma in T:
            continue
        L = expand(T, gamma, "bd")
        terms = set()
        for exp in L.terms:
            named = {}
            for v, e in zip(L.vars, exp):
                if e:
                    named[rename[v]] = e
            terms.add(tuple(sorted(named.items())))
        want = set()
        for t in EXPANSION:
            e = {v: 1 for v in t}
            for d in ("t2", "t3", "t4"):
                e[d] = e.get(d, 0) - 1
            want.add(tuple(sorted((k, v) for k, v in e.items() if v)))
        if terms == want:
            return gamma.name
    return None


if __name__ == "__main__":
    main()
