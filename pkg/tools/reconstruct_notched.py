"""Search the punctured hexagon for a symmetric matching whose full and
reduced weights match the printed notched example.

Arcs are labelled t1..t6 by any bijection and boundary segments d1..d6 by a
dihedral relabelling of z0..z5.  Prints every consistent reconstruction.
"""

from collections import Counter
from itertools import permutations

from snakepoly.matching import (reduced_weight_vector, rho_symmetric_matchings,
                                weight_vector)
from snakepoly.snake import build_snake_graph, radius_end_subgraphs
from snakepoly.surface import (CoverTriangulation, MarkedSurface, TaggedArc,
                               enumerate_tagged_triangulations, loop_around, tagged_to_ideal)

S = MarkedSurface.punctured(6)

FULL_BD = Counter({"t1": 2, "t3": 2, "t5": 1, "t6": 1, "d2": 2, "d5": 1})
OWT_BD = Counter({"t1": 1, "t3": 1, "t5": 1, "t6": 1, "d2": 1, "d5": 1})
FULL_PC = Counter({"t1": 2, "t3": 2, "t5": 1, "t6": 1, "y_t1": 2, "y_t2": 2})
OWT_PC = Counter({"t1": 1, "t3": 1, "t5": 1, "t6": 1, "y_t1": 1, "y_t2": 1})


def dihedral():
    for s in range(6):
        for sign in (1, -1):
            yield {f"z{(s + sign * k) % 6}": f"d{k + 1}" for k in range(6)}


def named(w, rename):
    c = Counter()
    for k, v in zip(w.keys, w.values):
        if v:
            key = "y_" + rename[k[2:]] if k.startswith("y_") else rename[k]
            c[key] += v
    return c


def main():
    segments = [s.name for s in S.segments]
    for T in enumerate_tagged_triangulations(S):
        if any(r.notched for r in T.radii):
            continue
        ideal = tagged_to_ideal(T)
        arcs = [a.name for a in ideal.arcs]
        cover = CoverTriangulation(ideal)
        for a in range(6):
            rho = TaggedArc.radius(S, a)
            if rho in T:
                continue
            d = len(cover.crossing_path(rho).arcs)
            G = build_snake_graph(ideal, loop_around(rho))
            ends = radius_end_subgraphs(G, d, {r.name for r in ideal.radii})
            for M in rho_symmetric_matchings(G, ends):
                vals = {}
                for mode in ("bd", "pc"):
                    vals[mode] = (weight_vector(G, M, mode, arcs, segments if mode == "bd" else None),
                                  reduced_weight_vector(G, ends, M, mode, arcs,
                                                        segments if mode == "bd" else None))
                full_bd = {k for k, v in zip(vals["bd"][0].keys, vals["bd"][0].values) if v}
                if len(full_bd) != 6:
                    continue
                for dmap in dihedral():
                    for perm in permutations(arcs):
                        rename = {**{x: f"t{i + 1}" for i, x in enumerate(perm)}, **dmap}
                        if (named(vals["bd"][0], rename) == FULL_BD and named(vals["bd"][1], rename) == OWT_BD
                                and named(vals["pc"][0], rename) == FULL_PC
                                and named(vals["pc"][1], rename) == OWT_PC):
                            print("T", T, "rho", rho.name, "M", sorted(M), "map", rename)


if __name__ == "__main__":
    main()
