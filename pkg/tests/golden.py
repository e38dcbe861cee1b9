"""Frozen reconstructions of the printed worked examples.

The examples are only drawn in figures, so the triangulations, arcs and
label names below were recovered by exhaustive search (tools/reconstruct_golden.py
and tools/reconstruct_notched.py) and then frozen.  Printed labels are t1..t6
for arcs and d1..dm for boundary segments.
"""

from collections import Counter

from snakepoly.laurent import expand
from snakepoly.surface import MarkedSurface, TaggedArc, TaggedTriangulation

# Nine-gon: the three tile expansion and the five tile matching figure.
NONAGON = MarkedSurface.polygon(9)
NONAGON_T = "c0_2,c2_6,c2_7,c2_8,c3_5,c3_6"
NONAGON_LABELS = {"c0_2": "t1", "c2_8": "t2", "c2_7": "t3", "c2_6": "t4",
                  "c3_6": "t5", "c3_5": "t6",
                  **{f"z{k}": f"d{(k - 1) % 9 or 9}" for k in range(9)}}
EXPANSION_ARC = "c0_3"
MATCHING_ARC = "c0_4"
MATCHING = frozenset({1, 3, 5, 8, 11, 14})

# Numerators over t2 t3 t4, one set per matching.
EXPANSION_DENOMINATOR = ("t2", "t3", "t4")
EXPANSION_TERMS = {
    "bd": [{"t1", "t2", "d1", "d5"}, {"t1", "t2", "t3", "t5"},
           {"t1", "t4", "d1", "d6"}, {"t3", "t4", "d1", "d7"}],
    "nf": [{"t1", "t2"}, {"t1", "t2", "t3", "t5"}, {"t1", "t4"}, {"t3", "t4"}],
    # the second printed term has an x among the w's; read as w_t5
    "pc": [{"t1", "t2", "y_t4"}, {"t1", "t2", "t3", "t5"},
           {"t1", "t4", "y_t3", "y_t4"}, {"t3", "t4", "y_t2", "y_t3", "y_t4"}],
}

MATCHING_VECTORS = {
    "bd": ((0, 0, 1, 1, 0, 0), (1, 1, 0, 1, 0, 0, 1, 0, 0)),
    "nf": ((0, 0, 1, 1, 0, 0), ()),
    "pc": ((0, 0, 1, 1, 0, 0), (0, 1, 1, 1, 0, 1)),
}

# Punctured hexagon: a symmetric matching of the loop graph of a radius.
HEXAGON = MarkedSurface.punctured(6)
HEXAGON_T = "c0_2L,c0_3L,r0,r3,r4,r5"
HEXAGON_RADIUS = "r1"
HEXAGON_LABELS = {"c0_2L": "t1", "c0_3L": "t2", "r3": "t3", "r4": "t4", "r0": "t5", "r5": "t6",
                  "z1": "d1", "z0": "d2", "z5": "d3", "z4": "d4", "z3": "d5", "z2": "d6"}
SYMMETRIC_MATCHING = frozenset({3, 4, 6, 8, 11, 14, 17, 20, 23})
REDUCED_WEIGHTS = {
    "bd": {"full": Counter(t1=2, t3=2, t5=1, t6=1, d2=2, d5=1),
           "reduced": Counter(t1=1, t3=1, t5=1, t6=1, d2=1, d5=1)},
    "pc": {"full": Counter(t1=2, t3=2, t5=1, t6=1, y_t1=2, y_t2=2),
           "reduced": Counter(t1=1, t3=1, t5=1, t6=1, y_t1=1, y_t2=1)},
}


def rename(name, labels):
    if name.startswith("y_"):
        return "y_" + labels[name[2:]]
    return labels[name]


def named_counts(pairs, labels) -> Counter:
    return Counter({rename(k, labels): v for k, v in pairs if v})


def printed_expansion(mode):
    """The printed expansion as a set of exponent Counters in printed names."""
    out = []
    for term in EXPANSION_TERMS[mode]:
        c = Counter(term)
        c.subtract(EXPANSION_DENOMINATOR)
        out.append(Counter({k: v for k, v in c.items() if v}))
    return out


def computed_expansion(mode):
    T = TaggedTriangulation.parse(NONAGON, NONAGON_T)
    L = expand(T, TaggedArc.parse(NONAGON, EXPANSION_ARC), mode)
    out = []
    for exp, coef in L.terms.items():
        out.extend([named_counts(zip(L.vars, exp), NONAGON_LABELS)] * coef)
    return out


def same_multiset(a, b) -> bool:
    key = lambda c: sorted(c.items())
    return sorted(map(key, a)) == sorted(map(key, b))
