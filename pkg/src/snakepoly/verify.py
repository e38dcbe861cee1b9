"""Batch checks of saturation and emptiness, counterexamples and dumps."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence

from .emptiness import expected_empty
from .errors import DomainError
from .laurent import LaurentPolynomial, expand, variable_index
from .matching import (MODES, bottom_matching, enumerate_matchings, weight_vector)
from .polytope import RationalPolytope, lattice_points, vertex_set
from .snake import SnakeGraph, build_snake_graph, parse_raw_snake_graph
from .surface import (MarkedSurface, TaggedArc, TaggedTriangulation, crossing_sequence,
                      enumerate_tagged_arcs, enumerate_tagged_triangulations, tagged_to_ideal)

DESK_BOUNDS = {"polygon": 8, "punctured": 5}


@dataclass
class Verdict:
    surface: str
    triangulation: str
    gamma: str
    mode: str
    saturated: bool
    empty: bool
    expected_empty: Optional[bool]
    matching_count: int
    lattice_point_count: int
    elapsed: float = 0.0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if not self.saturated:
            return False
        return self.expected_empty is None or self.empty == self.expected_empty

    def to_json(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        if not timing:
            d.pop("elapsed")
        return d


# ---------------------------------------------------------------------------
# Geometry of a support set, cached up to translation


def _canonical(points: Sequence[Sequence[int]]) -> tuple:
    """Translate to the origin and drop constant coordinates."""
    d = len(points[0])
    low = [min(p[k] for p in points) for k in range(d)]
    keep = [k for k in range(d) if any(p[k] != low[k] for p in points)]
    return tuple(sorted(tuple(p[k] - low[k] for k in keep) for p in points))


@lru_cache(maxsize=None)
def _geometry(key: tuple) -> tuple[int, tuple, tuple]:
    """Lattice points outside the support, and lattice points that are not vertices.

    Returns ``(lattice point count, non-support points, non-vertex points)``
    in canonical coordinates.
    """
    support = set(key)
    if not key or not key[0]:
        return len(key), (), ()
    if all(x in (0, 1) for p in key for x in p):
        # Every point of a 0/1 hull is one of its generators and a vertex of the cube.
        return len(key), (), ()
    P = RationalPolytope(key)
    pts = lattice_points(P)
    verts = {tuple(int(x) for x in v) for v in vertex_set(P)}
    missing = tuple(p for p in pts if p not in support)
    inner = tuple(p for p in pts if p not in verts)
    return len(pts), missing, inner


def support_geometry(points: Sequence[Sequence[int]]):
    """Lattice point count, lattice points off ``points``, and non-vertex lattice points."""
    points = [tuple(p) for p in points]
    d = len(points[0])
    low = [min(p[k] for p in points) for k in range(d)]
    keep = [k for k in range(d) if any(p[k] != low[k] for p in points)]
    count, missing, inner = _geometry(_canonical(points))

    def back(q):
        out = list(low)
        for k, x in zip(keep, q):
            out[k] += x
        return tuple(out)

    return count, [back(q) for q in missing], [back(q) for q in inner]


# ---------------------------------------------------------------------------
# Instances


def _matching_count(L: LaurentPolynomial) -> int:
    return sum(L.terms.values())


def check_instance(surface: MarkedSurface, T: TaggedTriangulation, gamma: TaggedArc,
                   mode: str) -> Verdict:
    """Saturation and emptiness of the Newton polytope of ``gamma`` in the seed ``T``."""
    start = time.perf_counter()
    if T.surface != surface or gamma.surface != surface:
        raise DomainError("instance mixes surfaces")
    L = expand(T, gamma, mode)
    supp = L.support()
    count, missing, inner = support_geometry(supp)
    try:
        predicted = expected_empty(T, gamma, mode)
    except DomainError:
        predicted = None
    return Verdict(
        surface=str(surface), triangulation=str(T), gamma=gamma.name, mode=mode,
        saturated=not missing, empty=not inner, expected_empty=predicted,
        matching_count=_matching_count(L), lattice_point_count=count,
        elapsed=time.perf_counter() - start,
        witnesses=[list(p) for p in missing],
    )


def instances(surface: MarkedSurface) -> list[tuple[TaggedTriangulation, TaggedArc]]:
    arcs = enumerate_tagged_arcs(surface)
    out = []
    for T in enumerate_tagged_triangulations(surface):
        for gamma in arcs:
            if gamma not in T:
                out.append((T, gamma))
    return out


def _check_many(job):
    surface_text, pairs, modes = job
    surface = MarkedSurface.parse(surface_text)
    out = []
    for t_text, g_text in pairs:
        T = TaggedTriangulation.parse(surface, t_text)
        gamma = TaggedArc.parse(surface, g_text)
        for mode in modes:
            out.append(check_instance(surface, T, gamma, mode))
    return out


def run_corpus(config: dict, jobs: int = 1, progress=None) -> dict:
    """Check every pair ``(T, gamma)`` with ``gamma`` not in ``T``.

    ``config`` has a list ``surfaces`` of strings like ``"polygon:6"`` and a
    list ``modes``, or per surface ``{"surface": ..., "modes": [...]}``.
    Returns the verdicts in a deterministic order and a summary.
    """
    plan = []
    for entry in config.get("surfaces", []):
        if isinstance(entry, str):
            entry = {"surface": entry}
        surface = MarkedSurface.parse(entry["surface"])
        modes = tuple(entry.get("modes") or config.get("modes") or
                      (("bd", "nf", "pc") if not surface.is_punctured else ("bd", "pc")))
        for mode in modes:
            if mode not in MODES:
                raise DomainError(f"unknown mode {mode!r}")
        pairs = [(str(T), g.name) for T, g in instances(surface)]
        plan.append((str(surface), pairs, modes))
    chunks = []
    for surface_text, pairs, modes in plan:
        size = max(1, len(pairs) // (8 * max(jobs, 1)))
        for i in range(0, len(pairs), size):
            chunks.append((surface_text, pairs[i:i + size], modes))
    verdicts: list[Verdict] = []
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            for batch in pool.map(_check_many, chunks):
                verdicts.extend(batch)
                if progress:
                    progress(len(verdicts))
    else:
        for chunk in chunks:
            verdicts.extend(_check_many(chunk))
            if progress:
                progress(len(verdicts))
    verdicts.sort(key=lambda v: (v.surface, v.triangulation, v.gamma, v.mode))
    return {"verdicts": verdicts, "summary": summarize(verdicts)}


def summarize(verdicts: Iterable[Verdict]) -> dict:
    verdicts = list(verdicts)
    return {
        "instances": len(verdicts),
        "saturated": sum(v.saturated for v in verdicts),
        "empty": sum(v.empty for v in verdicts),
        "emptiness_mismatches": sum(1 for v in verdicts
                                    if v.expected_empty is not None and v.empty != v.expected_empty),
        "failures": sum(1 for v in verdicts if not v.ok),
    }


# ---------------------------------------------------------------------------
# Raw snake graphs


def run_counterexample(G: SnakeGraph, mode: str = "bd") -> Verdict:
    """Saturation of the hull of all weight vectors of ``G``.

    Witnesses are lattice points of the hull that are not weight vectors.
    """
    start = time.perf_counter()
    M0 = bottom_matching(G)
    Ms = enumerate_matchings(G)
    W = sorted({tuple(weight_vector(G, M, mode, M0=M0)) for M in Ms})
    count, missing, inner = support_geometry(W)
    return Verdict(
        surface="raw", triangulation="", gamma="", mode=mode,
        saturated=not missing, empty=not inner, expected_empty=None,
        matching_count=len(Ms), lattice_point_count=count,
        elapsed=time.perf_counter() - start, witnesses=[list(p) for p in missing],
    )


def parity_report(G: SnakeGraph, mode: str = "bd") -> dict:
    """Do all weight vectors have even coordinates, and which midpoints are lattice points off the set?"""
    M0 = bottom_matching(G)
    W = sorted({tuple(weight_vector(G, M, mode, M0=M0)) for M in enumerate_matchings(G)})
    all_even = all(x % 2 == 0 for w in W for x in w)
    Wset = set(W)
    odd_midpoints = []
    for i, u in enumerate(W):
        for v in W[i + 1:]:
            if all((a + b) % 2 == 0 for a, b in zip(u, v)):
                mid = tuple((a + b) // 2 for a, b in zip(u, v))
                if mid not in Wset and any(x % 2 for x in mid):
                    odd_midpoints.append((list(u), list(v), list(mid)))
    return {"weight_vectors": [list(w) for w in W], "all_even": all_even,
            "odd_midpoints": odd_midpoints}


# ---------------------------------------------------------------------------
# Diagnostics


def explain_instance(surface: MarkedSurface, T: TaggedTriangulation, gamma: TaggedArc,
                     modes: Sequence[str] = ()) -> dict:
    """Everything computed for one instance, as plain JSON data."""
    if not modes:
        modes = ("bd", "pc") if surface.is_punctured else ("bd", "nf", "pc")
    out: dict = {"surface": str(surface), "triangulation": str(T), "gamma": gamma.name}
    try:
        ideal = tagged_to_ideal(T)
    except DomainError:
        ideal = None
    if ideal is not None and gamma not in T:
        ordinary = gamma.plain()
        out["crossings"] = [a.name for a in crossing_sequence(ideal, ordinary)]
        G = build_snake_graph(ideal, ordinary)
        out["snake_graph"] = G.to_json()
        M0 = bottom_matching(G)
        Ms = enumerate_matchings(G)
        out["matchings"] = [sorted(M) for M in Ms]
        out["weight_vectors"] = {
            mode: [list(weight_vector(G, M, mode, M0=M0)) for M in Ms] for mode in ("bd", "nf", "pc")}
    out["expansions"] = {}
    out["verdicts"] = {}
    for mode in modes:
        L = expand(T, gamma, mode)
        out["expansions"][mode] = {"vars": list(variable_index(T, mode)), "text": str(L),
                                   "support": [list(s) for s in L.support()]}
        out["verdicts"][mode] = check_instance(surface, T, gamma, mode).to_json(timing=False)
    return out


COUNTEREXAMPLES = ("annulus", "punctured_torus", "twice_punctured_torus")


def load_counterexample(name: str) -> SnakeGraph:
    """One of the bundled raw snake graphs on surfaces of infinite type."""
    if name not in COUNTEREXAMPLES:
        raise DomainError(f"unknown counterexample {name!r}; choose from {', '.join(COUNTEREXAMPLES)}")
    text = resources.files("snakepoly").joinpath("data", f"{name}.json").read_text()
    return parse_raw_snake_graph(text)
