"""Closed-form predictions of Newton polytope emptiness.

These rules look only at how the arc crosses the triangulation.  They are
kept apart from the geometry on purpose: a verdict compares them against
lattice points that were computed without them.
"""

from __future__ import annotations

from collections import Counter

from .errors import DomainError
from .surface import (TaggedArc, TaggedTriangulation, crossing_sequence, flip_tagging,
                      tagged_to_ideal)


def crossing_multiplicities(T: TaggedTriangulation, gamma: TaggedArc) -> Counter:
    """How often the ordinary arc under ``gamma`` crosses each arc of the ideal triangulation."""
    ideal = tagged_to_ideal(T)
    return Counter(a.name for a in crossing_sequence(ideal, gamma.plain()))


def _nf_polygon(T: TaggedTriangulation, gamma: TaggedArc) -> bool:
    taus = crossing_sequence(tagged_to_ideal(T), gamma)
    n = len(taus)
    alternating = (len(set(t.name for t in taus)) == len(T.arcs)
                   and n % 2 == 1 and n >= 3)
    if alternating:
        # tau_{i-1} and tau_{i+1} for even i (1-based) are taus[i-2], taus[i]
        for i in range(2, n, 2):
            left, right = taus[i - 2], taus[i]
            if {left.a, left.b} & {right.a, right.b}:
                alternating = False
                break
    return not alternating


def expected_empty(T: TaggedTriangulation, gamma: TaggedArc, mode: str) -> bool:
    """Predicted emptiness of the Newton polytope of ``gamma`` in the seed ``T``."""
    if mode not in ("bd", "pc", "nf"):
        raise DomainError(f"unknown mode {mode!r}")
    if not T.surface.is_punctured:
        if mode == "nf":
            return _nf_polygon(T, gamma)
        return True
    if mode == "nf":
        raise DomainError("no emptiness rule for the punctured polygon without frozen variables")
    if T.all_notched:
        # Flipping every tag is a renaming of variables.
        T, gamma = flip_tagging(T), gamma.flipped()
    if gamma.notched:
        return True
    mult = crossing_multiplicities(T, gamma)
    repeated = sum(1 for c in mult.values() if c > 1)
    if mode == "pc" and T.is_tag_symmetric:
        return repeated <= 1
    return repeated == 0
