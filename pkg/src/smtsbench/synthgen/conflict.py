"""Authored map of the discrimination conflicts between cluster pairs.

Each unordered pair of catalogue clusters may share one or more "conflict"
properties that make them hard to tell apart: similar peak timing, differing
peak counts, similar overall shape, peaks differing only in relative
magnitude, mirror-image (temporally symmetric) layouts, or separation hinging
on one small feature. The map is authored alongside the shape catalogue and
is used to break confusion matrices down by conflict type.
"""

from __future__ import annotations

CONFLICT_CATEGORIES = frozenset(
    {"Timing", "NumberOfPeaks", "Shape", "RelativeMagnitude", "TemporalSymmetry", "FeatureDominance"}
)


class ConflictMap:
    """Symmetric lookup of conflict tags per unordered cluster pair."""

    def __init__(self, entries: dict[tuple[int, int], frozenset[str]]):
        table: dict[tuple[int, int], frozenset[str]] = {}
        for (a, b), tags in entries.items():
            bad = set(tags) - CONFLICT_CATEGORIES
            if bad:
                raise ValueError(f"unknown conflict tags {sorted(bad)} for pair ({a}, {b})")
            table[(min(a, b), max(a, b))] = frozenset(tags)
        self._table = table

    def tags(self, a: int, b: int) -> frozenset[str]:
        return self._table.get((min(a, b), max(a, b)), frozenset())

    def pairs(self) -> dict[tuple[int, int], frozenset[str]]:
        return dict(self._table)


_T = "Timing"
_N = "NumberOfPeaks"
_S = "Shape"
_R = "RelativeMagnitude"
_Y = "TemporalSymmetry"
_F = "FeatureDominance"

_ENTRIES: dict[tuple[int, int], frozenset[str]] = {
    # single peaks that differ only in where the day they sit
    (0, 1): frozenset({_T}),
    (0, 2): frozenset({_T}),
    (0, 3): frozenset({_T}),
    (1, 2): frozenset({_T}),
    (1, 3): frozenset({_T}),
    (2, 3): frozenset({_T, _F}),
    (2, 19): frozenset({_T}),
    (3, 19): frozenset({_T, _F}),
    # double-peak family: 5 is the reference, 7 shrinks the first peak,
    # 8 shrinks the second, making 7 and 8 mirror images of each other
    (5, 7): frozenset({_R}),
    (5, 8): frozenset({_R}),
    (7, 8): frozenset({_R, _Y}),
    (4, 5): frozenset({_T}),
    (4, 7): frozenset({_T, _R}),
    (4, 8): frozenset({_T, _R}),
    # single vs multiple peaks sharing a timing slot
    (0, 4): frozenset({_N}),
    (2, 4): frozenset({_N}),
    (0, 12): frozenset({_N}),
    (1, 12): frozenset({_N}),
    (2, 12): frozenset({_N}),
    (4, 12): frozenset({_N}),
    (5, 12): frozenset({_N}),
    (0, 15): frozenset({_N}),
    (10, 15): frozenset({_N, _S}),
    (4, 14): frozenset({_T, _Y}),
    # same timing slot, different curve family
    (0, 10): frozenset({_S}),
    (0, 13): frozenset({_S}),
    (1, 9): frozenset({_S}),
    (9, 13): frozenset({_S}),
    (2, 11): frozenset({_S}),
    (2, 13): frozenset({_N, _S}),
    (6, 14): frozenset({_T, _S}),
    (6, 19): frozenset({_T}),
    (14, 19): frozenset({_N}),
    (10, 11): frozenset({_Y}),
    # clusters whose separation hinges on a small dip or bump
    (3, 16): frozenset({_F}),
    (3, 17): frozenset({_F}),
    (3, 18): frozenset({_F}),
    (16, 17): frozenset({_F}),
    (16, 18): frozenset({_F}),
    (17, 18): frozenset({_F}),
    (4, 17): frozenset({_N, _F}),
    (9, 18): frozenset({_S, _F}),
}

_MAP = ConflictMap(_ENTRIES)


def conflict_map() -> ConflictMap:
    """Return the static conflict map for the shipped 20-cluster catalogue."""
    return _MAP
