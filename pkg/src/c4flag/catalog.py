"""The eleven 4-vertex graphs F0..F10 in their fixed basis order, plus names.

Every density form in this package is a vector over this basis, so the
order below is a contract:

    F0 empty, F1 one edge, F2 cherry + isolated vertex, F3 star K_{1,3},
    F4 triangle + isolated vertex, F5 two disjoint edges, F6 paw,
    F7 path P4, F8 C4, F9 diamond, F10 K4
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .graph6 import Graph6Error, decode
from .graphs import SmallGraph, canonical_key, labeled_copy_masks, subset_edge_mask

_E = SmallGraph.from_edges

CATALOG: tuple[SmallGraph, ...] = (
    _E(4, []),
    _E(4, [(0, 1)]),
    _E(4, [(0, 1), (0, 2)]),
    _E(4, [(0, 1), (0, 2), (0, 3)]),
    _E(4, [(1, 2), (2, 3), (1, 3)]),
    _E(4, [(0, 1), (2, 3)]),
    _E(4, [(0, 1), (1, 2), (0, 2), (0, 3)]),
    _E(4, [(1, 0), (0, 2), (2, 3)]),
    _E(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    _E(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]),
    _E(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
)

CATALOG_NAMES = (
    "empty4", "edge+2K1", "cherry+K1", "star", "triangle+K1", "matching",
    "paw", "P4", "C4", "diamond", "K4",
)

COCHERRY = _E(3, [(0, 1)])
CHERRY = _E(3, [(0, 1), (0, 2)])
C4 = CATALOG[8]
K4 = CATALOG[10]

NAMED: dict[str, SmallGraph] = {
    "cocherry": COCHERRY,
    "cherry": CHERRY,
    "P3": CHERRY,
    "edge": SmallGraph.complete(2),
    "triangle": SmallGraph.complete(3),
    "C4": C4,
    "K4": K4,
    "diamond": CATALOG[9],
    "paw": CATALOG[6],
    "star": CATALOG[3],
    "claw": CATALOG[3],
    "matching": CATALOG[5],
}


@lru_cache(maxsize=None)
def _catalog_lookup() -> dict[tuple[int, int], int]:
    return {canonical_key(f): i for i, f in enumerate(CATALOG)}


def catalog_index(g: SmallGraph) -> int:
    """Index of the catalog entry isomorphic to the 4-vertex graph g."""
    if g.n != 4:
        raise ValueError("catalog lookup needs a 4-vertex graph")
    return _catalog_lookup()[canonical_key(g)]


@lru_cache(maxsize=None)
def _mask_to_index() -> dict[int, int]:
    table = {}
    for i, f in enumerate(CATALOG):
        for m in labeled_copy_masks(f):
            table[m] = i
    return table


def catalog_counts(g: SmallGraph) -> list[int]:
    """N_I(F_i, g) for i = 0..10 in a single pass over 4-subsets."""
    if g.n < 4:
        raise ValueError("need at least 4 vertices")
    table = _mask_to_index()
    counts = [0] * 11
    for s in combinations(range(g.n), 4):
        counts[table[subset_edge_mask(g, s)]] += 1
    return counts


def catalog_density_vector(g: SmallGraph) -> list[Fraction]:
    """Induced densities P(F_i, g), i = 0..10."""
    total = comb(g.n, 4)
    return [Fraction(c, total) for c in catalog_counts(g)]


_PATTERNS = [
    (re.compile(r"^F(\d+)$"), lambda m: CATALOG[int(m[1])]),
    (re.compile(r"^K(\d+)$"), lambda m: SmallGraph.complete(int(m[1]))),
    (re.compile(r"^C(\d+)$"), lambda m: SmallGraph.cycle(int(m[1]))),
    (re.compile(r"^P(\d+)$"), lambda m: SmallGraph.path(int(m[1]))),
    (re.compile(r"^E(\d+)$"), lambda m: SmallGraph.empty(int(m[1]))),
    (re.compile(r"^K(\d+(?:,\d+)+)$"),
     lambda m: SmallGraph.complete_multipartite([int(x) for x in m[1].split(",")])),
]


def parse_graph(text: str) -> SmallGraph:
    """Resolve a name ("C4", "paw", "F9", "K3,3", "P5"), a catalog index, or graph6/sparse6."""
    text = text.strip()
    if text in NAMED:
        return NAMED[text]
    if text.isdigit() and int(text) < len(CATALOG):
        return CATALOG[int(text)]
    for pat, build in _PATTERNS:
        m = pat.match(text)
        if m:
            if pat.pattern.startswith("^F") and int(m[1]) >= len(CATALOG):
                break
            return build(m)
    try:
        return decode(text)
    except Graph6Error as exc:
        raise ValueError(f"cannot parse graph {text!r}: {exc}") from None
