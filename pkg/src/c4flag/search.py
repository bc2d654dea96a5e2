"""Exhaustive scans over labeled graphs on n <= 8 vertices.

A labeled graph on n vertices is an integer edge mask over the column pair
order of ``pair_list(n)``.  A fixed copy of H in K_n is a pair (vertex set,
edge mask); G contains that copy iff ``G & m == m``.  Counting N(H, G)
therefore reduces to a sum of vectorised mask tests over a block of
consecutive edge masks, which is what every scan here does.

The mask range 0 .. 2^C(n,2) is cut into fixed chunks.  Chunks are
independent, so they can run in worker processes and be resumed from a
JSON file; merging takes the maximum and unions witness masks, which is
commutative and deterministic.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Callable, Iterator, Optional

import numpy as np

from .graph6 import to_graph6
from .graphs import SizeCapError, SmallGraph, canonical_form, canonical_key, pair_index
from .multipartite import PartProfile, c4_count, k4_count

MAX_SCAN_ORDER = 8
DEFAULT_CHUNK_BITS = 20
WITNESS_LIMIT = 20000


def _check_n(n: int, allow_n8: bool):
    if not 1 <= n <= MAX_SCAN_ORDER:
        raise SizeCapError(f"scans support 1 <= n <= {MAX_SCAN_ORDER}")
    if n == 8 and not allow_n8:
        raise SizeCapError("n = 8 scans 2^28 graphs; pass allow_n8 (CLI: --allow-n8) to run it")


def enumerate_labeled(n: int, start: int = 0, stop: Optional[int] = None,
                      visitor: Optional[Callable[[SmallGraph], None]] = None) -> Iterator[SmallGraph]:
    """Every labeled graph with edge mask in [start, stop), in mask order."""
    if not 0 <= n <= MAX_SCAN_ORDER:
        raise SizeCapError(f"enumerate_labeled supports n <= {MAX_SCAN_ORDER}")
    total = 1 << comb(n, 2)
    stop = total if stop is None else min(stop, total)
    for mask in range(start, stop):
        g = SmallGraph.from_edge_mask(n, mask)
        if visitor is not None:
            visitor(g)
        yield g


@lru_cache(maxsize=None)
def copy_masks(h: SmallGraph, n: int) -> tuple[int, ...]:
    """Edge masks of all copies of h in K_n, one entry per (vertex set, edge set)."""
    if h.n > n:
        return ()
    idx = pair_index(n)
    seen = set()
    for verts in combinations(range(n), h.n):
        for img in permutations(verts):
            m = 0
            for u, v in h.edges():
                a, b = sorted((img[u], img[v]))
                m |= 1 << idx[(a, b)]
            seen.add((verts, m))
    return tuple(sorted(m for _, m in seen))


def _dtype(n: int):
    return np.uint32 if comb(n, 2) <= 32 else np.uint64


def count_copies(graphs: np.ndarray, masks: tuple[int, ...]) -> np.ndarray:
    out = np.zeros(graphs.shape, dtype=np.int32)
    for m in masks:
        mm = graphs.dtype.type(m)
        out += (graphs & mm) == mm
    return out


def contains_any(graphs: np.ndarray, masks: tuple[int, ...]) -> np.ndarray:
    out = np.zeros(graphs.shape, dtype=bool)
    for m in masks:
        mm = graphs.dtype.type(m)
        out |= (graphs & mm) == mm
    return out


# ---------------------------------------------------------------------------
# Chunked scan
# ---------------------------------------------------------------------------

@dataclass
class ChunkResult:
    index: int
    scanned: int
    maximum: int
    hits: int                  # labeled graphs attaining the chunk maximum
    masks: list[int]           # up to WITNESS_LIMIT of them
    free: int                  # F-free graphs in the chunk
    near: dict = field(default_factory=dict)  # count -> masks, for threshold scans

    def to_json(self) -> dict:
        return {"index": self.index, "scanned": self.scanned, "maximum": self.maximum,
                "hits": self.hits, "masks": self.masks, "free": self.free,
                "near": {str(k): v for k, v in self.near.items()}}

    @classmethod
    def from_json(cls, d: dict) -> "ChunkResult":
        return cls(d["index"], d["scanned"], d["maximum"], d["hits"], d["masks"], d["free"],
                   {int(k): v for k, v in d.get("near", {}).items()})


def _scan_chunk(args) -> ChunkResult:
    n, target_masks, forbid_masks, index, chunk_bits, threshold = args
    total = 1 << comb(n, 2)
    lo = index << chunk_bits
    hi = min(total, lo + (1 << chunk_bits))
    graphs = np.arange(lo, hi, dtype=np.uint64).astype(_dtype(n))
    if forbid_masks:
        graphs = graphs[~contains_any(graphs, forbid_masks)]
    free = int(graphs.size)
    if free == 0:
        return ChunkResult(index, hi - lo, -1, 0, [], 0)
    counts = count_copies(graphs, target_masks)
    mx = int(counts.max())
    hit = graphs[counts == mx]
    near = {}
    if threshold is not None:
        sel = counts >= threshold
        for c, g in zip(counts[sel].tolist(), graphs[sel].tolist()):
            near.setdefault(int(c), []).append(int(g))
    return ChunkResult(index, hi - lo, mx, int(hit.size),
                       [int(x) for x in hit[:WITNESS_LIMIT].tolist()], free, near)


@dataclass
class SearchResult:
    n: int
    target: SmallGraph
    forbidden: SmallGraph
    maximum: int
    witnesses: list[SmallGraph]
    labeled_witnesses: int
    scanned: int
    free_graphs: int
    elapsed: float
    witnesses_truncated: bool = False
    turan_value: Optional[int] = None

    @property
    def unique_witness(self) -> Optional[SmallGraph]:
        return self.witnesses[0] if len(self.witnesses) == 1 and not self.witnesses_truncated else None

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "target": to_graph6(self.target),
            "forbidden": to_graph6(self.forbidden),
            "maximum": self.maximum,
            "witnesses": [to_graph6(w) for w in self.witnesses],
            "labeled_witnesses": self.labeled_witnesses,
            "witnesses_truncated": self.witnesses_truncated,
            "scanned": self.scanned,
            "free_graphs": self.free_graphs,
            "elapsed_seconds": round(self.elapsed, 3),
        }
        if self.turan_value is not None:
            d["turan_value"] = self.turan_value
            d["matches_turan"] = self.turan_value == self.maximum
        return d


def _load_resume(path: Optional[str], params: dict) -> dict[int, ChunkResult]:
    if not path or not os.path.exists(path):
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if data.get("params") != params:
        raise ValueError(f"resume file {path} was written for different parameters")
    return {c["index"]: ChunkResult.from_json(c) for c in data["chunks"]}


def _save_resume(path: str, params: dict, done: dict[int, ChunkResult]):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump({"params": params, "chunks": [done[k].to_json() for k in sorted(done)]}, fh)
    os.replace(tmp, path)


def scan(n: int, target: SmallGraph, forbidden: SmallGraph, *, jobs: int = 1,
         resume: Optional[str] = None, allow_n8: bool = False,
         chunk_bits: int = DEFAULT_CHUNK_BITS, threshold: Optional[int] = None,
         progress: Optional[Callable[[int, int], None]] = None) -> tuple[list[ChunkResult], float]:
    _check_n(n, allow_n8)
    if target.n > n or forbidden.n > n:
        raise SizeCapError("target and forbidden graph must fit in n vertices")
    bits = comb(n, 2)
    chunk_bits = min(chunk_bits, bits)
    nchunks = 1 << (bits - chunk_bits)
    tm, fm = copy_masks(target, n), copy_masks(forbidden, n)
    params = {"n": n, "target": to_graph6(target), "forbidden": to_graph6(forbidden),
              "chunk_bits": chunk_bits, "threshold": threshold}
    done = _load_resume(resume, params)
    todo = [i for i in range(nchunks) if i not in done]
    t0 = time.perf_counter()
    tasks = [(n, tm, fm, i, chunk_bits, threshold) for i in todo]

    def record(res: ChunkResult):
        done[res.index] = res
        if resume:
            _save_resume(resume, params, done)
        if progress:
            progress(len(done), nchunks)

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for res in pool.map(_scan_chunk, tasks):
                record(res)
    else:
        for t in tasks:
            record(_scan_chunk(t))
    return [done[i] for i in range(nchunks)], time.perf_counter() - t0


def _classes(masks: list[int], n: int) -> list[SmallGraph]:
    found: dict = {}
    for m in masks:
        g = SmallGraph.from_edge_mask(n, m)
        key = canonical_key(g)
        if key not in found:
            found[key] = canonical_form(g)
    return [found[k] for k in sorted(found)]


def max_count(n: int, h: SmallGraph, f: SmallGraph, *, jobs: int = 1,
              resume: Optional[str] = None, allow_n8: bool = False,
              chunk_bits: int = DEFAULT_CHUNK_BITS) -> SearchResult:
    """ex(n, h, f) by full enumeration, with witnesses up to isomorphism."""
    chunks, elapsed = scan(n, h, f, jobs=jobs, resume=resume, allow_n8=allow_n8,
                           chunk_bits=chunk_bits)
    mx = max(c.maximum for c in chunks)
    best = [c for c in chunks if c.maximum == mx]
    hits = sum(c.hits for c in best)
    masks = sorted(m for c in best for m in c.masks)
    truncated = len(masks) < hits
    return SearchResult(
        n=n, target=h, forbidden=f, maximum=mx, witnesses=_classes(masks, n),
        labeled_witnesses=hits, scanned=sum(c.scanned for c in chunks),
        free_graphs=sum(c.free for c in chunks), elapsed=elapsed,
        witnesses_truncated=truncated,
    )


def turan_profile(n: int, r: int) -> PartProfile:
    return PartProfile.balanced(r, n) if n >= r else PartProfile([1] * n)


def k4_bound_check(n: int, r: int, **kw) -> SearchResult:
    """max N(K4, G) over K_{r+1}-free G on n vertices, against k4_count(T_r(n))."""
    if r < 3:
        raise ValueError("k4_bound_check needs r >= 3")
    res = max_count(n, SmallGraph.complete(4), SmallGraph.complete(r + 1), **kw)
    res.turan_value = k4_count(turan_profile(n, r))
    return res


def c4_extremal_check(n: int, r: int, **kw) -> SearchResult:
    """ex(n, C4, K_{r+1}) against c4_count(T_r(n))."""
    res = max_count(n, SmallGraph.cycle(4), SmallGraph.complete(r + 1), **kw)
    res.turan_value = c4_count(turan_profile(n, r))
    return res


# ---------------------------------------------------------------------------
# Near-extremal graphs, co-cherries and distance to complete multipartite
# ---------------------------------------------------------------------------

def _set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings: labels[v] = class of v."""
    labels = [0] * n

    def rec(v: int, k: int):
        if v == n:
            yield list(labels)
            return
        for c in range(k + 1):
            labels[v] = c
            yield from rec(v + 1, max(k, c + 1))

    if n == 0:
        yield []
        return
    yield from rec(1, 1)


@lru_cache(maxsize=None)
def multipartite_masks(n: int) -> np.ndarray:
    """Edge masks of every complete multipartite graph on labeled vertex set [n]."""
    pairs = list(pair_index(n).items())
    out = []
    for lab in _set_partitions(n):
        m = 0
        for (u, v), k in pairs:
            if lab[u] != lab[v]:
                m |= 1 << k
        out.append(m)
    return np.array(sorted(set(out)), dtype=np.uint64)


def multipartite_distance(g: SmallGraph) -> int:
    """Fewest edge edits turning g into a complete multipartite graph."""
    masks = multipartite_masks(g.n)
    x = np.uint64(g.edge_mask())
    return int(np.bitwise_count(masks ^ x).min())


@dataclass
class NearExtremalEntry:
    graph: SmallGraph
    c4: int
    cocherries: int
    multipartite_distance: int
    labeled_copies: int

    def to_dict(self) -> dict:
        return {"graph6": to_graph6(self.graph), "c4": self.c4, "induced_cocherries": self.cocherries,
                "multipartite_distance": self.multipartite_distance,
                "labeled_copies": self.labeled_copies}


@dataclass
class NearExtremalReport:
    n: int
    r: int
    slack: int
    extremal_value: int
    entries: list[NearExtremalEntry]
    elapsed: float

    @property
    def max_cocherries(self) -> int:
        return max((e.cocherries for e in self.entries), default=0)

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "slack": self.slack,
                "extremal_value": self.extremal_value,
                "max_induced_cocherries": self.max_cocherries,
                "max_multipartite_distance": max((e.multipartite_distance for e in self.entries), default=0),
                "graphs": [e.to_dict() for e in self.entries],
                "elapsed_seconds": round(self.elapsed, 3)}


def near_extremal_cocherry_scan(n: int, r: int, slack: int, **kw) -> NearExtremalReport:
    from .catalog import COCHERRY
    from .graphs import count_induced, count_subgraphs

    if slack < 0:
        raise ValueError("slack must be nonnegative")
    c4, forbid = SmallGraph.cycle(4), SmallGraph.complete(r + 1)
    t0 = time.perf_counter()
    first, _ = scan(n, c4, forbid, **kw)
    ex = max(c.maximum for c in first)
    chunks, _ = scan(n, c4, forbid, threshold=ex - slack, **{k: v for k, v in kw.items() if k != "resume"})
    groups: dict = {}
    for ch in chunks:
        for cnt, masks in ch.near.items():
            for m in masks:
                g = SmallGraph.from_edge_mask(n, m)
                key = canonical_key(g)
                if key in groups:
                    groups[key][1] += 1
                else:
                    groups[key] = [canonical_form(g), 1]
    entries = []
    for key in sorted(groups):
        g, copies = groups[key]
        entries.append(NearExtremalEntry(
            g, count_subgraphs(c4, g),
            count_induced(COCHERRY, g) if n >= 3 else 0,
            multipartite_distance(g), copies))
    entries.sort(key=lambda e: (-e.c4, e.cocherries, to_graph6(e.graph)))
    return NearExtremalReport(n, r, slack, ex, entries, time.perf_counter() - t0)
