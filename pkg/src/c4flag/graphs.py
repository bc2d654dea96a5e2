"""Small simple graphs (at most 12 vertices) as tuples of neighbour bitmasks.

Counting conventions:

* ``count_subgraphs(h, g)`` is N(h, g), the number of (not necessarily
  induced) subgraphs of g isomorphic to h.  It counts injective
  homomorphisms and divides by |Aut(h)|, so N(C4, K4) = 3.
* ``count_induced(h, g)`` is the number of vertex subsets S with g[S]
  isomorphic to h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

MAX_ORDER = 12


class SizeCapError(ValueError):
    """Raised when an operation would exceed a documented size cap."""


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """Vertex pairs in column order: (0,1), (0,2), (1,2), (0,3), ...

    This is the bit order used by graph6 and by labelled edge masks.
    """
    return tuple((i, j) for j in range(1, n) for i in range(j))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pair_list(n))}


@dataclass(frozen=True)
class SmallGraph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ORDER:
            raise SizeCapError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb >> v & 1:
                raise ValueError(f"self-loop at {v}")
            if nb & ~full:
                raise ValueError(f"neighbour of {v} out of range")
            for u in _bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SmallGraph":
        if not 0 <= n <= MAX_ORDER:
            raise SizeCapError(f"order {n} outside 0..{MAX_ORDER}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "SmallGraph":
        pairs = pair_list(n)
        return cls.from_edges(n, (pairs[k] for k in _bits(mask)))

    @classmethod
    def empty(cls, n: int) -> "SmallGraph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "SmallGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def complete_multipartite(cls, parts: Sequence[int]) -> "SmallGraph":
        label = [c for c, size in enumerate(parts) for _ in range(size)]
        n = len(label)
        return cls.from_edges(
            n, ((u, v) for u, v in combinations(range(n), 2) if label[u] != label[v])
        )

    # -- queries --------------------------------------------------------
    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in pair_list(self.n) if self.adj[u] >> v & 1]

    @property
    def num_edges(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def degrees(self) -> list[int]:
        return [bin(a).count("1") for a in self.adj]

    def edge_mask(self) -> int:
        m = 0
        for k, (u, v) in enumerate(pair_list(self.n)):
            if self.adj[u] >> v & 1:
                m |= 1 << k
        return m

    def induced(self, vertices: Sequence[int]) -> "SmallGraph":
        """Induced subgraph; vertex k of the result is ``vertices[k]``."""
        pos = {v: k for k, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            nb = 0
            for u in _bits(self.adj[v]):
                if u in pos:
                    nb |= 1 << pos[u]
            adj.append(nb)
        return SmallGraph(len(vertices), tuple(adj))

    def relabel(self, order: Sequence[int]) -> "SmallGraph":
        """Graph whose vertex k is ``order[k]`` of self (order is a permutation)."""
        if sorted(order) != list(range(self.n)):
            raise ValueError("relabel needs a permutation")
        return self.induced(order)

    def complement(self) -> "SmallGraph":
        full = (1 << self.n) - 1
        return SmallGraph(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))

    def remove_edge(self, u: int, v: int) -> "SmallGraph":
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return SmallGraph(self.n, tuple(adj))

    def disjoint_union(self, other: "SmallGraph") -> "SmallGraph":
        s = self.n
        return SmallGraph.from_edges(
            s + other.n, self.edges() + [(u + s, v + s) for u, v in other.edges()]
        )

    def __repr__(self):
        return f"SmallGraph(n={self.n}, edges={self.edges()})"


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------------------
# Canonical form: individualisation-refinement with automorphism pruning
# ---------------------------------------------------------------------------

def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    Each cell is split by the vector of neighbour counts into every cell;
    sub-cells are ordered by that vector, which keeps the procedure
    isomorphism-invariant.
    """
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                sig = tuple(_popcount(adj[v] & m) for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                out.append(groups[sig])
        if len(out) == len(cells):
            return out
        cells = out


def _encode(adj: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        aj = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (aj >> order[i] & 1)
    return code


def _orbit_of(v: int, gens: list[tuple[int, ...]]) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _canonical_order(g: SmallGraph) -> tuple[int, tuple[int, ...]]:
    adj = g.adj
    n = g.n
    if n == 0:
        return 0, ()
    best: list = [None, None]  # code, order
    leaves: dict[int, tuple[int, ...]] = {}
    autos: list[tuple[int, ...]] = []

    def leaf(order: tuple[int, ...]):
        code = _encode(adj, order)
        prev = leaves.get(code)
        if prev is not None:
            gamma = [0] * n
            for a, b in zip(prev, order):
                gamma[a] = b
            autos.append(tuple(gamma))
        else:
            leaves[code] = order
        if best[0] is None or code < best[0]:
            best[0], best[1] = code, order

    def visit(cells: list[list[int]], path: tuple[int, ...]):
        cells = _refine(adj, cells)
        if len(cells) == n:
            leaf(tuple(c[0] for c in cells))
            return
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        done: set[int] = set()
        for v in cells[t]:
            if v in done:
                continue
            rest = [u for u in cells[t] if u != v]
            visit(cells[:t] + [[v], rest] + cells[t + 1:], path + (v,))
            # automorphisms fixing the path map explored subtrees onto siblings
            stab = [a for a in autos if all(a[p] == p for p in path)]
            done |= _orbit_of(v, stab)

    visit([list(range(n))], ())
    return best[0], best[1]


@lru_cache(maxsize=65536)
def canonical_form(g: SmallGraph) -> SmallGraph:
    """Distinguished representative of g's isomorphism class."""
    _, order = _canonical_order(g)
    return g.relabel(order)


def canonical_key(g: SmallGraph) -> tuple[int, int]:
    """Hashable isomorphism invariant that is complete: (order, code)."""
    c = canonical_form(g)
    return (c.n, _encode(c.adj, range(c.n)))


# ---------------------------------------------------------------------------
# Isomorphism by backtracking (independent of the canonical form)
# ---------------------------------------------------------------------------

def _search_order(g: SmallGraph) -> list[int]:
    """Vertex order for backtracking: each next vertex maximises links to placed ones."""
    remaining = set(range(g.n))
    order: list[int] = []
    placed = 0
    while remaining:
        v = max(remaining, key=lambda u: (_popcount(g.adj[u] & placed), g.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _isomorphisms(g: SmallGraph, h: SmallGraph, first_only: bool) -> int:
    if g.n != h.n or g.num_edges != h.num_edges:
        return 0
    if sorted(g.degrees()) != sorted(h.degrees()):
        return 0
    order = _search_order(g)
    gdeg, hdeg = g.degrees(), h.degrees()
    image = [-1] * g.n
    used = 0
    count = 0

    def extend(k: int) -> bool:
        nonlocal used, count
        if k == len(order):
            count += 1
            return first_only
        v = order[k]
        for w in range(h.n):
            if used >> w & 1 or hdeg[w] != gdeg[v]:
                continue
            ok = True
            for j in range(k):
                u = order[j]
                if (g.adj[v] >> u & 1) != (h.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            stop = extend(k + 1)
            used &= ~(1 << w)
            if stop:
                return True
        return False

    extend(0)
    return count


def are_isomorphic(g: SmallGraph, h: SmallGraph) -> bool:
    return _isomorphisms(g, h, first_only=True) > 0


@lru_cache(maxsize=4096)
def automorphism_count(g: SmallGraph) -> int:
    return _isomorphisms(g, g, first_only=False)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def enumerate_graphs(k: int) -> tuple[SmallGraph, ...]:
    """One canonical representative per isomorphism class on k vertices.

    Built by vertex augmentation from k-1 and deduplicated by canonical
    form; sorted by canonical code.
    """
    if not 0 <= k <= 7:
        raise SizeCapError("enumerate_graphs supports 0 <= k <= 7")
    if k == 0:
        return (SmallGraph(0, ()),)
    found: dict[tuple[int, int], SmallGraph] = {}
    for base in enumerate_graphs(k - 1):
        for nb in range(1 << (k - 1)):
            adj = [a | ((nb >> v & 1) << (k - 1)) for v, a in enumerate(base.adj)]
            adj.append(nb)
            g = SmallGraph(k, tuple(adj))
            key = canonical_key(g)
            if key not in found:
                found[key] = canonical_form(g)
    return tuple(found[key] for key in sorted(found))


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

def _check_orders(h: SmallGraph, g: SmallGraph):
    if h.n > g.n:
        raise ValueError(f"pattern has {h.n} vertices but host has only {g.n}")


def count_homomorphic_injections(h: SmallGraph, g: SmallGraph, limit: Optional[int] = None) -> int:
    """Injective maps V(h) -> V(g) sending edges to edges (non-edges unconstrained)."""
    order = _search_order(h)
    image = [-1] * h.n
    count = 0
    used = 0

    def extend(k: int) -> bool:
        nonlocal count, used
        if k == len(order):
            count += 1
            return limit is not None and count >= limit
        v = order[k]
        need = [image[u] for u in order[:k] if h.adj[v] >> u & 1]
        for w in range(g.n):
            if used >> w & 1:
                continue
            if any(not g.adj[w] >> x & 1 for x in need):
                continue
            image[v] = w
            used |= 1 << w
            stop = extend(k + 1)
            used &= ~(1 << w)
            if stop:
                return True
        return False

    extend(0)
    return count


def count_subgraphs(h: SmallGraph, g: SmallGraph) -> int:
    """N(h, g): copies of h in g, unlabelled."""
    _check_orders(h, g)
    return count_homomorphic_injections(h, g) // automorphism_count(h)


def contains_subgraph(f: SmallGraph, g: SmallGraph) -> bool:
    if f.n > g.n:
        return False
    return count_homomorphic_injections(f, g, limit=1) > 0


@lru_cache(maxsize=1024)
def labeled_copy_masks(h: SmallGraph) -> frozenset[int]:
    """Edge masks (over h's own vertex set) of every relabelling of h."""
    idx = pair_index(h.n)
    out = set()
    edges = h.edges()
    for perm in permutations(range(h.n)):
        m = 0
        for u, v in edges:
            a, b = perm[u], perm[v]
            if a > b:
                a, b = b, a
            m |= 1 << idx[(a, b)]
        out.add(m)
    return frozenset(out)


def subset_edge_mask(g: SmallGraph, subset: Sequence[int]) -> int:
    """Edge mask of g[subset] in the column pair order of len(subset) vertices."""
    m = 0
    k = 0
    for j in range(1, len(subset)):
        aj = g.adj[subset[j]]
        for i in range(j):
            if aj >> subset[i] & 1:
                m |= 1 << k
            k += 1
    return m


def count_induced(h: SmallGraph, g: SmallGraph) -> int:
    """N_I(h, g): vertex subsets inducing a copy of h."""
    _check_orders(h, g)
    copies = labeled_copy_masks(h)
    return sum(1 for s in combinations(range(g.n), h.n) if subset_edge_mask(g, s) in copies)


def density(h: SmallGraph, g: SmallGraph, induced: bool = False) -> Fraction:
    _check_orders(h, g)
    count = count_induced(h, g) if induced else count_subgraphs(h, g)
    return Fraction(count, comb(g.n, h.n))


# ---------------------------------------------------------------------------
# Colouring
# ---------------------------------------------------------------------------

def _colorable(g: SmallGraph, k: int) -> bool:
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    color = [-1] * g.n

    def assign(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        banned = {color[u] for u in _bits(g.adj[v]) if color[u] >= 0}
        # symmetry breaking: at most one fresh colour per step
        for c in range(min(used + 1, k)):
            if c in banned:
                continue
            color[v] = c
            if assign(i + 1, max(used, c + 1)):
                return True
            color[v] = -1
        return False

    return assign(0, 0)


def chromatic_number(g: SmallGraph) -> int:
    if g.n == 0:
        return 0
    if g.n > 10:
        raise SizeCapError("chromatic_number supports at most 10 vertices")
    # lower bound from a greedy clique keeps the search short
    lo = max(1, _greedy_clique(g))
    for k in range(lo, g.n + 1):
        if _colorable(g, k):
            return k
    return g.n


def _greedy_clique(g: SmallGraph) -> int:
    best = 0
    for start in range(g.n):
        clique = 1 << start
        cand = g.adj[start]
        size = 1
        while cand:
            v = max(_bits(cand), key=lambda u: _popcount(g.adj[u] & cand))
            clique |= 1 << v
            cand &= g.adj[v]
            size += 1
        best = max(best, size)
    return best


def has_color_critical_edge(g: SmallGraph) -> Optional[tuple[int, int]]:
    """An edge whose deletion lowers the chromatic number, or None."""
    edges = g.edges()
    if not edges:
        raise ValueError("graph has no edges")
    chi = chromatic_number(g)
    for u, v in edges:
        if chromatic_number(g.remove_edge(u, v)) < chi:
            return (u, v)
    return None


# ---------------------------------------------------------------------------
# Blow-ups and complete multipartite graphs
# ---------------------------------------------------------------------------

def blow_up(h: SmallGraph, s: int) -> SmallGraph:
    """Replace each vertex by an independent set of size s."""
    if h.n * s > MAX_ORDER:
        raise SizeCapError(f"blow-up would have {h.n * s} > {MAX_ORDER} vertices")
    edges = [
        (u * s + a, v * s + b) for u, v in h.edges() for a in range(s) for b in range(s)
    ]
    return SmallGraph.from_edges(h.n * s, edges)


def is_subgraph_of_blowup(f: SmallGraph, h: SmallGraph, s: int) -> bool:
    big = blow_up(h, s)
    if f.n > big.n:
        raise SizeCapError("pattern larger than the blow-up")
    return contains_subgraph(f, big)


def is_complete_multipartite(g: SmallGraph) -> Optional[list[tuple[int, ...]]]:
    """Classes of g as a complete multipartite graph, or None.

    g is complete multipartite exactly when "equal or non-adjacent" is an
    equivalence relation; the classes are its equivalence classes.
    """
    full = (1 << g.n) - 1
    classes: list[tuple[int, ...]] = []
    seen = 0
    for v in range(g.n):
        if seen >> v & 1:
            continue
        cls = full & ~g.adj[v]
        for u in _bits(cls):
            if full & ~g.adj[u] != cls:
                return None
        classes.append(tuple(_bits(cls)))
        seen |= cls
    return classes
