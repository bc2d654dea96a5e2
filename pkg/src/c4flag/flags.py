"""Typed flags, flag densities, products and the unlabeling operator.

Conventions
-----------
A type of size k is a graph on vertices 0..k-1; vertex i carries label i+1.
A flag stores its graph with the labeled vertices listed in ``labels``
(label i+1 sits on vertex ``labels[i]``).  Flags are compared through a
canonical key: labeled vertices are moved to the front in label order and
the unlabeled vertices are permuted to minimise the adjacency code.

Product: for sigma-flags f1, f2 of orders n1, n2 the coefficient of a flag
F3 of order w = n1 + n2 - k is the probability that a uniformly random
*ordered* pair (X1, X2) of disjoint unlabeled sets of sizes n1 - k and
n2 - k has F3[labels + X1] ~ f1 and F3[labels + X2] ~ f2.  With this
reading, 6 [[alpha^2]] reproduces the Q1 expansion coefficient for
coefficient; an unordered reading doubles every cross term f1 != f2.

Unlabeling: q(F) is the share of the n(n-1)...(n-k+1) injective label
placements in F' that give a flag isomorphic to F.  With this, the
expected value of P(F, (G, theta)) over a uniformly random injective theta
equals q(F) P(F', G) exactly, which is what ``expand_square`` uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, perm
from typing import Iterable, Iterator, Sequence

from .catalog import catalog_index
from .graph6 import from_graph6, to_graph6
from .graphs import SmallGraph, _encode

MAX_FLAG_ORDER = 6


# ---------------------------------------------------------------------------
# Types and flags
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeGraph:
    graph: SmallGraph

    @property
    def k(self) -> int:
        return self.graph.n

    def __str__(self):
        return f"type[{to_graph6(self.graph)}]"


SIGMA0 = TypeGraph(SmallGraph.empty(0))
SIGMA1 = TypeGraph(SmallGraph.empty(2))           # two non-adjacent labels
SIGMA2 = TypeGraph(SmallGraph.complete(2))        # two adjacent labels
TYPES = {"sigma1": SIGMA1, "sigma2": SIGMA2}


def _induced_on(adj: Sequence[int], vertices: Sequence[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(vertices)}
    out = []
    for v in vertices:
        nb = 0
        a = adj[v]
        for u, i in pos.items():
            if a >> u & 1:
                nb |= 1 << i
        out.append(nb)
    return tuple(out)


def _flag_code(adj: tuple[int, ...], k: int) -> int:
    """Minimal code over orders that keep vertices 0..k-1 fixed in front."""
    n = len(adj)
    rest = range(k, n)
    head = tuple(range(k))
    return min(_encode(adj, head + p) for p in permutations(rest))


@lru_cache(maxsize=200000)
def _flag_key(adj: tuple[int, ...], k: int) -> tuple[int, int, int]:
    return (len(adj), k, _flag_code(adj, k))


@dataclass(frozen=True)
class Flag:
    graph: SmallGraph
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels) or any(not 0 <= v < self.graph.n for v in labels):
            raise ValueError("labels must be distinct vertices of the graph")

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def sigma(self) -> TypeGraph:
        return TypeGraph(self.graph.induced(self.labels))

    def _front_adj(self) -> tuple[int, ...]:
        rest = [v for v in range(self.n) if v not in self.labels]
        return _induced_on(self.graph.adj, list(self.labels) + rest)

    def key(self) -> tuple[int, int, int]:
        return _flag_key(self._front_adj(), self.k)

    def canonical(self) -> "Flag":
        adj = self._front_adj()
        k = self.k
        best = min(permutations(range(k, self.n)),
                   key=lambda p: _encode(adj, tuple(range(k)) + p))
        order = tuple(range(k)) + best
        return Flag(SmallGraph(self.n, _induced_on(adj, order)), tuple(range(k)))

    def same_as(self, other: "Flag") -> bool:
        return self.key() == other.key()

    def to_text(self) -> str:
        return to_graph6(self.graph) + ":" + ",".join(str(v) for v in self.labels)

    @classmethod
    def from_text(cls, text: str) -> "Flag":
        g6, _, lab = text.rpartition(":")
        labels = tuple(int(x) for x in lab.split(",") if x != "")
        return cls(from_graph6(g6), labels)

    def __str__(self):
        return self.to_text()


def make_flag(sigma: TypeGraph, n: int, extra_edges: Iterable[tuple[int, int]]) -> Flag:
    """Flag on n vertices: the type on 0..k-1 plus the given extra edges."""
    edges = list(sigma.graph.edges()) + list(extra_edges)
    g = SmallGraph.from_edges(n, edges)
    f = Flag(g, tuple(range(sigma.k)))
    if f.sigma != sigma:
        raise ValueError("extra edges change the type")
    return f


def _check_same_type(*flags: Flag):
    s = flags[0].sigma
    for f in flags[1:]:
        if f.sigma != s:
            raise ValueError("flags have different types")


@lru_cache(maxsize=None)
def enumerate_flags(sigma: TypeGraph, ell: int) -> tuple[Flag, ...]:
    """One canonical flag per label-preserving isomorphism class, sorted by key."""
    k = sigma.k
    if ell < k:
        raise ValueError(f"flag order {ell} below type size {k}")
    if ell > MAX_FLAG_ORDER:
        raise ValueError(f"flag order {ell} above {MAX_FLAG_ORDER}")
    free = [(i, j) for j in range(ell) for i in range(j) if j >= k]
    seen: dict[tuple, Flag] = {}
    for mask in range(1 << len(free)):
        extra = [p for b, p in enumerate(free) if mask >> b & 1]
        f = make_flag(sigma, ell, extra)
        key = f.key()
        if key not in seen:
            seen[key] = f.canonical()
    return tuple(seen[key] for key in sorted(seen))


def order3_flag(sigma: TypeGraph, to_labels: Sequence[int]) -> Flag:
    """Order-3 flag whose extra vertex is adjacent to the given labels (1-based)."""
    return make_flag(sigma, 3, [(lab - 1, 2) for lab in to_labels])


# ---------------------------------------------------------------------------
# Densities, product, unlabeling
# ---------------------------------------------------------------------------

def rooted_count(small: Flag, adj: Sequence[int], labels: Sequence[int]) -> int:
    """Number of unlabeled subsets X with (host[labels + X], labels) ~ small.

    ``adj`` is a neighbour-bitmask list of any length, so hosts larger than
    the ``SmallGraph`` cap can be used for density statistics.
    """
    k = len(labels)
    target = small.key()
    rest = [v for v in range(len(adj)) if v not in labels]
    count = 0
    for xs in combinations(rest, small.n - k):
        if _flag_key(_induced_on(adj, list(labels) + list(xs)), k) == target:
            count += 1
    return count


def flag_density(small: Flag, big: Flag) -> Fraction:
    _check_same_type(small, big)
    if small.n > big.n:
        raise ValueError("small flag has more vertices than big flag")
    total = comb(big.n - big.k, small.n - small.k)
    return Fraction(rooted_count(small, big.graph.adj, big.labels), total)


def pair_count(f1: Flag, f2: Flag, adj: Sequence[int], labels: Sequence[int]) -> tuple[int, int]:
    """(hits, total) over ordered disjoint (X1, X2) for a host of any size."""
    k = len(labels)
    a, b = f1.n - k, f2.n - k
    rest = [v for v in range(len(adj)) if v not in labels]
    if a + b > len(rest):
        raise ValueError("host too small for the pair")
    labels = list(labels)
    k1, k2 = f1.key(), f2.key()
    if a == b == 1:
        # one extra vertex each: classify vertices once
        c1 = sum(1 for v in rest if _flag_key(_induced_on(adj, labels + [v]), k) == k1)
        if k1 == k2:
            hits = c1 * (c1 - 1)
        else:
            c2 = sum(1 for v in rest if _flag_key(_induced_on(adj, labels + [v]), k) == k2)
            hits = c1 * c2
        return hits, len(rest) * (len(rest) - 1)
    hits = 0
    for x1 in combinations(rest, a):
        if _flag_key(_induced_on(adj, labels + list(x1)), k) != k1:
            continue
        left = [v for v in rest if v not in x1]
        for x2 in combinations(left, b):
            if _flag_key(_induced_on(adj, labels + list(x2)), k) == k2:
                hits += 1
    return hits, comb(len(rest), a) * comb(len(rest) - a, b)


def pair_density(f1: Flag, f2: Flag, big: Flag) -> Fraction:
    """P(f1, f2; big): ordered disjoint (X1, X2) inducing f1 and f2."""
    _check_same_type(f1, f2, big)
    hits, total = pair_count(f1, f2, big.graph.adj, big.labels)
    return Fraction(hits, total)


def independence_gap(f1: Flag, f2: Flag, adj: Sequence[int], labels: Sequence[int]) -> Fraction:
    """|P(f1, f2; (G, theta)) - P(f1; (G, theta)) P(f2; (G, theta))| on a raw host."""
    k = len(labels)
    m = len(adj) - k
    hits, total = pair_count(f1, f2, adj, labels)
    p1 = Fraction(rooted_count(f1, adj, labels), comb(m, f1.n - k))
    p2 = Fraction(rooted_count(f2, adj, labels), comb(m, f2.n - k))
    return abs(Fraction(hits, total) - p1 * p2)


@dataclass
class FlagCombination:
    """Linear combination of flags of one type and one order.

    Coefficients are any exact field elements (Fraction or RationalFn).
    """

    sigma: TypeGraph
    order: int
    terms: dict  # flag key -> (canonical Flag, coefficient)

    @classmethod
    def zero(cls, sigma: TypeGraph, order: int) -> "FlagCombination":
        return cls(sigma, order, {})

    @classmethod
    def of(cls, pairs: Iterable[tuple[object, Flag]]) -> "FlagCombination":
        pairs = list(pairs)
        if not pairs:
            raise ValueError("empty combination needs an explicit type; use zero()")
        sigma, order = pairs[0][1].sigma, pairs[0][1].n
        out = cls.zero(sigma, order)
        for c, f in pairs:
            out.add_term(c, f)
        return out

    def add_term(self, coeff, flag: Flag):
        if flag.sigma != self.sigma or flag.n != self.order:
            raise ValueError("flag type or order does not match the combination")
        key = flag.key()
        if key in self.terms:
            f, c = self.terms[key]
            c = c + coeff
        else:
            f, c = flag.canonical(), coeff
        if c == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = (f, c)

    def items(self) -> Iterator[tuple[Flag, object]]:
        for key in sorted(self.terms):
            yield self.terms[key]

    def coefficient(self, flag: Flag):
        return self.terms.get(flag.key(), (None, 0))[1]

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "FlagCombination") -> "FlagCombination":
        out = FlagCombination(self.sigma, self.order, dict(self.terms))
        for f, c in other.items():
            out.add_term(c, f)
        return out

    def scale(self, s) -> "FlagCombination":
        out = FlagCombination.zero(self.sigma, self.order)
        for f, c in self.items():
            out.add_term(c * s, f)
        return out

    def evaluate(self, big: Flag):
        """Sum of coeff * P(flag, big)."""
        return sum((c * flag_density(f, big) for f, c in self.items()), Fraction(0))


@lru_cache(maxsize=None)
def _product_table(k1: tuple, k2: tuple, f1: Flag, f2: Flag) -> tuple[tuple[Flag, Fraction], ...]:
    sigma = f1.sigma
    w = f1.n + f2.n - sigma.k
    out = []
    for big in enumerate_flags(sigma, w):
        p = pair_density(f1, f2, big)
        if p:
            out.append((big, p))
    return tuple(out)


def flag_product(f1: Flag, f2: Flag) -> FlagCombination:
    _check_same_type(f1, f2)
    w = f1.n + f2.n - f1.k
    if w > MAX_FLAG_ORDER:
        raise ValueError(f"product order {w} above {MAX_FLAG_ORDER}")
    c1, c2 = f1.canonical(), f2.canonical()
    out = FlagCombination.zero(f1.sigma, w)
    for big, p in _product_table(c1.key(), c2.key(), c1, c2):
        out.add_term(p, big)
    return out


def combination_product(a: FlagCombination, b: FlagCombination) -> FlagCombination:
    if a.sigma != b.sigma:
        raise ValueError("combinations have different types")
    w = a.order + b.order - a.sigma.k
    out = FlagCombination.zero(a.sigma, w)
    for fa, ca in a.items():
        for fb, cb in b.items():
            for big, p in flag_product(fa, fb).items():
                out.add_term(ca * cb * p, big)
    return out


@lru_cache(maxsize=None)
def _unlabel_cached(f: Flag) -> tuple[Fraction, SmallGraph]:
    g = f.graph
    target = f.key()
    hits = 0
    for theta in permutations(range(g.n), f.k):
        if Flag(g, theta).key() == target:
            hits += 1
    return Fraction(hits, perm(g.n, f.k)), g


def unlabel(f: Flag) -> tuple[Fraction, SmallGraph]:
    """(q_sigma(F), F') with F' the underlying unlabeled graph."""
    return _unlabel_cached(f.canonical())


# ---------------------------------------------------------------------------
# Density forms over the 4-vertex catalog
# ---------------------------------------------------------------------------

class DensityForm:
    """Linear form sum_i coeffs[i] * P(F_i) over the catalog basis."""

    SIZE = 11

    def __init__(self, coeffs: Sequence):
        coeffs = list(coeffs)
        if len(coeffs) != self.SIZE:
            raise ValueError(f"density form needs {self.SIZE} coefficients")
        self.coeffs = coeffs

    @classmethod
    def zero(cls) -> "DensityForm":
        return cls([Fraction(0)] * cls.SIZE)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: "DensityForm") -> "DensityForm":
        return DensityForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "DensityForm") -> "DensityForm":
        return DensityForm([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, s) -> "DensityForm":
        return DensityForm([c * s for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, DensityForm):
            return NotImplemented
        return all(a - b == 0 for a, b in zip(self.coeffs, other.coeffs))

    def evaluate(self, densities: Sequence):
        return sum((c * d for c, d in zip(self.coeffs, densities)), Fraction(0))

    def specialize(self, r0) -> "DensityForm":
        """Substitute r = r0 in rational-function coefficients."""
        return DensityForm([c(Fraction(r0)) if callable(c) else Fraction(c) for c in self.coeffs])

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return f"DensityForm({self.to_strings()})"


def unlabel_combination(comb4: FlagCombination) -> DensityForm:
    """Apply the unlabeling operator to a combination of 4-vertex flags."""
    if comb4.order != 4:
        raise ValueError("density forms need 4-vertex flags")
    out = [Fraction(0)] * DensityForm.SIZE
    for f, c in comb4.items():
        q, g = unlabel(f)
        i = catalog_index(g)
        out[i] = out[i] + c * q
    return DensityForm(out)


def expand_square(alpha: FlagCombination) -> DensityForm:
    """[[alpha * alpha]]_sigma as a form over P(F_0..F_10)."""
    w = 2 * alpha.order - alpha.sigma.k
    if w != 4:
        raise ValueError(f"square has order {w}, density forms need 4")
    return unlabel_combination(combination_product(alpha, alpha))


def density_of_square(alpha: FlagCombination, adj: Sequence[int]) -> Fraction:
    """Exact [[alpha^2]] evaluated on a host graph, averaging over all label placements.

    Works directly with flag densities at the host size, so for order-3
    flags over a 2-type it equals E_theta[ sum_ab c_a c_b P(a, b; (G, theta)) ].
    """
    n = len(adj)
    k = alpha.sigma.k
    terms = list(alpha.items())
    total = Fraction(0)
    for theta in permutations(range(n), k):
        if _induced_on(adj, theta) != alpha.sigma.graph.adj:
            continue
        rest = [v for v in range(n) if v not in theta]
        m = alpha.order - k
        groups = []
        for xs in combinations(rest, m):
            groups.append((xs, _flag_key(_induced_on(adj, list(theta) + list(xs)), k)))
        coeff = {f.key(): c for f, c in terms}
        acc = Fraction(0)
        for x1, key1 in groups:
            c1 = coeff.get(key1)
            if c1 is None:
                continue
            for x2, key2 in groups:
                if set(x1) & set(x2):
                    continue
                c2 = coeff.get(key2)
                if c2 is not None:
                    acc += c1 * c2
        npairs = comb(len(rest), m) * comb(len(rest) - m, m)
        total += acc / npairs
    return total / perm(n, k)
