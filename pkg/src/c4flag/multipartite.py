"""Closed-form C4 and K4 counts in complete multipartite graphs.

A C4 in K_{t_1,...,t_r} meets either two, three or four classes:

* two classes i<j:         C(t_i,2) C(t_j,2) copies (each 2+2 set is one C4)
* three classes, pair in i: C(t_i,2) t_j t_k   (the set spans a diamond: one C4)
* four classes:             3 t_i t_j t_k t_l  (the set spans a K4: three C4s)

Dividing by C(n,4) and letting n grow with class sizes a_i n gives

    d(a) = 6 S22 + 12 S211 + 72 e4,

which in power sums p_k = sum a_i^k is

    d(a) = 3 p1^4 - 12 p1^2 p2 + 6 p2^2 + 12 p1 p3 - 9 p4.

The power-sum form only needs (value, multiplicity) pairs, so it also
evaluates on shapes whose number of classes is symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Sequence

from .exact import RationalFn, UniPoly
from .graphs import SmallGraph


@dataclass(frozen=True)
class PartProfile:
    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise ValueError("a profile needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError("every part must be at least 1")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    @classmethod
    def parse(cls, text: str) -> "PartProfile":
        return cls([int(x) for x in text.replace(" ", "").split(",") if x])

    @classmethod
    def balanced(cls, r: int, n: int) -> "PartProfile":
        """Turán profile: ceil(n/r) repeated n mod r times, then floor(n/r)."""
        if r < 1 or n < r:
            raise ValueError("balanced profile needs r >= 1 and n >= r")
        q, m = divmod(n, r)
        return cls([q + 1] * m + [q] * (r - m))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]


@dataclass(frozen=True)
class PartFractions:
    fractions: tuple[Fraction, ...]

    def __init__(self, fractions: Sequence):
        fs = tuple(Fraction(f) for f in fractions)
        if any(f < 0 for f in fs):
            raise ValueError("fractions must be nonnegative")
        if sum(fs) != 1:
            raise ValueError(f"fractions sum to {sum(fs)}, not 1")
        object.__setattr__(self, "fractions", fs)

    @classmethod
    def parse(cls, text: str) -> "PartFractions":
        return cls([Fraction(x) for x in text.replace(" ", "").split(",") if x])

    @classmethod
    def balanced(cls, r: int) -> "PartFractions":
        return cls([Fraction(1, r)] * r)


def _parts(profile) -> tuple[int, ...]:
    return profile.parts if isinstance(profile, PartProfile) else PartProfile(profile).parts


def _esym(xs: Sequence[int], k: int) -> int:
    """Elementary symmetric polynomial e_k by the O(r k) recurrence."""
    e = [1] + [0] * k
    for x in xs:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * x
    return e[k]


def c4_count(profile) -> int:
    """N(C4, K_{t_1..t_r}) via the two/three/four-class decomposition."""
    t = _parts(profile)
    pairs = [comb(x, 2) for x in t]
    two = (sum(pairs) ** 2 - sum(p * p for p in pairs)) // 2
    n = sum(t)
    s2 = sum(x * x for x in t)
    three = 0
    for x, p in zip(t, pairs):
        rest = n - x
        # e2 of the other classes
        three += p * (rest * rest - (s2 - x * x)) // 2
    four = 3 * _esym(t, 4)
    return two + three + four


def k4_count(profile) -> int:
    """N(K4, K_{t_1..t_r}) = e_4(t)."""
    return _esym(_parts(profile), 4)


def c4_count_by_classes(profile) -> dict[int, int]:
    """C4 copies split by how many classes they meet (2, 3 or 4)."""
    t = _parts(profile)
    two = sum(comb(a, 2) * comb(b, 2) for a, b in combinations(t, 2))
    three = sum(
        comb(a, 2) * b * c + a * comb(b, 2) * c + a * b * comb(c, 2)
        for a, b, c in combinations(t, 3)
    )
    four = 3 * sum(a * b * c * d for a, b, c, d in combinations(t, 4))
    return {2: two, 3: three, 4: four}


# ---------------------------------------------------------------------------
# Local counts through one vertex and the balancing shift
# ---------------------------------------------------------------------------

VALID_LOCAL = ((1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2))


def local_c4_profile(parts: Sequence[int], i: int, n1: int, n2: int, j: int) -> int:
    """c(v, n1, n2): C4 copies through a fixed v in class i meeting class i in
    n1 vertices (v included) and class j in n2 vertices.

    ``parts`` is used in the given order (not re-sorted); classes are 0-based.
    (1,0) counts copies whose other three vertices avoid classes i and j.
    """
    x = list(parts)
    if i == j or not (0 <= i < len(x) and 0 <= j < len(x)):
        raise ValueError("need two distinct class indices")
    if x[i] < 1:
        raise ValueError("class i is empty")
    if (n1, n2) not in VALID_LOCAL:
        raise ValueError(f"invalid (n1, n2) = ({n1}, {n2})")
    x1, x2 = x[i], x[j]
    rest = [t for k, t in enumerate(x) if k not in (i, j)]
    n = sum(x)
    sum_pairs_within = sum(comb(t, 2) for t in rest)
    sum_cross = _esym(rest, 2)
    sum_rest = sum(rest)
    if (n1, n2) == (1, 1):
        return x2 * (sum_pairs_within + 3 * sum_cross)
    if (n1, n2) == (1, 2):
        return comb(x2, 2) * sum_rest
    if (n1, n2) == (2, 0):
        return (x1 - 1) * (sum_pairs_within + sum_cross)
    if (n1, n2) == (2, 1):
        return (x1 - 1) * x2 * (n - x1 - x2)
    if (n1, n2) == (2, 2):
        return (x1 - 1) * comb(x2, 2)
    # (1, 0): three other vertices spread over the remaining classes
    return 3 * _esym(rest, 3) + sum(
        comb(a, 2) * b for ka, a in enumerate(rest) for kb, b in enumerate(rest) if ka != kb
    )


def c4_through_vertex(parts: Sequence[int], i: int, j: int) -> int:
    """All C4 copies through one vertex of class i (sum of the six local counts)."""
    return sum(local_c4_profile(parts, i, a, b, j) for a, b in VALID_LOCAL)


def shifted(parts: Sequence[int], i: int, j: int) -> list[int]:
    """Move one vertex from class i to class j (order preserved)."""
    out = list(parts)
    out[i] -= 1
    out[j] += 1
    return out


def starred_local(parts: Sequence[int], i: int, n1s: int, n2s: int, j: int) -> int:
    """c*(v*, n1*, n2*): counts through the moved vertex v* after the shift.

    n1* and n2* are the intersections with the shrunken class i and the
    enlarged class j.
    """
    return local_c4_profile(shifted(parts, i, j), j, n2s, n1s, i)


def shift_check(profile, i: int | None = None, j: int | None = None) -> tuple[int, int]:
    """(f_before, f_after) for moving one vertex from class i to class j.

    Indices refer to the descending-sorted profile.  Without indices the
    largest and smallest classes are used.  Requires part_i >= part_j + 2.
    """
    t = list(_parts(profile))
    if i is None and j is None:
        i, j = 0, len(t) - 1
    if i is None or j is None or not (0 <= i < len(t) and 0 <= j < len(t)) or i == j:
        raise ValueError("need two distinct valid class indices")
    if t[i] < t[j] + 2:
        raise ValueError(f"shift needs a source class at least 2 larger than the target, got {t[i]} and {t[j]}")
    before = c4_count(t)
    after_parts = shifted(t, i, j)
    after = c4_count([p for p in after_parts if p > 0])
    return before, after


def balance_path(profile) -> list[tuple[tuple[int, ...], int]]:
    """Repeatedly shift largest -> smallest until balanced; (parts, c4) per step."""
    t = PartProfile(_parts(profile))
    path = [(t.parts, c4_count(t))]
    while t.parts[0] >= t.parts[-1] + 2:
        _, after = shift_check(t)
        t = PartProfile(shifted(t.parts, 0, len(t) - 1))
        path.append((t.parts, after))
    return path


# ---------------------------------------------------------------------------
# Turán graphs and limiting densities
# ---------------------------------------------------------------------------

def turan_c4_count(r: int, n: int) -> int:
    if n < r:
        raise ValueError("need n >= r")
    return c4_count(PartProfile.balanced(r, n))


def c4_density_from_power_sums(p1, p2, p3, p4):
    return 3 * p1 ** 4 - 12 * p1 ** 2 * p2 + 6 * p2 ** 2 + 12 * p1 * p3 - 9 * p4


def k4_density_from_power_sums(p1, p2, p3, p4):
    """24 e4 written in power sums."""
    return p1 ** 4 - 6 * p1 ** 2 * p2 + 3 * p2 ** 2 + 8 * p1 * p3 - 6 * p4


def _power_sums(shape: Sequence[tuple[object, object]]):
    ps = []
    for k in range(1, 5):
        acc = 0
        for value, mult in shape:
            acc = acc + mult * value ** k
        ps.append(acc)
    return ps


def c4_density_of_shape(shape: Sequence[tuple[object, object]]):
    """Limit C4 density for classes given as (fraction, multiplicity) pairs.

    Values and multiplicities may be any ring elements, e.g. polynomials in
    eta with coefficients rational in r.
    """
    return c4_density_from_power_sums(*_power_sums(shape))


def k4_density_of_shape(shape: Sequence[tuple[object, object]]):
    return k4_density_from_power_sums(*_power_sums(shape))


def asymptotic_c4_density(fractions) -> Fraction:
    """lim N(C4, K_{a_1 n, ..., a_r n}) / C(n, 4)."""
    fs = fractions.fractions if isinstance(fractions, PartFractions) else PartFractions(fractions).fractions
    return Fraction(c4_density_of_shape([(a, 1) for a in fs]))


def limit_density_vector(fractions) -> list[Fraction]:
    """lim P(F_i, K_{a_1 n, ..., a_r n}) over the catalog: four class labels decide the induced graph."""
    from .catalog import catalog_index
    fs = fractions.fractions if isinstance(fractions, PartFractions) else PartFractions(fractions).fractions
    support = [(c, a) for c, a in enumerate(fs) if a]
    vec = [Fraction(0)] * 11
    for pick in product(support, repeat=4):
        cls = [c for c, _ in pick]
        g = SmallGraph.from_edges(4, [(u, v) for u, v in combinations(range(4), 2) if cls[u] != cls[v]])
        vec[catalog_index(g)] += pick[0][1] * pick[1][1] * pick[2][1] * pick[3][1]
    return vec


def turan_c4_asymptotic(r):
    """Limit C4 density of T_r(n); a RationalFn when r is symbolic (a RationalFn)."""
    if isinstance(r, RationalFn):
        return c4_density_of_shape([(1 / r, r)])
    return asymptotic_c4_density(PartFractions.balanced(r))


def turan_k4_asymptotic(r):
    if isinstance(r, RationalFn):
        return k4_density_of_shape([(1 / r, r)])
    return Fraction(k4_density_of_shape([(Fraction(1, r), r)]))


# ---------------------------------------------------------------------------
# Stability expansion around the balanced profile
# ---------------------------------------------------------------------------

@dataclass
class StabilityExpansion:
    """Limit C4 density when one class has fraction (1+eta(r-1))/r and the
    other r-1 classes share the rest equally, as a polynomial in eta."""

    closed_form: UniPoly      # eta-polynomial with RationalFn(r) coefficients
    recomputed: UniPoly       # same, from the power-sum density
    g: RationalFn             # minus one sixth of the eta^2 coefficient

    @property
    def identical(self) -> bool:
        return self.closed_form.coeffs == self.recomputed.coeffs

    def at(self, r0) -> UniPoly:
        """Specialise r; returns an eta-polynomial over Fraction."""
        return UniPoly([c(Fraction(r0)) for c in self.recomputed.coeffs], "eta")


def stability_expansion() -> StabilityExpansion:
    r = RationalFn.variable("r")
    one = RationalFn(1)
    zero = RationalFn(0)
    eta = UniPoly([zero, one], "eta")

    opt = turan_c4_asymptotic(r)
    g = (2 * r ** 3 - 10 * r ** 2 + 17 * r - 9) / r ** 3
    closed = (
        UniPoly([opt], "eta")
        - eta ** 2 * (6 * g)
        + eta ** 3 * (12 * (r ** 3 - 6 * r ** 2 + 11 * r - 6) / r ** 3)
        - eta ** 4 * (3 * (r ** 3 - 8 * r ** 2 + 16 * r - 9) / r ** 3)
    )

    big = (UniPoly([one], "eta") + eta * (r - 1)) * (1 / r)
    small = (UniPoly([one], "eta") - eta) * (1 / r)
    recomputed = c4_density_of_shape([(big, UniPoly([one], "eta")),
                                      (small, UniPoly([r - 1], "eta"))])
    g_from_expansion = recomputed[2] * Fraction(-1, 6)
    return StabilityExpansion(closed, recomputed, g_from_expansion)
