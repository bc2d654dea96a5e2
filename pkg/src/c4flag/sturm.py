"""Sign analysis of rational polynomials on rays ``[a, +inf)``.

Everything runs on exact rationals.  A claim "p >= 0 on [a, inf)" is reduced
to: the odd-multiplicity part of p has no real root in (a, inf) and the
leading coefficient is positive.  Root counts come from a Sturm chain, and
each decision returns a ``RayCertificate`` that ``check_certificate`` can
re-verify independently of how it was produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import UniPoly


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Canonical Sturm chain p, p', -rem(p, p'), ... ending at a constant."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    if chain[-1].is_zero():
        chain.pop()
    return chain


def sign_variations(signs: list[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def signs_at(chain: list[UniPoly], x: Fraction) -> list[int]:
    return [_sign(q(x)) for q in chain]


def signs_at_infinity(chain: list[UniPoly]) -> list[int]:
    return [_sign(q.lead) for q in chain]


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic squarefree factors with multiplicities."""
    if p.degree <= 0:
        return []
    out = []
    a = p.gcd(p.derivative())
    b = p.exact_div(a)
    c = p.derivative().exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = b.gcd(d)
        if a.degree > 0:
            out.append((a, k))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        k += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return UniPoly([Fraction(1)], p.var)
    return p.exact_div(p.gcd(p.derivative())).monic()


def odd_part(p: UniPoly) -> UniPoly:
    """Product of the factors of odd multiplicity; sign changes live here."""
    acc = UniPoly([Fraction(1)], p.var)
    for f, k in squarefree_decomposition(p):
        if k % 2:
            acc = acc * f
    return acc


def count_roots_above(sqfree: UniPoly, a: Fraction) -> tuple[int, dict]:
    """Distinct real roots of a squarefree polynomial in the open ray (a, inf).

    Returns the count and the Sturm data used.
    """
    a = Fraction(a)
    deflated = False
    s = sqfree
    if s.degree > 0 and s(a) == 0:
        s = s.exact_div(UniPoly([-a, Fraction(1)], s.var))
        deflated = True
    if s.degree <= 0:
        return 0, {"chain": [s], "signs_at_start": [_sign(s[0])],
                   "signs_at_infinity": [_sign(s[0])], "deflated_at_start": deflated}
    chain = sturm_chain(s)
    sa, sinf = signs_at(chain, a), signs_at_infinity(chain)
    count = sign_variations(sa) - sign_variations(sinf)
    return count, {"chain": chain, "signs_at_start": sa, "signs_at_infinity": sinf,
                   "deflated_at_start": deflated}


@dataclass
class RayCertificate:
    kind: str  # "nonneg" or "positive"
    poly: UniPoly
    start: Fraction
    holds: bool
    value_at_start: Fraction
    leading_sign: int
    tested: UniPoly  # odd part (nonneg) or squarefree part (positive)
    roots_above: int
    chain: list[UniPoly] = field(default_factory=list)
    signs_at_start: list[int] = field(default_factory=list)
    signs_at_infinity: list[int] = field(default_factory=list)
    deflated_at_start: bool = False

    def to_dict(self) -> dict:
        def coeffs(q: UniPoly) -> list[str]:
            return [str(c) for c in q.coeffs]

        return {
            "kind": self.kind,
            "poly": str(self.poly),
            "poly_coeffs": coeffs(self.poly),
            "ray_start": str(self.start),
            "holds": self.holds,
            "value_at_start": str(self.value_at_start),
            "leading_sign": self.leading_sign,
            "tested_poly": coeffs(self.tested),
            "roots_in_open_ray": self.roots_above,
            "sturm_chain": [coeffs(q) for q in self.chain],
            "signs_at_start": self.signs_at_start,
            "signs_at_infinity": self.signs_at_infinity,
            "deflated_at_start": self.deflated_at_start,
        }


def _certify(kind: str, p: UniPoly, a) -> RayCertificate:
    a = Fraction(a)
    if p.is_zero():
        raise ValueError("sign analysis of the zero polynomial")
    value = Fraction(p(a))
    lead = _sign(p.lead)
    if p.degree == 0:
        ok = value >= 0 if kind == "nonneg" else value > 0
        return RayCertificate(kind, p, a, ok, value, lead, p, 0)
    tested = odd_part(p) if kind == "nonneg" else squarefree_part(p)
    roots, data = count_roots_above(tested, a)
    if kind == "nonneg":
        ok = lead > 0 and roots == 0
    else:
        ok = lead > 0 and roots == 0 and value > 0
    return RayCertificate(kind, p, a, ok, value, lead, tested, roots, **data)


def nonneg_on_ray(p: UniPoly, a) -> RayCertificate:
    """Decide p(x) >= 0 for every real x >= a."""
    return _certify("nonneg", p, a)


def positive_on_ray(p: UniPoly, a) -> RayCertificate:
    """Decide p(x) > 0 for every real x >= a."""
    return _certify("positive", p, a)


def check_certificate(cert: RayCertificate) -> bool:
    """Re-verify a certificate from its stored data.

    Recomputes the tested polynomial's relation to ``poly``, the chain
    recurrence and both sign rows; returns True only if everything is
    consistent and the stored verdict follows.
    """
    p, a = cert.poly, cert.start
    if Fraction(p(a)) != cert.value_at_start or _sign(p.lead) != cert.leading_sign:
        return False
    if p.degree == 0:
        want = cert.value_at_start >= 0 if cert.kind == "nonneg" else cert.value_at_start > 0
        return want == cert.holds
    expect = odd_part(p) if cert.kind == "nonneg" else squarefree_part(p)
    if expect.coeffs != cert.tested.coeffs:
        return False
    s = cert.tested
    if cert.deflated_at_start:
        if s(a) != 0:
            return False
        s = s.exact_div(UniPoly([-a, Fraction(1)], s.var))
    chain = cert.chain
    if s.degree > 0:
        if not chain or chain[0].coeffs != s.coeffs:
            return False
        if chain[1].coeffs != s.derivative().coeffs:
            return False
        for k in range(2, len(chain)):
            if (-(chain[k - 2] % chain[k - 1])).coeffs != chain[k].coeffs:
                return False
        if chain[-1].degree != 0:
            return False
        if signs_at(chain, a) != cert.signs_at_start:
            return False
        if signs_at_infinity(chain) != cert.signs_at_infinity:
            return False
        roots = sign_variations(cert.signs_at_start) - sign_variations(cert.signs_at_infinity)
    else:
        roots = 0
    if roots != cert.roots_above:
        return False
    if cert.kind == "nonneg":
        verdict = cert.leading_sign > 0 and roots == 0
    else:
        verdict = cert.leading_sign > 0 and roots == 0 and cert.value_at_start > 0
    return verdict == cert.holds
