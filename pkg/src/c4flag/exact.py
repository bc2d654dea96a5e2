"""Exact scalar tower: dense univariate polynomials and rational functions.

``UniPoly`` works over any exact field whose elements support ``+ - * /``
and compare equal to ``0`` when zero.  In practice that is either
``fractions.Fraction`` (polynomials in r) or ``RationalFn`` (polynomials in
eta whose coefficients are rational functions of r).

``RationalFn`` is a quotient of two ``UniPoly`` over ``Fraction`` kept in
canonical form: coprime numerator and denominator, monic denominator.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence


def _is_zero(c) -> bool:
    return c == 0


class UniPoly:
    """Dense polynomial, coefficients stored lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "r"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c, var: str = "r") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def x(cls, var: str = "r", one=Fraction(1)) -> "UniPoly":
        return cls([one * 0, one], var)

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], var: str = "r") -> "UniPoly":
        return cls([Fraction(c) for c in coeffs], var)

    # -- basic queries ------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return self.degree == 0 and self.coeffs[0] == other

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        out = [self.coeffs[0] * 0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        return UniPoly([other * c for c in self.coeffs], self.var)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = UniPoly([self.coeffs[0] ** 0 if self.coeffs else Fraction(1)], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], self.var), self
        quot = [other.lead * 0] * (dq + 1)
        inv_lead = 1 / other.lead
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quot[k] = c
            if _is_zero(c):
                continue
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
        return UniPoly(quot, self.var), UniPoly(rem[: other.degree], self.var)

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return UniPoly([c * inv for c in self.coeffs], self.var)

    def derivative(self) -> "UniPoly":
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Return self(inner(x))."""
        acc = UniPoly([], inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    # -- integer normal form ------------------------------------------
    def integer_form(self) -> tuple[Fraction, tuple[int, ...]]:
        """Split a rational polynomial as ``scale * (primitive integer poly)``.

        The integer polynomial has coprime coefficients and a positive
        leading coefficient.
        """
        if self.is_zero():
            return Fraction(0), ()
        den = reduce(lcm, (Fraction(c).denominator for c in self.coeffs), 1)
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        g = reduce(gcd, (abs(i) for i in ints), 0)
        ints = [i // g for i in ints]
        sign = 1 if ints[-1] > 0 else -1
        ints = [sign * i for i in ints]
        return Fraction(sign * g, den), tuple(ints)

    # -- display --------------------------------------------------------
    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        return format_poly(self.coeffs, self.var)


def _fmt_coeff(c) -> str:
    if isinstance(c, RationalFn):
        return f"({c})"
    return str(c)


def format_poly(coeffs: Sequence, var: str = "r") -> str:
    """Human-readable ``3r^2-11r+9`` style string, highest degree first."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if _is_zero(c):
            continue
        if isinstance(c, RationalFn):
            body = _fmt_coeff(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            terms.append(("+", body + ("*" + mono if mono else "")))
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{a}{mono}" if Fraction(a).denominator == 1 else f"({a}){mono}"
        else:
            body = str(a)
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += s + body
    return out


def _as_poly(x, var: str = "r") -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    return UniPoly([Fraction(x)], var)


class RationalFn:
    """Canonical quotient of rational polynomials in one variable."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: str = "r"):
        if isinstance(num, RationalFn) and den is None:
            self.num, self.den = num.num, num.den
            return
        num = _as_poly(num, var)
        den = _as_poly(1 if den is None else den, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = UniPoly([], num.var)
            self.den = UniPoly([Fraction(1)], num.var)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.lead
        self.num = num * (1 / Fraction(lead))
        self.den = den.monic()

    @classmethod
    def variable(cls, var: str = "r") -> "RationalFn":
        return cls(UniPoly([Fraction(0), Fraction(1)], var))

    @property
    def var(self) -> str:
        return self.num.var

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _lift(x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, UniPoly):
            return RationalFn(x)
        if isinstance(x, (int, Fraction)):
            return RationalFn(UniPoly([Fraction(x)]))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalFn(UniPoly([], self.var))
            r = RationalFn.__new__(RationalFn)
            r.num = self.num * Fraction(other)
            r.den = self.den
            return r
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RationalFn(self.den, self.num) ** (-e)
        return RationalFn(self.num ** e, self.den ** e)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.num.coeffs == o.num.coeffs and self.den.coeffs == o.den.coeffs

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self.num(x) / d

    evaluate = __call__

    def compose(self, inner: "RationalFn") -> "RationalFn":
        """Return self(inner) for a rational-function argument."""
        inner = self._lift(inner)

        def ev(p: UniPoly) -> RationalFn:
            acc = RationalFn(UniPoly([], inner.var))
            for c in reversed(p.coeffs):
                acc = acc * inner + c
            return acc

        return ev(self.num) / ev(self.den)

    # -- display ----------------------------------------------------------
    def integer_parts(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Integer-coefficient numerator and denominator, lowest degree first.

        The denominator is primitive with positive leading coefficient; all
        scale factors are pushed into the numerator only when they are
        integers, otherwise both sides are scaled to clear fractions.
        """
        ns, ni = self.num.integer_form()
        ds, di = self.den.integer_form()
        if not ni:
            return (0,), (1,)
        ratio = ns / ds
        # ratio = p/q; numerator gets p, denominator gets q
        return (
            tuple(ratio.numerator * c for c in ni),
            tuple(ratio.denominator * c for c in di),
        )

    def __str__(self):
        n, d = self.integer_parts()
        ns = format_poly(n, self.var)
        if d == (1,):
            return ns
        ds = format_poly(d, self.var)
        if len([c for c in n if c]) > 1:
            ns = f"({ns})"
        # a lone coefficient times a power would bind wrongly after "/"
        if len([c for c in d if c]) > 1 or not re.fullmatch(rf"\d+|{re.escape(self.var)}(\^\d+)?", ds):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RationalFn({self})"


def binomial_poly(x, k: int):
    """C(x, k) for a ring element x (integer, Fraction, UniPoly, RationalFn)."""
    acc = x ** 0 if not isinstance(x, int) else 1
    for i in range(k):
        acc = acc * (x - i)
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return acc * Fraction(1, fact)


_IMPLICIT_MUL = re.compile(r"(?<=[\d)])\s*(?=[A-Za-z(])|(?<=\))\s*(?=\d)")


def parse_rational_fn(text: str, var: str = "r") -> RationalFn:
    """Parse an expression such as "3r^2-11r+9" or "(2r^3-10r^2+17r-9)/r^3"."""
    src = _IMPLICIT_MUL.sub("*", text.replace("^", "**").replace("−", "-"))
    try:
        tree = ast.parse(src, mode="eval").body
    except SyntaxError:
        raise ValueError(f"cannot parse expression {text!r}") from None
    x = RationalFn.variable(var)

    def ev(node) -> RationalFn:
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return RationalFn(node.value, var=var)
        if isinstance(node, ast.Name) and node.id == var:
            return x
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                    raise ValueError("exponents must be non-negative integer literals")
                return ev(node.left) ** e.value
            ops = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
                   ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b}
            if type(node.op) in ops:
                return ops[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)
