"""Exact arithmetic foundations: rationals, quadratic surds, affine expressions.

Every quantity in this package is exact; floating point never enters the
computational core (decimal approximations are produced only for display).
Rationals are ``gmpy2.mpq`` values: arbitrary precision, eagerly normalized
to lowest terms with a positive denominator, and roughly an order of
magnitude faster than ``fractions.Fraction`` in the pivot-heavy linear
programs of the search.

Three layers live here:

* ``Rational`` (= ``gmpy2.mpq``) with canonical ``"p/q"`` serialization,
* ``QuadExt``, an element a + b*sqrt(d) of a real quadratic field, enough
  to express the closed-form optima of the one-radical bound curves,
* ``AffineExpr``, a rational-coefficient affine form over integer-indexed
  variables, the currency of the symbolic tiling search.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal, getcontext
from typing import Iterable, Mapping, Optional, Union

from gmpy2 import mpq

from .errors import DomainError, ParseError, UnboundVariableError, UnsupportedFieldError

Rational = mpq

ZERO = mpq(0)
ONE = mpq(1)

RationalLike = Union[int, Rational]

_CANONICAL_RE = re.compile(r"^(-?(?:0|[1-9][0-9]*))(?:/([1-9][0-9]*))?$")


def rat(p: RationalLike, q: RationalLike = 1) -> Rational:
    """Build an exact rational p/q."""
    return mpq(p, q)


def parse_rational(text: str) -> Rational:
    """Parse the canonical serialization "p/q" (or "p" for integers).

    The form is strict: lowest terms, sign on the numerator, denominator
    omitted when it equals 1, no leading "+", no "-0".  Anything else is a
    ParseError, so that serialized files round-trip bit for bit.
    """
    m = _CANONICAL_RE.match(text.strip())
    if not m:
        raise ParseError(f"not a canonical rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if num == 0 and (m.group(1).startswith("-") or den != 1):
        raise ParseError(f"not a canonical rational: {text!r}")
    if math.gcd(abs(num), den) != 1:
        raise ParseError(f"rational not in lowest terms: {text!r}")
    return mpq(num, den)


def format_rational(x: RationalLike) -> str:
    """Canonical serialization: "p/q", or "p" when the denominator is 1."""
    return str(mpq(x))


def rational_cmp(x: RationalLike, y: RationalLike) -> int:
    """Exact three-way comparison: -1, 0 or +1."""
    x = mpq(x)
    y = mpq(y)
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def square_free_decompose(n: int) -> tuple[int, int]:
    """Write n = k^2 * d with d square-free; returns (k, d).  Requires n >= 0."""
    if n < 0:
        raise DomainError("square_free_decompose needs a nonnegative integer")
    if n == 0:
        return 0, 0
    k = 1
    d = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= n
    return k, d


class QuadExt:
    """An exact element a + b*sqrt(d) of a real quadratic field.

    ``d`` is a nonnegative square-free integer; values with d in {0, 1} are
    stored purely rationally (b = 0, d = 0).  A non-square-free ``d`` given
    to the constructor is folded into ``b``.  Comparisons are exact, decided
    by isolating the radical and squaring with sign tracking.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 0):
        a = mpq(a)
        b = mpq(b)
        d = int(d)
        if d < 0:
            raise DomainError("negative radicand")
        if b != 0 and d > 1:
            k, d = square_free_decompose(d)
            b *= k
        if b == 0 or d == 0:
            b, d = ZERO, 0
        elif d == 1:
            a, b, d = a + b, ZERO, 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *_):
        raise AttributeError("QuadExt is immutable")

    # -- queries ----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def as_rational(self) -> Rational:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        """Exact sign of the real value, never via floating point."""
        if self.b == 0:
            return _sign(self.a)
        if self.a == 0:
            return _sign(self.b)
        sa, sb = _sign(self.a), _sign(self.b)
        if sa == sb:
            return sa
        # a and b have opposite signs; compare a^2 against b^2 d.
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        if lhs == rhs:
            return 0  # unreachable for square-free d > 1, kept for safety
        return sa if lhs > rhs else sb

    # -- arithmetic (closed within one field) ------------------------------

    @staticmethod
    def _coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt(mpq(x))

    def _join_field(self, other: "QuadExt") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        if self.d != other.d:
            raise UnsupportedFieldError(
                f"mixed radicands sqrt({self.d}) and sqrt({other.d})"
            )
        return self.d

    def __add__(self, other):
        other = self._coerce(other)
        d = self._join_field(other)
        return QuadExt(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = self._join_field(other)
        return QuadExt(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return (self - self._coerce(other)).sign() == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def __hash__(self):
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- display -----------------------------------------------------------

    def __str__(self):
        if self.b == 0:
            return format_rational(self.a)
        if self.a == 0:
            return f"{format_rational(self.b)}*sqrt({self.d})"
        sign = "+" if self.b > 0 else "-"
        return f"{format_rational(self.a)} {sign} {format_rational(abs(self.b))}*sqrt({self.d})"

    def __repr__(self):
        return f"QuadExt({self})"

    def to_decimal(self, digits: int = 12) -> str:
        """Decimal approximation for display; labeled advisory by callers."""
        getcontext().prec = digits + 15
        val = Decimal(int(self.a.numerator)) / Decimal(int(self.a.denominator))
        if self.b != 0:
            root = Decimal(self.d).sqrt()
            val += (
                Decimal(int(self.b.numerator)) / Decimal(int(self.b.denominator))
            ) * root
        return f"{val:.{digits}g}"


def sqrt_rational(x: RationalLike) -> QuadExt:
    """Exact square root of a nonnegative rational, as an element a*sqrt(d).

    sqrt(p/q) = sqrt(p*q)/q, so the result lives in the field generated by
    the square-free kernel of p*q; perfect squares come back purely rational.
    """
    x = mpq(x)
    if x < 0:
        raise DomainError("square root of a negative rational")
    p = int(x.numerator)
    q = int(x.denominator)
    k, d = square_free_decompose(p * q)
    return QuadExt(0, mpq(k, q), d)


def quadext_cmp(x, y) -> int:
    """Exact three-way comparison of quadratic-field elements.

    Both arguments may be QuadExt or plain rationals.  Values with two
    distinct irrational radicands are rejected (UnsupportedFieldError); the
    package never needs such comparisons on its public surface.
    """
    x = QuadExt._coerce(x)
    y = QuadExt._coerce(y)
    return (x - y).sign()


# ---------------------------------------------------------------------------
# Affine expressions over integer-indexed variables
# ---------------------------------------------------------------------------


class AffineExpr:
    """An immutable affine form  const + sum(coeff_v * x_v).

    Variables are dense small integers assigned in placement order by the
    search, which keeps substitution maps array-like and cheap.  Zero
    coefficients are never stored, so structural equality of the
    (const, sorted terms) key is semantic equality.
    """

    __slots__ = ("const", "terms")

    def __init__(self, const: RationalLike = 0, terms: Optional[dict] = None):
        object.__setattr__(self, "const", mpq(const))
        object.__setattr__(self, "terms", terms if terms is not None else {})

    def __setattr__(self, *_):
        raise AttributeError("AffineExpr is immutable")

    def __getstate__(self):
        return (self.const, self.terms)

    def __setstate__(self, state):
        object.__setattr__(self, "const", state[0])
        object.__setattr__(self, "terms", state[1])

    # -- construction helpers ----------------------------------------------

    @staticmethod
    def constant(c: RationalLike) -> "AffineExpr":
        return AffineExpr(mpq(c))

    @staticmethod
    def variable(v: int, coeff: RationalLike = 1) -> "AffineExpr":
        c = mpq(coeff)
        return AffineExpr(ZERO, {v: c} if c != 0 else {})

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "AffineExpr") -> "AffineExpr":
        t = dict(self.terms)
        for v, c in other.terms.items():
            acc = t.get(v)
            if acc is None:
                t[v] = c
            else:
                acc = acc + c
                if acc == 0:
                    del t[v]
                else:
                    t[v] = acc
        return AffineExpr(self.const + other.const, t)

    def __sub__(self, other: "AffineExpr") -> "AffineExpr":
        t = dict(self.terms)
        for v, c in other.terms.items():
            acc = t.get(v)
            if acc is None:
                t[v] = -c
            else:
                acc = acc - c
                if acc == 0:
                    del t[v]
                else:
                    t[v] = acc
        return AffineExpr(self.const - other.const, t)

    def __neg__(self) -> "AffineExpr":
        return AffineExpr(-self.const, {v: -c for v, c in self.terms.items()})

    def scale(self, factor: RationalLike) -> "AffineExpr":
        f = mpq(factor)
        if f == 0:
            return AffineExpr(ZERO)
        return AffineExpr(self.const * f, {v: c * f for v, c in self.terms.items()})

    def shift(self, delta: RationalLike) -> "AffineExpr":
        return AffineExpr(self.const + mpq(delta), dict(self.terms))

    # -- evaluation and substitution ------------------------------------------

    @property
    def is_const(self) -> bool:
        return not self.terms

    def variables(self) -> Iterable[int]:
        return self.terms.keys()

    def evaluate(self, assignment: Mapping[int, Rational]) -> Rational:
        total = self.const
        for v, c in self.terms.items():
            try:
                total += c * assignment[v]
            except KeyError:
                raise UnboundVariableError(f"variable {v} unbound") from None
        return total

    def substitute(self, subst: Mapping[int, "AffineExpr"]) -> "AffineExpr":
        """Apply a substitution map (assumed idempotent: its right-hand sides
        contain no substituted variables)."""
        if not subst:
            return self
        if not any(v in subst for v in self.terms):
            return self
        const = self.const
        t: dict = {}
        for v, c in self.terms.items():
            rhs = subst.get(v)
            if rhs is None:
                acc = t.get(v)
                acc = c if acc is None else acc + c
                if acc == 0:
                    t.pop(v, None)
                else:
                    t[v] = acc
                continue
            const += c * rhs.const
            for v2, c2 in rhs.terms.items():
                acc = t.get(v2)
                acc = c * c2 if acc is None else acc + c * c2
                if acc == 0:
                    t.pop(v2, None)
                else:
                    t[v2] = acc
        return AffineExpr(const, t)

    # -- identity ---------------------------------------------------------------

    def key(self) -> tuple:
        return (self.const, tuple(sorted(self.terms.items())))

    def __eq__(self, other):
        if not isinstance(other, AffineExpr):
            return NotImplemented
        return self.const == other.const and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.terms:
            return f"<{format_rational(self.const)}>"
        parts = []
        if self.const != 0:
            parts.append(format_rational(self.const))
        for v, c in sorted(self.terms.items()):
            parts.append(f"{format_rational(c)}*x{v}")
        return "<" + " + ".join(parts) + ">"


def affine_eval(e: AffineExpr, assignment: Mapping[int, Rational]) -> Rational:
    """Exact value of an affine expression under a variable assignment."""
    return e.evaluate(assignment)


def decimal_str(x, digits: int = 12) -> str:
    """Advisory decimal rendering of a Rational or QuadExt."""
    if isinstance(x, QuadExt):
        return x.to_decimal(digits)
    x = mpq(x)
    getcontext().prec = digits + 15
    val = Decimal(int(x.numerator)) / Decimal(int(x.denominator))
    return f"{val:.{digits}g}"
