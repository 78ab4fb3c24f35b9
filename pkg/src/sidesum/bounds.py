"""Closed-form side-sum bounds and exact maximization of one-radical curves.

Two ingredients recur when bounding the total side length of n squares of
known total area A:

* the Cauchy-Schwarz bound  sum(s_i) <= sqrt(n * A), tight exactly when all
  n squares are equal, and
* one-variable curves  f(t) = alpha + beta*t + sqrt(gamma*t + delta*t^2)
  obtained by splitting off a few distinguished tiles of side t (or 1 - t)
  and applying the area bound to the rest.

Both are computed exactly: sqrt values live in a quadratic field, and the
curve maximizer solves the squared stationarity condition, discards the
spurious roots introduced by squaring via the original sign condition, and
compares the surviving candidates against both endpoints with exact
quadratic-field arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from gmpy2 import mpq

from .errors import DomainError
from .numerics import QuadExt, Rational, sqrt_rational

_ZERO = mpq(0)


@dataclass(frozen=True, slots=True)
class BoundCurve:
    """f(t) = alpha + beta*t + sqrt(gamma*t + delta*t^2) on [lo, hi].

    The radicand must be nonnegative on the whole domain; since it is a
    parabola through the origin this is checked exactly at the endpoints
    and, when it opens upward, at its vertex.
    """

    alpha: Rational
    beta: Rational
    gamma: Rational
    delta: Rational
    lo: Rational
    hi: Rational

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta", "lo", "hi"):
            object.__setattr__(self, name, mpq(getattr(self, name)))
        if self.lo > self.hi:
            raise DomainError("empty curve domain")
        if self.radicand(self.lo) < 0 or self.radicand(self.hi) < 0:
            raise DomainError("radicand negative at a domain endpoint")
        if self.delta > 0:
            vertex = -self.gamma / (2 * self.delta)
            if self.lo < vertex < self.hi and self.radicand(vertex) < 0:
                raise DomainError("radicand negative inside the domain")

    def radicand(self, t: Rational) -> Rational:
        t = mpq(t)
        return self.gamma * t + self.delta * t * t

    def value_at(self, t: Rational) -> QuadExt:
        """Exact f(t) for rational t; irrational only through the radical."""
        t = mpq(t)
        q = self.radicand(t)
        if q < 0:
            raise DomainError(f"radicand negative at t={t}")
        return QuadExt(self.alpha + self.beta * t) + sqrt_rational(q)


def cs_bound(n: int, area: Union[int, Rational]) -> QuadExt:
    """Exact Cauchy-Schwarz bound sqrt(n * area) on the side sum of n squares
    of total area ``area``; equality holds only for n equal squares."""
    if n <= 0:
        raise DomainError("need a positive number of squares")
    area = mpq(area)
    if area < 0:
        raise DomainError("negative area")
    return sqrt_rational(n * area)


def leftover_area(t: Union[int, Rational], copies: int) -> Rational:
    """Area of the unit square not covered by one corner tile of side 1 - t
    together with ``copies`` tiles of side t:  2t - (copies + 1) t^2."""
    t = mpq(t)
    if not (0 <= t <= 1):
        raise DomainError("side parameter must lie in [0, 1]")
    return 2 * t - (copies + 1) * t * t


def five_tile_residual(t: Union[int, Rational]) -> Rational:
    """Leftover area 2t - 3t^2 when a corner tile of side 1 - t and two tiles
    of side t are removed from the unit square (five tiles remain at n=8)."""
    t = mpq(t)
    if not (0 <= t <= mpq(1, 2)):
        raise DomainError("side parameter must lie in [0, 1/2]")
    return leftover_area(t, 2)


def four_tile_residual(t: Union[int, Rational]) -> Rational:
    """Leftover area 2t - 4t^2 with three side-t tiles split off instead."""
    t = mpq(t)
    if not (0 <= t <= mpq(1, 2)):
        raise DomainError("side parameter must lie in [0, 1/2]")
    return leftover_area(t, 3)


def _real_cmp(x: QuadExt, y: QuadExt) -> int:
    """Exact comparison that also tolerates two distinct radicands.

    Reduces  a + b*sqrt(d1)  vs  c*sqrt(d2)  by sign analysis and one more
    squaring; needed internally because curve candidates may involve the
    discriminant field while endpoint values involve the radicand field.
    """
    diff_a = x.a - y.a
    if x.b == 0 or y.b == 0 or x.d == y.d:
        return (x - y).sign()
    # sign of (diff_a + x.b*sqrt(x.d)) - y.b*sqrt(y.d)
    lhs = QuadExt(diff_a, x.b, x.d)
    sl = lhs.sign()
    sr = 1 if y.b > 0 else -1
    if sl == 0:
        return -sr
    if sl != sr:
        return sl
    # same sign: compare absolute values via squares, lhs^2 vs y.b^2 * y.d
    lhs_sq = lhs * lhs
    rhs_sq = QuadExt(y.b * y.b * y.d)
    return sl * (lhs_sq - rhs_sq).sign()


def maximize_curve(curve: BoundCurve) -> tuple[QuadExt, QuadExt]:
    """Exact global maximum of a BoundCurve on its domain.

    Stationary points satisfy 2*beta*sqrt(q(t)) = -(gamma + 2*delta*t); the
    squared form is the quadratic
        (gamma + 2*delta*t)^2 = 4*beta^2 * (gamma*t + delta*t^2),
    whose roots are rational or quadratic surds.  Each root is kept only if
    it lies in [lo, hi] and satisfies the unsquared sign condition, which
    also makes sqrt(q(t)) = -(gamma+2*delta*t)/(2*beta) exactly, so the
    stationary value is affine in t.  Both endpoints always enter the
    candidate set, so boundary maxima need no special-casing.

    Returns (t_star, value) as exact quadratic-field elements; ties prefer
    the smaller t_star.
    """
    a, b, g, d = curve.alpha, curve.beta, curve.gamma, curve.delta
    lo, hi = curve.lo, curve.hi

    candidates: list[tuple[QuadExt, QuadExt]] = []
    for endpoint in (lo, hi):
        candidates.append((QuadExt(endpoint), curve.value_at(endpoint)))

    def consider(t: QuadExt):
        if _real_cmp(t, QuadExt(lo)) < 0 or _real_cmp(t, QuadExt(hi)) > 0:
            return
        if b == 0:
            # f = alpha + sqrt(q); stationary where q'(t) = 0, t rational.
            q = curve.radicand(t.as_rational)
            if q >= 0:
                candidates.append((t, QuadExt(a) + sqrt_rational(q)))
            return
        # sqrt(q(t)) must equal w = -(g + 2 d t) / (2 b) and be >= 0.
        w = (QuadExt(g) + t * (2 * d)) * (mpq(-1, 2) / b)
        if w.sign() < 0:
            return
        q = QuadExt(g) * t + QuadExt(d) * t * t
        if (w * w - q).sign() != 0:
            return  # spurious root of the squared equation
        candidates.append((t, QuadExt(a) + t * b + w))

    if b == 0:
        if d != 0:
            consider(QuadExt(-g / (2 * d)))
    else:
        # (g + 2 d t)^2 - 4 b^2 (g t + d t^2) = 0, expanded:
        A = 4 * d * d - 4 * b * b * d
        B = 4 * g * d - 4 * b * b * g
        C = g * g
        if A == 0:
            if B != 0:
                consider(QuadExt(-C / B))
        else:
            disc = B * B - 4 * A * C
            if disc == 0:
                consider(QuadExt(-B / (2 * A)))
            elif disc > 0:
                root = sqrt_rational(disc)
                for sign in (1, -1):
                    t = (QuadExt(-B) + root * sign) * (1 / (2 * A))
                    consider(t)

    best_t, best_v = candidates[0]
    for t, v in candidates[1:]:
        c = _real_cmp(v, best_v)
        if c > 0 or (c == 0 and _real_cmp(t, best_t) < 0):
            best_t, best_v = t, v
    return best_t, best_v
