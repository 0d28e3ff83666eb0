"""Rational parametrization of the circle and the 2-sphere.

A parameter vector t = (b_1/q, ..., b_n/q) maps to the rational sphere point

    A_j/Q = 2 b_j q / (q^2 + |b|^2),   A_{n+1}/Q = (q^2 - |b|^2) / (q^2 + |b|^2)

after reduction to lowest terms.  The antipode (0, ..., 0, -1) is unreachable
with q >= 1 and is represented by the one extra parameter at infinity (q = 0),
so the parametrization covers every rational point of the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple, Union

from .numeric import (
    DEFAULT_MAX_BITS,
    PreconditionError,
    Real,
    Unresolved,
    arctan_real_bounds,
    as_real,
    bounds_at,
    compare_certified,
    is_exact,
    real_abs,
    real_add,
    real_div,
    real_square,
    real_sub,
    real_sum,
)


class AtInfinity(PreconditionError):
    """The antipode has no finite parameter; use the at-infinity parameter."""


@dataclass(frozen=True)
class StereoParam:
    """Parameter vector (b_1/q, ..., b_n/q), or the point at infinity (q = 0)."""

    n: int
    b: Tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise PreconditionError("only n = 1 and n = 2 are supported")
        if len(self.b) != self.n:
            raise PreconditionError("parameter length does not match dimension")
        if self.q < 0:
            raise PreconditionError("q must be nonnegative (normalize first)")
        g = 0
        for bi in self.b:
            g = gcd(g, abs(bi))
        if self.q == 0:
            if g != 1:
                raise PreconditionError("at-infinity parameter needs gcd(b) = 1")
        elif gcd(g, self.q) != 1:
            raise PreconditionError("parameter (q, b) must be coprime")

    @property
    def at_infinity(self) -> bool:
        return self.q == 0

    @staticmethod
    def of(b: Sequence[int], q: int) -> "StereoParam":
        """Canonical parameter from any integer data: reduces the gcd and
        flips signs so that q >= 0 (flipping b fixes the image)."""
        b = tuple(int(x) for x in b)
        q = int(q)
        if q < 0:
            q, b = -q, tuple(-x for x in b)
        g = abs(q)
        for bi in b:
            g = gcd(g, abs(bi))
        if g == 0:
            raise PreconditionError("parameter must be nonzero")
        return StereoParam(len(b), tuple(x // g for x in b), q // g)

    @staticmethod
    def infinity(n: int) -> "StereoParam":
        return StereoParam(n, (1,) + (0,) * (n - 1), 0)

    def fractions(self) -> Tuple[Fraction, ...]:
        if self.at_infinity:
            raise AtInfinity("no finite fraction vector at infinity")
        return tuple(Fraction(bi, self.q) for bi in self.b)


@dataclass(frozen=True)
class SpherePoint:
    """A rational point (A_1/Q, ..., A_{n+1}/Q) on S^n in lowest terms."""

    n: int
    A: Tuple[int, ...]
    Q: int

    def __post_init__(self):
        if len(self.A) != self.n + 1:
            raise PreconditionError("coordinate count does not match dimension")
        if self.Q < 1:
            raise PreconditionError("Q must be positive")
        g = self.Q
        for a in self.A:
            g = gcd(g, abs(a))
        if g != 1:
            raise PreconditionError("point not in lowest terms")
        if sum(a * a for a in self.A) != self.Q * self.Q:
            raise PreconditionError("point is not on the unit sphere")

    def fractions(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(a, self.Q) for a in self.A)

    @staticmethod
    def from_fractions(coords: Sequence[Fraction]) -> "SpherePoint":
        den = 1
        for c in coords:
            den = den * c.denominator // gcd(den, c.denominator)
        A = tuple(int(c * den) for c in coords)
        return SpherePoint(len(coords) - 1, A, den)

    def sort_key(self):
        return (self.Q,) + self.A

    def __str__(self) -> str:
        return " ".join(str(a) for a in self.A) + f" {self.Q}"


def forward(p: StereoParam) -> SpherePoint:
    """Image of a parameter under the rational parametrization, reduced."""
    if p.at_infinity:
        return SpherePoint(p.n, (0,) * p.n + (-1,), 1)
    q = p.q
    nb = sum(bi * bi for bi in p.b)
    N = q * q + nb
    raw = tuple(2 * bi * q for bi in p.b) + (q * q - nb,)
    g = N
    for a in raw:
        g = gcd(g, abs(a))
    return SpherePoint(p.n, tuple(a // g for a in raw), N // g)


def reduced_denominator_n1(b: int, q: int) -> int:
    """Reduced denominator of the circle image of b/q by the parity law:
    q^2 + b^2 when b and q have opposite parity, (q^2 + b^2)/2 otherwise."""
    if q < 1:
        raise PreconditionError("q must be >= 1")
    if gcd(abs(b), q) != 1:
        raise PreconditionError("b and q must be coprime")
    s = q * q + b * b
    return s if (b - q) % 2 else s // 2


def denominator_bound_n2(b1: int, b2: int, q: int) -> Fraction:
    """The bound Q <= q + (b1^2 + b2^2)/q for congruent sphere parameters;
    also checks the actual reduced denominator against it."""
    if q < 1:
        raise PreconditionError("q must be >= 1")
    if (b1 * b1 + b2 * b2) % q != 0:
        raise PreconditionError("b1^2 + b2^2 must be divisible by q")
    g = gcd(gcd(abs(b1), abs(b2)), q)
    if g != 1:
        raise PreconditionError("(q, b1, b2) must be coprime")
    bound = Fraction(q) + Fraction(b1 * b1 + b2 * b2, q)
    actual = forward(StereoParam(2, (b1, b2), q)).Q
    if actual > bound:
        raise PreconditionError("denominator bound violated (impossible)")
    return bound


def inverse(x: Union[SpherePoint, Sequence[Real]],
            *, max_bits: int = DEFAULT_MAX_BITS):
    """Inverse stereographic map beta_j = x_j / (1 + x_{n+1}).

    A SpherePoint maps to its exact StereoParam; a vector of reals maps to the
    real parameter vector.  The antipode raises AtInfinity (the caller maps it
    to the at-infinity parameter).
    """
    if isinstance(x, SpherePoint):
        den = x.Q + x.A[-1]
        if den == 0:
            raise AtInfinity("antipode reached; use StereoParam.infinity")
        return StereoParam.of(x.A[:-1], den)
    coords = [as_real(c) for c in x]
    last = coords[-1]
    if isinstance(last, Fraction) and last == -1:
        raise AtInfinity("antipode reached; use StereoParam.infinity")
    den = real_add(Fraction(1), last)
    return tuple(real_div(c, den, max_bits=max_bits) for c in coords[:-1])


def chord_distance_sq(x: SpherePoint, alpha: Sequence[Real]) -> Real:
    """Squared Euclidean (chordal) distance between a rational point and a
    real point given coordinatewise; exact whenever alpha is exact."""
    if len(alpha) != x.n + 1:
        raise PreconditionError("dimension mismatch")
    terms = [real_square(real_sub(as_real(a), Fraction(A, x.Q)))
             for a, A in zip(alpha, x.A)]
    return real_sum(terms)


def image_of_reals(beta: Sequence[Real], *, max_bits: int = DEFAULT_MAX_BITS) -> Tuple[Real, ...]:
    """Image of a real parameter vector: the same formula over certified reals.

    Exact (same quadratic field) inputs give exact sphere coordinates.
    """
    beta = [as_real(b) for b in beta]
    nb = real_sum([real_square(b) for b in beta])
    den = real_add(Fraction(1), nb)
    out = [real_div(real_add(b, b), den, max_bits=max_bits) for b in beta]
    out.append(real_div(real_sub(Fraction(1), nb), den, max_bits=max_bits))
    return tuple(out)


def angle_bound_check(beta: Real, t: Fraction, *,
                      start_bits: int = 64,
                      max_bits: int = DEFAULT_MAX_BITS) -> bool:
    """Certify the angle chain for n = 1:

        chord(image(beta), image(t)) <= 2|arctan(beta) - arctan(t)|
                                     <= 2|beta - t| / (1 + m^2)

    with m = min(|beta|, |t|) when both have one sign (m = 0 otherwise; a
    certified lower bound for m keeps the right side an upper bound).
    Property-check apparatus only; the construction path never calls this.
    """
    from .numeric import arctan_bounds

    beta = as_real(beta)
    t = Fraction(t)
    if isinstance(beta, Fraction) and beta == t:
        return True
    tp = StereoParam.of((t.numerator,), t.denominator)
    x_t = forward(tp)
    alpha = image_of_reals([beta], max_bits=max_bits)
    chord_sq = chord_distance_sq(x_t, alpha)
    diff = real_abs(real_sub(beta, t))

    bits = start_bits
    while True:
        alo, ahi = arctan_real_bounds(beta, bits)
        tlo, thi = arctan_bounds(t, bits)
        # 2|arctan beta - arctan t| as an interval
        dlo = max(Fraction(0), alo - thi, tlo - ahi)
        dhi = max(ahi - tlo, thi - alo)
        mid_lo, mid_hi = 2 * dlo, 2 * dhi

        clo, chi = bounds_at(chord_sq, bits)
        first_ok = chi <= mid_lo * mid_lo

        blo, bhi = bounds_at(beta, bits)
        if blo >= 0 and t >= 0:
            m = min(blo, t)
        elif bhi <= 0 and t <= 0:
            m = min(-bhi, -t)
        else:
            m = Fraction(0)
        flo = bounds_at(diff, bits)[0]
        rhs_lo = 2 * flo / (1 + m * m)
        second_ok = mid_hi <= rhs_lo

        if first_ok and second_ok:
            return True
        if bits >= max_bits:
            raise Unresolved("angle bound not certified at precision cap")
        bits *= 2
