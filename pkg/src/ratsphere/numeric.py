"""Exact arithmetic substrate: reduced rationals, quadratic surds, and
certified interval reals with adaptive refinement.

Rationals are plain ``fractions.Fraction`` (always reduced, arbitrary
precision).  Irrational values are either a :class:`QuadSurd`
``(p + q*sqrt(d))/r`` or a :class:`RealInterval` that can re-evaluate
itself at higher precision through its refiner.  Everything is immutable;
refinement returns new values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Callable, Optional, Sequence, Tuple, Union


class PreconditionError(ValueError):
    """An operation was called outside its stated preconditions."""


class Unresolved(ArithmeticError):
    """A certified comparison could not be decided within the precision cap.

    Callers should raise precision (or treat as a distinct failure); this is
    never silently converted into a guess.
    """


class InvariantViolation(RuntimeError):
    """An identity the construction guarantees failed a certified check."""


#: starting precision for interval refinement loops
START_BITS = 64
#: default refinement cap; doubling from START_BITS, exceeding it yields Unresolved
DEFAULT_MAX_BITS = 4096


def _squarefree_split(n: int) -> Tuple[int, int]:
    """Write n = s**2 * f with f squarefree; returns (s, f).  Trial division."""
    if n <= 0:
        raise PreconditionError("squarefree split needs a positive integer")
    s, f = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e & 1:
                f *= p
            s *= p ** (e // 2)
        p += 1 if p == 2 else 2
    return s, f * n


def sqrt_bounds(x: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    """Certified enclosure of sqrt(x) for x >= 0 with width <= 2**(1-bits)."""
    if x < 0:
        raise PreconditionError("sqrt of a negative rational")
    if x == 0:
        return Fraction(0), Fraction(0)
    shift = 1 << bits
    n = (x.numerator * shift * shift) // x.denominator
    lo = isqrt(n)              # lo <= sqrt(x)*shift < hi
    hi = isqrt(n + 1) + 1
    return Fraction(lo, shift), Fraction(hi, shift)


def surd_sign_parts(p: int, q: int, d: int) -> int:
    """Exact sign of p + q*sqrt(d) for squarefree d >= 2 (so q != 0 is irrational)."""
    if q == 0:
        return (p > 0) - (p < 0)
    if q > 0:
        if p >= 0:
            return 1
        return 1 if p * p < q * q * d else -1
    if p <= 0:
        return -1
    return -1 if p * p < q * q * d else 1


class QuadSurd:
    """Exact quadratic surd (p + q*sqrt(d))/r in canonical form.

    Canonical means: d squarefree and >= 2, q != 0 (rational values belong in
    Fraction), r > 0, gcd(p, q, r) = 1.  Arithmetic stays inside the field
    Q(sqrt(d)); mixing two different d raises TypeError, callers fall back to
    certified intervals.
    """

    __slots__ = ("p", "q", "d", "r")

    def __init__(self, p: int, q: int, d: int, r: int = 1):
        if r == 0:
            raise PreconditionError("zero denominator in surd")
        if d <= 0:
            raise PreconditionError("surd discriminant must be positive")
        s, f = _squarefree_split(d)
        q, d = q * s, f
        if q == 0 or d == 1:
            raise PreconditionError(
                "value is rational; use Fraction (or QuadSurd.create)")
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(abs(p), abs(q)), r)
        self.p = p // g
        self.q = q // g
        self.d = d
        self.r = r // g

    @staticmethod
    def create(p: int, q: int, d: int, r: int = 1) -> "Real":
        """Build (p + q*sqrt(d))/r, demoting to Fraction when it is rational."""
        if r == 0:
            raise PreconditionError("zero denominator in surd")
        if q == 0:
            return Fraction(p, r)
        if d == 0:
            return Fraction(p, r)
        s, f = _squarefree_split(d)
        if f == 1:
            return Fraction(p + q * s, r)
        return QuadSurd(p, q, d, r)

    # -- field arithmetic (within one d) -----------------------------------

    def _parts_of(self, other) -> Optional[Tuple[int, int, int]]:
        """other as (p, q, r) over sqrt(self.d), or None if incompatible."""
        if isinstance(other, int):
            return other, 0, 1
        if isinstance(other, Fraction):
            return other.numerator, 0, other.denominator
        if isinstance(other, QuadSurd):
            if other.d != self.d:
                return None
            return other.p, other.q, other.r
        return None

    def _add(self, other, sub: bool = False) -> Optional["Real"]:
        parts = self._parts_of(other)
        if parts is None:
            return None
        p2, q2, r2 = parts
        if sub:
            p2, q2 = -p2, -q2
        return QuadSurd.create(self.p * r2 + p2 * self.r,
                               self.q * r2 + q2 * self.r,
                               self.d, self.r * r2)

    def _mul(self, other) -> Optional["Real"]:
        parts = self._parts_of(other)
        if parts is None:
            return None
        p2, q2, r2 = parts
        return QuadSurd.create(self.p * p2 + self.q * q2 * self.d,
                               self.p * q2 + self.q * p2,
                               self.d, self.r * r2)

    def inverse(self) -> "Real":
        # 1/((p+q sqrt d)/r) = r(p - q sqrt d)/(p^2 - q^2 d); norm != 0
        norm = self.p * self.p - self.q * self.q * self.d
        return QuadSurd.create(self.r * self.p, -self.r * self.q, self.d, norm)

    def __add__(self, other):
        out = self._add(other)
        return NotImplemented if out is None else out

    __radd__ = __add__

    def __sub__(self, other):
        out = self._add(other, sub=True)
        return NotImplemented if out is None else out

    def __rsub__(self, other):
        out = self._add(other, sub=True)
        return NotImplemented if out is None else -out

    def __mul__(self, other):
        out = self._mul(other)
        return NotImplemented if out is None else out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            return QuadSurd.create(self.p * other.denominator,
                                   self.q * other.denominator,
                                   self.d, self.r * other.numerator)
        if isinstance(other, QuadSurd) and other.d == self.d:
            return self._mul(other.inverse())
        return NotImplemented

    def __rtruediv__(self, other):
        inv = self.inverse()
        if isinstance(inv, Fraction):
            return other * inv
        return inv._mul(other)

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.p, -self.q, self.d, self.r)

    def __abs__(self) -> "QuadSurd":
        return self if self.sign() >= 0 else -self

    def sign(self) -> int:
        return surd_sign_parts(self.p, self.q, self.d)

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.p, -self.q, self.d, self.r)

    # -- ordering (exact; cross-field comparisons via module helpers) ------

    def _cmp(self, other) -> Optional[int]:
        diff = self._add(other, sub=True)
        if diff is None:
            return None
        if isinstance(diff, Fraction):
            return (diff > 0) - (diff < 0)
        return diff.sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadSurd):
            return (self.p, self.q, self.d, self.r) == (other.p, other.q, other.d, other.r)
        if isinstance(other, (int, Fraction)):
            return False   # canonical surds are irrational
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.q, self.d, self.r))

    def __lt__(self, other):
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c < 0

    def __le__(self, other):
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c >= 0

    # -- certified enclosure ------------------------------------------------

    def bounds(self, bits: int) -> Tuple[Fraction, Fraction]:
        """Enclosure of the value with width <= 2**(-bits)."""
        shift = 1 << (bits + 1)
        k = self.q * self.q * self.d
        root = isqrt(k * shift * shift)
        if self.q > 0:
            lo_num, hi_num = root, root + 1
        else:
            lo_num, hi_num = -(root + 1), -root
        lo = Fraction(self.p * shift + lo_num, self.r * shift)
        hi = Fraction(self.p * shift + hi_num, self.r * shift)
        return lo, hi

    def __floor__(self) -> int:
        bits = START_BITS
        while True:
            lo, hi = self.bounds(bits)
            fl, fh = lo.numerator // lo.denominator, hi.numerator // hi.denominator
            if fl == fh:
                return fl
            bits *= 2     # irrational value, so this terminates

    def __float__(self) -> float:
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        return f"QuadSurd(({self.p}{self.q:+}*sqrt({self.d}))/{self.r})"

    def __str__(self) -> str:
        if self.q == 1:
            core = f"{self.p}+sqrt({self.d})" if self.p else f"sqrt({self.d})"
        elif self.q == -1:
            core = f"{self.p}-sqrt({self.d})" if self.p else f"-sqrt({self.d})"
        else:
            core = f"{self.p}{self.q:+}*sqrt({self.d})" if self.p else f"{self.q}*sqrt({self.d})"
        if self.r == 1:
            return core
        return f"({core})/{self.r}"


class RealInterval:
    """A certified enclosure [lo, hi] of a real number.

    ``refiner(bits)`` recomputes the enclosure at higher precision; intervals
    without a refiner (raw measured data) cannot shrink.  Refinement returns a
    new interval, intersected with the current one.
    """

    __slots__ = ("lo", "hi", "refiner", "bits")

    def __init__(self, lo: Fraction, hi: Fraction,
                 refiner: Optional[Callable[[int], Tuple[Fraction, Fraction]]] = None,
                 bits: int = 0):
        if lo > hi:
            raise PreconditionError("interval endpoints out of order")
        self.lo = lo
        self.hi = hi
        self.refiner = refiner
        self.bits = bits

    def refine(self, bits: int) -> "RealInterval":
        if self.refiner is None or bits <= self.bits:
            return self
        lo, hi = self.refiner(bits)
        lo, hi = max(lo, self.lo), min(hi, self.hi)
        if lo > hi:
            raise InvariantViolation("refinement produced a disjoint interval")
        return RealInterval(lo, hi, self.refiner, bits)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self) -> float:
        return float(self.midpoint())

    def __repr__(self) -> str:
        return f"RealInterval[{float(self.lo):.6g}, {float(self.hi):.6g}]"


Real = Union[Fraction, QuadSurd, RealInterval]


def as_real(x) -> Real:
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, QuadSurd, RealInterval)):
        return x
    if isinstance(x, str):
        return parse_real(x)
    raise PreconditionError(f"not a real scalar: {x!r}")


def is_exact(x: Real) -> bool:
    return isinstance(x, (Fraction, QuadSurd))


def bounds_at(x: Real, bits: int) -> Tuple[Fraction, Fraction]:
    """Certified enclosure of x at roughly 2**(-bits) width (when refinable)."""
    x = as_real(x)
    if isinstance(x, Fraction):
        return x, x
    if isinstance(x, QuadSurd):
        return x.bounds(bits)
    r = x.refine(bits)
    return r.lo, r.hi


def _refinable(x: Real) -> bool:
    return not isinstance(x, RealInterval) or x.refiner is not None


# -- interval combinators ----------------------------------------------------
# ops receive the working precision plus one bounds pair per operand

def _iv(op: Callable[..., Tuple[Fraction, Fraction]], *xs: Real) -> RealInterval:
    def refiner(bits: int) -> Tuple[Fraction, Fraction]:
        return op(bits, *(bounds_at(x, bits + 2) for x in xs))
    lo, hi = refiner(START_BITS)
    return RealInterval(lo, hi, refiner, START_BITS)


def _add_b(bits, a, b):
    return a[0] + b[0], a[1] + b[1]


def _sub_b(bits, a, b):
    return a[0] - b[1], a[1] - b[0]


def _mul_b(bits, a, b):
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(c), max(c)


def _square_b(bits, a):
    lo, hi = a
    if lo >= 0:
        return lo * lo, hi * hi
    if hi <= 0:
        return hi * hi, lo * lo
    return Fraction(0), max(lo * lo, hi * hi)


def real_add(x, y) -> Real:
    x, y = as_real(x), as_real(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + y
    if isinstance(x, QuadSurd):
        out = x._add(y)
        if out is not None:
            return out
    if isinstance(y, QuadSurd):
        out = y._add(x)
        if out is not None:
            return out
    return _iv(_add_b, x, y)


def real_sub(x, y) -> Real:
    x, y = as_real(x), as_real(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x - y
    if isinstance(x, QuadSurd):
        out = x._add(y, sub=True)
        if out is not None:
            return out
    if isinstance(y, QuadSurd):
        out = y._add(x, sub=True)   # y - x
        if out is not None:
            return -out
    return _iv(_sub_b, x, y)


def real_neg(x) -> Real:
    x = as_real(x)
    if isinstance(x, (Fraction, QuadSurd)):
        return -x
    return _iv(lambda bits, a: (-a[1], -a[0]), x)


def real_abs(x) -> Real:
    x = as_real(x)
    if isinstance(x, Fraction):
        return abs(x)
    if isinstance(x, QuadSurd):
        return abs(x)
    def op(bits, a):
        lo, hi = a
        if lo >= 0:
            return lo, hi
        if hi <= 0:
            return -hi, -lo
        return Fraction(0), max(-lo, hi)
    return _iv(op, x)


def real_mul(x, y) -> Real:
    x, y = as_real(x), as_real(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x * y
    if isinstance(x, QuadSurd):
        out = x._mul(y)
        if out is not None:
            return out
    if isinstance(y, QuadSurd):
        out = y._mul(x)
        if out is not None:
            return out
    return _iv(_mul_b, x, y)


def real_square(x) -> Real:
    x = as_real(x)
    if isinstance(x, Fraction):
        return x * x
    if isinstance(x, QuadSurd):
        return x._mul(x)
    return _iv(_square_b, x)


def real_div(x, y, max_bits: int = DEFAULT_MAX_BITS) -> Real:
    x, y = as_real(x), as_real(y)
    if isinstance(y, Fraction):
        if y == 0:
            raise ZeroDivisionError("division by exact zero")
        if isinstance(x, Fraction):
            return x / y
        if isinstance(x, QuadSurd):
            return x / y
    if isinstance(y, QuadSurd):
        if isinstance(x, (int, Fraction)):
            return y.__rtruediv__(x)
        if isinstance(x, QuadSurd) and x.d == y.d:
            return x / y
    # interval division; the denominator must be refined away from zero first
    bits = START_BITS
    while True:
        ylo, yhi = bounds_at(y, bits)
        if ylo > 0 or yhi < 0:
            break
        if bits >= max_bits or not _refinable(y):
            raise Unresolved("denominator interval straddles zero")
        bits *= 2

    def refiner(b: int) -> Tuple[Fraction, Fraction]:
        num = bounds_at(x, b + 2)
        den = bounds_at(y, max(b + 2, bits))
        if den[0] <= 0 <= den[1]:
            raise Unresolved("denominator interval straddles zero")
        c = (num[0] / den[0], num[0] / den[1], num[1] / den[0], num[1] / den[1])
        return min(c), max(c)

    lo, hi = refiner(bits)
    return RealInterval(lo, hi, refiner, bits)


def real_sqrt(x, *, clamp: bool = True) -> Real:
    """Square root as a Real; exact for perfect-square rationals.

    With clamp=True (the default) an interval whose lower endpoint dips below
    zero is truncated at zero, for quantities known to be nonnegative.
    """
    x = as_real(x)
    if isinstance(x, Fraction):
        if x < 0:
            raise PreconditionError("sqrt of a negative rational")
        rn, rd = isqrt(x.numerator), isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return Fraction(rn, rd)

    def op(bits, a):
        lo, hi = a
        if hi < 0:
            raise PreconditionError("sqrt of a certified-negative value")
        if lo < 0:
            if not clamp:
                raise PreconditionError("sqrt of a possibly negative value")
            lo = Fraction(0)
        return sqrt_bounds(lo, bits)[0], sqrt_bounds(hi, bits)[1]
    return _iv(op, x)


def real_sum(xs: Sequence) -> Real:
    total: Real = Fraction(0)
    for x in xs:
        total = real_add(total, x)
    return total


# -- certified comparison ----------------------------------------------------

def _exact_sign(x: Real) -> Optional[int]:
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    if isinstance(x, QuadSurd):
        return x.sign()
    return None


def compare_certified(x, y, budget: int = 8, *,
                      start_bits: int = START_BITS,
                      max_bits: int = DEFAULT_MAX_BITS) -> int:
    """Certified three-way comparison: -1, 0, or +1.

    Returns an ordering only when provable; equality only between exact
    representations.  ``budget`` counts refinement rounds (each doubling the
    working precision, capped at max_bits); when exhausted with the intervals
    still overlapping, raises :class:`Unresolved`.
    """
    x, y = as_real(x), as_real(y)
    if is_exact(x) and is_exact(y):
        if isinstance(x, QuadSurd) and isinstance(y, QuadSurd) and x.d != y.d:
            pass        # distinct fields: never equal, fall through to intervals
        else:
            d = real_sub(x, y)
            s = _exact_sign(d)
            if s is not None:
                return s
    bits = start_bits
    for step in range(budget + 1):
        xlo, xhi = bounds_at(x, bits)
        ylo, yhi = bounds_at(y, bits)
        if xhi < ylo:
            return -1
        if xlo > yhi:
            return 1
        if not (_refinable(x) or _refinable(y)):
            break
        if bits >= max_bits:
            break
        bits = min(bits * 2, max_bits)
    raise Unresolved(f"comparison undecided at {bits} bits")


def certify_less(x, y, **kw) -> bool:
    """True iff x < y is certified, False iff x >= y is certified."""
    return compare_certified(x, y, **kw) < 0


# -- pi and arctan enclosures ------------------------------------------------

def _arctan_inv_int_bounds(n: int, bits: int) -> Tuple[Fraction, Fraction]:
    """Alternating-series enclosure of arctan(1/n) for integer n >= 2."""
    eps = Fraction(1, 1 << (bits + 2))
    total = Fraction(0)
    k = 0
    npow = n               # n^(2k+1)
    lo = hi = None
    while True:
        term = Fraction(1, (2 * k + 1) * npow)
        if k % 2 == 0:
            total += term
            hi = total
        else:
            total -= term
            lo = total
        if term < eps and lo is not None and hi is not None:
            return lo, hi
        k += 1
        npow *= n * n


@lru_cache(maxsize=None)
def pi_bounds(bits: int) -> Tuple[Fraction, Fraction]:
    """Certified enclosure of pi (Machin: pi = 16 atan(1/5) - 4 atan(1/239))."""
    a5 = _arctan_inv_int_bounds(5, bits + 6)
    a239 = _arctan_inv_int_bounds(239, bits + 6)
    return 16 * a5[0] - 4 * a239[1], 16 * a5[1] - 4 * a239[0]


def pi_real() -> RealInterval:
    """pi as a refinable certified real."""
    lo, hi = pi_bounds(START_BITS)
    return RealInterval(lo, hi, pi_bounds, START_BITS)


def _dyadic_out(lo: Fraction, hi: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    """Round an interval outward onto the 2**-bits grid (keeps sizes bounded)."""
    shift = 1 << bits
    lo2 = Fraction((lo.numerator * shift) // lo.denominator, shift)
    hi2 = Fraction(-((-hi.numerator * shift) // hi.denominator), shift)
    return lo2, hi2


def _arctan_series(x: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    """Alternating-series enclosure of arctan(x) for |x| <= 0.6.

    Powers are rounded onto a dyadic grid to keep operand sizes bounded;
    the cumulative rounding loss is padded back into the enclosure.
    """
    if x == 0:
        return Fraction(0), Fraction(0)
    if x < 0:
        lo, hi = _arctan_series(-x, bits)
        return -hi, -lo
    eps = Fraction(1, 1 << (bits + 2))
    grid = bits + 16
    total = Fraction(0)
    k = 0
    xpow = x
    x2 = x * x
    lo = hi = None
    while True:
        term = xpow / (2 * k + 1)
        if k % 2 == 0:
            total += term
            hi = total
        else:
            total -= term
            lo = total
        if term < eps and lo is not None:
            if hi is None:
                hi = total + term
            pad = Fraction(k + 1, 1 << grid)
            return lo - pad, hi + pad
        k += 1
        xpow = _round_frac(xpow * x2, grid)


def _round_frac(x: Fraction, bits: int) -> Fraction:
    # round toward zero on the dyadic grid; only used where outward safety
    # is restored by the alternating-series remainder term
    shift = 1 << bits
    return Fraction((x.numerator * shift) // x.denominator if x >= 0
                    else -((-x.numerator * shift) // x.denominator), shift)


def arctan_bounds(x: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    """Certified enclosure of arctan(x) for rational x.

    Argument reduction arctan(x) = 2*arctan(x / (1 + sqrt(1 + x^2))) until the
    series domain is reached, then the alternating series on both endpoints.
    """
    work = bits + 8
    lo = hi = x
    doublings = 0
    while max(abs(lo), abs(hi)) > Fraction(3, 5):
        slo_l, shi_l = sqrt_bounds(1 + lo * lo, work)
        slo_h, shi_h = sqrt_bounds(1 + hi * hi, work)
        # x/(1+sqrt(1+x^2)) is increasing in x; bound each endpoint outward
        lo = lo / (1 + (shi_l if lo >= 0 else slo_l))
        hi = hi / (1 + (slo_h if hi >= 0 else shi_h))
        lo, hi = _dyadic_out(lo, hi, work)
        doublings += 1
        if doublings > 80:
            raise Unresolved("arctan argument reduction failed to converge")
    # endpoints were processed outward at every reduction step, so scaling
    # the series enclosure back up needs no extra padding
    slo = _arctan_series(lo, work + doublings)[0]
    shi = _arctan_series(hi, work + doublings)[1]
    scale = 1 << doublings
    return scale * slo, scale * shi


def arctan_real_bounds(x: Real, bits: int) -> Tuple[Fraction, Fraction]:
    """Enclosure of arctan(x) for a Real (arctan is monotone increasing)."""
    lo, hi = bounds_at(x, bits)
    return arctan_bounds(lo, bits)[0], arctan_bounds(hi, bits)[1]


# -- parsing and rendering ---------------------------------------------------

_FRAC_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_DEC_RE = re.compile(r"^(?P<sign>[+-]?)(?P<int>\d+)\.(?P<frac>\d+)(?P<ell>(\.\.\.|…)?)$")
_SURD_RE = re.compile(
    r"""^\(?\s*
        (?:(?P<p>[+-]?\d+)\s*)?                      # rational part
        (?P<sgn>[+-])?\s*
        (?:(?P<q>\d+)\s*\*\s*)?                      # surd coefficient
        sqrt\(\s*(?P<d>\d+)\s*\)
        \s*\)?\s*
        (?:/\s*(?P<r>\d+))?$""",
    re.VERBOSE,
)


def parse_real(s: str) -> Real:
    """Parse "p/q", a decimal (one-ulp interval), or "(p+q*sqrt(d))/r".

    A plain decimal is read as the centered one-ulp interval around its value
    (rounded-rendering convention); a trailing "..." or "…" reads as the
    truncated interval [v, v + ulp].
    """
    s = s.strip()
    if _FRAC_RE.match(s):
        return Fraction(s)
    m = _DEC_RE.match(s)
    if m:
        digits = len(m.group("frac"))
        v = Fraction(int(m.group("int") + m.group("frac")), 10 ** digits)
        if m.group("sign") == "-":
            v = -v
        ulp = Fraction(1, 10 ** digits)
        if m.group("ell"):
            lo, hi = (v, v + ulp) if v >= 0 else (v - ulp, v)
        else:
            lo, hi = v - ulp / 2, v + ulp / 2
        return RealInterval(lo, hi)
    m = _SURD_RE.match(s)
    if m:
        if s.count("(") != s.count(")"):
            raise PreconditionError(f"unbalanced parentheses in surd: {s!r}")
        p = int(m.group("p")) if m.group("p") else 0
        q = int(m.group("q")) if m.group("q") else 1
        if m.group("sgn") == "-":
            q = -q
        elif m.group("sgn") is None and m.group("p") is not None:
            raise PreconditionError(f"missing sign between terms in surd: {s!r}")
        d = int(m.group("d"))
        r = int(m.group("r")) if m.group("r") else 1
        return QuadSurd.create(p, q, d, r)
    raise PreconditionError(f"cannot parse real: {s!r}")


def _round_decimal(x: Fraction, digits: int) -> str:
    """Exact half-up decimal rounding of a rational."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x * 10 ** digits
    n = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    whole, frac = divmod(n, 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def decimal_str(x: Real, digits: int = 12, *, max_bits: int = DEFAULT_MAX_BITS) -> str:
    """Deterministic decimal rendering of a Real at the given digit count."""
    x = as_real(x)
    if isinstance(x, Fraction):
        return _round_decimal(x, digits)
    bits = max(START_BITS, int(digits * 3.33) + 8)
    while True:
        lo, hi = bounds_at(x, bits)
        slo, shi = _round_decimal(lo, digits), _round_decimal(hi, digits)
        if slo == shi:
            return slo
        if bits >= max_bits or not _refinable(x):
            return slo      # best effort on unrefinable data
        bits *= 2


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
