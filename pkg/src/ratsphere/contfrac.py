"""Certified continued fractions: expansion, convergents, mediants, parity
selection, and classification of fractions against an expansion.

Quadratic surds expand with the exact integer (P + sqrt(D))/Q algorithm and
come back with their full eventually-periodic form.  Interval-backed reals are
expanded by running the algorithm on both endpoints and only accepting digits
both endpoints agree on, refining the enclosure on disagreement, so no digit
is ever misclassified.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from .numeric import (
    DEFAULT_MAX_BITS,
    START_BITS,
    InvariantViolation,
    PreconditionError,
    QuadSurd,
    Real,
    RealInterval,
    Unresolved,
    as_real,
    bounds_at,
    compare_certified,
    real_abs,
    real_add,
    real_div,
    real_sub,
)


class NotPeriodic(PreconditionError):
    """The expansion carries no explicit period (interval-backed or finite)."""


class Convergent(NamedTuple):
    nu: int
    p: int
    q: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


class ParityChoice(NamedTuple):
    kind: str        # "prev" | "cur" | "mediant"
    p: int
    q: int


@dataclass
class Classification:
    kind: str        # "convergent" | "mediant" | "other"
    nu: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == "convergent":
            return f"Convergent({self.nu})"
        if self.kind == "mediant":
            return f"Mediant({self.nu})"
        return "Other"


def _floor_pqa(P: int, Q: int, s: int) -> int:
    """floor((P + sqrt(D))/Q) given s = isqrt(D) with D non-square."""
    if Q > 0:
        return (P + s) // Q
    return (-P - s - 1) // (-Q)


class CFExpansion:
    """A continued fraction [a0; B1, B2, ...].

    ``period = (start, length)`` marks eventually periodic expansions (the
    quotients list holds the pre-period plus one full period, all indices in
    B-space, start >= 1).  ``terminated`` marks finite (rational) expansions.
    Interval-backed expansions certify digits lazily; the certified prefix
    only ever grows.
    """

    def __init__(self, a0: int, quotients: Sequence[int], *,
                 period: Optional[Tuple[int, int]] = None,
                 terminated: bool = False,
                 value: Optional[Real] = None,
                 max_bits: int = DEFAULT_MAX_BITS):
        self.a0 = int(a0)
        self._quots: List[int] = [int(b) for b in quotients]
        if any(b < 1 for b in self._quots):
            raise PreconditionError("partial quotients must be >= 1")
        if period is not None:
            start, length = period
            if start < 1 or length < 1 or start + length - 1 > len(self._quots):
                raise PreconditionError("period does not fit the quotient list")
            period = self._minimal_period(start, length)
        self.period = period
        self.terminated = terminated
        self._value = value
        self._max_bits = max_bits
        self._lock = threading.Lock()

    # -- construction helpers ------------------------------------------------

    def _minimal_period(self, start: int, length: int) -> Tuple[int, int]:
        quots = self._quots[:start - 1 + length]
        cycle = quots[start - 1:]
        for d in range(1, length + 1):
            if length % d == 0 and cycle == cycle[:d] * (length // d):
                length = d
                cycle = cycle[:d]
                break
        while start > 1 and quots[start - 2] == cycle[-1]:
            start -= 1
            cycle = [cycle[-1]] + cycle[:-1]
            quots = quots[:start - 1] + cycle
        self._quots = quots
        return start, length

    # -- digit access ----------------------------------------------------------

    def num_certified(self) -> int:
        return len(self._quots)

    def has_quotient(self, nu: int, *, extend: bool = True) -> bool:
        """Whether B_nu exists (extending certified interval digits on demand)."""
        if nu < 1:
            return False
        if self.period is not None:
            return True
        if nu <= len(self._quots):
            return True
        if self.terminated:
            return False
        if extend and self._value is not None:
            self._extend_to(nu)
            return nu <= len(self._quots)
        return False

    def quotient(self, nu: int) -> int:
        """The partial quotient B_nu (nu >= 1)."""
        if nu < 1:
            raise PreconditionError("quotients are indexed from 1")
        if self.period is not None:
            start, length = self.period
            if nu < start:
                return self._quots[nu - 1]
            return self._quots[start - 1 + (nu - start) % length]
        if not self.has_quotient(nu):
            raise PreconditionError(f"expansion has only {len(self._quots)} quotients")
        return self._quots[nu - 1]

    def _extend_to(self, nu: int) -> None:
        with self._lock:
            if nu <= len(self._quots) or self.terminated:
                return
            digits = _interval_digits(self._value, nu + 1, self._max_bits)
            if len(digits) - 1 > len(self._quots):
                if digits[0] != self.a0 or digits[1:len(self._quots) + 1] != self._quots:
                    raise InvariantViolation("certified CF prefix changed")
                self._quots = digits[1:]

    # -- values ---------------------------------------------------------------

    def value_real(self) -> Real:
        """The exact value when reconstructible (finite or periodic), else the
        source real the expansion was certified from."""
        if self._value is not None:
            return self._value
        if self.terminated:
            cs = convergents(self, len(self._quots))
            self._value = cs[-1].fraction
            return self._value
        if self.period is not None:
            self._value = self._periodic_value()
            return self._value
        raise PreconditionError("expansion has no reconstructible value")

    def _periodic_value(self) -> Real:
        start, length = self.period
        # tail y = [B_start; B_{start+1}, ..., B_{start+length-1}, y]
        p_prev, q_prev, p_cur, q_cur = 1, 0, self.quotient(start), 1
        for i in range(start + 1, start + length):
            b = self.quotient(i)
            p_prev, p_cur = p_cur, b * p_cur + p_prev
            q_prev, q_cur = q_cur, b * q_cur + q_prev
        # y = (p_cur*y + p_prev)/(q_cur*y + q_prev)
        a, b_, c = q_cur, q_prev - p_cur, -p_prev
        disc = b_ * b_ - 4 * a * c
        y = QuadSurd.create(-b_, 1, disc, 2 * a)
        # fold the pre-period [a0; B1..B_{start-1}] around the tail
        x: Real = y
        for i in range(start - 1, 0, -1):
            x = real_add(Fraction(self.quotient(i)), real_div(Fraction(1), x))
        return real_add(Fraction(self.a0), real_div(Fraction(1), x))

    # -- rendering --------------------------------------------------------------

    def __str__(self) -> str:
        if self.period is not None:
            start, length = self.period
            pre = ", ".join(str(b) for b in self._quots[:start - 1])
            cyc = ", ".join(str(b) for b in self._quots[start - 1:start - 1 + length])
            if pre:
                return f"[{self.a0}; {pre}, ({cyc})]"
            return f"[{self.a0}; ({cyc})]"
        body = ", ".join(str(b) for b in self._quots)
        if self.terminated:
            return f"[{self.a0}; {body}]" if body else f"[{self.a0}]"
        return f"[{self.a0}; {body}, ...]" if body else f"[{self.a0}; ...]"

    __repr__ = __str__

    @staticmethod
    def from_text(text: str) -> "CFExpansion":
        """Parse "[a0; a1, a2, (p1, p2)]" (parenthesized part is the period)."""
        m = re.match(r"^\[\s*(-?\d+)\s*(?:;(.*))?\]$", text.strip())
        if not m:
            raise PreconditionError(f"cannot parse continued fraction: {text!r}")
        a0 = int(m.group(1))
        rest = (m.group(2) or "").strip()
        if not rest:
            return CFExpansion(a0, [], terminated=True)
        pm = re.match(r"^(.*?)\(\s*([\d,\s]+)\s*\)\s*$", rest)
        if pm:
            pre = [int(t) for t in pm.group(1).replace(",", " ").split()]
            cyc = [int(t) for t in pm.group(2).replace(",", " ").split()]
            return CFExpansion(a0, pre + cyc, period=(len(pre) + 1, len(cyc)))
        quots = [int(t) for t in rest.replace(",", " ").split()]
        return CFExpansion(a0, quots, terminated=True)


# -- expansion algorithms ------------------------------------------------------

def _rational_digits(x: Fraction) -> List[int]:
    digits = []
    num, den = x.numerator, x.denominator
    while True:
        a, rem = divmod(num, den)
        digits.append(a)
        if rem == 0:
            return digits
        num, den = den, rem


def _surd_expansion(x: QuadSurd) -> Tuple[int, List[int], Tuple[int, int]]:
    """Exact periodic expansion of a quadratic surd via the (P + sqrt(D))/Q walk."""
    if x.q > 0:
        P, D, Q = x.p, x.q * x.q * x.d, x.r
    else:
        P, D, Q = -x.p, x.q * x.q * x.d, -x.r
    if (D - P * P) % Q != 0:
        s = abs(Q)
        P, D, Q = P * s, D * s * s, Q * s
    s = isqrt(D)
    digits: List[int] = []
    seen = {}
    i = 0
    while True:
        state = (P, Q)
        if state in seen:
            first = seen[state]
            start, length = max(first, 1), i - first
            quots = digits[1:]
            if first == 0:
                quots = quots + [digits[0]]   # a_i repeats a_0; list needs B_i
            return digits[0], quots, (start, length)
        seen[state] = i
        a = _floor_pqa(P, Q, s)
        digits.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
        i += 1


def _endpoint_digits(lo: Fraction, hi: Fraction, want: int) -> Optional[List[int]]:
    """Digits (a0 included) certified by agreement of both endpoints, or None."""
    digits: List[int] = []
    while True:
        alo = lo.numerator // lo.denominator
        ahi = hi.numerator // hi.denominator
        if alo != ahi:
            return None
        digits.append(alo)
        if len(digits) >= want:
            return digits
        flo, fhi = lo - alo, hi - alo
        if flo <= 0:
            return None   # the value may be exactly integral here; refine instead
        lo, hi = 1 / fhi, 1 / flo


def _interval_digits(x: Real, want: int, max_bits: int) -> List[int]:
    bits = START_BITS
    while True:
        lo, hi = bounds_at(x, bits)
        digits = _endpoint_digits(lo, hi, want)
        if digits is not None:
            return digits
        if bits >= max_bits:
            raise Unresolved(
                f"could not certify {want} continued-fraction digits at {bits} bits")
        bits *= 2


def expand(x: Real, count: int = 1, *, max_bits: int = DEFAULT_MAX_BITS) -> CFExpansion:
    """Expansion of x with at least ``count`` certified partial quotients.

    Rational input returns its complete finite expansion (``terminated``, which
    may hold fewer than count quotients); a QuadSurd returns the full periodic
    form; interval input certifies count digits or raises Unresolved.
    """
    if count < 1:
        raise PreconditionError("count must be >= 1")
    x = as_real(x)
    if isinstance(x, Fraction):
        digits = _rational_digits(x)
        return CFExpansion(digits[0], digits[1:], terminated=True, value=x)
    if isinstance(x, QuadSurd):
        a0, quots, period = _surd_expansion(x)
        return CFExpansion(a0, quots, period=period, value=x)
    digits = _interval_digits(x, count + 1, max_bits)
    return CFExpansion(digits[0], digits[1:], value=x, max_bits=max_bits)


def convergents(cf: CFExpansion, upto: int) -> List[Convergent]:
    """Convergents p_nu/q_nu for nu = 0..upto by the standard recurrence."""
    if upto < 0:
        raise PreconditionError("upto must be >= 0")
    if not all(cf.has_quotient(nu) for nu in range(1, upto + 1)):
        raise PreconditionError("expansion does not provide that many quotients")
    out = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = cf.a0, 1
    out.append(Convergent(0, p_cur, q_cur))
    for nu in range(1, upto + 1):
        b = cf.quotient(nu)
        p_prev, p_cur = p_cur, b * p_cur + p_prev
        q_prev, q_cur = q_cur, b * q_cur + q_prev
        out.append(Convergent(nu, p_cur, q_cur))
    return out


def iter_convergents(cf: CFExpansion):
    """Generate convergents while quotients remain available."""
    p_prev, q_prev = 1, 0
    p_cur, q_cur = cf.a0, 1
    yield Convergent(0, p_cur, q_cur)
    nu = 1
    while cf.has_quotient(nu):
        b = cf.quotient(nu)
        p_prev, p_cur = p_cur, b * p_cur + p_prev
        q_prev, q_cur = q_cur, b * q_cur + q_prev
        yield Convergent(nu, p_cur, q_cur)
        nu += 1


def _pq(f) -> Tuple[int, int]:
    if isinstance(f, Convergent):
        return f.p, f.q
    if isinstance(f, Fraction):
        return f.numerator, f.denominator
    p, q = f
    return int(p), int(q)


def mediant(c1, c2) -> Fraction:
    """Mediant (p1+p2)/(q1+q2) of a unimodular pair (already in lowest terms)."""
    p1, q1 = _pq(c1)
    p2, q2 = _pq(c2)
    if abs(p1 * q2 - p2 * q1) != 1:
        raise PreconditionError("mediant needs a unimodular pair")
    p, q = p1 + p2, q1 + q2
    if gcd(abs(p), abs(q)) != 1:
        raise InvariantViolation("mediant of a unimodular pair must be reduced")
    return Fraction(p, q)


def parity_select(c_prev, c_cur) -> ParityChoice:
    """Among a unimodular pair and its mediant, pick the fraction with both
    components odd (one always exists; both-even is barred by coprimality)."""
    p1, q1 = _pq(c_prev)
    p2, q2 = _pq(c_cur)
    if abs(p1 * q2 - p2 * q1) != 1:
        raise PreconditionError("parity selection needs a unimodular pair")
    if p1 & 1 and q1 & 1:
        return ParityChoice("prev", p1, q1)
    if p2 & 1 and q2 & 1:
        return ParityChoice("cur", p2, q2)
    p, q = p1 + p2, q1 + q2
    if p & 1 and q & 1:
        return ParityChoice("mediant", p, q)
    raise InvariantViolation("no odd/odd fraction among pair and mediant")


def classify_fraction(cf: CFExpansion, frac, *,
                      max_bits: int = DEFAULT_MAX_BITS) -> Classification:
    """Classify b/q as a convergent, a one-step mediant of consecutive
    convergents, or Other; in the Other case the Fatou inequality
    |beta - b/q| >= 1/q^2 is certified against the expansion's value."""
    if isinstance(frac, tuple):
        frac = Fraction(*frac)
    frac = Fraction(frac)
    q = frac.denominator
    prev: Optional[Convergent] = None
    for c in iter_convergents(cf):
        if c.fraction == frac:
            return Classification("convergent", c.nu)
        # the one-step mediant family starts between the first two genuine
        # convergents; (a0/1, conv1) pairs are not counted
        if prev is not None and prev.nu >= 1:
            med = Fraction(prev.p + c.p, prev.q + c.q)
            if med == frac:
                return Classification("mediant", c.nu)
        if c.q > q:
            break
        prev = c
    value = cf.value_real()
    diff = real_abs(real_sub(value, frac))
    bound = Fraction(1, q * q)
    if compare_certified(diff, bound, max_bits=max_bits) < 0:
        raise InvariantViolation(
            f"Fatou inequality failed for {frac} against {cf}")
    return Classification("other", None)


def is_golden_tail(cf: CFExpansion) -> bool:
    """Whether the periodic part is the single quotient 1 (the golden tail)."""
    if cf.period is None:
        raise NotPeriodic("expansion carries no explicit period")
    start, length = cf.period
    return length == 1 and cf.quotient(start) == 1
