"""Rational approximation on the circle: the certified construction from
continued-fraction candidates, and the sharpness experiment that pits it
against exhaustive enumeration.

Candidate parameters are the convergents of beta = inverse(alpha) and the
mediants of consecutive convergents; each image point is emitted only after
the strict inequality  Q * dist < (1 + eps)/sqrt(2)  is certified, so the
stream is sound regardless of which proof case the target falls into.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .contfrac import expand, iter_convergents
from .numeric import (
    DEFAULT_MAX_BITS,
    PreconditionError,
    QuadSurd,
    Real,
    Unresolved,
    as_real,
    compare_certified,
    real_add,
    real_square,
    real_sum,
)
from .records import ApproxRecord, make_record
from .stereographic import AtInfinity, SpherePoint, StereoParam, forward, inverse

_CANDIDATE_CAP = 20000


def _check_on_sphere(alpha: Sequence[Real]) -> Tuple[Real, ...]:
    alpha = tuple(as_real(a) for a in alpha)
    total = real_sum([real_square(a) for a in alpha])
    try:
        if compare_certified(total, Fraction(1), budget=2) != 0:
            raise PreconditionError("target point is not on the unit sphere")
    except Unresolved:
        pass     # interval data consistent with the sphere within certification
    return alpha


def _exact_point(alpha: Sequence[Real]) -> Optional[SpherePoint]:
    if all(isinstance(a, Fraction) for a in alpha):
        return SpherePoint.from_fractions(list(alpha))
    return None


def _candidate_params(beta: Real) -> Iterator[Tuple[int, int, int]]:
    """(nu, b, q) parameter candidates in nondecreasing parameter denominator:
    each convergent, then its mediant with the previous convergent."""
    cf = expand(beta, 2)
    prev = None
    for c in iter_convergents(cf):
        yield c.nu, c.p, c.q
        if prev is not None:
            yield c.nu, prev.p + c.p, prev.q + c.q
        prev = c


def iter_circle_records(alpha: Sequence[Real], eps: Fraction, *,
                        max_bits: int = DEFAULT_MAX_BITS) -> Iterator[ApproxRecord]:
    """Certified approximants of a circle point, in strictly increasing Q.

    Rational targets yield the single exact hit and stop; for irrational
    targets the stream is infinite (each emission individually certified).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive (the constant is sharp)")
    alpha = _check_on_sphere(alpha)
    if len(alpha) != 2:
        raise PreconditionError("a circle point needs exactly 2 coordinates")
    exact = _exact_point(alpha)
    if exact is not None:
        if exact.A == (0, -1):
            raise AtInfinity("target is the antipode; rotate the input")
        yield make_record(exact, alpha, Fraction(exact.Q) ** 2)
        return

    beta = inverse(alpha, max_bits=max_bits)[0]
    threshold = (1 + eps) ** 2 / 2
    last_q = 0
    tried = 0
    for nu, b, q in _candidate_params(beta):
        tried += 1
        if tried > _CANDIDATE_CAP:
            raise RuntimeError("candidate stream exhausted unexpectedly")
        param = StereoParam.of((b,), q)
        point = forward(param)
        if point.Q <= last_q:
            continue
        rec = make_record(point, alpha, Fraction(point.Q) ** 2,
                          nu=nu, param=param)
        if compare_certified(rec.normalized_sq, threshold, max_bits=max_bits) < 0:
            last_q = point.Q
            yield rec


def approx_circle(alpha: Sequence[Real], eps: Fraction, count: int, *,
                  max_bits: int = DEFAULT_MAX_BITS) -> List[ApproxRecord]:
    """The first ``count`` certified records (fewer only for a rational target,
    which terminates after its exact hit)."""
    if count < 1:
        raise PreconditionError("count must be >= 1")
    out: List[ApproxRecord] = []
    for rec in iter_circle_records(alpha, eps, max_bits=max_bits):
        out.append(rec)
        if len(out) >= count:
            break
    return out


def convergent_image_records(beta: Real, nu_max: int, *,
                             alpha: Optional[Sequence[Real]] = None) -> List[ApproxRecord]:
    """Images of the convergents of beta for nu = 0..nu_max, with Q*dist
    normalization; the per-index profile behind the limit experiments."""
    from .stereographic import image_of_reals

    beta = as_real(beta)
    if alpha is None:
        alpha = image_of_reals([beta])
    cf = expand(beta, 2)
    out = []
    for c in iter_convergents(cf):
        if c.nu > nu_max:
            break
        param = StereoParam.of((c.p,), c.q)
        point = forward(param)
        out.append(make_record(point, alpha, Fraction(point.Q) ** 2,
                               nu=c.nu, param=param))
    return out


@dataclass(frozen=True)
class SharpnessReport:
    """Outcome of the sharpness experiment on a denominator range."""

    q_min: int
    q_max: int
    global_min: ApproxRecord
    subsequence_min: Optional[ApproxRecord]

    @property
    def global_min_normalized(self) -> Real:
        return self.global_min.normalized

    @property
    def subsequence_min_normalized(self) -> Optional[Real]:
        return None if self.subsequence_min is None else self.subsequence_min.normalized


def default_sharpness_target() -> QuadSurd:
    """beta = [0; 2, 4, (2)] = (17 + sqrt(2))/41, the witness that the
    constant sqrt(2) cannot be improved."""
    return QuadSurd(17, 1, 2, 41)


def sharpness_experiment(q_min: int, q_max: int, *,
                         beta: Optional[Real] = None,
                         max_bits: int = DEFAULT_MAX_BITS) -> SharpnessReport:
    """Minimum of Q*dist over ALL rational circle points with
    q_min <= Q <= q_max (exhaustive oracle) and over the parametrization
    images of the convergent/mediant subsequence, against the image of beta."""
    from .oracle import best_approximation
    from .stereographic import image_of_reals

    if not (1 <= q_min <= q_max):
        raise PreconditionError("need 1 <= q_min <= q_max")
    if beta is None:
        beta = default_sharpness_target()
    alpha = image_of_reals([beta])

    global_min = best_approximation(alpha, q_max, mode="times_Q", q_min=q_min)

    sub_best: Optional[ApproxRecord] = None
    for nu, b, q in _candidate_params(beta):
        # a parameter with q^2 + b^2 > 2*q_max cannot land at Q <= q_max
        if q * q > 2 * q_max:
            break
        param = StereoParam.of((b,), q)
        point = forward(param)
        if not (q_min <= point.Q <= q_max):
            continue
        rec = make_record(point, alpha, Fraction(point.Q) ** 2, nu=nu, param=param)
        if sub_best is None or compare_certified(
                rec.normalized_sq, sub_best.normalized_sq, max_bits=max_bits) < 0:
            sub_best = rec
    return SharpnessReport(q_min=q_min, q_max=q_max,
                           global_min=global_min, subsequence_min=sub_best)
