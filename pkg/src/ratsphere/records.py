"""Result records shared by the circle and sphere approximation engines."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .numeric import Real, real_mul, real_sqrt
from .stereographic import SpherePoint, StereoParam, chord_distance_sq


@dataclass(frozen=True)
class ApproxRecord:
    """A rational approximant together with its certified quality.

    ``normalized`` is weight * distance (weight = Q, or sqrt(QT) in Dirichlet
    mode); ``normalized_sq`` is the exact/certified square, which is what all
    comparisons run on.  ``nu`` and ``param`` carry the provenance of points
    generated from a continued-fraction parameter; ``solution`` and ``t_used``
    carry the lattice data for points produced by the Dirichlet search.
    """

    point: SpherePoint
    dist_sq: Real
    normalized: Real
    normalized_sq: Real
    nu: Optional[int] = None
    param: Optional[StereoParam] = None
    solution: Optional[object] = None
    t_used: Optional[Fraction] = None


def make_record(point: SpherePoint, alpha: Sequence[Real], weight_sq: Fraction,
                *, nu: Optional[int] = None, param: Optional[StereoParam] = None,
                solution: Optional[object] = None,
                t_used: Optional[Fraction] = None) -> ApproxRecord:
    """Record for ``point`` against target ``alpha`` with squared weight."""
    dist_sq = chord_distance_sq(point, alpha)
    normalized_sq = real_mul(weight_sq, dist_sq)
    return ApproxRecord(
        point=point,
        dist_sq=dist_sq,
        normalized=real_sqrt(normalized_sq),
        normalized_sq=normalized_sq,
        nu=nu,
        param=param,
        solution=solution,
        t_used=t_used,
    )
