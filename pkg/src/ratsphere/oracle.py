"""Brute-force ground truth: exhaustive enumeration of rational sphere points
and exact best-approximation minima.

Two independent generation routes exist for each dimension.  The direct sweep
solves A_1^2 + ... + A_{n+1}^2 = Q^2 by integer search and is the trusted
oracle; the parametrization sweep exercises the stereographic map and must
agree with it (method="both" checks this).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Optional, Sequence

from .numeric import (
    DEFAULT_MAX_BITS,
    PreconditionError,
    Real,
    as_real,
    compare_certified,
)
from .records import ApproxRecord, make_record
from .stereographic import SpherePoint, StereoParam, forward


def _circle_direct_chunk(bounds) -> List[tuple]:
    q_lo, q_hi = bounds
    pts = []
    for Q in range(q_lo, q_hi + 1):
        QQ = Q * Q
        for A1 in range(1, isqrt(QQ // 2) + 1):
            s = QQ - A1 * A1
            r = isqrt(s)
            if r * r == s and gcd(gcd(A1, r), Q) == 1:
                pts.append((A1, r, Q))
    return pts


def _circle_points_from_pairs(pairs, q_max: int) -> List[SpherePoint]:
    pts = [SpherePoint(1, (1, 0), 1), SpherePoint(1, (-1, 0), 1),
           SpherePoint(1, (0, 1), 1), SpherePoint(1, (0, -1), 1)]
    for A1, A2, Q in pairs:
        for x, y in ((A1, A2), (A2, A1)):
            for sx in (1, -1):
                for sy in (1, -1):
                    pts.append(SpherePoint(1, (sx * x, sy * y), Q))
    return sorted(pts, key=SpherePoint.sort_key)


def _enumerate_circle_direct(q_max: int, threads: int = 1) -> List[SpherePoint]:
    if threads <= 1 or q_max < 2000:
        pairs = _circle_direct_chunk((1, q_max))
    else:
        # deterministic chunked sweep; merge preserves order by construction
        step = max(500, q_max // (threads * 8))
        chunks = [(lo, min(lo + step - 1, q_max))
                  for lo in range(1, q_max + 1, step)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_circle_direct_chunk, chunks))
        pairs = [p for part in parts for p in part]
    return _circle_points_from_pairs(pairs, q_max)


def _enumerate_circle_param(q_max: int) -> List[SpherePoint]:
    pts = [forward(StereoParam.infinity(1))]
    q_lim = isqrt(2 * q_max)
    for q in range(1, q_lim + 1):
        b_lim = isqrt(2 * q_max - q * q)
        for b in range(-b_lim, b_lim + 1):
            if gcd(abs(b), q) != 1:
                continue
            point = forward(StereoParam(1, (b,), q))
            if point.Q <= q_max:
                pts.append(point)
    return sorted(pts, key=SpherePoint.sort_key)


def _enumerate_sphere_direct(q_max: int) -> List[SpherePoint]:
    pts = set()
    for Q in range(1, q_max + 1):
        QQ = Q * Q
        for a1 in range(0, Q + 1):
            r2 = QQ - a1 * a1
            for a2 in range(0, isqrt(r2) + 1):
                s = r2 - a2 * a2
                a3 = isqrt(s)
                if a3 * a3 != s:
                    continue
                if gcd(gcd(a1, a2), gcd(a3, Q)) != 1:
                    continue
                for s1 in ((1, -1) if a1 else (1,)):
                    for s2 in ((1, -1) if a2 else (1,)):
                        for s3 in ((1, -1) if a3 else (1,)):
                            pts.add((s1 * a1, s2 * a2, s3 * a3, Q))
    return sorted((SpherePoint(2, t[:3], t[3]) for t in pts),
                  key=SpherePoint.sort_key)


def _enumerate_sphere_param(q_max: int) -> List[SpherePoint]:
    pts = [forward(StereoParam.infinity(2))]
    for q in range(1, 2 * q_max + 1):
        # a parameter can only reach Q <= q_max if q^2 + b1^2 + b2^2 <= 2*q*q_max:
        # the gcd removed from the raw coordinates divides 2q, so the reduced
        # denominator is at least (q^2 + |b|^2)/(2q)
        lim = 2 * q * q_max - q * q
        if lim < 0:
            break
        b1_lim = isqrt(lim)
        for b1 in range(-b1_lim, b1_lim + 1):
            b2_lim = isqrt(lim - b1 * b1)
            for b2 in range(-b2_lim, b2_lim + 1):
                if gcd(gcd(abs(b1), abs(b2)), q) != 1:
                    continue
                point = forward(StereoParam(2, (b1, b2), q))
                if point.Q <= q_max:
                    raw_den = q * q + b1 * b1 + b2 * b2
                    assert (2 * q) % (raw_den // point.Q) == 0
                    pts.append(point)
    return sorted(pts, key=SpherePoint.sort_key)


def _cache_path(cache_dir: str, n: int, q_max: int) -> str:
    name = {1: "circle", 2: "sphere"}[n]
    return os.path.join(cache_dir, f"{name}_q{q_max}.txt")


def save_points(path: str, points: Sequence[SpherePoint]) -> None:
    """Sorted text lines "A1 A2 [A3] Q"; bit-exact and diff-able."""
    with open(path, "w", encoding="ascii") as fh:
        for p in points:
            fh.write(str(p) + "\n")


def load_points(path: str, n: int) -> List[SpherePoint]:
    pts = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            nums = [int(t) for t in line.split()]
            if len(nums) != n + 2:
                raise PreconditionError(f"bad cache line: {line!r}")
            pts.append(SpherePoint(n, tuple(nums[:-1]), nums[-1]))
    return pts


def enumerate_circle(q_max: int, *, method: str = "direct",
                     cache_dir: Optional[str] = None,
                     threads: int = 1) -> List[SpherePoint]:
    """All rational points on the circle with Q <= q_max, sorted.

    method: "direct" (trusted integer sweep), "param" (stereographic sweep),
    or "both" (run both and require identical sets).
    """
    if q_max < 1:
        raise PreconditionError("q_max must be >= 1")
    if method not in ("direct", "param", "both"):
        raise PreconditionError(f"unknown enumeration method: {method}")
    cache = _cache_path(cache_dir, 1, q_max) if cache_dir else None
    if cache and os.path.exists(cache) and method != "both":
        return load_points(cache, 1)
    if method == "param":
        pts = _enumerate_circle_param(q_max)
    else:
        pts = _enumerate_circle_direct(q_max, threads=threads)
        if method == "both":
            other = _enumerate_circle_param(q_max)
            if pts != other:
                raise PreconditionError(
                    "parametrization and direct enumeration disagree")
    if cache:
        save_points(cache, pts)
    return pts


def enumerate_sphere(q_max: int, *, method: str = "direct",
                     cache_dir: Optional[str] = None,
                     threads: int = 1) -> List[SpherePoint]:
    """All rational points on the 2-sphere with Q <= q_max, sorted."""
    if q_max < 1:
        raise PreconditionError("q_max must be >= 1")
    if method not in ("direct", "param", "both"):
        raise PreconditionError(f"unknown enumeration method: {method}")
    cache = _cache_path(cache_dir, 2, q_max) if cache_dir else None
    if cache and os.path.exists(cache) and method != "both":
        return load_points(cache, 2)
    if method == "param":
        pts = _enumerate_sphere_param(q_max)
    else:
        pts = _enumerate_sphere_direct(q_max)
        if method == "both":
            other = _enumerate_sphere_param(q_max)
            if pts != other:
                raise PreconditionError(
                    "parametrization and direct enumeration disagree")
    if cache:
        save_points(cache, pts)
    return pts


def best_approximation(alpha: Sequence[Real], q_max: int, *,
                       mode: str = "raw", T: Optional[int] = None,
                       q_min: int = 1, method: str = "direct",
                       threads: int = 1,
                       max_bits: int = DEFAULT_MAX_BITS) -> ApproxRecord:
    """Exact minimizer of the chosen normalization over every enumerated point
    with q_min <= Q <= q_max; ties go to smaller Q, then lexicographic A.

    mode: "raw" (distance), "times_Q" (Q * distance), or "times_sqrtQT"
    (sqrt(Q*T) * distance, needs T).
    """
    alpha = tuple(as_real(a) for a in alpha)
    if len(alpha) == 2:
        points = enumerate_circle(q_max, method=method, threads=threads)
    elif len(alpha) == 3:
        points = enumerate_sphere(q_max, method=method, threads=threads)
    else:
        raise PreconditionError("alpha must have 2 or 3 coordinates")
    if mode not in ("raw", "times_Q", "times_sqrtQT"):
        raise PreconditionError(f"unknown mode: {mode}")
    if mode == "times_sqrtQT" and (T is None or T < 1):
        raise PreconditionError("times_sqrtQT mode needs a positive T")

    best: Optional[ApproxRecord] = None
    for point in points:                      # sorted: ties keep the first seen
        if not (q_min <= point.Q <= q_max):
            continue
        if mode == "raw":
            w = Fraction(1)
        elif mode == "times_Q":
            w = Fraction(point.Q) ** 2
        else:
            w = Fraction(point.Q * T)
        rec = make_record(point, alpha, w)
        if best is None or compare_certified(
                rec.normalized_sq, best.normalized_sq, max_bits=max_bits) < 0:
            best = rec
    if best is None:
        raise PreconditionError("no rational points in the requested Q range")
    return best
