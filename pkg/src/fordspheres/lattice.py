"""Lattice point counting: disks, the crescent region around the boundary
circle, and the sum-of-squares machinery backing them.

All boundary comparisons are exact; squared norms are compared as
integers or rationals, never as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from fordspheres.gaussint import (
    GaussianInt,
    UNITS,
    divisors,
    gcd_gaussian,
    is_unit,
    mobius_i,
    _factor_norm,
)

__all__ = [
    "r2",
    "r2_scan",
    "r2_summatory",
    "norm_histogram",
    "canonical_count",
    "count_lattice_in_disk",
    "omega_area",
    "OmegaRegion",
    "LatticeCountResult",
    "count_omega_lattice",
    "count_omega_coprime",
    "GaussErrorProfile",
    "gauss_error_profile",
    "sum_inverse_norms",
]


# ---------------------------------------------------------------------------
# Sum of squares
# ---------------------------------------------------------------------------


def r2(n: int) -> int:
    """Number of integer pairs (a, b) with a^2 + b^2 = n, for n >= 1.

    Multiplicative formula: zero if any prime 3 (mod 4) divides n to an
    odd power, otherwise 4 * prod(e_p + 1) over primes p = 1 (mod 4).
    """
    if n < 1:
        raise ValueError("r2 is defined on positive integers")
    out = 4
    for p, e in _factor_norm(n):
        if p % 4 == 1:
            out *= e + 1
        elif p % 4 == 3 and e % 2 == 1:
            return 0
    return out


def r2_scan(n: int) -> int:
    """Brute-force scan fallback for r2 (independent of factorization)."""
    if n < 1:
        raise ValueError("r2 is defined on positive integers")
    count = 0
    a = 0
    while a * a <= n:
        b2 = n - a * a
        b = math.isqrt(b2)
        if b * b == b2:
            # (±a, ±b) with sign/zero multiplicities
            if a == 0 or b == 0:
                count += 2
            else:
                count += 4
        a += 1
    return count


def canonical_count(norm_limit: int) -> int:
    """Number of canonical Gaussian integers (re > 0, im >= 0) of norm <= limit."""
    if norm_limit < 1:
        return 0
    n = math.isqrt(norm_limit)
    a = np.arange(1, n + 1, dtype=np.int64)
    rem = norm_limit - a * a
    return int(np.sum(_isqrt_exact(rem) + 1))


def _isqrt_exact(v: np.ndarray) -> np.ndarray:
    """Elementwise integer sqrt of non-negative int64 values, exact."""
    k = np.sqrt(v.astype(np.float64)).astype(np.int64)
    k = np.where((k + 1) ** 2 <= v, k + 1, k)
    k = np.where(k**2 > v, k - 1, k)
    return k


def norm_histogram(norm_limit: int) -> np.ndarray:
    """h[n] = number of canonical elements of norm exactly n, 0 <= n <= limit.

    r2(n) = 4 * h[n] for n >= 1, since each nonzero orbit under unit
    rotation has exactly one canonical representative.
    """
    n = math.isqrt(norm_limit)
    a = np.arange(0, n + 1, dtype=np.int64)
    grid = a[:, None] ** 2 + a[None, :] ** 2
    mask = (grid <= norm_limit) & (a[:, None] > 0)
    return np.bincount(grid[mask], minlength=norm_limit + 1)


def r2_summatory(N: int) -> int:
    """Exact sum of r2(n) for 1 <= n <= N.

    Equals the number of nonzero lattice points in the closed disk of
    radius sqrt(N), i.e. four times the canonical count.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    return 4 * canonical_count(N)


# ---------------------------------------------------------------------------
# Exact disk counting with rational centers
# ---------------------------------------------------------------------------


def _floor_plus_sqrt(c: Fraction, w2: Fraction) -> int:
    """floor(c + sqrt(w2)) for rationals c, w2 >= 0, exactly."""
    guess = math.floor(float(c) + math.sqrt(float(w2)))
    # fix up with exact comparisons: x <= c + sqrt(w2)  <=>
    # x - c <= sqrt(w2)  <=>  x <= c or (x - c)^2 <= w2
    def ok(x: int) -> bool:
        d = x - c
        return d <= 0 or d * d <= w2

    while ok(guess + 1):
        guess += 1
    while not ok(guess):
        guess -= 1
    return guess


def _ceil_minus_sqrt(c: Fraction, w2: Fraction) -> int:
    """ceil(c - sqrt(w2)) for rationals c, w2 >= 0, exactly."""
    guess = math.ceil(float(c) - math.sqrt(float(w2)))
    # x >= c - sqrt(w2)  <=>  c - x <= sqrt(w2)  <=>  x >= c or (c - x)^2 <= w2
    def ok(x: int) -> bool:
        d = c - x
        return d <= 0 or d * d <= w2

    while ok(guess - 1):
        guess -= 1
    while not ok(guess):
        guess += 1
    return guess


def count_lattice_in_disk(radius, center=(0, 0)) -> int:
    """Exact count of integer points z with |z - center| <= radius.

    The center is an exact rational point; the radius may be an int,
    Fraction, or float (converted exactly).  Row-wise integer range
    arithmetic; all boundary decisions are exact rational comparisons.
    """
    r = Fraction(radius)
    if r < 0:
        raise ValueError("radius must be >= 0")
    cx, cy = Fraction(center[0]), Fraction(center[1])
    r_sq = r * r
    y_lo = _ceil_minus_sqrt(cy, r_sq)
    y_hi = _floor_plus_sqrt(cy, r_sq)
    total = 0
    for y in range(y_lo, y_hi + 1):
        w2 = r_sq - (y - cy) ** 2
        if w2 < 0:
            continue
        total += _floor_plus_sqrt(cx, w2) - _ceil_minus_sqrt(cx, w2) + 1
    return total


# ---------------------------------------------------------------------------
# The crescent region: inside the origin disk, outside a shifted disk
# ---------------------------------------------------------------------------


def omega_area(S: int, t: float) -> float:
    """Closed-form area of the region for a denominator of modulus t.

    area = I(t) - 2 t^2 with I(t) = 4 S^2 (theta + sin theta cos theta)
    and theta = arcsin(t / (sqrt(2) S)); this is the exact antiderivative
    of the defining cos^2 integral.
    """
    limit = math.sqrt(2.0) * S
    if t < 0 or t > limit * (1 + 1e-12):
        raise ValueError(f"t must lie in [0, sqrt(2)*S], got {t}")
    x = min(t / limit, 1.0)
    theta = math.asin(x)
    big_i = 4.0 * S * S * (theta + math.sin(theta) * math.cos(theta))
    return big_i - 2.0 * t * t


@dataclass(frozen=True)
class OmegaRegion:
    """Parameters (s, S) of the region: |z| <= S and |z + u*s| > S for a unit u.

    Membership is exact: closed inner comparison, strict outer one,
    both on squared norms.  The region is invariant under z -> iz.
    """

    s: GaussianInt
    S: int

    def __post_init__(self):
        if self.S < 1:
            raise ValueError("S must be a positive integer")
        if not self.s or not self.s.is_canonical():
            raise ValueError("s must be nonzero and canonical")
        if self.s.norm() > self.S * self.S:
            raise ValueError("region requires |s| <= S")

    def contains(self, z: GaussianInt) -> bool:
        s2 = self.S * self.S
        if z.norm() > s2:
            return False
        return any((z + u * self.s).norm() > s2 for u in UNITS)

    @property
    def area(self) -> float:
        return omega_area(self.S, math.sqrt(self.s.norm()))


@dataclass(frozen=True)
class LatticeCountResult:
    count: int
    area: float
    discrepancy: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "discrepancy", self.count - self.area)


def _quarter_member_coords(region: OmegaRegion):
    """Coordinates (x, y) of region members in the canonical quadrant.

    One representative per unit-rotation orbit; the full member set is
    the union of the four rotations (the origin is never a member).
    """
    S = region.S
    s2 = S * S
    a, b = region.s.re, region.s.im
    ns = a * a + b * b
    x = np.arange(0, S + 1, dtype=np.int64)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    n = xx * xx + yy * yy
    inside = (n <= s2) & (xx > 0)
    t1 = np.abs(a * xx + b * yy)
    t2 = np.abs(a * yy - b * xx)
    outside_one = n + ns + 2 * np.maximum(t1, t2) > s2
    keep = inside & outside_one
    return xx[keep], yy[keep], n[keep]


def count_omega_lattice(region: OmegaRegion) -> LatticeCountResult:
    """Exact member count with the closed-form area for comparison."""
    xs, _, _ = _quarter_member_coords(region)
    return LatticeCountResult(count=4 * xs.size, area=region.area)


def _count_omega_full_scan(region: OmegaRegion) -> int:
    """Independent full-plane scan (no quadrant folding); for cross-checks."""
    S = region.S
    count = 0
    for y in range(-S, S + 1):
        for x in range(-S, S + 1):
            if region.contains(GaussianInt(x, y)):
                count += 1
    return count


def count_omega_coprime(region: OmegaRegion, backend: str = "scan") -> int:
    """Members z of the region with gcd(s, z) a unit.

    Two independent backends that must agree exactly:

    - "scan": direct quadrant scan with a gcd test per representative;
    - "mobius": inclusion-exclusion over divisors d of s, counting
      lattice points w with d*w in the region.
    """
    if backend == "scan":
        return _coprime_scan(region)
    if backend == "mobius":
        return _coprime_mobius(region)
    raise ValueError(f"unknown backend {backend!r}")


def _coprime_scan(region: OmegaRegion) -> int:
    xs, ys, _ = _quarter_member_coords(region)
    s = region.s
    count = 0
    for x, y in zip(xs.tolist(), ys.tolist()):
        if is_unit(gcd_gaussian(s, GaussianInt(x, y))):
            count += 1
    return 4 * count


def _coprime_mobius(region: OmegaRegion) -> int:
    s = region.s
    S = region.S
    total = 0
    for d in divisors(s):
        mu = mobius_i(d)
        if mu == 0:
            continue
        nd = d.norm()
        w_max = math.isqrt((S * S) // nd)
        sub = 0
        for wy in range(-w_max, w_max + 1):
            for wx in range(-w_max, w_max + 1):
                if region.contains(d * GaussianInt(wx, wy)):
                    sub += 1
        total += mu * sub
    return total


# ---------------------------------------------------------------------------
# Empirical disk-count error profiling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussErrorProfile:
    """Exact summatory values with their deviation from pi*N."""

    samples: tuple[tuple[int, int, float], ...]  # (N, summatory, |sum - pi N|)
    max_ratio: float  # max over samples of error / N^(1/3)


def gauss_error_profile(N_max: int, samples: int = 20) -> GaussErrorProfile:
    """Profile |sum_{n<=N} r2(n) - pi N| at geometrically spaced N."""
    if N_max < 10:
        raise ValueError("N_max must be >= 10")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    ns = sorted(
        {max(1, round(N_max ** (j / (samples - 1)))) for j in range(samples)}
        if samples > 1
        else {N_max}
    )
    rows = []
    worst = 0.0
    for N in ns:
        summ = r2_summatory(N)
        err = abs(summ - math.pi * N)
        worst = max(worst, err / N ** (1.0 / 3.0))
        rows.append((N, summ, err))
    return GaussErrorProfile(samples=tuple(rows), max_ratio=worst)


def sum_inverse_norms(R: float) -> float:
    """sum of 1/|s|^2 over all nonzero s in Z[i] with |s| <= R.

    Grows like 2 pi log R; used to check that growth law numerically.
    """
    limit = int(R * R + 1e-9) if not isinstance(R, int) else R * R
    h = norm_histogram(limit)
    n = np.arange(len(h), dtype=np.float64)
    n[0] = 1.0
    return float(np.sum(4.0 * h / n))
