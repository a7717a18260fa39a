"""Reduced Gaussian fractions in the closed unit square, their tangent
spheres, and the consecutivity structure at denominator bound S.

A fraction r/s is stored with canonical denominator and gcd(r, s) a
unit.  Two fractions are adjacent when their spheres are tangent, which
reduces to r*s' - r'*s being a unit: tangency of spheres with centers
(r/s, 1/2|s|^2), (r'/s', 1/2|s'|^2) and radii 1/2|s|^2, 1/2|s'|^2 means
|r/s - r'/s'|^2 = 1/(|s|^2 |s'|^2), i.e. |r s' - r' s| = 1.  They are
consecutive at bound S when additionally |s' + u s| > S for some unit u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from fordspheres.gaussint import (
    GaussianInt,
    UNITS,
    ONE,
    canonical_associate,
    canonical_elements,
    exact_div,
    gcd_gaussian,
    is_unit,
    xgcd_gaussian,
)
from fordspheres.lattice import OmegaRegion, _quarter_member_coords

__all__ = [
    "GaussFraction",
    "FordSphere",
    "DenomPairRecord",
    "reduce_fraction",
    "enumerate_GS",
    "are_adjacent",
    "are_adjacent_geometric",
    "are_consecutive_denoms",
    "are_consecutive_fractions",
    "numerator_pairs",
    "consecutive_pairs",
]


@dataclass(frozen=True)
class GaussFraction:
    """A reduced fraction r/s in the closed unit square, s canonical."""

    r: GaussianInt
    s: GaussianInt

    def __post_init__(self):
        if not self.s:
            raise ZeroDivisionError("denominator is zero")
        if not self.s.is_canonical():
            raise ValueError("denominator must be canonical (re > 0, im >= 0)")
        if not is_unit(gcd_gaussian(self.r, self.s) if self.r else ONE):
            raise ValueError(f"{self.r}/{self.s} is not reduced")
        if not self._in_unit_square():
            raise ValueError(f"{self.r}/{self.s} lies outside the closed unit square")

    def _in_unit_square(self) -> bool:
        # r/s = r * conj(s) / norm(s); both coordinates must be in [0, norm]
        n = self.s.norm()
        w = self.r * self.s.conjugate()
        return 0 <= w.re <= n and 0 <= w.im <= n

    def value(self) -> tuple[Fraction, Fraction]:
        """The point r/s as an exact rational pair (Re, Im)."""
        n = self.s.norm()
        w = self.r * self.s.conjugate()
        return Fraction(w.re, n), Fraction(w.im, n)

    def key(self):
        return (self.s.norm(), self.s.re, self.s.im, self.r.re, self.r.im)

    def __str__(self) -> str:
        return f"({self.r})/({self.s})"


@dataclass(frozen=True)
class FordSphere:
    """The sphere of radius 1/(2|s|^2) tangent to the plane at r/s."""

    base: GaussFraction

    @property
    def radius(self) -> Fraction:
        return Fraction(1, 2 * self.base.s.norm())

    @property
    def center(self) -> tuple[Fraction, Fraction, Fraction]:
        x, y = self.base.value()
        return x, y, self.radius


def reduce_fraction(r: GaussianInt, s: GaussianInt) -> GaussFraction:
    """Divide out the gcd and normalize the denominator to canonical form."""
    if not s:
        raise ZeroDivisionError("denominator is zero")
    if r:
        g = gcd_gaussian(r, s)
        r = exact_div(r, g)
        s = exact_div(s, g)
    u, s_c = canonical_associate(s)
    return GaussFraction(u * r, s_c)


def enumerate_GS(S: int) -> list[GaussFraction]:
    """All reduced fractions in the closed unit square with |s| <= S.

    Deterministic order: denominators by (norm, re), numerators by
    (re, im).  Numerators for denominator s are the lattice points of
    the rotated square with corners 0, s, (1+i)s, is, kept when coprime
    to s.
    """
    if S < 1:
        raise ValueError("S must be a positive integer")
    out: list[GaussFraction] = []
    for s in canonical_elements(S * S):
        n = s.norm()
        a, b = s.re, s.im
        # bounding box of the square with corners 0, s, is, (1+i)s
        xs = (0, a, -b, a - b)
        ys = (0, b, a, a + b)
        for x in range(min(xs), max(xs) + 1):
            for y in range(min(ys), max(ys) + 1):
                r = GaussianInt(x, y)
                w_re = x * a + y * b
                w_im = y * a - x * b
                if not (0 <= w_re <= n and 0 <= w_im <= n):
                    continue
                if r and not is_unit(gcd_gaussian(r, s)):
                    continue
                if not r and n > 1:
                    continue  # 0/s reduces to 0/1
                out.append(GaussFraction(r, s))
    return out


def are_adjacent(f: GaussFraction, g: GaussFraction) -> bool:
    """True iff the two spheres are tangent: r*s' - r'*s is a unit."""
    if f == g:
        raise ValueError("adjacency requires distinct fractions")
    det = f.r * g.s - g.r * f.s
    return det.norm() == 1


def are_adjacent_geometric(f: GaussFraction, g: GaussFraction) -> bool:
    """Tangency by exact center distance: |c_f - c_g|^2 = (rho_f + rho_g)^2."""
    if f == g:
        raise ValueError("adjacency requires distinct fractions")
    fx, fy = f.value()
    gx, gy = g.value()
    rf = Fraction(1, 2 * f.s.norm())
    rg = Fraction(1, 2 * g.s.norm())
    lhs = (fx - gx) ** 2 + (fy - gy) ** 2 + (rf - rg) ** 2
    return lhs == (rf + rg) ** 2


def are_consecutive_denoms(s: GaussianInt, s_prime: GaussianInt, S: int) -> bool:
    """The three-part consecutivity test on a denominator pair.

    (i) both moduli at most S, (ii) coprime, (iii) |s' + u s| > S for at
    least one unit u.  All comparisons are on exact squared norms.
    """
    if not s or not s_prime:
        raise ValueError("denominators must be nonzero")
    s_sq = S * S
    if s.norm() > s_sq or s_prime.norm() > s_sq:
        return False
    if not is_unit(gcd_gaussian(s, s_prime)):
        return False
    return any((s_prime + u * s).norm() > s_sq for u in UNITS)


def are_consecutive_fractions(f: GaussFraction, g: GaussFraction, S: int) -> bool:
    """Adjacency plus the modulus-escape condition on the denominators."""
    s_sq = S * S
    if f.s.norm() > s_sq or g.s.norm() > s_sq:
        raise ValueError("fractions must have |s| <= S")
    if not are_adjacent(f, g):
        return False
    return any((g.s + u * f.s).norm() > s_sq for u in UNITS)


def numerator_pairs(
    s: GaussianInt, s_prime: GaussianInt, S: int
) -> list[tuple[GaussFraction, GaussFraction]]:
    """The numerator pairs making r/s and r'/s' consecutive at bound S.

    For each unit u the equation r*s' - r'*s = u is solved by extended
    Euclid; translates r -> r + t*s, r' -> r' + t*s' are then clipped to
    the unit square.  Generically there are exactly four unordered
    pairs, and this is asserted.  The exception is the degenerate family
    where s*s' lies on an axis of Z[i]: there the square-boundary
    windows can double up and 4 to 8 pairs occur (e.g. (1, 2) at S=2 has
    8).  The moment accounting handles those pairs by explicit count.
    """
    if not are_consecutive_denoms(s, s_prime, S):
        raise ValueError("denominator pair is not consecutive at this S")
    pairs = _solve_numerator_pairs(s, s_prime, S)
    prod = s * s_prime
    axis_degenerate = prod.re == 0 or prod.im == 0
    if not axis_degenerate and len(pairs) != 4:
        raise ArithmeticError(
            f"expected exactly 4 numerator pairs for ({s}, {s_prime}, S={S}), "
            f"got {len(pairs)}"
        )
    if not 4 <= len(pairs) <= 8:
        raise ArithmeticError(
            f"numerator pair count {len(pairs)} out of range for "
            f"({s}, {s_prime}, S={S})"
        )
    return pairs


def _solve_numerator_pairs(
    s: GaussianInt, s_prime: GaussianInt, S: int
) -> list[tuple[GaussFraction, GaussFraction]]:
    g, x, y = xgcd_gaussian(s_prime, s)
    assert g == ONE  # coprime by the precondition
    found: dict[frozenset, tuple[GaussFraction, GaussFraction]] = {}
    for u in UNITS:
        r0 = x * u
        r0p = (-1) * y * u
        # r = r0 + t s;  r/s = r0/s + t must land in the unit square
        px, py = _to_point(r0, s)
        for t_re in _int_window(-px, 1 - px):
            for t_im in _int_window(-py, 1 - py):
                t = GaussianInt(t_re, t_im)
                r = r0 + t * s
                rp = r0p + t * s_prime
                try:
                    f = GaussFraction(r, s)
                    h = GaussFraction(rp, s_prime)
                except ValueError:
                    continue
                if are_consecutive_fractions(f, h, S):
                    key = frozenset((f.key(), h.key()))
                    found.setdefault(key, (f, h))
    return sorted(found.values(), key=lambda p: (p[0].key(), p[1].key()))


def numerator_pair_count(s: GaussianInt, s_prime: GaussianInt, S: int) -> int:
    """Number of unordered consecutive numerator pairs for (s, s', S)."""
    if not are_consecutive_denoms(s, s_prime, S):
        raise ValueError("denominator pair is not consecutive at this S")
    return len(_solve_numerator_pairs(s, s_prime, S))


def _to_point(r: GaussianInt, s: GaussianInt) -> tuple[Fraction, Fraction]:
    n = s.norm()
    w = r * s.conjugate()
    return Fraction(w.re, n), Fraction(w.im, n)


def _int_window(lo: Fraction, hi: Fraction) -> range:
    return range(math.ceil(lo), math.floor(hi) + 1)


@dataclass(frozen=True)
class DenomPairRecord:
    """One consecutive-partner record: s canonical, s' any lattice partner."""

    s: GaussianInt
    s_prime: GaussianInt
    S: int

    @property
    def distance(self) -> Fraction:
        """Center distance of the two spheres: 1/(2|s|^2) + 1/(2|s'|^2)."""
        return Fraction(1, 2 * self.s.norm()) + Fraction(1, 2 * self.s_prime.norm())


def consecutive_pairs(S: int) -> Iterator[DenomPairRecord]:
    """Stream all (s canonical, s' partner) records at bound S.

    For each canonical s with |s| <= S, emits one record per lattice
    point s' in the region with gcd(s, s') a unit — all four unit
    multiples of each partner class, matching the ordered double-sum
    convention.  Deterministic order: s by (norm, re, im), then s' in
    row-major order (im, then re).
    """
    if S < 1:
        raise ValueError("S must be a positive integer")
    for s in canonical_elements(S * S):
        region = OmegaRegion(s, S)
        xs, ys, _ = _quarter_member_coords(region)
        pts: list[GaussianInt] = []
        for x, y in zip(xs.tolist(), ys.tolist()):
            z = GaussianInt(x, y)
            if is_unit(gcd_gaussian(s, z)):
                for u in UNITS:
                    pts.append(u * z)
        pts.sort(key=lambda z: (z.im, z.re))
        for z in pts:
            yield DenomPairRecord(s=s, s_prime=z, S=S)
