"""Bulk region scans for the moment computation.

For every canonical denominator s with |s| <= S, the consecutive
partners s' are the coprime lattice points of the crescent region.  The
moment sums only need the partner counts grouped by norm(s'), so this
module produces, for each denominator norm m, the integer row
row[n] = number of (s with norm m, partner of norm n) records.

Folding used (both exact):
- unit rotation: one representative per partner orbit, counted 4x;
- conjugation: denominators (a, b) and (b, a) have identical rows, so
  only a >= b is scanned, with weight 2 when 0 < b < a.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from fordspheres.gaussint import _rational_primes, _sqrt_minus_one

__all__ = ["norm_classes", "scan_rows", "annulus_floor"]


def norm_classes(S: int) -> list[tuple[int, list[tuple[int, int, int]]]]:
    """Conjugation-folded canonical denominators grouped by norm.

    Returns [(m, [(a, b, weight), ...]), ...] with m ascending; weight 2
    marks an (a, b) that stands in for its distinct conjugate class.
    """
    limit = S * S
    groups: dict[int, list[tuple[int, int, int]]] = {}
    for a in range(1, S + 1):
        bmax = math.isqrt(limit - a * a)
        for b in range(0, min(a, bmax) + 1):
            w = 2 if 0 < b < a else 1
            groups.setdefault(a * a + b * b, []).append((a, b, w))
    return sorted(groups.items())


def annulus_floor(S: int, m: int) -> int:
    """Largest integer certified below (S - sqrt(m))^2.

    Every partner of a denominator of norm m has norm exceeding this
    bound, so rows only span norms in (floor, S^2].
    """
    t = math.isqrt(4 * S * S * m)
    ceil_2s_root = t if t * t == 4 * S * S * m else t + 1
    return max(0, S * S + m - ceil_2s_root)


@lru_cache(maxsize=4)
def _spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 2..limit."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            sl = spf[p * p :: p]
            sl[sl == 0] = p
            spf[p * p :: p] = sl
    idx = np.nonzero(spf == 0)[0]
    spf[idx] = idx
    return spf


@lru_cache(maxsize=4)
def _split_prime_table(limit: int) -> dict[int, tuple[int, int]]:
    """p -> (a, b) with a^2 + b^2 = p, for rational primes p = 1 (mod 4)."""
    table: dict[int, tuple[int, int]] = {}
    for p in _rational_primes(limit):
        p = int(p)
        if p % 4 != 1:
            continue
        t = _sqrt_minus_one(p)
        # Euclidean reduction of (p, t + i) by hand, integers only
        a, b = p, 0
        c, d = t, 1
        while c * c + d * d > p:
            n = c * c + d * d
            qr = _round_div(a * c + b * d, n)
            qi = _round_div(b * c - a * d, n)
            a, b, c, d = c, d, a - (qr * c - qi * d), b - (qr * d + qi * c)
        table[p] = (abs(c), abs(d))
    return table


def _round_div(x: int, n: int) -> int:
    if x >= 0:
        return (2 * x + n - 1) // (2 * n)
    return (2 * x + n) // (2 * n)


def prime_divisor_coords(a: int, b: int, spf: np.ndarray, split) -> list[tuple[int, int, int]]:
    """Gaussian primes (pa, pb, norm) dividing s = a + bi, via norm factorization."""
    m = a * a + b * b
    out = []
    while m > 1:
        p = int(spf[m])
        while m % p == 0:
            m //= p
        if p == 2:
            out.append((1, 1, 2))
        elif p % 4 == 3:
            out.append((p, 0, p * p))
        else:
            pa, pb = split[p]
            # either root above p may divide s; check both coordinates
            if (a * pa + b * pb) % p == 0 and (b * pa - a * pb) % p == 0:
                out.append((pa, pb, p))
            if (a * pa - b * pb) % p == 0 and (b * pa + a * pb) % p == 0:
                out.append((pa, -pb, p))
    return out


def _quarter_annulus(S: int, lo: int):
    """Flat (x, y, n) arrays of the canonical-quadrant annulus lo < n <= S^2."""
    s2 = S * S
    x = np.arange(1, S + 1, dtype=np.int64)
    y_hi = _isqrt_arr(s2 - x * x)
    under = lo - x * x
    y_lo = np.where(under < 0, 0, _isqrt_arr(np.maximum(under, 0)) + 1)
    lens = np.maximum(y_hi - y_lo + 1, 0)
    total = int(lens.sum())
    xs = np.repeat(x, lens)
    ends = np.cumsum(lens)
    pos = np.arange(total, dtype=np.int64) - np.repeat(ends - lens, lens)
    ys = np.repeat(y_lo, lens) + pos
    return xs, ys, xs * xs + ys * ys


def _isqrt_arr(v: np.ndarray) -> np.ndarray:
    k = np.sqrt(v.astype(np.float64)).astype(np.int64)
    k = np.where((k + 1) ** 2 <= v, k + 1, k)
    k = np.where(k * k > v, k - 1, k)
    return k


def scan_rows(S: int, classes=None):
    """Yield (m, lo, n_values, counts) partner rows per denominator norm.

    counts[i] is the number of ordered records (s of norm m, s' of norm
    n_values[i]) with s' a coprime region member, summed over all
    canonical s of norm m (after the exact 4x / conjugation folding).
    """
    if classes is None:
        classes = norm_classes(S)
    s2 = S * S
    spf = _spf_table(s2)
    split = _split_prime_table(s2)
    for m, reps in classes:
        lo = annulus_floor(S, m)
        xs, ys, ns = _quarter_annulus(S, lo)
        if xs.size == 0:
            continue
        row = np.zeros(s2 - lo, dtype=np.int64)
        for a, b, weight in reps:
            t1 = np.abs(a * xs + b * ys)
            t2 = np.abs(a * ys - b * xs)
            member = ns + m + 2 * np.maximum(t1, t2) > s2
            mx = xs[member]
            my = ys[member]
            mn = ns[member]
            keep = np.ones(mx.size, dtype=bool)
            for pa, pb, pn in prime_divisor_coords(a, b, spf, split):
                c1 = (mx * pa + my * pb) % pn == 0
                if not c1.any():
                    continue
                sub_x = mx[c1]
                sub_y = my[c1]
                c2 = (sub_y * pa - sub_x * pb) % pn == 0
                idx = np.nonzero(c1)[0][c2]
                keep[idx] = False
            counts = np.bincount(mn[keep] - lo - 1, minlength=s2 - lo)
            row += (4 * weight) * counts
        nz = np.nonzero(row)[0]
        if nz.size:
            yield m, lo, nz + lo + 1, row[nz]
