"""Exact Gaussian-integer arithmetic and the multiplicative functions on Z[i].

Everything here is exact: elements are pairs of arbitrary-precision
integers, the Euclidean algorithm uses nearest-integer rounding of the
exact complex quotient, and factorization is trial division over
Gaussian primes in norm order.  The canonical associate of a nonzero
element is the unique unit multiple with re > 0 and im >= 0; all divisor
and prime enumeration is over canonical representatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GaussianInt",
    "Factorization",
    "UNITS",
    "ZERO",
    "ONE",
    "I",
    "is_unit",
    "canonical_associate",
    "gcd_gaussian",
    "xgcd_gaussian",
    "factor",
    "mobius_i",
    "phi_i",
    "divisors",
    "gaussian_primes",
    "phi_sieve",
    "PhiTable",
    "canonical_elements",
]


class GaussianInt:
    """A Gaussian integer re + im*i with exact integer coordinates."""

    __slots__ = ("re", "im")

    def __init__(self, re: int, im: int = 0):
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianInt is immutable")

    # -- basic ring operations ------------------------------------------

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other) -> "GaussianInt":
        if isinstance(other, GaussianInt):
            return GaussianInt(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        """Field norm re^2 + im^2 (exact, non-negative)."""
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.re == other and self.im == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    # -- Euclidean structure --------------------------------------------

    def __divmod__(self, other: "GaussianInt"):
        """Quotient and remainder with |remainder| < |other|.

        The quotient is the nearest lattice point to the exact complex
        quotient, rounding halves toward zero on each coordinate.
        """
        if not other:
            raise ZeroDivisionError("division by zero Gaussian integer")
        d = other.norm()
        # self * conj(other) = exact numerator of self/other over d
        nr = self.re * other.re + self.im * other.im
        ni = self.im * other.re - self.re * other.im
        q = GaussianInt(_round_nearest(nr, d), _round_nearest(ni, d))
        return q, self - q * other

    def __floordiv__(self, other: "GaussianInt") -> "GaussianInt":
        return divmod(self, other)[0]

    def __mod__(self, other: "GaussianInt") -> "GaussianInt":
        return divmod(self, other)[1]

    def is_canonical(self) -> bool:
        """True for the representative quadrant: re > 0, im >= 0."""
        return self.re > 0 and self.im >= 0

    def key(self) -> tuple[int, int, int]:
        """Deterministic sort key (norm, re, im)."""
        return (self.norm(), self.re, self.im)


def _round_nearest(n: int, d: int) -> int:
    """Nearest integer to n/d (d > 0), ties rounded toward zero."""
    if n >= 0:
        return (2 * n + d - 1) // (2 * d)
    return (2 * n + d) // (2 * d)


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
#: The four units of Z[i], in the order 1, i, -1, -i.
UNITS = (ONE, I, GaussianInt(-1, 0), GaussianInt(0, -1))


def is_unit(q: GaussianInt) -> bool:
    return q.norm() == 1


def canonical_associate(q: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """Return (u, c) with u a unit, u*q = c, and c in the canonical quadrant.

    Exactly one of the four associates q, iq, -q, -iq satisfies
    re > 0, im >= 0; that associate is returned together with the
    rotation that produces it.
    """
    if not q:
        raise ValueError("zero has no canonical associate")
    for u in UNITS:
        c = u * q
        if c.re > 0 and c.im >= 0:
            return u, c
    raise AssertionError("unreachable: one associate is always canonical")


def canonicalize(q: GaussianInt) -> GaussianInt:
    """The canonical associate itself, discarding the unit."""
    return canonical_associate(q)[1]


def gcd_gaussian(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Canonical greatest common divisor via the Euclidean algorithm.

    gcd(a, 0) is the canonical associate of a; both arguments zero is a
    domain error.  The remainder norm strictly decreases at each step,
    so the loop terminates.
    """
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return canonicalize(a)


def xgcd_gaussian(a: GaussianInt, b: GaussianInt):
    """Extended Euclid: (g, x, y) with x*a + y*b = g, g canonical."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    x0, x1 = ONE, ZERO
    y0, y1 = ZERO, ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    u, g = canonical_associate(r0)
    return g, u * x0, u * y0


def exact_div(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """a / b when b divides a exactly; raises otherwise."""
    q, r = divmod(a, b)
    if r:
        raise ValueError(f"{b} does not divide {a}")
    return q


def divides(d: GaussianInt, a: GaussianInt) -> bool:
    """True iff d divides a in Z[i] (exact test, no rounding)."""
    n = d.norm()
    if n == 0:
        return not a
    # a * conj(d) must have both coordinates divisible by norm(d)
    nr = a.re * d.re + a.im * d.im
    ni = a.im * d.re - a.re * d.im
    return nr % n == 0 and ni % n == 0


# ---------------------------------------------------------------------------
# Gaussian primes
# ---------------------------------------------------------------------------


def _rational_primes(limit: int) -> np.ndarray:
    """All rational primes <= limit, as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def _sqrt_minus_one(p: int) -> int:
    """A square root of -1 modulo a prime p = 1 (mod 4)."""
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            t = pow(n, (p - 1) // 4, p)
            if (t * t + 1) % p == 0:
                return t
    raise ArithmeticError(f"no sqrt(-1) mod {p}")


def _prime_above(p: int) -> GaussianInt:
    """A canonical Gaussian prime of norm p for a rational prime p = 1 (mod 4)."""
    t = _sqrt_minus_one(p)
    return gcd_gaussian(GaussianInt(p, 0), GaussianInt(t, 1))


def gaussian_primes(norm_limit: int) -> list[GaussianInt]:
    """Canonical Gaussian primes with norm <= norm_limit, sorted by (norm, re).

    Norms are 2, rational primes p = 1 (mod 4) (two conjugate primes
    each), and squares of rational primes p = 3 (mod 4).
    """
    out: list[GaussianInt] = []
    if norm_limit >= 2:
        out.append(GaussianInt(1, 1))
    for p in _rational_primes(norm_limit):
        p = int(p)
        if p == 2:
            continue
        if p % 4 == 1:
            pi = _prime_above(p)
            out.append(pi)
            out.append(canonicalize(pi.conjugate()))
        elif p * p <= norm_limit:
            out.append(GaussianInt(p, 0))
    out.sort(key=GaussianInt.key)
    return out


# ---------------------------------------------------------------------------
# Factorization and multiplicative functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """unit * prod(p_i ** e_i) for canonical, pairwise-distinct primes p_i."""

    unit: GaussianInt
    primes: tuple[tuple[GaussianInt, int], ...]

    def recombine(self) -> GaussianInt:
        out = self.unit
        for p, e in self.primes:
            for _ in range(e):
                out = out * p
        return out


def _factor_norm(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization of a positive rational integer."""
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 2 if p % 6 == 5 else 4  # step 5,7,11,13,... skipping multiples of 2,3
    if n > 1:
        out.append((n, 1))
    return out


def factor(q: GaussianInt) -> Factorization:
    """Factor a nonzero Gaussian integer into canonical primes.

    Works through the rational factorization of the norm: each rational
    prime dividing norm(q) contributes Gaussian primes that are divided
    out of q by exact division.
    """
    if not q:
        raise ValueError("cannot factor zero")
    primes: list[tuple[GaussianInt, int]] = []
    for p, _ in _factor_norm(q.norm()):
        if p == 2:
            cands = [GaussianInt(1, 1)]
        elif p % 4 == 1:
            pi = _prime_above(p)
            cands = [pi, canonicalize(pi.conjugate())]
        else:
            cands = [GaussianInt(p, 0)]
        for pi in cands:
            e = 0
            while divides(pi, q):
                q = exact_div(q, pi)
                e += 1
            if e:
                primes.append((pi, e))
    if not is_unit(q):
        raise AssertionError(f"factorization left non-unit remainder {q}")
    primes.sort(key=lambda pe: pe[0].key())
    return Factorization(unit=q, primes=tuple(primes))


def mobius_i(q: GaussianInt) -> int:
    """Mobius function on Z[i]: 1 on units, (-1)^k on squarefree, else 0."""
    if not q:
        raise ValueError("mobius is undefined at zero")
    f = factor(q)
    if any(e > 1 for _, e in f.primes):
        return 0
    return -1 if len(f.primes) % 2 else 1


def phi_i(q: GaussianInt) -> int:
    """Order of the unit group of Z[i]/(q), computed multiplicatively.

    phi(p^e) = N(p)^e - N(p)^(e-1); units map to 1, which is the value
    forced by the divisor-sum identity sum_{d|q} phi(d) = norm(q).
    """
    if not q:
        raise ValueError("phi is undefined at zero")
    out = 1
    for p, e in factor(q).primes:
        n = p.norm()
        out *= (n - 1) * n ** (e - 1)
    return out


def divisors(q: GaussianInt) -> list[GaussianInt]:
    """All canonical divisors of q, sorted by (norm, re, im)."""
    if not q:
        raise ValueError("zero has infinitely many divisors")
    divs = [ONE]
    for p, e in factor(q).primes:
        powers = []
        pk = ONE
        for _ in range(e):
            pk = pk * p
            powers.append(pk)
        divs = [d * pk for d in divs for pk in [ONE] + powers]
        # dedupe not needed: distinct exponent vectors give distinct divisors
    divs = [canonicalize(d) for d in divs]
    divs.sort(key=GaussianInt.key)
    return divs


# ---------------------------------------------------------------------------
# Bulk sieve for phi over the canonical quadrant
# ---------------------------------------------------------------------------


def _norm_limit_from_radius(radius) -> int:
    """floor(radius^2) computed exactly for int/float/Fraction radii."""
    if isinstance(radius, int):
        return radius * radius
    from fractions import Fraction

    r2 = Fraction(radius) ** 2
    return int(r2.numerator // r2.denominator)


class PhiTable:
    """phi values for every canonical s with norm(s) <= norm_limit.

    Backed by a dense [re, im] grid so bulk consumers can use the array
    directly; the mapping interface serves per-element lookups.
    """

    def __init__(self, radius, norm_limit: int, grid: np.ndarray):
        self.radius = radius
        self.norm_limit = norm_limit
        self.grid = grid  # int64, 0 outside the canonical disk sector

    def __getitem__(self, s: GaussianInt) -> int:
        if not s.is_canonical() or s.norm() > self.norm_limit:
            raise KeyError(s)
        return int(self.grid[s.re, s.im])

    def __contains__(self, s) -> bool:
        return (
            isinstance(s, GaussianInt)
            and s.is_canonical()
            and s.norm() <= self.norm_limit
        )

    def __len__(self) -> int:
        return int(np.count_nonzero(self.grid))

    def items(self):
        """(element, phi) pairs in (norm, re) order."""
        res, ims = np.nonzero(self.grid)
        norms = res.astype(np.int64) ** 2 + ims.astype(np.int64) ** 2
        order = np.lexsort((ims, res, norms))
        for idx in order:
            yield GaussianInt(int(res[idx]), int(ims[idx])), int(
                self.grid[res[idx], ims[idx]]
            )

    def norm_sums(self) -> tuple[np.ndarray, np.ndarray]:
        """(norm values ascending, total phi over canonical s of that norm)."""
        res, ims = np.nonzero(self.grid)
        norms = res.astype(np.int64) ** 2 + ims.astype(np.int64) ** 2
        phis = self.grid[res, ims]
        # weighted bincount in float64 is exact here: every partial sum
        # stays far below 2^53
        sums = np.bincount(norms, weights=phis.astype(np.float64))
        nz = np.nonzero(sums)[0]
        out = sums[nz]
        if out.size and out.max() >= 2**53:
            raise OverflowError("phi norm sums exceed exact float64 range")
        return nz.astype(np.int64), out.astype(np.int64)


def phi_sieve(radius) -> PhiTable:
    """Tabulate phi on every canonical s with |s| <= radius.

    Standard multiplicative sieve on the lattice: start each cell at its
    norm, then for every Gaussian prime p divide out one factor of N(p)
    and multiply by N(p) - 1 on each canonical multiple of p.  Each
    multiple m of p is visited exactly once (via z = m/p), so the update
    applies once per distinct prime divisor.
    """
    if not radius >= 1:
        raise ValueError("radius must be >= 1")
    norm_limit = _norm_limit_from_radius(radius)
    n = math.isqrt(norm_limit)
    coords = np.arange(n + 1, dtype=np.int64)
    norm_grid = coords[:, None] ** 2 + coords[None, :] ** 2
    inside = (norm_grid <= norm_limit) & (coords[:, None] > 0)
    phi = np.where(inside, norm_grid, 0)

    prime_re, prime_im, prime_norm = _prime_arrays(norm_limit)

    # Regime split: small-norm primes get their own multiple grid; for
    # large-norm primes the multiplier z is small, so batch over primes
    # for each fixed z instead.
    batch_threshold = max(64, norm_limit // 256)
    small = prime_norm <= batch_threshold
    for a, b, np_ in zip(prime_re[small], prime_im[small], prime_norm[small]):
        _apply_prime_grid(phi, int(a), int(b), int(np_), norm_limit, n)
    _apply_prime_batches(
        phi,
        prime_re[~small],
        prime_im[~small],
        prime_norm[~small],
        norm_limit,
        n,
    )
    return PhiTable(radius, norm_limit, phi)


def _prime_arrays(norm_limit: int):
    """Canonical Gaussian primes with norm <= norm_limit, as arrays."""
    ps = _rational_primes(norm_limit)
    res: list[int] = []
    ims: list[int] = []
    if norm_limit >= 2:
        res.append(1)
        ims.append(1)
    for p in ps:
        p = int(p)
        if p == 2:
            continue
        if p % 4 == 1:
            pi = _prime_above(p)
            res.append(pi.re)
            ims.append(pi.im)
            cj = canonicalize(pi.conjugate())
            res.append(cj.re)
            ims.append(cj.im)
        elif p * p <= norm_limit:
            res.append(p)
            ims.append(0)
    re_arr = np.array(res, dtype=np.int64)
    im_arr = np.array(ims, dtype=np.int64)
    norm_arr = re_arr**2 + im_arr**2
    order = np.argsort(norm_arr, kind="stable")
    return re_arr[order], im_arr[order], norm_arr[order]


def _apply_prime_grid(phi, a, b, np_, norm_limit, n):
    """Update phi on all canonical multiples of the prime a+bi."""
    zr = math.isqrt(norm_limit // np_)
    z = np.arange(-zr, zr + 1, dtype=np.int64)
    zx = z[:, None]
    zy = z[None, :]
    mre = a * zx - b * zy
    mim = a * zy + b * zx
    keep = (mre > 0) & (mim >= 0) & (mre <= n) & (mim <= n)
    mre = mre[keep]
    mim = mim[keep]
    keep2 = mre**2 + mim**2 <= norm_limit
    mre = mre[keep2]
    mim = mim[keep2]
    phi[mre, mim] = phi[mre, mim] // np_ * (np_ - 1)


def _apply_prime_batches(phi, p_re, p_im, p_norm, norm_limit, n):
    """Update phi for all large primes at once, one multiplier z at a time."""
    if p_norm.size == 0:
        return
    min_norm = int(p_norm[0])
    zmax_sq = norm_limit // min_norm
    zr = math.isqrt(zmax_sq)
    for zx in range(-zr, zr + 1):
        for zy in range(-zr, zr + 1):
            nz = zx * zx + zy * zy
            if nz == 0 or nz > zmax_sq:
                continue
            hi = np.searchsorted(p_norm, norm_limit // nz, side="right")
            if hi == 0:
                continue
            a = p_re[:hi]
            b = p_im[:hi]
            np_ = p_norm[:hi]
            mre = a * zx - b * zy
            mim = a * zy + b * zx
            keep = (mre > 0) & (mim >= 0) & (mre <= n) & (mim <= n)
            if not keep.any():
                continue
            mre = mre[keep]
            mim = mim[keep]
            npk = np_[keep]
            keep2 = mre**2 + mim**2 <= norm_limit
            mre = mre[keep2]
            mim = mim[keep2]
            npk = npk[keep2]
            phi[mre, mim] = phi[mre, mim] // npk * (npk - 1)


def canonical_elements(norm_limit: int) -> list[GaussianInt]:
    """All canonical elements with norm <= norm_limit, sorted by (norm, re, im)."""
    n = math.isqrt(norm_limit)
    out = []
    for a in range(1, n + 1):
        bmax = math.isqrt(norm_limit - a * a)
        for b in range(0, bmax + 1):
            out.append(GaussianInt(a, b))
    out.sort(key=GaussianInt.key)
    return out
