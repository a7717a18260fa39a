"""Exact moments of center distances between consecutive sphere pairs.

The k-th moment at bound S is the sum of (1/2|s|^2 + 1/2|s'|^2)^k over
unordered consecutive fraction pairs.  Two independent routes compute
it:

- moment_oracle: literal enumeration of fraction pairs (small S);
- moment_exact: region counting grouped by denominator norms, reduced
  with exact rational ladder sums, plus an explicit correction for the
  axis-degenerate denominator pairs that carry more than the generic
  four numerator pairs.

Everything on the moment path is exact rational arithmetic; floats
appear only in reporting and fitting.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from multiprocessing import get_context

import numpy as np

from fordspheres import _regionscan
from fordspheres._exactsum import ladder_sum, ladder_combine
from fordspheres.gaussint import (
    GaussianInt,
    canonical_elements,
    canonicalize,
    phi_sieve,
)
from fordspheres.ford import (
    are_consecutive_denoms,
    are_consecutive_fractions,
    consecutive_pairs,
    enumerate_GS,
    numerator_pair_count,
)
from fordspheres.lattice import omega_area

__all__ = [
    "MomentValue",
    "DecompositionReport",
    "MomentSeries",
    "moment_exact",
    "moment_oracle",
    "moment_batch",
    "sigma_decomposition",
    "moment_series",
    "fit_leading",
]

ORACLE_LIMIT = 8


@dataclass(frozen=True)
class MomentValue:
    k: int
    S: int
    value: Fraction

    @property
    def value_float(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class DecompositionReport:
    """Split of the k-th moment into pure and mixed binomial terms.

    sigma1 collects 1/(2|s|^2)^k + 1/(2|s'|^2)^k per pair, sigma2 the
    mixed terms; sigma1 + sigma2 equals the moment exactly.  sigma3 is
    the float diagnostic sum(phi(s)/|s|^(2k+2) * area(s)).
    """

    k: int
    S: int
    sigma1: Fraction
    sigma2: Fraction
    sigma3: float


@dataclass(frozen=True)
class MomentSeries:
    k: int
    rows: tuple[tuple[int, Fraction, float], ...]
    fit: tuple[float, float, dict]


def _resolve_threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("FORD_MOMENTS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# Exact fast path: norm rows -> ladder sums
# ---------------------------------------------------------------------------


def _row_reduce(m: int, n_vals, counts, ks: tuple[int, ...], K: int):
    """Exact per-row packet: for each k, numerators of (moment, sigma1,
    sigma2) row contributions over a shared denominator.

    Row value identities, with H_j = sum_n counts[n]/n^j:
      moment-row(k) = sum_{i=0..k} C(k,i) m^i H_i
      sigma1-row(k) = H_0 + m^k H_k
    both later scaled by 1/(2^k m^k) and the global pair weight 1/2.
    """
    s2_max = int(n_vals[-1])
    cmax = int(counts.max())
    safe = cmax * s2_max ** (K - 1) < 2**62 and s2_max**K < 2**62
    if safe:
        dens = (n_vals.astype(np.int64) ** K).tolist()
        streams = [
            (counts * n_vals ** (K - j)).tolist() for j in range(1, K + 1)
        ]
    else:
        nl = [int(x) for x in n_vals]
        cl = [int(x) for x in counts]
        dens = [n**K for n in nl]
        streams = [[c * n ** (K - j) for c, n in zip(cl, nl)] for j in range(1, K + 1)]
    hnums, den = ladder_sum(streams, dens)
    h0 = int(counts.sum())
    h0_den = h0 * den
    out_nums: list[int] = []
    for k in ks:
        num_m = h0_den
        for i in range(1, k + 1):
            num_m += comb(k, i) * m**i * hnums[i - 1]
        num_s1 = h0_den + m**k * hnums[k - 1]
        scale = m ** (K - k)
        out_nums.extend((num_m * scale, num_s1 * scale, (num_m - num_s1) * scale))
    return out_nums, den * m**K


def _chunk_worker(args):
    S, ks, K, classes = args
    packets = []
    records = 0
    for m, lo, n_vals, counts in _regionscan.scan_rows(S, classes):
        records += int(counts.sum())
        packets.append(_row_reduce(m, n_vals, counts, ks, K))
    if not packets:
        return ([0] * (3 * len(ks)), 1), 0
    return ladder_combine(packets), records


def _make_chunks(S: int, pieces: int = 32):
    classes = _regionscan.norm_classes(S)
    costs = [
        (S * S - _regionscan.annulus_floor(S, m)) * len(reps) for m, reps in classes
    ]
    total = sum(costs)
    target = max(1, total // pieces)
    chunks, cur, acc = [], [], 0
    for item, c in zip(classes, costs):
        cur.append(item)
        acc += c
        if acc >= target and len(chunks) < pieces - 1:
            chunks.append(cur)
            cur, acc = [], 0
    if cur:
        chunks.append(cur)
    return chunks


def _axis_corrections(S: int, ks: tuple[int, ...]):
    """Exact correction terms for denominator pairs with s*s' on an axis.

    The generic accounting assumes four numerator pairs per class pair;
    on the rays s' ~ conj(s)*t the true count can reach eight.  The
    candidates are O(S^2 log S) in total, so an explicit pass is cheap.
    """
    out = {k: [Fraction(0), Fraction(0)] for k in ks}
    for s in canonical_elements(S * S):
        a, b = s.re, s.im
        c = math.gcd(a, b)
        va, vb = a // c, -b // c
        nv = va * va + vb * vb
        t = 1
        while t * t * nv <= S * S:
            sp = canonicalize(GaussianInt(t * va, t * vb))
            t += 1
            if sp.key() <= s.key():
                continue
            if not are_consecutive_denoms(s, sp, S):
                continue
            cnt = numerator_pair_count(s, sp, S)
            if cnt == 4:
                continue
            m, n = s.norm(), sp.norm()
            for k in ks:
                term_m = Fraction(m + n, 2 * m * n) ** k
                term_s1 = Fraction(1, (2 * m) ** k) + Fraction(1, (2 * n) ** k)
                out[k][0] += (cnt - 4) * term_m
                out[k][1] += (cnt - 4) * term_s1
    return out


_BATCH_CACHE: dict = {}


def moment_batch(
    ks, S: int, threads: int | None = None
) -> dict[int, dict[str, Fraction]]:
    """Exact moments and their pure/mixed splits for several k at once.

    The region scan and the denominator ladder are shared across all
    requested k, so batching k=2 and k=3 costs barely more than one of
    them.  Results are bit-identical for any thread count: the work is
    split into a fixed chunk list and recombined in chunk order with
    exact arithmetic.
    """
    ks = tuple(sorted(set(int(k) for k in ks)))
    if not ks or ks[0] < 1:
        raise ValueError("moment order k must be >= 1")
    if S < 1:
        raise ValueError("S must be a positive integer")
    key = (S, ks)
    if key in _BATCH_CACHE:
        return _BATCH_CACHE[key]
    K = ks[-1]
    threads = _resolve_threads(threads)
    chunks = _make_chunks(S)
    args = [(S, ks, K, chunk) for chunk in chunks]
    if threads == 1 or len(chunks) == 1:
        results = [_chunk_worker(a) for a in args]
    else:
        with get_context("fork").Pool(processes=threads) as pool:
            results = pool.map(_chunk_worker, args)
    packet = ladder_combine([r[0] for r in results])
    nums, den = packet
    corrections = _axis_corrections(S, ks)
    out: dict[int, dict[str, Fraction]] = {}
    for pos, k in enumerate(ks):
        scale = den * 2 ** (k + 1)
        moment = Fraction(nums[3 * pos], scale)
        sigma1 = Fraction(nums[3 * pos + 1], scale)
        sigma2 = Fraction(nums[3 * pos + 2], scale)
        d_m, d_s1 = corrections[k]
        moment += d_m
        sigma1 += d_s1
        sigma2 += d_m - d_s1
        if S == 1:
            # the four unit partners of s=1 pair the denominator class
            # with itself, so its records carry weight 1, not 1/2
            diag_m = Fraction(2)
            diag_s1 = Fraction(4, 2**k)
            moment += diag_m
            sigma1 += diag_s1
            sigma2 += diag_m - diag_s1
        out[k] = {"moment": moment, "sigma1": sigma1, "sigma2": sigma2}
    if len(_BATCH_CACHE) >= 32:
        _BATCH_CACHE.pop(next(iter(_BATCH_CACHE)))
    _BATCH_CACHE[key] = out
    return out


def _cached_batch_value(k: int, S: int, threads):
    for (s_key, ks_key), table in _BATCH_CACHE.items():
        if s_key == S and k in ks_key:
            return table[k]
    return moment_batch([k], S, threads)[k]


def moment_exact(k: int, S: int, threads: int | None = None) -> MomentValue:
    """Exact rational M_k(S) via the region route (any S)."""
    return MomentValue(k=k, S=S, value=_cached_batch_value(k, S, threads)["moment"])


# ---------------------------------------------------------------------------
# Oracle and record paths (independent slow routes)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4)
def _oracle_pairs(S: int):
    fractions = enumerate_GS(S)
    dists = []
    for f, g in itertools.combinations(fractions, 2):
        if are_consecutive_fractions(f, g, S):
            dists.append(
                Fraction(1, 2 * f.s.norm()) + Fraction(1, 2 * g.s.norm())
            )
    return tuple(dists)


def moment_oracle(k: int, S: int, limit: int = ORACLE_LIMIT) -> MomentValue:
    """Literal quadratic-time enumeration over all fraction pairs."""
    if k < 1:
        raise ValueError("moment order k must be >= 1")
    if S > limit:
        raise ValueError(f"oracle is quadratic in |G_S|; S={S} exceeds limit {limit}")
    total = sum((d**k for d in _oracle_pairs(S)), Fraction(0))
    return MomentValue(k=k, S=S, value=total)


def _moment_record_path(k: int, S: int) -> Fraction:
    """Half-weighted record stream plus the same degenerate corrections.

    Slow (streams every record through Python objects); used as an
    intermediate cross-check between the oracle and the fast path.
    """
    total = sum((rec.distance**k for rec in consecutive_pairs(S)), Fraction(0))
    total /= 2
    corr = _axis_corrections(S, (k,))
    total += corr[k][0]
    if S == 1:
        total += 2
    return total


# ---------------------------------------------------------------------------
# Decomposition and series fitting
# ---------------------------------------------------------------------------


def sigma_decomposition(
    k: int, S: int, threads: int | None = None
) -> DecompositionReport:
    """Pure/mixed binomial split with the float area-weighted diagnostic."""
    if k < 2:
        raise ValueError("the decomposition needs k >= 2")
    table = _cached_batch_value(k, S, threads)
    return DecompositionReport(
        k=k,
        S=S,
        sigma1=table["sigma1"],
        sigma2=table["sigma2"],
        sigma3=_sigma3_diagnostic(k, S),
    )


def _sigma3_diagnostic(k: int, S: int) -> float:
    n_vals, phi_sums = phi_sieve(S).norm_sums()
    total = 0.0
    comp = 0.0
    for n, p in zip(n_vals.tolist(), phi_sums.tolist()):
        term = p / n ** (k + 1) * omega_area(S, math.sqrt(n))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def fit_leading(series, exponent: float) -> tuple[float, float]:
    """Least-squares leading coefficient and residual decay exponent.

    The coefficient c in value ~ c*S^exponent is fitted on the largest-S
    half of the rows; the residual exponent is the log-log slope of
    |value - c*S^exponent| over all rows.  Zero residuals (synthetic
    exact data) report -inf.
    """
    rows = series.rows if isinstance(series, MomentSeries) else series
    pts = [(int(s), float(v)) for s, v, *_ in rows]
    if len(pts) < 3:
        raise ValueError("need at least 3 rows to fit")
    pts.sort()
    half = pts[len(pts) // 2 :]
    ss = np.array([p[0] for p in half], dtype=np.float64)
    vv = np.array([p[1] for p in half], dtype=np.float64)
    weights = ss**exponent
    coeff = float(np.dot(vv, weights) / np.dot(weights, weights))
    all_s = np.array([p[0] for p in pts], dtype=np.float64)
    all_v = np.array([p[1] for p in pts], dtype=np.float64)
    resid = np.abs(all_v - coeff * all_s**exponent)
    scale = np.max(np.abs(all_v))
    if np.all(resid <= 1e-13 * max(scale, 1.0)):
        return coeff, float("-inf")
    resid = np.maximum(resid, 1e-300)
    slope = float(np.polyfit(np.log(all_s), np.log(resid), 1)[0])
    return coeff, slope


def moment_series(k: int, S_list, threads: int | None = None) -> MomentSeries:
    """Exact values over an increasing grid of S with an asymptotic fit."""
    s_vals = [int(s) for s in S_list]
    if not s_vals or any(b <= a for a, b in zip(s_vals, s_vals[1:])):
        raise ValueError("S_list must be nonempty and strictly increasing")
    rows = []
    for S in s_vals:
        v = _cached_batch_value(k, S, threads)["moment"]
        rows.append((S, v, float(v)))
    exponent = 2.0 if k == 1 else 1.0
    if len(rows) >= 3:
        coeff, resid_exp = fit_leading(rows, exponent)
        diag = {
            "exponent": exponent,
            "window": [r[0] for r in rows[len(rows) // 2 :]],
            "status": "ok",
        }
    else:
        coeff, resid_exp = float("nan"), float("nan")
        diag = {"exponent": exponent, "status": "insufficient data"}
    return MomentSeries(k=k, rows=tuple(rows), fit=(coeff, resid_exp, diag))
