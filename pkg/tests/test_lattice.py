import math
from fractions import Fraction

import numpy as np
import pytest

from fordspheres.gaussint import GaussianInt, canonical_elements
from fordspheres.lattice import (
    OmegaRegion,
    _count_omega_full_scan,
    count_lattice_in_disk,
    count_omega_coprime,
    count_omega_lattice,
    gauss_error_profile,
    omega_area,
    r2,
    r2_scan,
    r2_summatory,
    sum_inverse_norms,
)

G = GaussianInt


class TestR2:
    @pytest.mark.parametrize("n,expected", [(1, 4), (3, 0), (25, 12), (2, 4), (5, 8)])
    def test_examples(self, n, expected):
        assert r2(n) == expected
        assert r2_scan(n) == expected

    def test_formula_matches_scan(self):
        for n in range(1, 501):
            assert r2(n) == r2_scan(n), n

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            r2(0)
        with pytest.raises(ValueError):
            r2_scan(0)


class TestSummatory:
    def test_small_values(self):
        assert r2_summatory(1) == 4
        assert r2_summatory(2) == 8

    def test_equals_disk_count_minus_one(self):
        for N in (1, 2, 7, 100, 3600, 10_000):
            # disk of radius sqrt(N) by independent row counting
            X = math.isqrt(N)
            disk = sum(2 * math.isqrt(N - x * x) + 1 for x in range(-X, X + 1))
            assert r2_summatory(N) == disk - 1

    def test_matches_r2_accumulation(self):
        acc = 0
        for n in range(1, 200):
            acc += r2(n)
            assert r2_summatory(n) == acc


class TestDiskCount:
    @pytest.mark.parametrize(
        "radius,expected", [(0.5, 1), (1, 5), (2.5, 21), (0, 1), (2, 13)]
    )
    def test_origin_examples(self, radius, expected):
        assert count_lattice_in_disk(radius) == expected

    def test_rational_center_against_scan(self):
        centers = [(Fraction(1, 3), Fraction(1, 7)), (Fraction(-5, 2), Fraction(0)), (Fraction(9, 4), Fraction(-3, 5))]
        for cx, cy in centers:
            for radius in (Fraction(1, 2), Fraction(7, 3), 4):
                r_sq = Fraction(radius) ** 2
                lo_x = math.floor(cx - radius) - 1
                hi_x = math.ceil(cx + radius) + 1
                lo_y = math.floor(cy - radius) - 1
                hi_y = math.ceil(cy + radius) + 1
                scan = sum(
                    1
                    for x in range(lo_x, hi_x + 1)
                    for y in range(lo_y, hi_y + 1)
                    if (x - cx) ** 2 + (y - cy) ** 2 <= r_sq
                )
                assert count_lattice_in_disk(radius, (cx, cy)) == scan

    def test_boundary_is_closed(self):
        # radius exactly 1: the four boundary points count
        assert count_lattice_in_disk(1) == 5
        assert count_lattice_in_disk(Fraction(99999, 100000)) == 1


class TestOmegaArea:
    def test_zero(self):
        assert omega_area(5, 0.0) == 0.0

    def test_at_t_equal_S(self):
        for S in (1, 5, 17):
            assert omega_area(S, float(S)) == pytest.approx(math.pi * S * S, rel=1e-12)

    def test_at_diagonal_limit(self):
        S = 7
        assert omega_area(S, math.sqrt(2) * S) == pytest.approx(
            (2 * math.pi - 4) * S * S, rel=1e-12
        )

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            omega_area(5, -0.1)
        with pytest.raises(ValueError):
            omega_area(5, 5 * math.sqrt(2) + 0.01)

    def test_monte_carlo_membership(self):
        # area of the region for s with |s| = t: MC over the disk of radius S
        rng = np.random.default_rng(20260808)
        S, s = 10, G(6, 3)
        t = math.sqrt(s.norm())
        n = 4_000_000
        pts = rng.uniform(-S, S, size=(n, 2))
        inside = pts[:, 0] ** 2 + pts[:, 1] ** 2 <= S * S
        p = pts[inside]
        shifts = [(s.re, s.im), (-s.im, s.re), (-s.re, -s.im), (s.im, -s.re)]
        outside_one = np.zeros(len(p), dtype=bool)
        for dx, dy in shifts:
            outside_one |= (p[:, 0] + dx) ** 2 + (p[:, 1] + dy) ** 2 > S * S
        mc_area = outside_one.mean() * math.pi * S * S
        assert omega_area(S, t) == pytest.approx(mc_area, rel=0.005)


class TestOmegaRegion:
    def test_validation(self):
        with pytest.raises(ValueError):
            OmegaRegion(G(0, 0), 5)
        with pytest.raises(ValueError):
            OmegaRegion(G(-1, 2), 5)  # not canonical
        with pytest.raises(ValueError):
            OmegaRegion(G(5, 5), 5)  # |s| > S

    def test_S1_counts(self):
        res = count_omega_lattice(OmegaRegion(G(1, 0), 1))
        assert res.count == 4
        assert res.area == pytest.approx(math.pi)
        assert res.discrepancy == pytest.approx(4 - math.pi)

    def test_S2_matches_full_scan(self):
        region = OmegaRegion(G(1, 0), 2)
        assert count_omega_lattice(region).count == _count_omega_full_scan(region) == 8

    def test_quarter_fold_equals_full_scan(self):
        for S in (3, 6):
            for s in canonical_elements(S * S):
                region = OmegaRegion(s, S)
                assert count_omega_lattice(region).count == _count_omega_full_scan(region)

    def test_count_divisible_by_four(self):
        for s in canonical_elements(49):
            assert count_omega_lattice(OmegaRegion(s, 7)).count % 4 == 0

    def test_rotation_invariance_of_membership(self):
        region = OmegaRegion(G(2, 1), 4)
        for x in range(-4, 5):
            for y in range(-4, 5):
                z = G(x, y)
                assert region.contains(z) == region.contains(G(-y, x))


class TestCoprimeCount:
    def test_s_equal_one_is_plain_count(self):
        for S in (1, 2, 5):
            region = OmegaRegion(G(1, 0), S)
            assert count_omega_coprime(region) == count_omega_lattice(region).count

    def test_dual_backends_agree_exhaustively(self):
        for S in range(1, 11):
            for s in canonical_elements(S * S):
                region = OmegaRegion(s, S)
                assert count_omega_coprime(region, "scan") == count_omega_coprime(
                    region, "mobius"
                ), (S, str(s))

    def test_dual_backends_spot_check_larger(self):
        region = OmegaRegion(G(4, 3), 20)
        assert count_omega_coprime(region, "scan") == count_omega_coprime(region, "mobius")

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            count_omega_coprime(OmegaRegion(G(1, 0), 2), "nope")


class TestGaussProfile:
    def test_small_N(self):
        prof = gauss_error_profile(10, samples=2)
        first = prof.samples[0]
        assert first[0] == 1 and first[1] == 4
        assert first[2] == pytest.approx(abs(4 - math.pi))
        assert first[2] < 1

    def test_envelope_and_monotonicity(self):
        prof = gauss_error_profile(10_000)
        assert prof.max_ratio <= 8.0
        sums = [row[1] for row in prof.samples]
        assert sums == sorted(sums)

    def test_validation(self):
        with pytest.raises(ValueError):
            gauss_error_profile(5)


def test_sum_inverse_norms_small_exact():
    # norms 1, 2, 4 within radius 2: 4/1 + 4/2 + 4/4 = 7
    assert sum_inverse_norms(2) == pytest.approx(7.0, abs=1e-12)


def test_sum_inverse_norms_log_growth():
    diffs = [sum_inverse_norms(R) - 2 * math.pi * math.log(R) for R in (100, 200, 400)]
    assert max(diffs) - min(diffs) < 0.05
