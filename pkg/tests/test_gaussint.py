import math
from fractions import Fraction

import pytest

from fordspheres.gaussint import (
    GaussianInt,
    UNITS,
    canonical_associate,
    canonicalize,
    canonical_elements,
    divisors,
    factor,
    gaussian_primes,
    gcd_gaussian,
    is_unit,
    mobius_i,
    phi_i,
    phi_sieve,
    xgcd_gaussian,
)

G = GaussianInt


def box(limit):
    for x in range(-limit, limit + 1):
        for y in range(-limit, limit + 1):
            if x or y:
                yield G(x, y)


class TestUnits:
    def test_closed_under_multiplication_with_inverses(self):
        units = set(UNITS)
        for u in UNITS:
            assert {u * v for v in UNITS} == units
            assert any(u * v == G(1, 0) for v in UNITS)


class TestCanonicalAssociate:
    def test_unit_rotation(self):
        assert canonical_associate(G(0, 2)) == (G(0, -1), G(2, 0))

    def test_already_canonical(self):
        assert canonical_associate(G(3, 0)) == (G(1, 0), G(3, 0))

    def test_negative_diagonal(self):
        # brute force over the four associates confirms 1+i is the pick
        q = G(-1, -1)
        candidates = [u * q for u in UNITS]
        canonical = [c for c in candidates if c.re > 0 and c.im >= 0]
        assert canonical == [G(1, 1)]
        assert canonical_associate(q) == (G(-1, 0), G(1, 1))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            canonical_associate(G(0, 0))

    def test_exactly_one_associate_canonical(self):
        for q in box(6):
            canon = [u * q for u in UNITS if (u * q).re > 0 and (u * q).im >= 0]
            assert len(canon) == 1
            u, c = canonical_associate(q)
            assert u * q == c == canon[0]
            # idempotent
            assert canonical_associate(c) == (G(1, 0), c)


class TestGcd:
    def test_examples(self):
        assert gcd_gaussian(G(2, 0), G(1, 1)) == G(1, 1)
        assert gcd_gaussian(G(5, 0), G(3, 4)) == G(2, 1)  # 3+4i = (2+i)^2 up to a unit
        assert gcd_gaussian(G(-3, 0), G(0, 0)) == G(3, 0)

    def test_both_zero_rejected(self):
        with pytest.raises(ValueError):
            gcd_gaussian(G(0, 0), G(0, 0))

    def test_divides_both_and_is_maximal(self):
        elems = canonical_elements(100)
        for a in elems[::5]:
            for b in elems[::7]:
                g = gcd_gaussian(a, b)
                assert (a * g.conjugate()).re % g.norm() == 0
                # brute-force maximal common divisor by norm
                best = None
                for d in canonical_elements(min(a.norm(), b.norm())):
                    nd = d.norm()
                    da = (a.re * d.re + a.im * d.im) % nd == 0 and (
                        a.im * d.re - a.re * d.im
                    ) % nd == 0
                    db = (b.re * d.re + b.im * d.im) % nd == 0 and (
                        b.im * d.re - b.re * d.im
                    ) % nd == 0
                    if da and db and (best is None or nd > best.norm()):
                        best = d
                assert g == best

    def test_xgcd_bezout(self):
        for a in canonical_elements(50)[::3]:
            for b in canonical_elements(50)[::4]:
                g, x, y = xgcd_gaussian(a, b)
                assert x * a + y * b == g
                assert g == gcd_gaussian(a, b)


class TestFactor:
    def test_unit(self):
        f = factor(G(1, 0))
        assert f.unit == G(1, 0) and f.primes == ()

    def test_two(self):
        f = factor(G(2, 0))
        assert f.unit == G(0, -1)
        assert f.primes == ((G(1, 1), 2),)

    def test_five(self):
        f = factor(G(5, 0))
        assert f.unit == G(0, -1)
        assert f.primes == ((G(1, 2), 1), (G(2, 1), 1))
        assert f.recombine() == G(5, 0)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factor(G(0, 0))

    def test_recombine_identity_to_norm_1e4(self):
        for q in canonical_elements(10_000):
            f = factor(q)
            assert f.recombine() == q
            assert all(p.is_canonical() for p, _ in f.primes)
            assert len({(p.re, p.im) for p, _ in f.primes}) == len(f.primes)
            norms = [p.norm() for p, _ in f.primes]
            assert norms == sorted(norms)


class TestMultiplicativeFunctions:
    def test_mobius_examples(self):
        assert mobius_i(G(1, 0)) == 1
        assert mobius_i(G(1, 1)) == -1  # prime: its norm 2 is a rational prime
        assert mobius_i(G(2, 0)) == 0  # squared prime

    def test_phi_examples(self):
        assert phi_i(G(1, 0)) == 1
        assert phi_i(G(1, 1)) == 1
        assert phi_i(G(2, 1)) == 4
        assert phi_i(G(2, 0)) == 2

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            mobius_i(G(0, 0))
        with pytest.raises(ValueError):
            phi_i(G(0, 0))

    def test_divisor_sum_identities_to_modulus_40(self):
        for q in canonical_elements(1600):
            divs = divisors(q)
            assert sum(phi_i(d) for d in divs) == q.norm()
            assert sum(mobius_i(d) for d in divs) == (1 if q.norm() == 1 else 0)
            assert Fraction(phi_i(q), q.norm()) == sum(
                Fraction(mobius_i(d), d.norm()) for d in divs
            )

    def test_multiplicativity_on_coprime_pairs(self):
        elems = canonical_elements(100)
        for a in elems:
            for b in elems:
                if a.norm() * b.norm() > 100:
                    continue
                if not is_unit(gcd_gaussian(a, b)):
                    continue
                ab = canonicalize(a * b)
                assert phi_i(ab) == phi_i(a) * phi_i(b)
                assert mobius_i(ab) == mobius_i(a) * mobius_i(b)


class TestDivisors:
    def test_examples(self):
        assert divisors(G(1, 0)) == [G(1, 0)]
        assert divisors(G(2, 0)) == [G(1, 0), G(1, 1), G(2, 0)]
        assert divisors(G(2, 1)) == [G(1, 0), G(2, 1)]

    def test_two_cross_checked_by_norm_scan(self):
        # every canonical d with norm <= 4 dividing 2, by direct test
        two = G(2, 0)
        scan = [
            d
            for d in canonical_elements(4)
            if (two.re * d.re + two.im * d.im) % d.norm() == 0
            and (two.im * d.re - two.re * d.im) % d.norm() == 0
        ]
        assert scan == divisors(two)

    def test_each_divides(self):
        for q in canonical_elements(200)[::3]:
            for d in divisors(q):
                w = q * d.conjugate()
                assert w.re % d.norm() == 0 and w.im % d.norm() == 0


class TestGaussianPrimes:
    def test_norm_structure(self):
        for p in gaussian_primes(200):
            n = p.norm()
            assert divisors(p) == [G(1, 0), p]
            if n != 2:
                root = math.isqrt(n)
                is_square = root * root == n
                assert (n % 4 == 1) or (is_square and root % 4 == 3)

    def test_split_primes_come_in_conjugate_pairs(self):
        primes = gaussian_primes(100)
        by_norm = {}
        for p in primes:
            by_norm.setdefault(p.norm(), []).append(p)
        rational_primes = {p for p in range(2, 101) if all(p % d for d in range(2, p))}
        for n, ps in by_norm.items():
            if n in rational_primes and n % 4 == 1:
                assert len(ps) == 2
                assert canonicalize(ps[0].conjugate()) == ps[1]


class TestPhiSieve:
    def test_radius_one(self):
        t = phi_sieve(1)
        assert len(t) == 1
        assert t[G(1, 0)] == 1

    def test_radius_two_exact_table(self):
        t = phi_sieve(2)
        assert dict(t.items()) == {G(1, 0): 1, G(1, 1): 1, G(2, 0): 2}
        assert G(2, 1) not in t  # norm 5 exceeds radius 2

    def test_matches_per_element_to_radius_40(self):
        t = phi_sieve(40)
        count = 0
        for s, value in t.items():
            assert value == phi_i(s), s
            count += 1
        assert count == len(t) > 1200

    def test_norm_sums_consistent(self):
        t = phi_sieve(20)
        n_vals, sums = t.norm_sums()
        total = {}
        for s, v in t.items():
            total[s.norm()] = total.get(s.norm(), 0) + v
        assert dict(zip(n_vals.tolist(), sums.tolist())) == total

    def test_invalid_radius(self):
        with pytest.raises(ValueError):
            phi_sieve(0.5)
