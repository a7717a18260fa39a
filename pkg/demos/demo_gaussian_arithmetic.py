#!/usr/bin/env python3
"""A walk through exact Gaussian-integer arithmetic.

Canonical associates, the Euclidean gcd, unique factorization, and the
multiplicative functions phi and mu -- everything the rest of the
library is built on.
"""

from fractions import Fraction

from fordspheres import (
    GaussianInt,
    canonical_associate,
    divisors,
    factor,
    gcd_gaussian,
    mobius_i,
    phi_i,
    phi_sieve,
)

G = GaussianInt

print("Every nonzero Gaussian integer has exactly one associate in the")
print("canonical quadrant (re > 0, im >= 0):")
for q in (G(0, 2), G(-1, -1), G(3, -4)):
    u, c = canonical_associate(q)
    print(f"   {q}  =  ({u})^-1 * {c}   [unit {u} rotates it back]")

print("\ngcd via the Euclidean algorithm (nearest-lattice-point division):")
for a, b in ((G(2, 0), G(1, 1)), (G(5, 0), G(3, 4)), (G(17, 29), G(7, -3))):
    print(f"   gcd({a}, {b}) = {gcd_gaussian(a, b)}")

print("\nUnique factorization into canonical primes:")
for q in (G(2, 0), G(5, 0), G(-17, 29)):
    f = factor(q)
    parts = " * ".join(f"({p})^{e}" if e > 1 else f"({p})" for p, e in f.primes)
    print(f"   {q} = ({f.unit}) * {parts}")

print("\nThe divisor-sum identities that pin down phi and mu:")
q = G(4, 2)
divs = divisors(q)
print(f"   divisors({q}) = {[str(d) for d in divs]}")
print(f"   sum phi(d) = {sum(phi_i(d) for d in divs)} = norm({q}) = {q.norm()}")
print(f"   sum mu(d)  = {sum(mobius_i(d) for d in divs)}  (zero: {q} is not a unit)")
lhs = Fraction(phi_i(q), q.norm())
rhs = sum(Fraction(mobius_i(d), d.norm()) for d in divs)
print(f"   phi(q)/|q|^2 = {lhs} = sum mu(d)/|d|^2 = {rhs}")

print("\nBulk sieve: phi on every canonical element with |s| <= 40")
table = phi_sieve(40)
n_vals, sums = table.norm_sums()
total = int(sums.sum())
print(f"   {len(table)} elements; sum of phi = {total}")
print(f"   sum phi / R^4 = {total / 40**4:.6f}  (tends to z1 = 0.260635...)")
