#!/usr/bin/env python3
"""Lattice counting: disks, the crescent regions, and the error terms.

The moment asymptotics rest on counting lattice points in dilated
regions with square-root-size errors; this script makes those counts
and their discrepancies visible.
"""

import math

from fordspheres import (
    GaussianInt,
    OmegaRegion,
    count_lattice_in_disk,
    count_omega_coprime,
    count_omega_lattice,
    gauss_error_profile,
    omega_area,
    phi_i,
)

G = GaussianInt

print("Counting lattice points in disks (exact, closed boundary):")
for radius in (1, 2.5, 10, 100):
    n = count_lattice_in_disk(radius)
    print(f"   radius {radius:>6}: {n:8d} points, pi r^2 = {math.pi * radius**2:12.2f}")

print("\nThe summatory sum-of-squares function vs its main term pi N:")
profile = gauss_error_profile(10_000, samples=8)
for N, summ, err in profile.samples:
    print(f"   N = {N:6d}: sum = {summ:8d}, |sum - pi N| = {err:8.2f}, err/N^(1/3) = {err / N**(1/3):.3f}")
print(f"   max normalized error: {profile.max_ratio:.3f}")

print("\nThe crescent region for s, S: members near the boundary circle,")
print("counted exactly and compared with the closed-form area:")
S = 40
for s in (G(5, 2), G(20, 9), G(32, 24)):
    region = OmegaRegion(s, S)
    res = count_omega_lattice(region)
    cop = count_omega_coprime(region)
    main = phi_i(s) / s.norm() * res.area
    print(
        f"   s = {str(s):7s}: count {res.count:5d}, area {res.area:9.2f}, "
        f"discrepancy {res.discrepancy:+7.2f}; coprime {cop:5d} vs phi/|s|^2 * area = {main:8.2f}"
    )

print("\nArea law across the radius range (t = |s|):")
for frac in (0.2, 0.5, 1 / math.sqrt(2), 1.0, 1.2, math.sqrt(2)):
    t = frac * S
    print(f"   t = {t:6.2f} = {frac:.3f} S: area = {omega_area(S, t):10.2f}")
