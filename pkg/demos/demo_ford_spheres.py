#!/usr/bin/env python3
"""Ford spheres, adjacency, and consecutivity at small denominator bound.

Enumerates the fraction sets G_S, shows the tangency test two ways, and
walks the consecutive-pair structure that the moments sum over.
"""

import itertools

from fordspheres import (
    FordSphere,
    GaussianInt,
    are_adjacent,
    are_adjacent_geometric,
    are_consecutive_fractions,
    consecutive_pairs,
    enumerate_GS,
    numerator_pairs,
)

G = GaussianInt

print("The fraction sets G_S grow like S^4:")
for S in range(1, 7):
    print(f"   |G_{S}| = {len(enumerate_GS(S))}")

print("\nSpheres over G_2, with exact rational centers and radii:")
for f in enumerate_GS(2):
    sphere = FordSphere(f)
    x, y, r = sphere.center
    print(f"   {str(f):16s} center ({x}, {y}, {r}), radius {r}")

print("\nTangency: the unit-determinant test agrees with exact geometry")
gs = enumerate_GS(2)
tangent = 0
for f, g in itertools.combinations(gs, 2):
    alg = are_adjacent(f, g)
    geo = are_adjacent_geometric(f, g)
    assert alg == geo
    tangent += alg
print(f"   {tangent} tangent pairs among {len(gs) * (len(gs) - 1) // 2} in G_2")

print("\nConsecutive pairs in G_2 (tangent + a small enough third sphere):")
for f, g in itertools.combinations(gs, 2):
    if are_consecutive_fractions(f, g, 2):
        print(f"   {f}  ~  {g}")

print("\nFor a consecutive denominator pair, the numerator pairs are")
print("generically exactly four:")
for a, b in numerator_pairs(G(1, 0), G(1, 1), 2):
    print(f"   {a}  ~  {b}")
print("but on the degenerate rays (s * s' on an axis) up to eight occur:")
print(f"   (1, 2) at S=2 admits {len(numerator_pairs(G(1, 0), G(2, 0), 2))} pairs")

print("\nThe region-record stream behind the fast moment path (S = 2):")
for rec in consecutive_pairs(2):
    print(f"   s = {rec.s}, partner {rec.s_prime}, center distance {rec.distance}")
