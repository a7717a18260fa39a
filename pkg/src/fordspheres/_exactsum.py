"""Exact summation of large families of rationals with power denominators.

sum_i nums[j][i] / dens[i] is evaluated for several numerator streams
sharing one denominator list.  Results are kept as (nums, den) pairs
that are NOT fully reduced: the bottom of the tree uses raw product
denominators (still machine-word scale), while upper combines strip the
gcd of the two denominators so the running denominator stays near the
lcm of the leaves instead of their product.  Callers normalize once at
the very end via Fraction.
"""

from __future__ import annotations

from math import gcd

_BLOCK = 32


def ladder_sum(streams: list[list[int]], dens: list[int]) -> tuple[list[int], int]:
    """Exact sum of every stream over the shared denominators.

    Returns (numerators, denominator); each stream's value is
    numerators[j] / denominator exactly (possibly unreduced).
    """
    n = len(dens)
    width = len(streams)
    if n == 0:
        return [0] * width, 1
    nodes: list[tuple[list[int], int]] = []
    for lo in range(0, n, _BLOCK):
        hi = min(lo + _BLOCK, n)
        den = dens[lo]
        nums = [s[lo] for s in streams]
        for idx in range(lo + 1, hi):
            d2 = dens[idx]
            for j in range(width):
                nums[j] = nums[j] * d2 + streams[j][idx] * den
            den *= d2
        nodes.append((nums, den))
    while len(nodes) > 1:
        nxt = []
        for i in range(0, len(nodes) - 1, 2):
            nxt.append(combine_pair(nodes[i], nodes[i + 1]))
        if len(nodes) % 2:
            nxt.append(nodes[-1])
        nodes = nxt
    return nodes[0]


def combine_pair(
    a: tuple[list[int], int], b: tuple[list[int], int]
) -> tuple[list[int], int]:
    """Add two (nums, den) packets over the lcm of their denominators."""
    na, da = a
    nb, db = b
    g = gcd(da, db)
    if g == 1:
        return [x * db + y * da for x, y in zip(na, nb)], da * db
    ca = db // g
    cb = da // g
    return [x * ca + y * cb for x, y in zip(na, nb)], da * ca


def ladder_combine(nodes: list[tuple[list[int], int]]) -> tuple[list[int], int]:
    """Pairwise-combine a list of packets in fixed order."""
    if not nodes:
        raise ValueError("nothing to combine")
    nodes = list(nodes)
    while len(nodes) > 1:
        nxt = []
        for i in range(0, len(nodes) - 1, 2):
            nxt.append(combine_pair(nodes[i], nodes[i + 1]))
        if len(nodes) % 2:
            nxt.append(nodes[-1])
        nodes = nxt
    return nodes[0]
