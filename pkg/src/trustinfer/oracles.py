"""Brute-force reference computations.

These are deliberately naive and share no code with the modules they check:
sums are exact rationals, regions are enumerated subset by subset.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .core import BehaviorProfile
from .errors import AlphabetMismatch, AlphabetTooLarge, UnknownSymbol

MAX_ENUMERATED_SYMBOLS = 16


def p_value_oracle(p0: BehaviorProfile, x: str) -> float:
    if x not in p0.alphabet.symbols:
        raise UnknownSymbol(x)
    px = None
    for s, p in zip(p0.alphabet.symbols, p0.probs):
        if s == x:
            px = p
    total = Fraction(0)
    for p in p0.probs:
        if p <= px:
            total += Fraction(p)
    return float(total)


def brute_force_most_powerful(p0: BehaviorProfile, p1: BehaviorProfile, alpha: float,
                              tol: float = 1e-12):
    """Deterministic region with the most power among those of size <= alpha.

    Ties prefer the smaller size, then the lexicographically smaller list of
    symbol positions. Returns ``(region, size, power)``.
    """
    if p0.alphabet.symbols != p1.alphabet.symbols:
        raise AlphabetMismatch("profiles are over different alphabets")
    n = len(p0.probs)
    if n > MAX_ENUMERATED_SYMBOLS:
        raise AlphabetTooLarge(f"{n} symbols; enumeration is capped at {MAX_ENUMERATED_SYMBOLS}")
    q0 = [Fraction(p) for p in p0.probs]
    q1 = [Fraction(p) for p in p1.probs]
    limit = Fraction(alpha) + Fraction(tol)
    best = None
    for mask in range(2**n):
        members = tuple(i for i in range(n) if mask >> i & 1)
        size = sum((q0[i] for i in members), Fraction(0))
        if size > limit:
            continue
        power = sum((q1[i] for i in members), Fraction(0))
        key = (-power, size, members)
        if best is None or key < best:
            best = key
    neg_power, size, members = best
    region = tuple(p0.alphabet.symbols[i] for i in members)
    return region, float(size), float(-neg_power)


def ml_grid_oracle(counts: Sequence[int], k: int) -> Optional[tuple[int, ...]]:
    """A maximum-likelihood point of the 2^-k grid by greedy unit allocation.

    The log-likelihood is separable and concave in each numerator, so handing
    out units one at a time to the largest marginal gain is optimal. Returns
    None if the grid cannot give every observed symbol positive mass.
    """
    denom = 2**k
    nums = [1 if c > 0 else 0 for c in counts]
    if sum(nums) > denom:
        return None
    if sum(nums) == 0:
        nums[0] = 1
    for _ in range(denom - sum(nums)):
        gains = [c * (math.log(m + 1) - math.log(m)) if c > 0 else 0.0
                 for c, m in zip(counts, nums)]
        nums[gains.index(max(gains))] += 1
    return tuple(nums)
