"""Exact counting over set families: LYM mass, chain weights, 2-chains.

Everything asserted is computed in exact integer or rational arithmetic;
floats only appear in the tail-window diagnostic, which is never part of
an identity.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

from .errors import InvalidParam, TooLargeForEnumeration

ENUMERATION_MAX_N = 8


def lubell_mass(fam):
    """Sum of 1/C(n, |F|) over the family, as an exact Fraction."""
    n = fam.n
    total = Fraction(0)
    for m in fam.members:
        total += Fraction(1, math.comb(n, bin(m).count("1")))
    return total


def pair_count(fam):
    """Sum of |F|! (n-|F|)! over members: the number of (member, maximal
    chain) incidences."""
    n = fam.n
    total = 0
    for m in fam.members:
        k = bin(m).count("1")
        total += math.factorial(k) * math.factorial(n - k)
    return total


def chain_weight_average(fam, via="formula"):
    """Average over all n! maximal chains of the chain weight
    sum(C(n,|F|) for F on the chain and in the family); equals |family|.

    via="formula" evaluates the per-member incidence sum; via="enumeration"
    walks every maximal chain (n <= 8) and is the independent route.
    """
    n = fam.n
    nfact = math.factorial(n)
    if via == "formula":
        total = 0
        for m in fam.members:
            k = bin(m).count("1")
            total += math.comb(n, k) * math.factorial(k) * math.factorial(n - k)
        return Fraction(total, nfact)
    if via == "enumeration":
        if n > ENUMERATION_MAX_N:
            raise TooLargeForEnumeration(f"n={n} exceeds {ENUMERATION_MAX_N}")
        weight = [math.comb(n, k) for k in range(n + 1)]
        members = fam.member_set
        total = 0
        if 0 in members:
            total += nfact * weight[0]
        for perm in permutations(range(n)):
            mask = 0
            size = 0
            for b in perm:
                mask |= 1 << b
                size += 1
                if mask in members:
                    total += weight[size]
        return Fraction(total, nfact)
    raise InvalidParam(f"unknown evaluation route {via!r}")


def count_2chains(fam):
    """Number of pairs A strictly contained in B within the family."""
    members = sorted(fam.members, key=lambda m: bin(m).count("1"))
    total = 0
    for bi, b in enumerate(members):
        for a in members[:bi]:
            if a != b and a & ~b == 0:
                total += 1
    return total


def count_2chains_between(fam, i, j):
    """Number of 2-chains with |A| = i and |B| = j."""
    if i >= j:
        raise InvalidParam("need i < j")
    lower = fam.by_size.get(i, ())
    upper = fam.by_size.get(j, ())
    return sum(1 for b in upper for a in lower if a & ~b == 0)


def kleitman_lower_bound(m, n):
    """Least number of 2-chains any m-member family over [n] can have:
    max(0, (m - C(n, floor(n/2))) * n/2), rounded up to an integer.

    The expression can be a half-integer for odd n; since it bounds an
    integer count from below, the ceiling is still a valid bound.
    """
    value = Fraction((m - math.comb(n, n // 2)) * n, 2)
    if value <= 0:
        return 0
    return -((-value.numerator) // value.denominator)


def tail_count(n, log_base=math.e):
    """Number of subsets of [n] whose size falls outside
    (n/2 - 2*sqrt(n log n), n/2 + 2*sqrt(n log n)).

    The window test compares the exact integer (2k - n)^2 against
    16 n log n, so no square roots are taken; the log base defaults to
    natural log and is a parameter.
    """
    if n < 2:
        raise InvalidParam("need n >= 2")
    if log_base <= 1:
        raise InvalidParam("log base must exceed 1")
    threshold = 16 * n * math.log(n, log_base)
    # the test is symmetric under k <-> n-k and never holds at k = n/2, so
    # walk the lower tail with the binomial recurrence and double it
    total_low = 0
    binom = 1
    k = 0
    while 2 * k < n and (2 * k - n) ** 2 > threshold:
        total_low += binom
        binom = binom * (n - k) // (k + 1)
        k += 1
    return 2 * total_low


def tail_ratio_diagnostic(n, log_base=math.e):
    """Tail count next to the scale C(n, n/2)/n^(3/2); ratio is reported,
    never asserted."""
    count = tail_count(n, log_base)
    central = math.comb(n, n // 2)
    ratio = float(Fraction(count, central)) * n ** 1.5
    return {"n": n, "tailCount": count, "ratioToScale": ratio}
