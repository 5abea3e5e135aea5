"""Genus-zero psi-class integrals and the contracted-vertex factor.

A vertex of valence n >= 3 in a fixed-locus graph carries a contracted
rational component whose moduli is M_{0,n}.  Its contribution to the
inverse Euler class is the integral over M_{0,n} of

    prod_F 1/(w_F - psi_F)

with one factor per flag F at the vertex.  Expanding each factor
geometrically and using

    int_{M_{0,n}} psi_1^{a_1} ... psi_n^{a_n} = (n-3)! / (a_1! ... a_n!)

whenever a_1 + ... + a_n = n - 3 (and zero otherwise) turns the integral
into a finite sum over exponent vectors, which is what ``vertex_factor``
evaluates.  Valence-1 and valence-2 vertices never reach this module;
their automorphism and node-smoothing factors are assembled in
``euler``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence, Tuple

from .ratfunc import RationalFunction


def psi_integral(a: Sequence[int]) -> Fraction:
    """Integral of psi_1^{a_1}...psi_n^{a_n} over the genus-zero moduli M_{0,n}."""
    n = len(a)
    if n < 3:
        raise ValueError("vertex moduli is a point; no psi integral")
    if any(e < 0 for e in a):
        raise ValueError("psi exponents must be non-negative")
    if sum(a) != n - 3:
        return Fraction(0)
    value = Fraction(math.factorial(n - 3))
    for e in a:
        value /= math.factorial(e)
    return value


def exponent_vectors(total: int, n: int) -> Iterator[Tuple[int, ...]]:
    """All length-n vectors of non-negative integers summing to ``total``."""
    for cuts in combinations(range(total + n - 1), n - 1):
        prev = -1
        vec = []
        for c in cuts:
            vec.append(c - prev - 1)
            prev = c
        vec.append(total + n - 2 - prev)
        yield tuple(vec)


def vertex_factor(weights: Sequence[RationalFunction]) -> RationalFunction:
    """Exact value of int_{M_{0,n}} prod_i 1/(w_i - psi_i) for n >= 3 flags."""
    n = len(weights)
    if n < 3:
        raise ValueError("vertex_factor needs valence >= 3; got %d flags" % n)
    for i, w in enumerate(weights):
        if w.is_zero():
            raise ValueError("flag %d has zero weight" % i)
    m = weights[0].m
    inv = [w.inverse() for w in weights]
    base = inv[0]
    for w in inv[1:]:
        base = base * w
    total = RationalFunction.const(m, 0)
    for vec in exponent_vectors(n - 3, n):
        coeff = psi_integral(vec)
        term = RationalFunction.const(m, coeff) * base
        for w, e in zip(inv, vec):
            if e:
                term = term * w ** e
        total = total + term
    return total
