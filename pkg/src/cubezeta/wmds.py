"""Coefficients of the rank-3 multiple Dirichlet series built on square-root counts.

The building block is the prime-power coefficient
a_pp(p, k, l) = p^(min(k,l)/2) when min(k, l) is even, else 0; the global
coefficient a(D, m) is the product over primes of a_pp at the valuations of
|D| and m.  The three-variable coefficient combines two copies across the
divisor levels of the square part of D:

    a3(D, m, n) = sum_{d | gcd(D1, m, n)} d * a(D/d^2, m/d) * a(D/d^2, n/d).

The twisted coefficient multiplies in the quadratic character of D evaluated
on the part of m coprime to the squarefree part of D.
"""

from __future__ import annotations

import math

from .congruence import (
    DomainError,
    chi,
    divisors,
    factorize,
    hat,
    squarefree_split,
    valuation,
)


def a_pp(p: int, k: int, l: int) -> int:
    """Prime-power coefficient: p^(min(k,l)/2) when min(k,l) is even, else 0."""
    if k < 0 or l < 0:
        raise DomainError("valuations must be nonnegative")
    mn = min(k, l)
    return p ** (mn // 2) if mn % 2 == 0 else 0


def a_coeff(D: int, m: int) -> int:
    """Coefficient a(D, m): product of a_pp over the primes of m (D != 0, m >= 1).

    Exponents are read off |D|; primes absent from m contribute 1.
    """
    if D == 0 or m < 1:
        raise DomainError("a_coeff needs D != 0 and m >= 1")
    out = 1
    for p, l in factorize(m).factors if m > 1 else ():
        out *= a_pp(p, valuation(D, p), l)
        if out == 0:
            return 0
    return out


def a_coeff3(D: int, m: int, n: int) -> int:
    """Three-variable coefficient: divisor-level sum of products of a_coeff."""
    if D == 0 or m < 1 or n < 1:
        raise DomainError("a_coeff3 needs D != 0 and m, n >= 1")
    _, d1 = squarefree_split(D)
    total = 0
    for d in divisors(math.gcd(d1, m, n)):
        dd = D // (d * d)
        term = a_coeff(dd, m // d)
        if term:
            total += d * term * a_coeff(dd, n // d)
    return total


def tilde_a(D: int, m: int) -> int:
    """Character-twisted coefficient: chi(D, hat(m, D)) * a_coeff(D, m).

    Requires D = 0,1 mod 4 so the character is defined.
    """
    return chi(D, hat(m, D)) * a_coeff(D, m)
