"""Orbit counting for cubes via congruence data, and the divisor-sum formula.

For nonzero (D, m, n) with D = 0,1 mod 4, orbits of projective cubes with
invariants (D, m, n) correspond to pairs of square roots
x^2 = D (mod 4m), y^2 = D (mod 4n) taken in the windows [0, 2|m|) and
[0, 2|n|); ``cube_from_invariants`` builds the explicit representative.
The total count over all divisor levels is

    B(D, m, n) = sum_{d | gcd(D1, m, n)} d
                 * sqrt_count(D/d^2, 4m/d) * sqrt_count(D/d^2, 4n/d)

with D = D0 * D1^2, D0 squarefree; B vanishes unless D = 0,1 mod 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .congruence import DomainError, divisors, sqrt_count, squarefree_split
from .cube import Cube, discriminant, form1, form2


@dataclass(frozen=True)
class CongruencePair:
    """A pair of square roots of D modulo 4m and 4n, with the cofactors.

    x in [0, 2|m|), x^2 = D (mod 4m), s = (x^2 - D) / (4m);
    y in [0, 2|n|), y^2 = D (mod 4n), t = (y^2 - D) / (4n).
    """

    D: int
    m: int
    n: int
    x: int
    y: int
    s: int
    t: int


def congruence_pairs(D: int, m: int, n: int) -> list[CongruencePair]:
    """All congruence pairs for (D, m, n), ordered lexicographically by (x, y)."""
    if D == 0 or m == 0 or n == 0:
        raise DomainError("congruence pairs need nonzero D, m, n")
    xs = [x for x in range(2 * abs(m)) if (x * x - D) % (4 * m) == 0]
    ys = [y for y in range(2 * abs(n)) if (y * y - D) % (4 * n) == 0]
    return [
        CongruencePair(D, m, n, x, y, (x * x - D) // (4 * m), (y * y - D) // (4 * n))
        for x in xs
        for y in ys
    ]


def cube_from_invariants(D: int, m: int, n: int, x: int, y: int) -> Cube:
    """Explicit cube with invariants (D, m, n) realizing the congruence pair.

    Requires x^2 = D (mod 4m), y^2 = D (mod 4n), and x = y (mod 2) (automatic
    for valid pairs).  The representative has c = 0 and

        a = |gcd(m, n, (x+y)/2)|,  d = m/a,  g = n/a,  h = -(x+y)/(2a),

    with f the smallest nonnegative solution of s + f*g = 0 and t + f*d = 0
    (mod |h|), then e = (s + f*g)/h and b = (t + f*d)/h.  When h = 0, instead
    f = -s/g, e is the smallest nonnegative solution of d*e = -(x-y)/2
    (mod |g|), and b = ((x-y)/2 + d*e)/g.
    """
    if (x * x - D) % (4 * m) or (y * y - D) % (4 * n):
        raise DomainError("x, y must be square roots of D mod 4m, 4n")
    if (x - y) % 2:
        raise DomainError("x and y must share parity")
    s = (x * x - D) // (4 * m)
    t = (y * y - D) // (4 * n)
    half_sum = (x + y) // 2
    a = abs(math.gcd(m, n, half_sum))
    d = m // a
    g = n // a
    if half_sum % a:
        raise DomainError("internal: a must divide (x+y)/2")
    h = -(half_sum // a)
    if h != 0:
        ah = abs(h)
        f = next(
            fc for fc in range(ah) if (s + fc * g) % ah == 0 and (t + fc * d) % ah == 0
        )
        e = (s + f * g) // h
        b = (t + f * d) // h
    else:
        if s % g:
            raise DomainError("internal: g must divide s when h = 0")
        f = -(s // g)
        w = (x - y) // 2
        ag = abs(g)
        e = next(ec for ec in range(ag) if (w + d * ec) % ag == 0)
        b = (w + d * e) // g
    A = Cube(a, b, 0, d, e, f, g, h)
    q1, q2 = form1(A), form2(A)
    if (q1.a, q1.b, q1.c) != (m, x, s) or (q2.a, q2.b, q2.c) != (n, y, t):
        raise DomainError("internal: constructed cube fails its invariants")
    return A


def cube_from_pair(pair: CongruencePair) -> Cube:
    return cube_from_invariants(pair.D, pair.m, pair.n, pair.x, pair.y)


def b_term(D: int, d: int, m: int, n: int) -> int:
    """One divisor level of B: d * A(D/d^2, 4m/d) * A(D/d^2, 4n/d).

    Zero unless d divides gcd(D1, m, n) where D = D0 * D1^2.
    """
    if d < 1:
        raise DomainError("divisor level must be positive")
    _, d1 = squarefree_split(D)
    if math.gcd(d1, m, n) % d:
        return 0
    dd = D // (d * d)
    return d * sqrt_count(dd, 4 * m // d) * sqrt_count(dd, 4 * n // d)


def B(D: int, m: int, n: int) -> int:
    """Orbit count B(D, m, n) over all four sign classes of the invariants.

    Zero when D = 2,3 mod 4 (no square roots exist); requires nonzero
    D, m, n with m, n counted by absolute value.
    """
    if D == 0 or m == 0 or n == 0:
        raise DomainError("B needs nonzero D, m, n")
    m, n = abs(m), abs(n)
    if D % 4 not in (0, 1):
        return 0
    _, d1 = squarefree_split(D)
    total = 0
    for d in divisors(math.gcd(d1, m, n)):
        dd = D // (d * d)
        total += d * sqrt_count(dd, 4 * m // d) * sqrt_count(dd, 4 * n // d)
    return total


def b_grid(D: int, M: int) -> list[list[int]]:
    """Grid of B(D, m, n) for 1 <= m, n <= M; index [m][n], row/col 0 unused."""
    grid = [[0] * (M + 1) for _ in range(M + 1)]
    if D % 4 in (0, 1) and D != 0:
        for m in range(1, M + 1):
            for n in range(1, M + 1):
                grid[m][n] = B(D, m, n)
    return grid
