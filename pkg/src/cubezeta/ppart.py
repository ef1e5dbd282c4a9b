"""Trivariate generating functions for prime-part coefficients, exact in p.

Coefficients are polynomials in a formal prime variable p, represented as
tuples of integer coefficients (index = power of p).  The main objects are
truncated power series in three variables x, y, z with polynomial
coefficients; the coefficient of x^l y^k z^t in the rational function

    N(x,y,z) / ((1-x)(1-y)(1-z)(1-p y^2 z^2)(1-p x^2 y^2)(1-p^2 x^2 y^2 z^2))

with numerator

    N = 1 - xy - yz + xyz + p xy^2 z - p x^2 y^2 z - p xy^2 z^2 + p x^2 y^3 z^2

equals the prime-part coefficient built from square-root counts,

    b(k, l, t) = sum_{j >= 0} p^j * a2(k - 2j, l - j) * a2(k - 2j, t - j),

where a2(k, l) = p^(min(k,l)/2) for min(k,l) even, else 0.  Both routes are
implemented independently and compared exactly (``thm44_check``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .congruence import DomainError

# ---------------------------------------------------------------------------
# Polynomials in the formal prime p: tuples of ints, index = exponent
# ---------------------------------------------------------------------------

PolyCoeff = tuple[int, ...]

P_ZERO: PolyCoeff = ()
P_ONE: PolyCoeff = (1,)


def p_trim(c) -> PolyCoeff:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_add(f: PolyCoeff, g: PolyCoeff) -> PolyCoeff:
    n = max(len(f), len(g))
    return p_trim(
        (f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)
    )


def p_neg(f: PolyCoeff) -> PolyCoeff:
    return tuple(-c for c in f)


def p_mul(f: PolyCoeff, g: PolyCoeff) -> PolyCoeff:
    if not f or not g:
        return P_ZERO
    out = [0] * (len(f) + len(g) - 1)
    for i, ci in enumerate(f):
        if ci:
            for j, cj in enumerate(g):
                out[i + j] += ci * cj
    return p_trim(out)


def p_monomial(coeff: int, power: int) -> PolyCoeff:
    if coeff == 0:
        return P_ZERO
    return tuple([0] * power + [coeff])


def p_eval(f: PolyCoeff, p: int) -> int:
    out = 0
    for c in reversed(f):
        out = out * p + c
    return out


def p_format(f: PolyCoeff) -> str:
    """Render as c0+c1*p+c2*p^2+... omitting zero terms ('0' if all zero)."""
    terms = []
    for e, c in enumerate(f):
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            power = "p" if e == 1 else f"p^{e}"
            if c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f"-{power}")
            else:
                terms.append(f"{c}*{power}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


# ---------------------------------------------------------------------------
# Truncated trivariate series with PolyCoeff coefficients
# ---------------------------------------------------------------------------


@dataclass
class TriSeries:
    """Power series in x, y, z truncated at total degree K per variable.

    coeffs[l][k][t] is the PolyCoeff of x^l y^k z^t (0 <= l, k, t <= K).
    """

    K: int
    coeffs: list

    @staticmethod
    def zero(K: int) -> "TriSeries":
        return TriSeries(
            K, [[[P_ZERO] * (K + 1) for _ in range(K + 1)] for _ in range(K + 1)]
        )

    @staticmethod
    def one(K: int) -> "TriSeries":
        s = TriSeries.zero(K)
        s.coeffs[0][0][0] = P_ONE
        return s

    def get(self, l: int, k: int, t: int) -> PolyCoeff:
        return self.coeffs[l][k][t]

    def set(self, l: int, k: int, t: int, value: PolyCoeff) -> None:
        self.coeffs[l][k][t] = p_trim(value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TriSeries)
            and self.K == other.K
            and self.coeffs == other.coeffs
        )


def series_add(A: TriSeries, B: TriSeries) -> TriSeries:
    if A.K != B.K:
        raise DomainError("series truncation orders differ")
    out = TriSeries.zero(A.K)
    for l in range(A.K + 1):
        for k in range(A.K + 1):
            for t in range(A.K + 1):
                out.coeffs[l][k][t] = p_add(A.coeffs[l][k][t], B.coeffs[l][k][t])
    return out


def series_mul(A: TriSeries, B: TriSeries) -> TriSeries:
    """Full truncated product (O(K^6) coefficient multiplications)."""
    if A.K != B.K:
        raise DomainError("series truncation orders differ")
    K = A.K
    out = TriSeries.zero(K)
    for l1 in range(K + 1):
        for k1 in range(K + 1):
            for t1 in range(K + 1):
                c1 = A.coeffs[l1][k1][t1]
                if not c1:
                    continue
                for l2 in range(K + 1 - l1):
                    for k2 in range(K + 1 - k1):
                        for t2 in range(K + 1 - t1):
                            c2 = B.coeffs[l2][k2][t2]
                            if not c2:
                                continue
                            tgt = out.coeffs[l1 + l2][k1 + k2][t1 + t2]
                            out.coeffs[l1 + l2][k1 + k2][t1 + t2] = p_add(
                                tgt, p_mul(c1, c2)
                            )
    return out


def series_mul_geometric(
    A: TriSeries, monomial: tuple[int, int, int], p_power: int
) -> TriSeries:
    """Multiply by 1 / (1 - p^p_power * x^dl y^dk z^dt) via running sums.

    The result T satisfies T = A + p^p_power * (shift of T), computed in one
    pass in increasing (l, k, t): O(K^3).
    """
    dl, dk, dt = monomial
    if (dl, dk, dt) == (0, 0, 0):
        raise DomainError("geometric factor needs a nonconstant monomial")
    K = A.K
    out = TriSeries.zero(K)
    scale = p_monomial(1, p_power)
    for l in range(K + 1):
        for k in range(K + 1):
            for t in range(K + 1):
                val = A.coeffs[l][k][t]
                if l >= dl and k >= dk and t >= dt:
                    val = p_add(val, p_mul(scale, out.coeffs[l - dl][k - dk][t - dt]))
                out.coeffs[l][k][t] = val
    return out


def series_geometric_inverse(A: TriSeries) -> TriSeries:
    """Inverse of a series with constant coefficient 1 (triangular recurrence)."""
    if A.coeffs[0][0][0] != P_ONE:
        raise DomainError("inverse needs constant coefficient 1")
    K = A.K
    out = TriSeries.zero(K)
    out.coeffs[0][0][0] = P_ONE
    for l in range(K + 1):
        for k in range(K + 1):
            for t in range(K + 1):
                if (l, k, t) == (0, 0, 0):
                    continue
                acc = P_ZERO
                for l1 in range(l + 1):
                    for k1 in range(k + 1):
                        for t1 in range(t + 1):
                            if (l1, k1, t1) == (0, 0, 0):
                                continue
                            c = A.coeffs[l1][k1][t1]
                            if c:
                                acc = p_add(
                                    acc,
                                    p_mul(c, out.coeffs[l - l1][k - k1][t - t1]),
                                )
                out.coeffs[l][k][t] = p_neg(acc)
    return out


# ---------------------------------------------------------------------------
# The two routes to the prime-part coefficients
# ---------------------------------------------------------------------------

# numerator monomials of the closed form, as (l, k, t, coefficient PolyCoeff)
_NUMERATOR = (
    (0, 0, 0, P_ONE),
    (1, 1, 0, (-1,)),
    (0, 1, 1, (-1,)),
    (1, 1, 1, P_ONE),
    (1, 2, 1, (0, 1)),
    (2, 2, 1, (0, -1)),
    (1, 2, 2, (0, -1)),
    (2, 3, 2, (0, 1)),
)

# denominator factors as geometric series: (monomial (dl, dk, dt), power of p)
_DENOMINATOR = (
    ((1, 0, 0), 0),
    ((0, 1, 0), 0),
    ((0, 0, 1), 0),
    ((0, 2, 2), 1),
    ((2, 2, 0), 1),
    ((2, 2, 2), 2),
)


def f_a3_expand(K: int) -> TriSeries:
    """Closed-form route: numerator times the six geometric denominator factors."""
    s = TriSeries.zero(K)
    for l, k, t, c in _NUMERATOR:
        if l <= K and k <= K and t <= K:
            s.coeffs[l][k][t] = p_add(s.coeffs[l][k][t], c)
    for monomial, p_power in _DENOMINATOR:
        s = series_mul_geometric(s, monomial, p_power)
    return s


def a2_poly(k: int, l: int) -> PolyCoeff:
    """Rank-2 prime-part coefficient as a polynomial in p."""
    if k < 0 or l < 0:
        return P_ZERO
    mn = min(k, l)
    return p_monomial(1, mn // 2) if mn % 2 == 0 else P_ZERO


def f_a2_series(K: int) -> list:
    """Grid of rank-2 coefficients: entry [k][l] = a2_poly(k, l)."""
    return [[a2_poly(k, l) for l in range(K + 1)] for k in range(K + 1)]


def f_a3_convolution(K: int) -> TriSeries:
    """Independent route: diagonal pairing of two rank-2 grids.

    coefficient(l, k, t) = sum_{j} p^j * a2(k - 2j, l - j) * a2(k - 2j, t - j).
    """
    out = TriSeries.zero(K)
    for l in range(K + 1):
        for k in range(K + 1):
            for t in range(K + 1):
                acc = P_ZERO
                for j in range(min(k // 2, l, t) + 1):
                    c = p_mul(a2_poly(k - 2 * j, l - j), a2_poly(k - 2 * j, t - j))
                    if c:
                        acc = p_add(acc, p_mul(p_monomial(1, j), c))
                out.coeffs[l][k][t] = acc
    return out


@dataclass(frozen=True)
class PpartReport:
    """Comparison of the closed-form and convolution routes."""

    K: int
    equal: bool
    first_mismatch: tuple[int, int, int] | None
    lhs: PolyCoeff | None
    rhs: PolyCoeff | None


@dataclass(frozen=True)
class SpecializationReport:
    """Closed form evaluated at integer primes vs the arithmetic coefficients."""

    K: int
    primes: tuple[int, ...]
    equal: bool
    first_mismatch: dict | None


def specialization_check(K: int, primes: tuple[int, ...] = (2, 3, 5)) -> SpecializationReport:
    """Evaluate the closed form at each prime and compare against a_coeff3.

    The bridge: the coefficient polynomial at (l, k, t), evaluated at p,
    must equal a_coeff3(p^k, p^l, p^t) (k is the exponent of the
    discriminant-like slot, whose square part drives the divisor levels).
    """
    from .wmds import a_coeff3

    closed = f_a3_expand(K)
    for p in primes:
        for l in range(K + 1):
            for k in range(K + 1):
                for t in range(K + 1):
                    lhs = p_eval(closed.coeffs[l][k][t], p)
                    rhs = a_coeff3(p**k, p**l, p**t)
                    if lhs != rhs:
                        return SpecializationReport(
                            K,
                            tuple(primes),
                            False,
                            {"p": p, "l": l, "k": k, "t": t, "lhs": lhs, "rhs": rhs},
                        )
    return SpecializationReport(K, tuple(primes), True, None)


def thm44_check(K: int) -> PpartReport:
    """Compare the two routes coefficientwise up to degree K in each variable.

    The comparison is exact in the formal variable p (integer polynomial
    identity, stronger than any numeric specialization).
    """
    closed = f_a3_expand(K)
    conv = f_a3_convolution(K)
    for l in range(K + 1):
        for k in range(K + 1):
            for t in range(K + 1):
                if closed.coeffs[l][k][t] != conv.coeffs[l][k][t]:
                    return PpartReport(
                        K,
                        False,
                        (l, k, t),
                        closed.coeffs[l][k][t],
                        conv.coeffs[l][k][t],
                    )
    return PpartReport(K, True, None, None, None)
