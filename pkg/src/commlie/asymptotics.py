"""Limits of G_n / q^(n^2+n), U_n / q^(n^2+n) and S_n / q^(2n^2+2n).

Each limit is an infinite product of factors (1 - s/q^i)^e.  Partial products
are kept as exact fractions and converted to Decimal at the end.  The tail is
bounded termwise with |log(1 - s x)| <= x / (1 - x) for 0 < x <= 1/2, which
gives a certified absolute error for the truncated product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

PRECISION = 60


def _gl(i):
    return [(1, -i)]


def _u(i):
    return [(1, -1)] if i % 2 else [(1, -(i // 4))]


def _u_unsimplified(i):
    # (1 - (-1)^i/q^i) from |GU(n,q)| / q^(n^2), times the (i, l) pairs with
    # i + l - 1 = k of the shifted product: l even -> (1 - 1/q^k), l odd -> (1 + 1/q^k)
    return [((-1) ** i, 1), (1, -(i // 2 + 1)), (-1, -((i + 1) // 2))]


def _sp(i):
    return [(-1, 1), (1, -((i + 1) // 2))]


# factor generators and (a, b) with sum |e| over the factors at index i <= a*i + b
FAMILIES = {
    "gl": (_gl, (1, 0)),
    "u": (_u, (1, 1)),
    "u_unsimplified": (_u_unsimplified, (1, 3)),
    "sp": (_sp, (1, 2)),
}


@dataclass(frozen=True)
class LimitValue:
    family: str
    q: int
    value: Decimal
    error_bound: Decimal
    terms: int


def _tail_log_bound(q: int, j: int, a: float, b: float) -> float:
    """Upper bound for sum_{i > j} (a*i + b) * x_i / (1 - x_i), x_i = q^-i."""
    r = 1.0 / q
    geo = r ** (j + 1) / (1 - r)
    lin = r ** (j + 1) * ((j + 1) - j * r) / (1 - r) ** 2
    return (a * lin + b * geo) / (1 - r ** (j + 1))


def partial_product(family: str, q: int, terms: int) -> Fraction:
    factors, _ = FAMILIES[family]
    out = Fraction(1)
    for i in range(1, terms + 1):
        for s, e in factors(i):
            if e:
                out *= (1 - Fraction(s, q ** i)) ** e
    return out


def to_decimal(x: Fraction, prec: int = PRECISION) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(x.numerator) / Decimal(x.denominator)


def limit_constant(family: str, q: int, eps: float = 1e-12) -> LimitValue:
    """The limit constant for ``family`` with a certified absolute error below ``eps``."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if q < 2:
        raise ValueError("q must be at least 2")
    if family == "sp" and q % 2 == 0:
        raise ValueError(f"symplectic limit needs odd q, got q={q}")
    if eps <= 0:
        raise ValueError("eps must be positive")
    _, (a, b) = FAMILIES[family]
    j = 1
    while True:
        t = _tail_log_bound(q, j, a, b)
        if t < 0.5:
            value = partial_product(family, q, j)
            bound = float(value) * math.expm1(t)
            if bound < eps:
                break
        j += 1
    return LimitValue(family, q, to_decimal(value), Decimal(repr(bound)), j)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    ratio: Fraction
    decimal: Decimal
    gap: Decimal


def scaled_count(family: str, n: int, q: int) -> Fraction:
    """G_n / q^(n^2+n), U_n / q^(n^2+n) or S_n / q^(2n^2+2n)."""
    if family == "gl":
        from .counts_gl import commuting_pairs_gl
        return Fraction(commuting_pairs_gl(n, q), q ** (n * n + n))
    if family == "u":
        from .counts_u import commuting_pairs_u
        return Fraction(commuting_pairs_u(n, q), q ** (n * n + n))
    if family == "sp":
        from .counts_sp import commuting_pairs_sp
        return Fraction(commuting_pairs_sp(n, q), q ** (2 * n * n + 2 * n))
    raise ValueError(f"unknown family {family!r}")


def convergence_report(family: str, q: int, n_max: int, eps: float = 1e-15) -> tuple[LimitValue, list[ConvergenceRow]]:
    limit = limit_constant(family, q, eps)
    rows = []
    with localcontext() as ctx:
        ctx.prec = PRECISION
        for n in range(1, n_max + 1):
            ratio = scaled_count(family, n, q)
            dec = to_decimal(ratio)
            rows.append(ConvergenceRow(n, ratio, dec, abs(dec - limit.value)))
    return limit, rows
