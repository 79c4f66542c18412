"""Counts of monic irreducible polynomials over F_q.

``count_irreducible`` is the necklace count.  The symplectic counts (self-dual
irreducibles of degree 2d, and unordered pairs {phi, phi-bar} of degree d) are
extracted degree by degree from the logarithms of the two product identities
they satisfy.  All functions accept an integer q or ``None`` for symbolic q.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .qexact import QRing


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def count_irreducible(d: int, q: int | None):
    """N(d, q) = (1/d) sum_{e | d} mu(e) q^(d/e)."""
    if d < 1:
        raise ValueError("degree must be positive")
    ring = QRing(q)
    total = ring.zero
    for e in divisors(d):
        mu = mobius(e)
        if mu:
            total = total + mu * ring.q ** (d // e)
    total = total / d
    return _simplify(total, ring)


@lru_cache(maxsize=None)
def _symplectic_table(q: int | None, d_max: int):
    ring = QRing(q)
    selfdual = {}
    pairs = {}
    for n in range(1, d_max + 1):
        target = ring.q ** n - 1
        # log of (1-u)/(1-qu): sum_{d|n} d (Nbar_d + Mbar_d) = q^n - 1
        # difference of the two logs: sum_{d|n, n/d odd} 2 d Nbar_d = q^n - 1
        acc = target
        for d in divisors(n)[:-1]:
            if (n // d) % 2:
                acc = acc - 2 * d * selfdual[d]
        selfdual[n] = acc / (2 * n)
        acc = target
        for d in divisors(n)[:-1]:
            acc = acc - d * (selfdual[d] + pairs[d])
        pairs[n] = acc / n - selfdual[n]
    return ring, selfdual, pairs


def count_selfdual(two_d: int, q: int | None):
    """Number of monic irreducible phi of degree ``two_d`` with phi(x) = phi(-x), phi != x."""
    if two_d < 2 or two_d % 2:
        raise ValueError("degree must be even and at least 2")
    d = two_d // 2
    ring, selfdual, _ = _symplectic_table(q, d)
    return _simplify(selfdual[d], ring)


def count_dual_pairs(d: int, q: int | None):
    """Number of unordered pairs {phi, phi-bar} of degree ``d`` with phi != phi-bar."""
    if d < 1:
        raise ValueError("degree must be positive")
    ring, _, pairs = _symplectic_table(q, d)
    return _simplify(pairs[d], ring)


def _simplify(x, ring: QRing):
    if ring.symbolic:
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


# -- enumeration oracle (tests only) -------------------------------------------

_PRIMES = (2, 3, 5, 7)


def _polymod(a: tuple, b: tuple, p: int) -> tuple:
    """Remainder of a by monic b; coefficient tuples, lowest degree first."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _monic(deg: int, p: int):
    for low in product(range(p), repeat=deg):
        yield tuple(low) + (1,)


def enumerate_polys_oracle(d: int, q: int) -> dict:
    """Irreducibles, self-duals and dual pairs of degree ``d`` by trial division.

    Polynomials are coefficient tuples, lowest degree first.  Only prime
    q <= 7 and d <= 4 are supported.
    """
    if q not in _PRIMES or not 1 <= d <= 4:
        raise ValueError("oracle supports prime q <= 7 and 1 <= d <= 4")
    p = q
    smaller = [f for e in range(1, d // 2 + 1) for f in _monic(e, p)]
    irreducible = [f for f in _monic(d, p) if all(_polymod(f, g, p) for g in smaller)]
    x = (0, 1)

    def bar(f):
        # (-1)^deg f(-x)
        deg = len(f) - 1
        return tuple((c * (-1) ** (i + deg)) % p for i, c in enumerate(f))

    selfdual = [f for f in irreducible if f != x and bar(f) == f]
    seen = set()
    pairs = []
    for f in irreducible:
        g = bar(f)
        if g != f and f not in seen:
            seen.update((f, g))
            pairs.append((f, g))
    return {"irreducible": irreducible, "selfdual": selfdual, "pairs": pairs}
