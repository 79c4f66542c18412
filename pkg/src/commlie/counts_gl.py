"""Commuting pairs and commuting nilpotent pairs in Mat(n, q).

Two backends compute each count.  ``class_sum`` sums centralizer sizes over
rational canonical forms, collapsed to one series per polynomial degree
raised to the number N(d, q) of irreducibles of that degree.  ``gen_fn``
expands the closed product in its Euler form.  The unitary module reuses the
machinery here with ``eps = -1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import partitions as P
from .partitions import Partition
from .polycount import count_irreducible
from .qexact import QRing, USeries, euler_sum, pochhammer
from .report import exact

CLASS_SUM = "class_sum"
GEN_FN = "gen_fn"


@dataclass(frozen=True)
class CanonicalData:
    """Rational canonical form: (degree, index among that degree's irreducibles, partition)."""

    assignments: tuple[tuple[int, int, Partition], ...]

    @property
    def weight(self) -> int:
        return sum(d * lam.size for d, _, lam in self.assignments)

    @classmethod
    def nilpotent(cls, lam: Partition) -> CanonicalData:
        # index 0 of degree 1 stands for phi = x
        return cls(((1, 0, lam),)) if lam.size else cls(())


def group_order_gl(n: int, q: int | None):
    ring = QRing(q)
    out = ring.q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out = out * (ring.q ** i - 1)
    return exact(ring, out, f"|GL({n},q)|")


def group_order_eps(n: int, ring: QRing, eps: int):
    out = ring.q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out = out * (ring.q ** i - eps ** i)
    return out


def iterate_canonical_data(n: int, q: int):
    """Every rational canonical form of an n x n matrix over F_q, once each."""
    slots = [(d, idx) for d in range(1, n + 1) for idx in range(count_irreducible(d, q))]

    def rec(start, budget, acc):
        if budget == 0:
            yield CanonicalData(tuple(acc))
            return
        for s in range(start, len(slots)):
            d, idx = slots[s]
            if d > budget:
                break
            for size in range(1, budget // d + 1):
                for lam in P.iterate_partitions(size):
                    acc.append((d, idx, lam))
                    yield from rec(s + 1, budget - d * size, acc)
                    acc.pop()

    yield from rec(0, n, [])


def _centralizer_exponent(data: CanonicalData) -> int:
    return sum(d * P.sum_sq_conjugate(lam) for d, _, lam in data.assignments)


def _pochhammer_part(data: CanonicalData, ring: QRing, eps: int):
    out = ring.one
    for d, _, lam in data.assignments:
        sign = eps if d % 2 else 1
        for m in P.multiplicities(lam).values():
            out = out * pochhammer(d, sign, m, ring)
    return out


def centralizer_size_mat(data: CanonicalData, q: int | None):
    ring = QRing(q)
    return exact(ring, ring.q ** _centralizer_exponent(data), "centralizer")


def _class_size(n, ring, data, eps, label):
    if data.weight != n:
        raise ValueError(f"data has weight {data.weight}, expected {n}")
    denom = ring.q ** _centralizer_exponent(data) * _pochhammer_part(data, ring, eps)
    value = exact(ring, group_order_eps(n, ring, eps) / denom, f"{label} n={n} q={ring.label} data={_fmt(data)}")
    if not ring.symbolic and value <= 0:
        raise ArithmeticError(f"nonpositive class size for {_fmt(data)}")
    return value


def _fmt(data: CanonicalData) -> str:
    return ";".join(f"d{d}#{i}:{lam}" for d, i, lam in data.assignments) or "empty"


def class_size(n: int, q: int | None, data: CanonicalData):
    """Number of matrices in Mat(n, q) with rational canonical form ``data``."""
    return _class_size(n, QRing(q), data, 1, "gl class")


# -- series building blocks -----------------------------------------------------

def _by_size(max_size: int):
    return [list(P.iterate_partitions(k)) for k in range(max_size + 1)]


def degree_series(ring: QRing, order: int, d: int, sign: int) -> USeries:
    """Sum over all partitions lam of u^(d|lam|) / prod_i (1/q^d)_{m_i(lam)} (signed base)."""
    out = USeries.zero(ring, order)
    for k, parts in enumerate(_by_size(order // d)):
        acc = ring.zero
        for lam in parts:
            den = ring.one
            for m in P.multiplicities(lam).values():
                den = den * pochhammer(d, sign, m, ring)
            acc = acc + ring.one / den
        out.coeffs[d * k] = acc
    return out


def class_sum_series(ring: QRing, order: int, eps: int) -> USeries:
    """Product over degrees d of degree_series(d)^N(d, q)."""
    total = USeries.one(ring, order)
    for d in range(1, order + 1):
        sign = eps if d % 2 else 1
        n_d = count_irreducible(d, ring.qvalue)
        total = total * degree_series(ring, order, d, sign).power(n_d)
    return total


def nilpotent_class_sum(n: int, ring: QRing, eps: int):
    """Sum over |lam| = n of prod_i 1 / (q^{m_i} (1/q)_{m_i}) (q -> -q when eps = -1)."""
    acc = ring.zero
    for lam in P.iterate_partitions(n):
        den = ring.one
        for m in P.multiplicities(lam).values():
            den = den * ring.q ** m * pochhammer(1, eps, m, ring)
        acc = acc + ring.one / den
    return acc


def euler_product(ring: QRing, order: int, scale, sign: int) -> USeries:
    total = USeries.one(ring, order)
    for i in range(1, order + 1):
        total = total * euler_sum(i, scale, (1, sign), order, ring)
    return total


@lru_cache(maxsize=None)
def _pairs_series(q, order, eps, backend):
    ring = QRing(q)
    if backend == CLASS_SUM:
        return class_sum_series(ring, order, eps)
    if backend == GEN_FN:
        return euler_product(ring, order, ring.q, eps)
    raise ValueError(f"unknown backend {backend!r}")


@lru_cache(maxsize=None)
def _nil_series(q, order, eps):
    ring = QRing(q)
    return euler_product(ring, order, ring.one / ring.q, eps)


def pairs_eps(n: int, q: int | None, eps: int, backend: str, label: str):
    ring = QRing(q)
    coeff = _pairs_series(q, n, eps, backend)[n]
    return exact(ring, group_order_eps(n, ring, eps) * coeff, f"{label} n={n} q={ring.label} {backend}")


def nil_pairs_eps(n: int, q: int | None, eps: int, backend: str, label: str):
    ring = QRing(q)
    if backend == CLASS_SUM:
        coeff = nilpotent_class_sum(n, ring, eps)
    elif backend == GEN_FN:
        coeff = _nil_series(q, n, eps)[n]
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return exact(ring, group_order_eps(n, ring, eps) * coeff, f"{label} n={n} q={ring.label} {backend}")


def commuting_pairs_gl(n: int, q: int | None, backend: str = GEN_FN):
    """G_n: ordered pairs of commuting n x n matrices over F_q."""
    return pairs_eps(n, q, 1, backend, "gl pairs")


def nilpotent_pairs_gl(n: int, q: int | None, backend: str = GEN_FN):
    """NG_n: ordered pairs of commuting nilpotent n x n matrices over F_q."""
    return nil_pairs_eps(n, q, 1, backend, "gl nilpotent_pairs")


def clear_caches():
    _pairs_series.cache_clear()
    _nil_series.cache_clear()
