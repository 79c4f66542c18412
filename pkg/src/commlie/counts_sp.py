"""Commuting pairs in sp(2n, q) for odd q.

Elements of sp(2n, q) are classified by Jordan data on three kinds of
polynomial: phi = x (an sp-admissible partition), self-dual irreducibles
phi = phi-bar of even degree, and pairs {phi, phi-bar}, which carry a common
partition.  Series here are in u with u^(2n) tracking sp(2n); the
:func:`~commlie.qexact.USeries.halve_degrees` step turns them into series in
v = u^2 whose v^n coefficient belongs to Sp(2n, q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import partitions as P
from .partitions import Partition
from .polycount import count_dual_pairs, count_selfdual
from .qexact import QRing, USeries, euler_sum, pochhammer, qpoch
from .report import exact

CLASS_SUM = "class_sum"
GEN_FN = "gen_fn"


class EvenCharacteristicError(ValueError):
    def __init__(self, q):
        super().__init__(f"symplectic counts need odd q, got q={q}; characteristic 2 is not covered")


def _check_q(q):
    if q is not None and q % 2 == 0:
        raise EvenCharacteristicError(q)


@dataclass(frozen=True)
class SpData:
    """Jordan data of an element of sp(2n, q).

    ``selfdual`` holds (degree 2d, index, partition) for self-dual irreducibles;
    ``pairs`` holds (d, index, partition) for each used pair {phi, phi-bar} of
    degree d.
    """

    lambda_x: Partition = field(default_factory=Partition)
    selfdual: tuple = ()
    pairs: tuple = ()

    def __post_init__(self):
        if not P.is_sp_admissible(self.lambda_x):
            raise ValueError(f"{self.lambda_x} has an odd part of odd multiplicity")
        for two_d, _, _ in self.selfdual:
            if two_d % 2:
                raise ValueError("self-dual polynomials other than x have even degree")

    @property
    def weight(self) -> int:
        return (self.lambda_x.size
                + sum(two_d * lam.size for two_d, _, lam in self.selfdual)
                + sum(2 * d * lam.size for d, _, lam in self.pairs))


def group_order_sp(n: int, q: int | None):
    _check_q(q)
    ring = QRing(q)
    return exact(ring, _order(n, ring), f"|Sp({2 * n},q)|")


def _order(n, ring):
    out = ring.q ** (n * n)
    for i in range(1, n + 1):
        out = out * (ring.q ** (2 * i) - 1)
    return out


def _half(twice: int, what: str) -> int:
    if twice % 2:
        raise ArithmeticError(f"half-integer exponent in {what}")
    return twice // 2


def _nil_dim(lam: Partition) -> int:
    return _half(P.sum_sq_conjugate(lam) + P.odd_part_count(lam), f"nilpotent dim of {lam}")


def centralizer_dim_sp(data: SpData) -> int:
    """Dimension of the centralizer of an element with data ``data`` in sp."""
    dim = _nil_dim(data.lambda_x)
    for two_d, _, lam in data.selfdual:
        dim += _half(two_d * P.sum_sq_conjugate(lam), f"self-dual degree {two_d} {lam}")
    for d, _, lam in data.pairs:
        dim += d * P.sum_sq_conjugate(lam)
    return dim


def nilpotent_dim_formulas_agree(lam: Partition) -> int:
    """Centralizer dimension of a nilpotent of type ``lam``, computed two ways."""
    if not P.is_sp_admissible(lam):
        raise ValueError(f"{lam} is not sp-admissible")
    first = sum(i * part for i, part in enumerate(lam.parts)) + sum((part + 1) // 2 for part in lam.parts)
    second = _nil_dim(lam)
    if first != second:
        raise ArithmeticError(f"dimension formulas disagree for {lam}: {first} != {second}")
    return first


def _nil_reductive(lam: Partition, ring: QRing):
    # prod_i (1 - 1/q^2)(1 - 1/q^4)...(1 - 1/q^(2 floor(m_i/2)))
    out = ring.one
    for m in P.multiplicities(lam).values():
        out = out * pochhammer(2, 1, m // 2, ring)
    return out


def _selfdual_reductive(d: int, m: int, ring: QRing):
    # (1 + 1/q^d)(1 - 1/q^(2d)) ... (1 - (-1)^m / q^(md)),  d = deg(phi)/2
    return qpoch(-ring.one / ring.q ** d, m, ring)


def nilpotent_count_sp(lam: Partition, n: int, q: int | None):
    """Number of nilpotent elements of sp(2n, q) with Jordan type ``lam``."""
    _check_q(q)
    if lam.size != 2 * n:
        raise ValueError(f"|{lam}| != {2 * n}")
    ring = QRing(q)
    value = _order(n, ring) / (ring.q ** nilpotent_dim_formulas_agree(lam) * _nil_reductive(lam, ring))
    return exact(ring, value, f"sp nilpotent n={n} q={ring.label} lam={lam}")


def orbit_size_sp(data: SpData, n: int, q: int | None):
    """Number of elements of sp(2n, q) with Jordan data ``data``."""
    _check_q(q)
    if data.weight != 2 * n:
        raise ValueError(f"data has weight {data.weight}, expected {2 * n}")
    ring = QRing(q)
    den = ring.q ** _nil_dim(data.lambda_x) * _nil_reductive(data.lambda_x, ring)
    for two_d, _, lam in data.selfdual:
        d = two_d // 2
        den = den * ring.q ** _half(two_d * P.sum_sq_conjugate(lam), "self-dual")
        for m in P.multiplicities(lam).values():
            den = den * _selfdual_reductive(d, m, ring)
    for d, _, lam in data.pairs:
        den = den * ring.q ** (d * P.sum_sq_conjugate(lam))
        for m in P.multiplicities(lam).values():
            den = den * pochhammer(d, 1, m, ring)
    value = exact(ring, _order(n, ring) / den, f"sp orbit n={n} q={ring.label} data={data}")
    if not ring.symbolic and value <= 0:
        raise ArithmeticError(f"nonpositive orbit size for {data}")
    return value


def iterate_sp_data(n: int, q: int):
    """Every Jordan datum of an element of sp(2n, q), once each."""
    _check_q(q)
    slots = []
    for d in range(1, n + 1):
        slots += [("s", 2 * d, idx) for idx in range(count_selfdual(2 * d, q))]
        slots += [("p", d, idx) for idx in range(count_dual_pairs(d, q))]
    # both slot kinds consume 2d of the 2n weight per unit of partition size
    slots.sort(key=lambda s: (s[1] if s[0] == "s" else 2 * s[1], s[0], s[2]))

    def rec(start, budget, sd, pr):
        if budget == 0:
            yield tuple(sd), tuple(pr)
            return
        for s in range(start, len(slots)):
            kind, deg, idx = slots[s]
            w = deg if kind == "s" else 2 * deg
            if w > budget:
                break
            target = sd if kind == "s" else pr
            for size in range(1, budget // w + 1):
                for lam in P.iterate_partitions(size):
                    target.append((deg, idx, lam))
                    yield from rec(s + 1, budget - w * size, sd, pr)
                    target.pop()

    for k in range(0, 2 * n + 1, 2):
        for lam_x in P.iterate_sp_admissible(k):
            for sd, pr in rec(0, 2 * n - k, [], []):
                yield SpData(lam_x, sd, pr)


# -- series ---------------------------------------------------------------------

def _nil_series(ring: QRing, order: int) -> USeries:
    out = USeries.zero(ring, order)
    for k in range(0, order + 1, 2):
        acc = ring.zero
        for lam in P.iterate_sp_admissible(k):
            acc = acc + ring.one / _nil_reductive(lam, ring)
        out.coeffs[k] = acc
    return out


def _partition_series(ring, order, step, den_of_m):
    out = USeries.zero(ring, order)
    for k in range(order // step + 1):
        acc = ring.zero
        for lam in P.iterate_partitions(k):
            den = ring.one
            for m in P.multiplicities(lam).values():
                den = den * den_of_m(m)
            acc = acc + ring.one / den
        out.coeffs[step * k] = acc
    return out


def class_sum_series(ring: QRing, order: int) -> USeries:
    """Series in u (u^(2n) for sp(2n)) summing centralizer sizes over all Jordan data."""
    total = _nil_series(ring, order)
    for d in range(1, order // 2 + 1):
        b = _partition_series(ring, order, 2 * d, lambda m, d=d: _selfdual_reductive(d, m, ring))
        c = _partition_series(ring, order, 2 * d, lambda m, d=d: pochhammer(d, 1, m, ring))
        total = total * b.power(count_selfdual(2 * d, ring.qvalue)) * c.power(count_dual_pairs(d, ring.qvalue))
    return total


def gen_fn_series(ring: QRing, order: int, scale) -> USeries:
    """prod_i (1 + u^(2i)) * sum_m (scale u^(2i))^m / (1/q^2)_m, truncated at u^order."""
    total = USeries.one(ring, order)
    for i in range(1, order // 2 + 1):
        total = total * (USeries.one(ring, order) + USeries.monomial(ring, order, 2 * i, ring.one))
        total = total * euler_sum(2 * i, scale, (2, 1), order, ring)
    return total


@lru_cache(maxsize=None)
def _pairs_v_series(q, n, backend):
    ring = QRing(q)
    if backend == CLASS_SUM:
        s = class_sum_series(ring, 2 * n)
    elif backend == GEN_FN:
        s = gen_fn_series(ring, 2 * n, ring.q)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return s.halve_degrees()


@lru_cache(maxsize=None)
def _nil_v_series(q, n):
    ring = QRing(q)
    return gen_fn_series(ring, 2 * n, ring.one / ring.q).halve_degrees()


def commuting_pairs_sp(n: int, q: int | None, backend: str = GEN_FN):
    """S_n: ordered commuting pairs in sp(2n, q), q odd."""
    _check_q(q)
    ring = QRing(q)
    coeff = _pairs_v_series(q, n, backend)[n]
    return exact(ring, _order(n, ring) * coeff, f"sp pairs n={n} q={ring.label} {backend}")


def nilpotent_pairs_sp(n: int, q: int | None, backend: str = GEN_FN):
    """NS_n: ordered commuting pairs of nilpotent elements of sp(2n, q), q odd."""
    _check_q(q)
    ring = QRing(q)
    if backend == CLASS_SUM:
        coeff = ring.zero
        for lam in P.iterate_sp_admissible(2 * n):
            den = ring.one
            for m in P.multiplicities(lam).values():
                den = den * pochhammer(2, 1, m // 2, ring) * ring.q ** (m // 2)
            coeff = coeff + ring.one / den
    elif backend == GEN_FN:
        coeff = _nil_v_series(q, n)[n]
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return exact(ring, _order(n, ring) * coeff, f"sp nilpotent_pairs n={n} q={ring.label} {backend}")


def clear_caches():
    _pairs_v_series.cache_clear()
    _nil_v_series.cache_clear()
