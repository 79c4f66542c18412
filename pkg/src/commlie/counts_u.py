"""Commuting pairs in the Lie algebra of GU(n, q) (skew-Hermitian matrices).

GU-orbits on the Lie algebra are indexed by the same rational canonical data
as GL(n, q)-classes on Mat(n, q); only the Pochhammer factors of odd-degree
polynomials change, by q -> -q.
"""

from __future__ import annotations

from .counts_gl import (
    GEN_FN,
    CanonicalData,
    _centralizer_exponent,
    _class_size,
    group_order_eps,
    iterate_canonical_data,
    nil_pairs_eps,
    pairs_eps,
)
from .qexact import QRing
from .report import exact

__all__ = [
    "CanonicalData",
    "iterate_canonical_data",
    "group_order_gu",
    "orbit_size_u",
    "centralizer_size_u",
    "commuting_pairs_u",
    "nilpotent_pairs_u",
]


def group_order_gu(n: int, q: int | None):
    ring = QRing(q)
    return exact(ring, group_order_eps(n, ring, -1), f"|GU({n},q)|")


def orbit_size_u(n: int, q: int | None, data: CanonicalData):
    """Size of the GU(n, q)-orbit on the Lie algebra with canonical data ``data``."""
    return _class_size(n, QRing(q), data, -1, "u orbit")


def centralizer_size_u(data: CanonicalData, q: int | None):
    ring = QRing(q)
    return exact(ring, ring.q ** _centralizer_exponent(data), "centralizer")


def commuting_pairs_u(n: int, q: int | None, backend: str = GEN_FN):
    """U_n: ordered commuting pairs in the Lie algebra of GU(n, q)."""
    return pairs_eps(n, q, -1, backend, "u pairs")


def nilpotent_pairs_u(n: int, q: int | None, backend: str = GEN_FN):
    """NU_n: ordered commuting pairs of nilpotent elements of the Lie algebra of GU(n, q)."""
    return nil_pairs_eps(n, q, -1, backend, "u nilpotent_pairs")
