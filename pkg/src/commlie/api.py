"""One entry point per (family, kind) for the CLI and the verification harness."""

from __future__ import annotations

from . import counts_gl, counts_sp, counts_u
from .bruteforce import count_commuting_pairs, count_nilpotent_pairs, make_space
from .bruteforce.field import split_prime_power
from .qexact import QRing, USeries

FAMILIES = ("gl", "u", "sp")
COUNT_KINDS = ("pairs", "nilpotent_pairs", "group_order")

_FORMULAS = {
    ("gl", "pairs"): counts_gl.commuting_pairs_gl,
    ("gl", "nilpotent_pairs"): counts_gl.nilpotent_pairs_gl,
    ("u", "pairs"): counts_u.commuting_pairs_u,
    ("u", "nilpotent_pairs"): counts_u.nilpotent_pairs_u,
    ("sp", "pairs"): counts_sp.commuting_pairs_sp,
    ("sp", "nilpotent_pairs"): counts_sp.nilpotent_pairs_sp,
}

_ORDERS = {
    "gl": counts_gl.group_order_gl,
    "u": counts_u.group_order_gu,
    "sp": counts_sp.group_order_sp,
}


def group_order(family: str, n: int, q: int | None):
    return _ORDERS[family](n, q)


def oracle_supported(family: str, q: int) -> bool:
    try:
        p, k = split_prime_power(q)
    except ValueError:
        return False
    if family == "gl":
        return True
    if family == "u":
        return k == 1
    return k == 1 and p != 2


def count(family: str, kind: str, n: int, q: int | None, backend: str = "gen_fn", force: bool = False,
          slices: int = 1):
    if kind == "group_order":
        return group_order(family, n, q)
    if (family, kind) not in _FORMULAS:
        raise ValueError(f"unknown family/kind {family}/{kind}")
    if backend == "oracle":
        if q is None:
            raise ValueError("the oracle needs a numeric q")
        if family == "sp" and q % 2 == 0:
            counts_sp._check_q(q)
        if not oracle_supported(family, q):
            raise ValueError(f"no oracle field for family {family} at q={q}")
        if n == 0:
            return 1
        space = make_space(family, n, q)
        if kind == "pairs":
            return count_commuting_pairs(space, force=force, slices=slices)
        return count_nilpotent_pairs(space, force=force, slices=slices)
    return _FORMULAS[(family, kind)](n, q, backend)


def rhs_series(family: str, kind: str, order: int, q: int | None) -> USeries:
    """Closed-product side of the generating-function identity, expanded to u^order.

    For sp the returned series is in v, whose v^n coefficient belongs to Sp(2n).
    """
    if family in ("gl", "u"):
        eps = 1 if family == "gl" else -1
        if kind == "pairs":
            return counts_gl._pairs_series(q, order, eps, counts_gl.GEN_FN)
        return counts_gl._nil_series(q, order, eps)
    if family == "sp":
        counts_sp._check_q(q)
        if kind == "pairs":
            return counts_sp._pairs_v_series(q, order, counts_sp.GEN_FN)
        return counts_sp._nil_v_series(q, order)
    raise ValueError(f"unknown family {family!r}")


def series_rows(family: str, kind: str, order: int, q: int | None, backend: str = "class_sum"):
    """(n, count_n / |group_n|, rhs coefficient, difference) for n = 0..order."""
    ring = QRing(q)
    rhs = rhs_series(family, kind, order, q)
    rows = []
    for n in range(order + 1):
        lhs = ring.coerce(count(family, kind, n, q, backend)) if not ring.symbolic else \
            count(family, kind, n, q, backend)
        lhs = lhs / group_order(family, n, q)
        rows.append((n, lhs, rhs[n], lhs - rhs[n]))
    return rows


def clear_caches():
    counts_gl.clear_caches()
    counts_sp.clear_caches()
