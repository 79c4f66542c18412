"""Exhaustive counts over a :class:`LieSpace`.

Commuting pairs are counted as the sum over A of q^(centralizer dimension),
never by enumerating pairs.  Index ranges can be split into slices; slice
results are integers and are summed in slice order.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from ..partitions import Partition, conjugate
from ..polycount import enumerate_polys_oracle
from . import kernels as K
from .spaces import LieSpace

DEFAULT_GUARD_BITS = 22.0


class GuardError(ValueError):
    """The space is too large to enumerate without ``force``."""


def check_guard(space: LieSpace, force: bool = False, limit: float = DEFAULT_GUARD_BITS):
    if not force and space.size_bits > limit + 1e-9:
        raise GuardError(
            f"{space.family} n={space.n} q={space.q} has 2^{space.size_bits:.1f} elements "
            f"(limit 2^{limit:g}); pass force=True / --force to run anyway"
        )


def _slices(total: int, slices: int):
    slices = max(1, min(slices, total))
    return [(total * s // slices, total * (s + 1) // slices) for s in range(slices)]


def matrix_size(space: LieSpace) -> int:
    return space.real_size // space.ctx.k


def centralizer_nullity(a, space: LieSpace) -> int:
    """F_q-dimension of {B in space : AB = BA} for a field matrix ``a`` in the space."""
    coords = space.coordinates(space.ctx.realify(a))
    m = np.tensordot(coords, space.struct, axes=1) % space.p
    f_p_nullity = space.dim - K.rank_mod_p(m, space.p)
    return _to_q_dim(space, f_p_nullity)


def _to_q_dim(space: LieSpace, f_p_dim: int) -> int:
    # q = p^e for the counting field; F_p-dimensions are e times F_q-dimensions
    e = round(np.log(space.q) / np.log(space.p))
    if f_p_dim % e:
        raise ArithmeticError("F_p-dimension not divisible by the degree of F_q")
    return f_p_dim // e


def nullity_histogram(space: LieSpace, force: bool = False, slices: int = 1,
                      kernels: str | None = None) -> np.ndarray:
    """hist[k] = number of A in the space with F_p-nullity k."""
    check_guard(space, force)
    total = space.p ** space.dim
    hist = np.zeros(space.dim + 1, dtype=np.int64)
    for lo, hi in _slices(total, slices):
        hist += K.nullity_histogram(space.basis, space.struct, space.p, lo, hi, kernels)
    return hist


def count_commuting_pairs(space: LieSpace, force: bool = False, slices: int = 1,
                          kernels: str | None = None) -> int:
    hist = nullity_histogram(space, force, slices, kernels)
    return sum(int(c) * space.p ** k for k, c in enumerate(hist))


def count_nilpotent_pairs(space: LieSpace, force: bool = False, slices: int = 1,
                          kernels: str | None = None) -> int:
    check_guard(space, force)
    total = space.p ** space.dim
    count = 0
    for lo, hi in _slices(total, slices):
        pairs, _ = K.nilpotent_pair_count(space.basis, space.struct, space.p, matrix_size(space),
                                          lo, hi, kernels)
        count += pairs
    return count


def iter_elements(space: LieSpace, chunk: int = K.CHUNK):
    """Yield realified elements in index order, in batches."""
    total = space.p ** space.dim
    flat = space.basis.reshape(space.dim, -1)
    side = space.real_size
    for lo in range(0, total, chunk):
        c = K.digits(np.arange(lo, min(total, lo + chunk)), space.p, space.dim)
        yield (c @ flat % space.p).reshape(c.shape[0], side, side)


def count_nilpotent_elements(space: LieSpace, force: bool = False) -> int:
    check_guard(space, force)
    return sum(int(K.batch_nilpotent(a, space.p, matrix_size(space)).sum()) for a in iter_elements(space))


def _poly_at(batch: np.ndarray, coeffs: tuple, p: int) -> np.ndarray:
    eye = np.eye(batch.shape[1], dtype=np.int64)
    out = np.broadcast_to(eye * coeffs[-1], batch.shape).copy()
    for c in reversed(coeffs[:-1]):
        out = (np.matmul(out, batch) + c * eye) % p
    return out


def hermitian_scalar(ctx) -> int:
    """Nonzero theta in GF(p^2) with conj(theta) = -theta.

    Multiplication by theta maps skew-Hermitian matrices onto Hermitian ones.
    """
    for t in range(1, ctx.size):
        if ctx.frob(t) == ctx.neg(t):
            return t
    raise AssertionError("no theta with conj(theta) = -theta")


def orbit_census(space: LieSpace, force: bool = False) -> Counter:
    """Count elements by canonical-form fingerprint.

    The fingerprint lists, for every monic irreducible g over F_q dividing the
    characteristic polynomial, the partition read off from the kernel
    dimensions of g(A)^j.  Polynomials are coefficient tuples, lowest degree
    first.  Needs prime q.
    """
    check_guard(space, force)
    if space.ctx.k == 2 and space.family == "mat":
        raise ValueError("orbit census needs prime q")
    p = space.p
    size = matrix_size(space)
    k = space.ctx.k
    polys = [g for d in range(1, size + 1) for g in enumerate_polys_oracle(d, p)["irreducible"]]
    scale = None
    if space.family == "gu":
        # skew-Hermitian A is not similar to an F_q-matrix for odd q, but theta*A
        # is Hermitian and theta*(-) is GU-equivariant
        scale = np.kron(np.eye(size, dtype=np.int64), space.ctx.mult_matrix(hermitian_scalar(space.ctx)))
    census = Counter()
    for batch in iter_elements(space):
        if scale is not None:
            batch = np.matmul(scale, batch) % p
        nb = batch.shape[0]
        parts = [[] for _ in range(nb)]
        for g in polys:
            deg = len(g) - 1
            ga = _poly_at(batch, g, p)
            power = ga.copy()
            kernel_dims = []
            for _ in range(size // deg):
                kernel_dims.append((space.real_size - K.batch_rank(power.copy(), p)) // k)
                power = np.matmul(power, ga) % p
            kd = np.array(kernel_dims).T  # (nb, steps)
            for i in np.nonzero(kd[:, 0])[0]:
                cols = np.diff(np.concatenate([[0], kd[i]])) // deg
                lam = conjugate(Partition([int(c) for c in cols if c]))
                parts[i].append((g, lam.parts))
        for fp in parts:
            census[tuple(fp)] += 1
    return census


def _bar(g: tuple, p: int) -> tuple:
    deg = len(g) - 1
    return tuple((c * (-1) ** (i + deg)) % p for i, c in enumerate(g))


def census_data(key: tuple, family: str, p: int):
    """Turn an :func:`orbit_census` fingerprint into formula-side data.

    Returns a CanonicalData for mat/gu spaces and an SpData for sp spaces;
    polynomial indices are positions in the fingerprint.
    """
    from ..counts_gl import CanonicalData
    from ..counts_sp import SpData

    if family in ("mat", "gu", "herm"):
        return CanonicalData(tuple((len(g) - 1, i, Partition(lam)) for i, (g, lam) in enumerate(key)))
    if family != "sp":
        raise ValueError(f"unknown family {family!r}")
    lookup = dict(key)
    lam_x = Partition()
    selfdual, pairs = [], []
    for i, (g, lam) in enumerate(key):
        deg = len(g) - 1
        if g == (0, 1):
            lam_x = Partition(lam)
            continue
        gb = _bar(g, p)
        if gb == g:
            selfdual.append((deg, i, Partition(lam)))
        elif g < gb:
            if lookup.get(gb) != lam:
                raise AssertionError(f"partitions of {g} and its dual differ")
            pairs.append((deg, i, Partition(lam)))
    return SpData(lam_x, tuple(selfdual), tuple(pairs))
