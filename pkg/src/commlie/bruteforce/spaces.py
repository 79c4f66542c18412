"""The three Lie algebras as F_p-spans of realified basis matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .field import FqContext, make_field, split_prime_power
from .kernels import rank_mod_p, solve_mod_p


@dataclass
class LieSpace:
    """An F_p-subspace of Mat(n, p^k) given by an F_p-basis.

    ``basis`` holds the realified basis matrices, shape (dim, n*k, n*k).
    ``q`` is the size of the field the counts refer to: |space| = q^(dim_q).
    """

    family: str
    n: int
    q: int
    ctx: FqContext
    basis: np.ndarray
    struct: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.basis = np.ascontiguousarray(self.basis % self.ctx.p, dtype=np.int64)
        flat = self.basis.reshape(self.dim, -1).T
        if rank_mod_p(flat, self.ctx.p) != self.dim:
            raise AssertionError(f"{self.family} basis is not independent")
        b = self.basis
        # struct[i, :, j] = vec([E_i, E_j]) over F_p
        prod = np.einsum("iab,jbc->ijac", b, b)
        comm = (prod - prod.transpose(1, 0, 2, 3)) % self.ctx.p
        self.struct = np.ascontiguousarray(
            comm.reshape(self.dim, self.dim, -1).transpose(0, 2, 1), dtype=np.int64
        )

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def size_bits(self) -> float:
        return self.dim * math.log2(self.p)

    @property
    def real_size(self) -> int:
        return self.basis.shape[1]

    def element(self, coeffs) -> np.ndarray:
        """Realified matrix with the given F_p coordinates."""
        c = np.asarray(coeffs, dtype=np.int64)
        return np.tensordot(c, self.basis, axes=1) % self.p

    def coordinates(self, real: np.ndarray) -> np.ndarray:
        """F_p coordinates of a realified matrix; ValueError if it is not in the space."""
        flat = self.basis.reshape(self.dim, -1).T
        sol = solve_mod_p(flat, np.asarray(real, dtype=np.int64).reshape(-1) % self.p, self.p)
        if sol is None:
            raise ValueError(f"matrix is not in the {self.family} space")
        return sol

    def contains_field_matrix(self, mat) -> bool:
        try:
            self.coordinates(self.ctx.realify(mat))
        except ValueError:
            return False
        return True


def _unit(ctx, n, i, j, x):
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = x
    return m


def mat_space(n: int, q: int) -> LieSpace:
    p, k = split_prime_power(q)
    ctx = make_field(p, k)
    scalars = [ctx.encode(1)] + ([ctx.encode(0, 1)] if k == 2 else [])
    basis = [ctx.realify(_unit(ctx, n, i, j, s)) for i in range(n) for j in range(n) for s in scalars]
    return LieSpace("mat", n, q, ctx, np.array(basis))


def _trace_zero_generator(ctx: FqContext, sign: int) -> int:
    # nonzero a with a^q = sign * a
    for a in range(1, ctx.size):
        target = a if sign == 1 else ctx.neg(a)
        if ctx.frob(a) == target:
            return a
    raise AssertionError("no diagonal generator")


def _hermitian_like(n: int, q: int, sign: int, family: str) -> LieSpace:
    # conj(A)^T = sign * A
    p, k = split_prime_power(q)
    if k != 1:
        raise ValueError("unitary spaces need prime q (field GF(q^2))")
    ctx = make_field(p, 2)
    diag = _trace_zero_generator(ctx, sign)
    basis = []
    for i in range(n):
        basis.append(ctx.realify(_unit(ctx, n, i, i, diag)))
    for i in range(n):
        for j in range(i + 1, n):
            for beta in (ctx.encode(1), ctx.encode(0, 1)):
                m = _unit(ctx, n, i, j, beta)
                partner = ctx.frob(beta) if sign == 1 else ctx.neg(ctx.frob(beta))
                m[j, i] = partner
                basis.append(ctx.realify(m))
    return LieSpace(family, n, q, ctx, np.array(basis))


def gu_space(n: int, q: int) -> LieSpace:
    """Skew-Hermitian n x n matrices over GF(q^2), as an F_q-space of dimension n^2."""
    return _hermitian_like(n, q, -1, "gu")


def hermitian_space(n: int, q: int) -> LieSpace:
    return _hermitian_like(n, q, 1, "herm")


def symplectic_form(n: int, p: int) -> np.ndarray:
    """J = [[0, I], [-I, 0]] on F_p^(2n)."""
    j = np.zeros((2 * n, 2 * n), dtype=np.int64)
    j[:n, n:] = np.eye(n, dtype=np.int64)
    j[n:, :n] = (-np.eye(n, dtype=np.int64)) % p
    return j


def sp_space(n: int, q: int) -> LieSpace:
    """sp(2n, q) = {A : AJ symmetric} for odd prime q; dimension 2n^2 + n."""
    p, k = split_prime_power(q)
    if k != 1 or p == 2:
        raise ValueError("sp oracle needs an odd prime q")
    ctx = make_field(p, 1)
    size = 2 * n
    jinv = (-symplectic_form(n, p)) % p  # J^2 = -I
    basis = []
    for i in range(size):
        for j in range(i, size):
            s = np.zeros((size, size), dtype=np.int64)
            s[i, j] = 1
            s[j, i] = 1
            basis.append((s @ jinv) % p)
    return LieSpace("sp", n, q, ctx, np.array(basis))


def make_space(family: str, n: int, q: int) -> LieSpace:
    if family in ("gl", "mat"):
        return mat_space(n, q)
    if family in ("u", "gu"):
        return gu_space(n, q)
    if family == "sp":
        return sp_space(n, q)
    raise ValueError(f"unknown family {family!r}")
