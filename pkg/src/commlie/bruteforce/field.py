"""GF(p) and GF(p^2) arithmetic.

Elements are encoded as integers ``a + b*p`` for ``a + b*alpha``, where alpha
is a root of the field's modulus.  Everything the enumeration kernels touch is
an F_p-linear object, so the main service of this module is
:meth:`FqContext.realify`: it turns a matrix over GF(p^k) into the matrix of
the same map on F_p^(nk).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def split_prime_power(q: int) -> tuple[int, int]:
    """(p, k) with q = p^k; only k in {1, 2} is supported."""
    if is_prime(q):
        return q, 1
    r = int(round(q ** 0.5))
    if r * r == q and is_prime(r):
        return r, 2
    raise ValueError(f"q={q} is not a prime or the square of a prime")


@dataclass(frozen=True)
class FqContext:
    p: int
    k: int
    modulus: tuple[int, ...] = ()  # (c0, c1) for x^2 + c1 x + c0; empty when k = 1
    mul_table: np.ndarray = field(repr=False, compare=False, default=None)
    frobenius: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def size(self) -> int:
        return self.p ** self.k

    def encode(self, a: int, b: int = 0) -> int:
        return a % self.p + (b % self.p) * self.p if self.k == 2 else a % self.p

    def coords(self, x: int) -> tuple[int, ...]:
        return (x % self.p, x // self.p) if self.k == 2 else (x,)

    def add(self, x: int, y: int) -> int:
        return self.encode(*[a + b for a, b in zip(self.coords(x), self.coords(y))])

    def neg(self, x: int) -> int:
        return self.encode(*[-a for a in self.coords(x)])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def frob(self, x: int) -> int:
        return int(self.frobenius[x])

    def mult_matrix(self, x: int) -> np.ndarray:
        """Matrix over F_p of y -> x*y in the basis (1, alpha)."""
        if self.k == 1:
            return np.array([[x % self.p]], dtype=np.int64)
        a, b = self.coords(x)
        c0, c1 = self.modulus
        p = self.p
        return np.array([[a, (-c0 * b) % p], [b, (a - c1 * b) % p]], dtype=np.int64)

    def realify(self, mat) -> np.ndarray:
        mat = np.asarray(mat, dtype=np.int64)
        n = mat.shape[0]
        k = self.k
        out = np.zeros((n * k, n * k), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                out[i * k:(i + 1) * k, j * k:(j + 1) * k] = self.mult_matrix(int(mat[i, j]))
        return out

    def derealify(self, real: np.ndarray) -> np.ndarray:
        k = self.k
        n = real.shape[0] // k
        out = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                # the image of 1 is the first column of the block
                out[i, j] = self.encode(*[int(v) for v in real[i * k:(i + 1) * k, j * k]])
        return out


def _poly_mul_mod(x, y, p, modulus):
    # (a0 + a1 t)(b0 + b1 t), t^2 = -c1 t - c0
    a0, a1 = x
    b0, b1 = y
    c0, c1 = modulus
    hi = a1 * b1
    return ((a0 * b0 - c0 * hi) % p, (a0 * b1 + a1 * b0 - c1 * hi) % p)


def make_field(p: int, k: int = 1) -> FqContext:
    """GF(p^k) with the smallest irreducible monic modulus (coefficients read from the top)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k == 1:
        mul = np.fromfunction(lambda i, j: (i * j) % p, (p, p), dtype=np.int64)
        return FqContext(p, 1, (), mul, np.arange(p, dtype=np.int64))
    if k != 2:
        raise ValueError("only k in {1, 2} is supported")
    modulus = None
    for c1 in range(p):
        for c0 in range(p):
            if all((t * t + c1 * t + c0) % p for t in range(p)):
                modulus = (c0, c1)
                break
        if modulus:
            break
    size = p * p
    elems = [(i % p, i // p) for i in range(size)]
    mul = np.zeros((size, size), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            a, b = _poly_mul_mod(x, y, p, modulus)
            mul[i, j] = a + b * p
    frob = np.zeros(size, dtype=np.int64)
    for i in range(size):
        acc = 1
        for _ in range(p):
            acc = mul[acc, i]
        frob[i] = acc
    ctx = FqContext(p, 2, modulus, mul, frob)
    for i in range(size):
        if frob[frob[i]] != i:
            raise AssertionError("Frobenius is not an involution")
    if sorted(i for i in range(size) if frob[i] == i) != list(range(p)):
        raise AssertionError("Frobenius fixed field is not F_p")
    return ctx
