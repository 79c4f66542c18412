"""Hot loops of the oracle: ranks mod p and nilpotency tests over enumerated spans.

Each kernel has a numba version and a vectorized numpy version.  The
``COMMLIE_KERNELS`` environment variable selects one (``numba`` or ``numpy``);
numba is the default when it imports.  ``COMMLIE_THREADS`` caps numba's
thread pool.  Both versions return integer histograms and counts, so results
do not depend on the kernel choice or on the thread count.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

try:
    import numba
    from numba import njit, prange
    from numba.core.errors import NumbaWarning

    warnings.filterwarnings("ignore", message="The TBB threading layer", category=NumbaWarning)

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

CHUNK = 4096


def kernel_backend(override: str | None = None) -> str:
    choice = (override or os.environ.get("COMMLIE_KERNELS", "")).strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(f"COMMLIE_KERNELS must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba kernels requested but numba is not importable")
    return choice


def _apply_thread_cap():
    cap = os.environ.get("COMMLIE_THREADS")
    if cap and HAVE_NUMBA:
        numba.set_num_threads(max(1, min(int(cap), numba.config.NUMBA_NUM_THREADS)))


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


# -- scalar helpers, used by both paths for one-off matrices -------------------

def rref_mod_p(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = np.array(m, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), p - 2, p)) % p
        f = m[:, c].copy()
        f[r] = 0
        m = (m - np.outer(f, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(m: np.ndarray, p: int) -> int:
    return len(rref_mod_p(m, p)[1])


def nullspace_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : m x = 0} over F_p, one vector per row."""
    red, pivots = rref_mod_p(m, p)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-red[r, fc]) % p
    return basis


def solve_mod_p(a: np.ndarray, b: np.ndarray, p: int):
    """A solution of a x = b over F_p, or None."""
    aug = np.concatenate([np.asarray(a) % p, np.asarray(b).reshape(-1, 1) % p], axis=1)
    red, pivots = rref_mod_p(aug, p)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = red[r, n]
    return x


def digits(indices: np.ndarray, p: int, dim: int) -> np.ndarray:
    """Base-p digits, most significant first: row i holds the coordinates of index i."""
    out = np.empty((indices.size, dim), dtype=np.int64)
    rest = indices.astype(np.int64).copy()
    for j in range(dim - 1, -1, -1):
        out[:, j] = rest % p
        rest //= p
    return out


# -- numpy path ----------------------------------------------------------------

def batch_rank(ms: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a stack of matrices, shape (B, r, c)."""
    m = ms % p
    nb, rows, cols = m.shape
    inv = inverse_table(p)
    row = np.zeros(nb, dtype=np.int64)
    ar = np.arange(rows)
    for c in range(cols):
        mask = (m[:, :, c] != 0) & (ar[None, :] >= row[:, None])
        has = np.nonzero(mask.any(axis=1))[0]
        if has.size == 0:
            continue
        piv = mask[has].argmax(axis=1)
        r0 = row[has]
        top = m[has, r0].copy()
        m[has, r0] = m[has, piv]
        m[has, piv] = top
        pivrow = (m[has, r0] * inv[m[has, r0, c]][:, None]) % p
        m[has, r0] = pivrow
        f = m[has, :, c].copy()
        f[np.arange(has.size), r0] = 0
        m[has] = (m[has] - f[:, :, None] * pivrow[:, None, :]) % p
        row[has] += 1
    return row


def batch_nilpotent(mats: np.ndarray, p: int, power: int) -> np.ndarray:
    acc = mats % p
    for _ in range(power - 1):
        acc = np.matmul(acc, mats) % p
    return ~acc.reshape(acc.shape[0], -1).any(axis=1)


def _np_nullity_hist(basis, struct, p, start, stop):
    dim = basis.shape[0]
    hist = np.zeros(dim + 1, dtype=np.int64)
    flat = struct.reshape(dim, -1)
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(stop, lo + CHUNK))
        c = digits(idx, p, dim)
        ms = (c @ flat % p).reshape(idx.size, struct.shape[1], dim)
        hist += np.bincount(dim - batch_rank(ms, p), minlength=dim + 1)
    return hist


def _np_nilpotent_pairs(basis, struct, p, power, start, stop):
    dim = basis.shape[0]
    flat_b = basis.reshape(dim, -1)
    flat_s = struct.reshape(dim, -1)
    side = basis.shape[1]
    total = 0
    nil_a = 0
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(stop, lo + CHUNK))
        c = digits(idx, p, dim)
        a = (c @ flat_b % p).reshape(idx.size, side, side)
        for ci in c[batch_nilpotent(a, p, power)]:
            nil_a += 1
            null = nullspace_mod_p((ci @ flat_s % p).reshape(struct.shape[1], dim), p)
            k = null.shape[0]
            for lo2 in range(0, p ** k, CHUNK):
                t = digits(np.arange(lo2, min(p ** k, lo2 + CHUNK)), p, k)
                bc = t @ null % p
                b = (bc @ flat_b % p).reshape(bc.shape[0], side, side)
                total += int(batch_nilpotent(b, p, power).sum())
    return total, nil_a


# -- numba path ----------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_decode(index, p, dim, out):
        for j in range(dim - 1, -1, -1):
            out[j] = index % p
            index //= p

    @njit(cache=True)
    def _nb_rref(m, p, inv, pivots):
        rows, cols = m.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    t = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = t
            s = inv[m[r, c]]
            for j in range(cols):
                m[r, j] = (m[r, j] * s) % p
            for i in range(rows):
                if i != r and m[i, c] != 0:
                    f = m[i, c]
                    for j in range(cols):
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
            pivots[r] = c
            r += 1
        return r

    @njit(cache=True)
    def _nb_is_nilpotent(a, p, power, tmp, acc):
        n = a.shape[0]
        acc[:, :] = a
        for _ in range(power - 1):
            for i in range(n):
                for j in range(n):
                    s = 0
                    for k in range(n):
                        s += acc[i, k] * a[k, j]
                    tmp[i, j] = s % p
            acc[:, :] = tmp
        for i in range(n):
            for j in range(n):
                if acc[i, j] != 0:
                    return False
        return True

    @njit(cache=True, parallel=True)
    def _nb_nullity_hist(struct, p, inv, start, stop, nchunks):
        dim = struct.shape[0]
        rows = struct.shape[1]
        hists = np.zeros((nchunks, dim + 1), dtype=np.int64)
        span = stop - start
        for ch in prange(nchunks):
            lo = start + span * ch // nchunks
            hi = start + span * (ch + 1) // nchunks
            c = np.empty(dim, dtype=np.int64)
            m = np.empty((rows, dim), dtype=np.int64)
            pivots = np.empty(dim, dtype=np.int64)
            for idx in range(lo, hi):
                _nb_decode(idx, p, dim, c)
                m[:, :] = 0
                for i in range(dim):
                    if c[i]:
                        m += c[i] * struct[i]
                for a in range(rows):
                    for b in range(dim):
                        m[a, b] %= p
                rank = _nb_rref(m, p, inv, pivots)
                hists[ch, dim - rank] += 1
        return hists.sum(axis=0)

    @njit(cache=True, parallel=True)
    def _nb_nilpotent_pairs(basis, struct, p, inv, power, start, stop, nchunks):
        dim = struct.shape[0]
        rows = struct.shape[1]
        side = basis.shape[1]
        totals = np.zeros(nchunks, dtype=np.int64)
        nils = np.zeros(nchunks, dtype=np.int64)
        span = stop - start
        for ch in prange(nchunks):
            lo = start + span * ch // nchunks
            hi = start + span * (ch + 1) // nchunks
            c = np.empty(dim, dtype=np.int64)
            t = np.empty(dim, dtype=np.int64)
            bc = np.empty(dim, dtype=np.int64)
            a = np.empty((side, side), dtype=np.int64)
            b = np.empty((side, side), dtype=np.int64)
            tmp = np.empty((side, side), dtype=np.int64)
            acc = np.empty((side, side), dtype=np.int64)
            m = np.empty((rows, dim), dtype=np.int64)
            pivots = np.empty(dim, dtype=np.int64)
            null = np.empty((dim, dim), dtype=np.int64)
            isfree = np.empty(dim, dtype=np.bool_)
            for idx in range(lo, hi):
                _nb_decode(idx, p, dim, c)
                a[:, :] = 0
                for i in range(dim):
                    if c[i]:
                        a += c[i] * basis[i]
                for i in range(side):
                    for j in range(side):
                        a[i, j] %= p
                if not _nb_is_nilpotent(a, p, power, tmp, acc):
                    continue
                nils[ch] += 1
                m[:, :] = 0
                for i in range(dim):
                    if c[i]:
                        m += c[i] * struct[i]
                for i in range(rows):
                    for j in range(dim):
                        m[i, j] %= p
                rank = _nb_rref(m, p, inv, pivots)
                isfree[:] = True
                for r in range(rank):
                    isfree[pivots[r]] = False
                k = 0
                for fc in range(dim):
                    if isfree[fc]:
                        null[k, :] = 0
                        null[k, fc] = 1
                        for r in range(rank):
                            null[k, pivots[r]] = (-m[r, fc]) % p
                        k += 1
                count = 1
                for _ in range(k):
                    count *= p
                for tidx in range(count):
                    _nb_decode(tidx, p, k, t)
                    bc[:] = 0
                    for j in range(k):
                        if t[j]:
                            for i in range(dim):
                                bc[i] += t[j] * null[j, i]
                    b[:, :] = 0
                    for i in range(dim):
                        w = bc[i] % p
                        if w:
                            b += w * basis[i]
                    for i in range(side):
                        for j in range(side):
                            b[i, j] %= p
                    if _nb_is_nilpotent(b, p, power, tmp, acc):
                        totals[ch] += 1
        return totals.sum(), nils.sum()


def _nchunks(span: int) -> int:
    if not HAVE_NUMBA:
        return 1
    return max(1, min(span, 8 * numba.get_num_threads()))


def nullity_histogram(basis, struct, p: int, start: int, stop: int, kernels: str | None = None) -> np.ndarray:
    """hist[k] = number of indices in [start, stop) whose element has centralizer nullity k."""
    if kernel_backend(kernels) == "numba":
        _apply_thread_cap()
        return _nb_nullity_hist(struct, p, inverse_table(p), start, stop, _nchunks(stop - start))
    return _np_nullity_hist(basis, struct, p, start, stop)


def nilpotent_pair_count(basis, struct, p: int, power: int, start: int, stop: int,
                         kernels: str | None = None) -> tuple[int, int]:
    """(number of commuting nilpotent pairs, number of nilpotent first elements) over [start, stop)."""
    if kernel_backend(kernels) == "numba":
        _apply_thread_cap()
        total, nils = _nb_nilpotent_pairs(basis, struct, p, inverse_table(p), power, start, stop,
                                          _nchunks(stop - start))
        return int(total), int(nils)
    return _np_nilpotent_pairs(basis, struct, p, power, start, stop)
