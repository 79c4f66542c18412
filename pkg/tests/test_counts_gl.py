import itertools

import numpy as np
import pytest

from commlie.bruteforce import centralizer_nullity, make_space
from commlie.bruteforce.kernels import batch_rank
from commlie.counts_gl import (
    CanonicalData,
    centralizer_size_mat,
    class_size,
    commuting_pairs_gl,
    group_order_gl,
    iterate_canonical_data,
    nilpotent_pairs_gl,
)
from commlie.partitions import Partition, iterate_partitions, sum_sq_conjugate
from commlie.qexact import QRing, evaluate, pochhammer, render

P = lambda *parts: Partition(parts)  # noqa: E731
SCALAR_ZERO = CanonicalData(((1, 0, P(1)),))


def all_matrices(n, p):
    for entries in itertools.product(range(p), repeat=n * n):
        yield np.array(entries, dtype=np.int64).reshape(n, n)


def test_group_order_examples():
    assert render(group_order_gl(1, None)) == "q - 1"
    assert group_order_gl(2, 2) == 6
    assert group_order_gl(3, 2) == 168
    mats = np.array(list(itertools.product(range(2), repeat=9)), dtype=np.int64).reshape(-1, 3, 3)
    assert int((batch_rank(mats, 2) == 3).sum()) == 168


def test_class_size_examples():
    assert class_size(1, 2, SCALAR_ZERO) == 1
    irreducible_quadratic = CanonicalData(((2, 0, P(1)),))
    assert class_size(2, 2, irreducible_quadratic) == 2
    # oracle: 2x2 matrices over F_2 with characteristic polynomial x^2 + x + 1
    hits = sum(1 for a in all_matrices(2, 2) if (a[0, 0] + a[1, 1]) % 2 == 1 and
               (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]) % 2 == 1)
    assert hits == 2
    assert class_size(2, 2, CanonicalData.nilpotent(P(2))) == 3
    with pytest.raises(ValueError):
        class_size(3, 2, irreducible_quadratic)


def test_centralizer_examples():
    assert centralizer_size_mat(SCALAR_ZERO, 2) == 2
    assert render(centralizer_size_mat(CanonicalData.nilpotent(P(1, 1)), None)) == "q^4"
    for q in (2, 3, 5):
        assert centralizer_size_mat(CanonicalData.nilpotent(P(2)), q) == q ** 2
        space = make_space("gl", 2, q)
        assert centralizer_nullity(np.array([[0, 1], [0, 0]]), space) == 2
        assert centralizer_nullity(np.zeros((2, 2), dtype=np.int64), space) == 4


def test_commuting_pairs_examples():
    for backend in ("class_sum", "gen_fn"):
        assert commuting_pairs_gl(0, 2, backend) == 1
        assert commuting_pairs_gl(1, 2, backend) == 4
        assert commuting_pairs_gl(2, 2, backend) == 88
        assert commuting_pairs_gl(2, 3, backend) == 945
        assert render(commuting_pairs_gl(2, None, backend)) == "q^6 + q^5 - q^3"


def test_commuting_pairs_hand_check():
    # scalars: q of them with centralizer q^4; the rest are regular with centralizer q^2
    for q in (2, 3, 4, 5, 7):
        assert commuting_pairs_gl(2, q) == q * q ** 4 + (q ** 4 - q) * q ** 2


def test_nilpotent_pairs_examples():
    for backend in ("class_sum", "gen_fn"):
        assert nilpotent_pairs_gl(1, 2, backend) == 1
        assert nilpotent_pairs_gl(2, 2, backend) == 10
        assert render(nilpotent_pairs_gl(2, None, backend)) == "q^3 + q^2 - q"
    for q in (2, 3, 5):
        assert nilpotent_pairs_gl(2, q) == q ** 2 + (q ** 2 - 1) * q


@pytest.mark.parametrize("q", [2, 3])
def test_mass_and_duality(q):
    ring = QRing(q)
    for n in range(1, 5):
        total = 0
        for data in iterate_canonical_data(n, q):
            size = class_size(n, q, data)
            assert size > 0
            total += size
            cent = ring.coerce(q) ** sum(d * sum_sq_conjugate(lam) for d, _, lam in data.assignments)
            for d, _, lam in data.assignments:
                for m in lam.multiplicities().values():
                    cent *= pochhammer(d, 1, m, ring)
            assert size * cent == group_order_gl(n, q)
        assert total == q ** (n * n)


@pytest.mark.parametrize("q", [2, 3])
def test_nilpotent_mass(q):
    for n in range(1, 5):
        total = sum(class_size(n, q, CanonicalData.nilpotent(lam)) for lam in iterate_partitions(n))
        assert total == q ** (n * n - n)


def test_backend_agreement_symbolic():
    for n in range(9):
        assert commuting_pairs_gl(n, None, "class_sum") == commuting_pairs_gl(n, None, "gen_fn")
        assert nilpotent_pairs_gl(n, None, "class_sum") == nilpotent_pairs_gl(n, None, "gen_fn")


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_backend_agreement_numeric(q):
    for n in range(11):
        g = commuting_pairs_gl(n, q, "class_sum")
        assert g == commuting_pairs_gl(n, q, "gen_fn")
        assert nilpotent_pairs_gl(n, q, "class_sum") == nilpotent_pairs_gl(n, q, "gen_fn")
        if n <= 6:
            assert evaluate(commuting_pairs_gl(n, None), q) == g
