"""Acceptance criteria, one test per criterion, each at its stated tolerance.

Every test records a PASS/FAIL line; ``conftest.py`` prints them after the
run.  ``python tests/test_acceptance.py`` runs the module and prints the same
lines.
"""

import json
import os
import subprocess
import sys
import time
from decimal import Decimal

import pytest

from commlie import api
from commlie.asymptotics import convergence_report, limit_constant, partial_product, to_decimal
from commlie.bruteforce import count_commuting_pairs, count_nilpotent_pairs, make_space
from commlie.counts_gl import CanonicalData, class_size, iterate_canonical_data
from commlie.counts_sp import iterate_sp_data, nilpotent_count_sp, nilpotent_dim_formulas_agree, orbit_size_sp
from commlie.counts_u import orbit_size_u
from commlie.partitions import iterate_partitions, iterate_sp_admissible, min_sum, sum_sq_conjugate
from commlie.polycount import count_dual_pairs, count_irreducible, count_selfdual
from commlie.qexact import QRing, USeries, render

RESULTS = {}

GL_SET = [(1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]
U_SET = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]
SP_SET = [(1, 3), (1, 5), (2, 3)]


def record(key, ok, detail):
    RESULTS.setdefault(key, []).append((ok, detail))
    print(f"criterion {key}: {'PASS' if ok else 'FAIL'} {detail}")


def _oracle_sweep(family, cases, kind):
    mismatches = []
    for n, q in cases:
        space = make_space(family, n, q)
        if kind == "pairs":
            got, want = count_commuting_pairs(space), api.count(family, "pairs", n, q)
        else:
            got, want = count_nilpotent_pairs(space), api.count(family, "nilpotent_pairs", n, q)
        if got != want:
            mismatches.append((n, q, got, want))
    return mismatches


def test_criterion_1_gl_oracle():
    t = time.perf_counter()
    bad = _oracle_sweep("gl", GL_SET, "pairs")
    elapsed = time.perf_counter() - t
    g2 = render(api.count("gl", "pairs", 2, None))
    ok = not bad and elapsed < 120 and g2 == "q^6 + q^5 - q^3" \
        and api.count("gl", "pairs", 2, 2) == 88 and api.count("gl", "pairs", 2, 3) == 945
    record("1", ok, f"GL pairs == oracle on {len(GL_SET)} cases, G_2 = {g2}, {elapsed:.1f}s (limit 120s)")
    assert ok, bad


def test_criterion_2_gl_nilpotent_oracle():
    bad = _oracle_sweep("gl", GL_SET, "nil")
    ng2 = render(api.count("gl", "nilpotent_pairs", 2, None))
    ok = not bad and ng2 == "q^3 + q^2 - q" and api.count("gl", "nilpotent_pairs", 2, 2) == 10
    record("2", ok, f"GL nilpotent pairs == oracle on {len(GL_SET)} cases, NG_2 = {ng2}")
    assert ok, bad


def test_criterion_3_u_oracle():
    t = time.perf_counter()
    bad = _oracle_sweep("u", U_SET, "pairs") + _oracle_sweep("u", U_SET, "nil")
    elapsed = time.perf_counter() - t
    u1, u2 = render(api.count("u", "pairs", 1, None)), render(api.count("u", "pairs", 2, None))
    ok = not bad and elapsed < 180 and u1 == "q^2" and u2 == "q^6 + q^5 - q^3"
    record("3", ok, f"U pairs and nilpotent pairs == oracle on {len(U_SET)} cases, U_2 = {u2}, {elapsed:.1f}s (limit 180s)")
    assert ok, bad


def test_criterion_4_sp_oracle():
    t = time.perf_counter()
    bad = _oracle_sweep("sp", SP_SET, "pairs") + _oracle_sweep("sp", SP_SET, "nil")
    elapsed = time.perf_counter() - t
    s1, ns1 = render(api.count("sp", "pairs", 1, None)), render(api.count("sp", "nilpotent_pairs", 1, None))
    ok = not bad and elapsed < 600 and s1 == "q^4 + q^3 - q" and ns1 == "q^3 + q^2 - q" \
        and api.count("sp", "pairs", 1, 3) == 105 and api.count("sp", "nilpotent_pairs", 1, 3) == 33
    record("4", ok, f"Sp pairs and nilpotent pairs == oracle on {len(SP_SET)} cases, S_1 = {s1}, {elapsed:.1f}s (limit 600s)")
    assert ok, bad


def test_criterion_5_backend_agreement():
    bad, checks = [], 0
    for family, n_max, qs in [("gl", 8, (2, 3, 4, 5)), ("u", 8, (2, 3, 4, 5)), ("sp", 6, (3, 5))]:
        for q in qs:
            for kind in ("pairs", "nilpotent_pairs"):
                for n in range(n_max + 1):
                    checks += 1
                    a = api.count(family, kind, n, q, "class_sum")
                    b = api.count(family, kind, n, q, "gen_fn")
                    if a != b:
                        bad.append((family, kind, n, q, a, b))
    record("5", not bad, f"class_sum == gen_fn in {checks - len(bad)}/{checks} cases")
    assert not bad


def test_criterion_6_series_identities():
    bad, checks = [], 0
    plan = [("gl", (2, 3)), ("u", (2, 3)), ("sp", (3, 5))]
    for family, qs in plan:
        for kind in ("pairs", "nilpotent_pairs"):
            for q, order in [(q, 8) for q in qs] + [(None, 6)]:
                checks += 1
                diffs = [row[3] for row in api.series_rows(family, kind, order, q)]
                if any(d != 0 for d in diffs):
                    bad.append((family, kind, q))
    record("6", not bad, f"count/|G| series == product side, zero difference in {checks - len(bad)}/{checks} expansions")
    assert not bad


def _binomial(ring, order, d, sign, exponent):
    return (USeries.one(ring, order) + USeries.monomial(ring, order, d, ring.coerce(sign))).power(exponent)


def test_criterion_7_structural_identities():
    failures = []
    ring, order = QRing(), 8
    prod = USeries.one(ring, order)
    for d in range(1, order + 1):
        prod = prod * _binomial(ring, order, d, -1, count_irreducible(d, None))
    if prod != USeries.one(ring, order) - USeries.monomial(ring, order, 1, ring.q):
        failures.append("unique factorization product")
    for q in (3, 5):
        r = QRing(q)
        one, u = USeries.one(r, order), USeries.monomial(r, order, 1, 1)
        p1 = p2 = one
        for d in range(1, order + 1):
            nb, mb = count_selfdual(2 * d, q), count_dual_pairs(d, q)
            p1 = p1 * _binomial(r, order, d, -1, -nb) * _binomial(r, order, d, -1, -mb)
            p2 = p2 * _binomial(r, order, d, 1, -nb) * _binomial(r, order, d, -1, -mb)
        if p1 != (one - u) * (one - u.scale(r.coerce(q))).recip():
            failures.append(f"self-dual identity 1 at q={q}")
        if p2 != one:
            failures.append(f"self-dual identity 2 at q={q}")
    for n in range(21):
        for lam in iterate_partitions(n):
            if min_sum(lam) != sum_sq_conjugate(lam):
                failures.append(f"min-sum {lam}")
    for n in range(0, 17, 2):
        for lam in iterate_sp_admissible(n):
            try:
                nilpotent_dim_formulas_agree(lam)
            except ArithmeticError:
                failures.append(f"nilpotent dim {lam}")
    record("7", not failures, "polynomial-count identities, min-sum (|lam| <= 20), sp nilpotent dims (|lam| <= 16)"
           + (f"; failures: {failures[:3]}" if failures else ""))
    assert not failures


def test_criterion_8_mass_checks():
    failures = []
    for q in (2, 3):
        for n in range(1, 5):
            if sum(class_size(n, q, d) for d in iterate_canonical_data(n, q)) != q ** (n * n):
                failures.append(f"gl n={n} q={q}")
            if sum(class_size(n, q, CanonicalData.nilpotent(l)) for l in iterate_partitions(n)) != q ** (n * n - n):
                failures.append(f"gl nilpotent n={n} q={q}")
        for n in range(1, 4):
            if sum(orbit_size_u(n, q, d) for d in iterate_canonical_data(n, q)) != q ** (n * n):
                failures.append(f"u n={n} q={q}")
            if sum(orbit_size_u(n, q, CanonicalData.nilpotent(l)) for l in iterate_partitions(n)) != q ** (n * n - n):
                failures.append(f"u nilpotent n={n} q={q}")
    for q in (3, 5):
        for n in (1, 2):
            if sum(orbit_size_sp(d, n, q) for d in iterate_sp_data(n, q)) != q ** (2 * n * n + n):
                failures.append(f"sp n={n} q={q}")
            if sum(nilpotent_count_sp(l, n, q) for l in iterate_sp_admissible(2 * n)) != q ** (2 * n * n):
                failures.append(f"sp nilpotent n={n} q={q}")
    record("8", not failures, "orbit and nilpotent masses: gl n<=4, u n<=3 (q=2,3); sp n<=2 (q=3,5)")
    assert not failures


ASYM_CASES = [("gl", 2), ("gl", 3), ("u", 2), ("u", 3), ("sp", 3), ("sp", 5)]


def test_criterion_9_truncation_doubling():
    eps = 1e-12
    t = time.perf_counter()
    worst = Decimal(0)
    for family, q in ASYM_CASES:
        lim = limit_constant(family, q, eps)
        worst = max(worst, abs(to_decimal(partial_product(family, q, 2 * lim.terms)) - lim.value))
    for q in (2, 3):
        worst = max(worst, abs(limit_constant("u", q, eps).value - limit_constant("u_unsimplified", q, eps).value))
    elapsed = time.perf_counter() - t
    ok = worst < 2 * Decimal(eps) and elapsed < 60
    record("9", ok, f"[truncation doubling] max change {worst:.2e} < 2e-12, {elapsed:.1f}s")
    assert ok


def test_criterion_9_proximity():
    t = time.perf_counter()
    violations = []
    for family, q in ASYM_CASES:
        _, rows = convergence_report(family, q, 8)
        for r in rows:
            if not r.gap < 10 * Decimal(q) ** -r.n:
                violations.append((family, q, r.n, float(r.gap * Decimal(q) ** r.n)))
    elapsed = time.perf_counter() - t
    ok = not violations and elapsed < 60
    worst = max(violations, key=lambda v: v[3]) if violations else None
    detail = f"[|ratio - C| < 10 q^-n, n <= 8] {len(violations)} violations"
    if worst:
        detail += f", worst gap*q^n = {worst[3]:.0f} at {worst[0]} q={worst[1]} n={worst[2]}"
    record("9", ok, detail)
    assert ok, violations


def _cli(argv, threads, kernels):
    env = dict(os.environ, COMMLIE_THREADS=str(threads), COMMLIE_KERNELS=kernels)
    return subprocess.run([sys.executable, "-m", "commlie", *argv, "--format", "json"],
                          capture_output=True, env=env, check=True).stdout


def test_criterion_10_determinism():
    commands = [
        ["verify", "--family", "gl", "--max-n", "3", "--q", "3"],
        ["verify", "--family", "u", "--max-n", "3", "--q", "2"],
        ["verify", "--family", "sp", "--max-n", "2", "--q", "3"],
        ["series", "--family", "sp", "--order", "8", "--q", "5"],
        ["count", "--family", "u", "--n", "0-6", "--symbolic"],
        ["asym", "--family", "u", "--q", "3"],
    ]
    unstable = []
    for argv in commands:
        outs = {_cli(argv, t, k) for t, k in [(1, "numba"), (4, "numba"), (1, "numba"), (2, "numpy")]}
        json.loads(next(iter(outs)))
        if len(outs) != 1:
            unstable.append(" ".join(argv))
    record("10", not unstable, f"{len(commands) - len(unstable)}/{len(commands)} commands byte-identical "
           "across repeats, thread counts 1/2/4 and both kernel paths")
    assert not unstable


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
