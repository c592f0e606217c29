"""Acceptance gate: every promised behavior, executed at its stated size and
time budget, one verdict line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines;
without ``-s`` they still appear for failing criteria via pytest capture.
"""

import random
import time
from fractions import Fraction

from qharmonic.exact_core import Poly, RatFunc, binomial
from qharmonic.identities import degeneration_check, sweep
from qharmonic.qcombinatorics import gaussian
from qharmonic.sums import (
    ChainSumSpec,
    mhs_endpoint,
    mhs_full,
    mhs_naive_oracle,
    q_mhs_endpoint,
    q_mhs_full,
)
from qharmonic.transforms import (
    QMatrix,
    SequenceTable,
    TruncatedSeries,
    alt_binomial_roundtrip,
    build_matrix,
    euler_involution_series,
    proof_basis_a,
    proof_basis_b,
    q_transform_first,
    q_transform_roundtrip,
    q_transform_second,
    qmatrix_mul,
)


def _verdict(number: int, ok: bool, detail: str) -> None:
    print(f"[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")


def test_criterion_1_classical_grids_exact_and_fast():
    start = time.perf_counter()
    hern = sweep("hernandez", 30, 5)
    dilc = sweep("dilcher", 30, 5)
    elapsed = time.perf_counter() - start
    all_equal = all(r.equal for r in hern + dilc)
    ok = all_equal and len(hern) == len(dilc) == 150 and elapsed < 10.0
    _verdict(
        1,
        ok,
        f"classical identities exact on 1..30 x 1..5 "
        f"({len(hern) + len(dilc)} cells, {elapsed:.2f}s < 10s)",
    )
    assert all_equal
    assert elapsed < 10.0


def test_criterion_2_q_grids_symbolic_and_sampled():
    start = time.perf_counter()
    sym = sweep("dilcher_q", 12, 4, mode="symbolic") + sweep(
        "hernandez_q", 12, 4, mode="symbolic"
    )
    sym_elapsed = time.perf_counter() - start
    sym_equal = all(r.equal for r in sym)
    samp = sweep("dilcher_q", 25, 5, mode="sampled", samples=5, seed=0) + sweep(
        "hernandez_q", 25, 5, mode="sampled", samples=5, seed=0
    )
    samp_equal = all(r.equal for r in samp)
    ok = sym_equal and samp_equal and sym_elapsed < 120.0
    _verdict(
        2,
        ok,
        f"q identities symbolic on 1..12 x 1..4 ({sym_elapsed:.2f}s < 120s) "
        f"and sampled on 1..25 x 1..5 at 5 seeded points",
    )
    assert sym_equal
    assert sym_elapsed < 120.0
    assert samp_equal


def test_criterion_3_matrix_suite():
    ok = True
    for size in range(1, 9):
        t = build_matrix("T", size)
        t_inv = build_matrix("T_inv", size)
        if qmatrix_mul(t, t_inv) != QMatrix.identity(size):
            ok = False
        product = qmatrix_mul(t_inv, build_matrix("U", size))
        if product != build_matrix("T_inv_U", size):
            ok = False
        if qmatrix_mul(build_matrix("V", size), product) != build_matrix("S", size):
            ok = False
    _verdict(3, ok, "T*T_inv = I, T_inv*U closed form, S = V*T_inv*U at sizes 1..8")
    assert ok


def test_criterion_4_transform_roundtrip_and_proof_bases():
    rng = random.Random(2024)
    trips_ok = True
    for _ in range(100):
        length = rng.randint(1, 6)
        seq = SequenceTable.from_values(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(length)]
        )
        if q_transform_roundtrip(seq) != seq:
            trips_ok = False
    bases_ok = True
    for x in (2, Fraction(3, 2), Poly.q(), Poly.q_power(2)):
        seq_a = SequenceTable.from_values([proof_basis_a(x, n) for n in range(9)])
        firsts = [q_transform_first(seq_a, n) for n in range(9)]
        for n in range(9):
            diff = firsts[n] - (firsts[n - 1] if n else RatFunc.zero())
            if diff != proof_basis_b(x, n):
                bases_ok = False
        seq_b = SequenceTable.from_values([proof_basis_b(x, n) for n in range(9)])
        for n in range(9):
            expected = RatFunc.zero()
            for k in range(n + 1):
                expected = expected + RatFunc.q_power(-k) * proof_basis_a(x, k)
            if q_transform_second(seq_b, n) != expected:
                bases_ok = False
    ok = trips_ok and bases_ok
    _verdict(
        4,
        ok,
        "q-pair round trip on 100 random rational sequences (length <= 6); "
        "proof bases satisfy both relations for x in {2, 3/2, q, q^2}, n <= 8",
    )
    assert trips_ok
    assert bases_ok


def test_criterion_5_recurrences_match_naive_oracle():
    ok = True
    for n in range(1, 7):
        for m in range(1, 7):
            spec = ChainSumSpec(n, m)
            if mhs_full(n, m) != mhs_naive_oracle(spec):
                ok = False
            if q_mhs_full(n, m) != mhs_naive_oracle(spec, q_side=True):
                ok = False
            for k in range(1, n + 1):
                espec = ChainSumSpec(n, m, endpoint=k)
                if mhs_endpoint(k, m) != mhs_naive_oracle(espec):
                    ok = False
                if q_mhs_endpoint(k, m) != mhs_naive_oracle(espec, q_side=True):
                    ok = False
    _verdict(5, ok, "recurrence sums equal naive enumeration, classical and q, n,m <= 6")
    assert ok


def test_criterion_6_degeneration_at_q_equals_one():
    identities_ok = all(
        degeneration_check(name, n, m)
        for name in ("dilcher_q", "hernandez_q")
        for n in range(1, 11)
        for m in range(1, 4)
    )
    gauss_ok = all(
        gaussian(n, k).evaluate(1) == binomial(n, k)
        for n in range(21)
        for k in range(n + 1)
    )
    ok = identities_ok and gauss_ok
    _verdict(
        6,
        ok,
        "q identities collapse to classical at q=1 (1..10 x 1..3); "
        "Gaussian at q=1 equals binomial for n <= 20",
    )
    assert identities_ok
    assert gauss_ok


def test_criterion_7_involution_and_classical_roundtrip():
    rng = random.Random(77)
    involution_ok = True
    for order in range(1, 13):
        series = TruncatedSeries.from_values(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)]
        )
        if euler_involution_series(euler_involution_series(series)) != series:
            involution_ok = False
    classical_ok = True
    for _ in range(100):
        length = rng.randint(1, 8)
        seq = SequenceTable.from_values(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(length)]
        )
        if alt_binomial_roundtrip(seq) != seq:
            classical_ok = False
    ok = involution_ok and classical_ok
    _verdict(
        7,
        ok,
        "involution applied twice is the identity at orders 1..12; "
        "classical transform round-trips on 100 random sequences",
    )
    assert involution_ok
    assert classical_ok
