"""Tests for classical and q-analogue chain sums, the factored accumulator,
and the naive enumeration oracle."""

import itertools
import random
from fractions import Fraction

import pytest

from qharmonic.exact_core import Poly, RatFunc
from qharmonic.sums import (
    ChainSumSpec,
    FactoredRatFunc,
    MAX_ORACLE_CHAINS,
    mhs_endpoint,
    mhs_endpoint_row,
    mhs_full,
    mhs_naive_oracle,
    power_sum,
    q_mhs_endpoint,
    q_mhs_endpoint_at,
    q_mhs_endpoint_row,
    q_mhs_endpoint_row_at,
    q_mhs_full,
    q_mhs_full_at,
    q_power_sum,
    q_power_sum_at,
)


def one_minus_q_to(k):
    return Poly.one() - Poly.q_power(k)


# ---------------------------------------------------------------------------
# ChainSumSpec
# ---------------------------------------------------------------------------

def test_spec_validation():
    ChainSumSpec(3, 2)
    ChainSumSpec(3, 2, endpoint=3)
    with pytest.raises(ValueError):
        ChainSumSpec(0, 2)
    with pytest.raises(ValueError):
        ChainSumSpec(3, 0)
    with pytest.raises(ValueError):
        ChainSumSpec(3, 2, endpoint=4)
    with pytest.raises(ValueError):
        ChainSumSpec(3, 2, endpoint=0)


def test_chain_count_matches_enumeration():
    for n in range(1, 6):
        for m in range(1, 5):
            full = list(itertools.combinations_with_replacement(range(1, n + 1), m))
            assert ChainSumSpec(n, m).chain_count() == len(full)
            for k in range(1, n + 1):
                ending = [c for c in full if c[-1] == k]
                assert ChainSumSpec(n, m, endpoint=k).chain_count() == len(ending)


# ---------------------------------------------------------------------------
# Classical sums
# ---------------------------------------------------------------------------

def test_classical_frozen_values():
    assert power_sum(3, 1) == Fraction(11, 6)
    assert power_sum(2, 2) == Fraction(5, 4)
    assert mhs_full(2, 2) == Fraction(7, 4)
    assert mhs_endpoint(2, 2) == Fraction(3, 4)
    assert mhs_endpoint(1, 7) == 1
    assert mhs_full(1, 3) == 1


def test_classical_weight_one_collapse():
    # With m = 1 every chain is a single element, so both aggregates are the
    # harmonic number.
    for n in range(1, 12):
        assert mhs_full(n, 1) == power_sum(n, 1)
        assert mhs_endpoint(n, 1) == Fraction(1, n)


def test_classical_row_decomposition():
    for n in range(1, 8):
        for m in range(1, 5):
            row = mhs_endpoint_row(n, m)
            assert len(row) == n
            assert row[-1] == mhs_endpoint(n, m)
            assert sum(row, Fraction(0)) == mhs_full(n, m)


def test_classical_endpoint_recurrence():
    # endpoint(k, m) = (1/k) * sum_{j<=k} endpoint(j, m-1)
    for k in range(1, 8):
        for m in range(2, 5):
            total = sum((mhs_endpoint(j, m - 1) for j in range(1, k + 1)), Fraction(0))
            assert mhs_endpoint(k, m) == total / k


def test_classical_matches_oracle():
    for n in range(1, 6):
        for m in range(1, 6):
            assert mhs_full(n, m) == mhs_naive_oracle(ChainSumSpec(n, m))
            for k in range(1, n + 1):
                spec = ChainSumSpec(n, m, endpoint=k)
                assert mhs_endpoint(k, m) == mhs_naive_oracle(spec)


def test_classical_validation():
    with pytest.raises(ValueError):
        power_sum(0, 1)
    with pytest.raises(ValueError):
        mhs_full(3, 0)
    with pytest.raises(ValueError):
        mhs_endpoint(0, 2)


# ---------------------------------------------------------------------------
# Factored accumulator
# ---------------------------------------------------------------------------

def rand_factored(rng):
    num = Poly([rng.randint(-5, 5) for _ in range(rng.randint(1, 6))])
    qpow = rng.randint(0, 3)
    factors = {}
    for k in range(1, 6):
        if rng.random() < 0.4:
            factors[k] = rng.randint(1, 2)
    return FactoredRatFunc(num, qpow, factors)


def expand_denominator(frf):
    den = Poly.q_power(frf.qpow)
    for k, e in frf.factors.items():
        den = den * one_minus_q_to(k) ** e
    return den


def test_factored_reduction_matches_generic_construction():
    # The cyclotomic trial-division reduction must land on exactly the value
    # the generic gcd-based constructor produces.
    rng = random.Random(97)
    for _ in range(40):
        frf = rand_factored(rng)
        expected = RatFunc(frf.num, expand_denominator(frf))
        got = frf.to_ratfunc()
        assert got == expected
        assert got.num == expected.num and got.den == expected.den


def test_factored_addition_matches_ratfunc_addition():
    rng = random.Random(101)
    for _ in range(30):
        a, b = rand_factored(rng), rand_factored(rng)
        direct = a.to_ratfunc() + b.to_ratfunc()
        assert a.add(b).to_ratfunc() == direct
        assert b.add(a).to_ratfunc() == direct


def test_factored_products_match_ratfunc_products():
    rng = random.Random(103)
    for _ in range(25):
        frf = rand_factored(rng)
        base = frf.to_ratfunc()
        p = Poly([rng.randint(-4, 4) for _ in range(3)])
        assert frf.mul_poly(p).to_ratfunc() == base * p
        j = rng.randint(-4, 4)
        assert frf.mul_qpow(j).to_ratfunc() == base * RatFunc.q_power(j)
        k = rng.randint(1, 5)
        assert frf.div_factor(k).to_ratfunc() == base / one_minus_q_to(k)
        assert frf.scale(-3).to_ratfunc() == base * -3


def test_factored_zero_behavior():
    z = FactoredRatFunc.zero()
    assert z.to_ratfunc() == RatFunc.zero()
    other = FactoredRatFunc(Poly.one(), 0, {2: 1})
    assert z.add(other).to_ratfunc() == other.to_ratfunc()
    assert other.add(z).to_ratfunc() == other.to_ratfunc()
    # A zero numerator normalizes the stored denominator away.
    zz = FactoredRatFunc(Poly.zero(), 2, {3: 1})
    assert zz.qpow == 0 and zz.factors == {}


def test_factored_validation():
    with pytest.raises(ValueError):
        FactoredRatFunc(Poly.one(), -1)
    with pytest.raises(ValueError):
        FactoredRatFunc.one().div_factor(0)


# ---------------------------------------------------------------------------
# q sums
# ---------------------------------------------------------------------------

def test_q_frozen_values():
    assert q_mhs_endpoint(1, 1) == RatFunc(Poly.q(), one_minus_q_to(1))
    assert q_mhs_full(2, 1) == RatFunc(Poly([0, 1, 2]), one_minus_q_to(2))
    assert q_power_sum(2, 1) == RatFunc(Poly([2, 1]), one_minus_q_to(2))
    # Weight 2, endpoint 1: only the chain (1, 1).
    assert q_mhs_endpoint(1, 2) == RatFunc(Poly.q_power(2), one_minus_q_to(1) ** 2)


def test_q_weight_one_collapse():
    # Weight-1 chains are single indices, so each endpoint value is just its
    # weight q^k/(1-q^k).  Unlike the classical case the full sum is NOT the
    # q-power sum: the summands 1/(1-q^k) and q^k/(1-q^k) differ by exactly 1,
    # so the totals differ by exactly n.
    for k in range(1, 9):
        assert q_mhs_endpoint(k, 1) == RatFunc(Poly.q_power(k), one_minus_q_to(k))
    for n in range(1, 9):
        assert q_power_sum(n, 1) - q_mhs_full(n, 1) == RatFunc(n)


def test_q_row_decomposition():
    for n in range(1, 7):
        for m in range(1, 4):
            row = q_mhs_endpoint_row(n, m)
            assert len(row) == n
            assert row[-1] == q_mhs_endpoint(n, m)
            total = RatFunc.zero()
            for entry in row:
                total = total + entry
            assert total == q_mhs_full(n, m)


def test_q_endpoint_recurrence():
    # endpoint(k, m) = q^k/(1-q^k) * sum_{j<=k} endpoint(j, m-1)
    for k in range(1, 6):
        for m in range(2, 4):
            total = RatFunc.zero()
            for j in range(1, k + 1):
                total = total + q_mhs_endpoint(j, m - 1)
            weight = RatFunc(Poly.q_power(k), one_minus_q_to(k))
            assert q_mhs_endpoint(k, m) == weight * total


def test_q_sums_match_oracle():
    for n in range(1, 5):
        for m in range(1, 5):
            spec = ChainSumSpec(n, m)
            assert q_mhs_full(n, m) == mhs_naive_oracle(spec, q_side=True)
            for k in range(1, n + 1):
                espec = ChainSumSpec(n, m, endpoint=k)
                assert q_mhs_endpoint(k, m) == mhs_naive_oracle(espec, q_side=True)


def test_q_degeneration_to_classical_termwise():
    # (1-q)^m scaled q sums tend to the classical sums at q = 1.  Multiply in
    # RatFunc arithmetic (pole cleared exactly) and evaluate.
    for n in range(1, 6):
        for m in range(1, 3):
            scale = RatFunc(one_minus_q_to(1) ** m, Poly.one())
            assert (scale * q_mhs_full(n, m)).evaluate(1) == mhs_full(n, m)
            assert (scale * q_power_sum(n, m)).evaluate(1) == power_sum(n, m)
            assert (scale * q_mhs_endpoint(n, m)).evaluate(1) == mhs_endpoint(n, m)


def test_symbolic_and_evaluated_pipelines_agree():
    for q0 in (Fraction(1, 2), Fraction(3, 7)):
        for n in range(1, 6):
            for m in range(1, 4):
                assert q_mhs_full(n, m).evaluate(q0) == q_mhs_full_at(n, m, q0)
                assert q_power_sum(n, m).evaluate(q0) == q_power_sum_at(n, m, q0)
                assert q_mhs_endpoint(n, m).evaluate(q0) == q_mhs_endpoint_at(n, m, q0)
                row = q_mhs_endpoint_row_at(n, m, q0)
                assert row == [r.evaluate(q0) for r in q_mhs_endpoint_row(n, m)]


def test_q_validation():
    with pytest.raises(ValueError):
        q_mhs_full(0, 1)
    with pytest.raises(ValueError):
        q_power_sum(2, 0)
    with pytest.raises(ValueError):
        q_mhs_endpoint(0, 1)


# ---------------------------------------------------------------------------
# Oracle guard
# ---------------------------------------------------------------------------

def test_oracle_refuses_oversized_enumerations():
    spec = ChainSumSpec(200, 4)  # C(203, 4) is about 68 million chains
    assert spec.chain_count() > MAX_ORACLE_CHAINS
    with pytest.raises(ValueError):
        mhs_naive_oracle(spec)


def test_oracle_weight_one_is_direct_sum():
    spec = ChainSumSpec(7, 1)
    assert mhs_naive_oracle(spec) == power_sum(7, 1)
    # On the q side the weight-1 enumeration gives sum of q^k/(1-q^k), which
    # sits exactly n below the q-power sum's sum of 1/(1-q^k).
    q_total = mhs_naive_oracle(spec, q_side=True)
    assert q_total == q_mhs_full(7, 1)
    assert q_power_sum(7, 1) - q_total == RatFunc(7)
