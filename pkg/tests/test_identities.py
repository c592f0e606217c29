"""Tests for the identity verifiers, sampled mode, reports, and the sweep."""

import json
from fractions import Fraction

import pytest

from qharmonic.exact_core import Poly, RatFunc
from qharmonic.identities import (
    CLASSICAL_IDENTITIES,
    IDENTITY_NAMES,
    IdentityReport,
    Q_IDENTITIES,
    degeneration_check,
    sample_points,
    sweep,
    verify_dilcher,
    verify_dilcher_q,
    verify_hernandez,
    verify_hernandez_q,
    verify_sampled,
)


def one_minus_q_to(k):
    return Poly.one() - Poly.q_power(k)


# ---------------------------------------------------------------------------
# Individual verifiers, frozen cells
# ---------------------------------------------------------------------------

def test_hernandez_frozen_cell():
    # n = m = 2: lhs = 2*1 - 3/4 = 5/4 = 1 + 1/4.
    report = verify_hernandez(2, 2)
    assert report.equal
    assert report.lhs == Fraction(5, 4)
    assert report.rhs == Fraction(5, 4)
    assert report.mode == "exact"
    assert report.sample_points is None and report.den_degrees is None


def test_dilcher_frozen_cell():
    # n = m = 2: lhs = 2 - 1/4 = 7/4, the full chain sum.
    report = verify_dilcher(2, 2)
    assert report.equal
    assert report.lhs == Fraction(7, 4)


def test_dilcher_q_frozen_cell():
    report = verify_dilcher_q(2, 1)
    assert report.equal
    assert report.lhs == RatFunc(Poly([0, 1, 2]), one_minus_q_to(2))
    assert report.mode == "symbolic"
    assert report.den_degrees == (2, 2)


def test_hernandez_q_frozen_cells():
    report = verify_hernandez_q(1, 1)
    assert report.equal
    assert report.lhs == RatFunc(Poly.one(), one_minus_q_to(1))
    report = verify_hernandez_q(2, 1)
    assert report.equal
    assert report.lhs == RatFunc(Poly([2, 1]), one_minus_q_to(2))


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("m", range(1, 4))
def test_all_identities_hold_on_small_grid(n, m):
    assert verify_hernandez(n, m).equal
    assert verify_dilcher(n, m).equal
    assert verify_dilcher_q(n, m).equal
    assert verify_hernandez_q(n, m).equal


def test_verifiers_reject_bad_cells():
    for fn in (verify_hernandez, verify_dilcher, verify_dilcher_q, verify_hernandez_q):
        with pytest.raises(ValueError):
            fn(0, 1)
        with pytest.raises(ValueError):
            fn(1, 0)


# ---------------------------------------------------------------------------
# Sampled mode
# ---------------------------------------------------------------------------

def test_sample_points_deterministic_distinct_in_range():
    pts = sample_points(5, 0)
    assert pts == sample_points(5, 0)
    assert len(pts) == len(set(pts)) == 5
    for p in pts:
        assert isinstance(p, Fraction)
        assert 0 < p < 1
        assert p.denominator <= 1000
    assert sample_points(5, 1) != pts
    with pytest.raises(ValueError):
        sample_points(0, 0)


def test_sampled_verification_agrees_with_symbolic():
    pts = sample_points(3, 11)
    for name in Q_IDENTITIES:
        for n in (1, 3, 6):
            for m in (1, 2):
                sampled = verify_sampled(name, n, m, pts, seed=11)
                assert sampled.equal
                assert sampled.mode == "sampled"
                assert sampled.seed == 11
                assert sampled.sample_points == tuple(pts)
                assert len(sampled.lhs) == len(pts)
                assert sampled.lhs == sampled.rhs


def test_sampled_values_match_symbolic_evaluation():
    pts = sample_points(2, 3)
    rep = verify_sampled("dilcher_q", 4, 2, pts)
    symbolic = verify_dilcher_q(4, 2)
    for point, value in zip(pts, rep.lhs):
        assert symbolic.lhs.evaluate(point) == value


def test_sampled_rejects_bad_input():
    pts = sample_points(2, 0)
    with pytest.raises(ValueError):
        verify_sampled("hernandez", 2, 2, pts)  # classical has no sampled mode
    with pytest.raises(ValueError):
        verify_sampled("dilcher_q", 2, 2, [])
    with pytest.raises(ValueError):
        verify_sampled("dilcher_q", 2, 2, [Fraction(3, 2)])
    with pytest.raises(ValueError):
        verify_sampled("dilcher_q", 2, 2, [Fraction(0)])
    with pytest.raises(ValueError):
        verify_sampled("nonsense", 2, 2, pts)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def test_report_json_roundtrip_exact():
    report = verify_hernandez(3, 2)
    obj = report.to_json_obj()
    assert obj["lhs"] == "49/36"
    restored = IdentityReport.from_json_obj(json.loads(json.dumps(obj)))
    assert restored == report


def test_report_json_roundtrip_symbolic():
    report = verify_hernandez_q(3, 2)
    obj = report.to_json_obj()
    assert obj["den_degrees"] == list(report.den_degrees)
    assert set(obj["lhs"]) == {"num", "den"}
    restored = IdentityReport.from_json_obj(json.loads(json.dumps(obj)))
    assert restored == report
    assert restored.lhs == report.lhs


def test_report_json_roundtrip_sampled():
    pts = sample_points(3, 5)
    report = verify_sampled("hernandez_q", 2, 2, pts, seed=5)
    obj = report.to_json_obj()
    assert obj["seed"] == 5
    assert obj["sample_points"] == [str(p) for p in pts]
    restored = IdentityReport.from_json_obj(json.loads(json.dumps(obj)))
    assert restored == report


def test_report_csv_row_shape():
    report = verify_dilcher(2, 1)
    row = report.csv_row()
    assert row == ["dilcher", "2", "1", "exact", "true", "3/2", "3/2"]
    qrow = verify_dilcher_q(2, 1).csv_row()
    assert qrow[0] == "dilcher_q"
    assert qrow[4] == "true"
    assert qrow[5] == "(q+2*q^2)/(1-q^2)"


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

def test_sweep_covers_grid_in_lexicographic_order():
    reports = sweep("dilcher", 3, 2)
    assert [(r.n, r.m) for r in reports] == [
        (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)
    ]
    assert all(r.equal for r in reports)
    assert all(r.mode == "exact" for r in reports)


def test_sweep_symbolic_and_sampled_modes():
    symbolic = sweep("hernandez_q", 3, 2, mode="symbolic")
    assert all(r.mode == "symbolic" and r.equal for r in symbolic)
    sampled = sweep("hernandez_q", 3, 2, mode="sampled", samples=3, seed=2)
    assert all(r.mode == "sampled" and r.equal for r in sampled)
    # One shared point set for the whole sweep.
    first_pts = sampled[0].sample_points
    assert all(r.sample_points == first_pts for r in sampled)
    assert all(r.seed == 2 for r in sampled)


def test_sweep_validation():
    with pytest.raises(ValueError):
        sweep("unknown", 2, 2)
    with pytest.raises(ValueError):
        sweep("dilcher", 0, 2)
    with pytest.raises(ValueError):
        sweep("dilcher_q", 2, 2, mode="numeric")


def test_symbolic_and_sampled_verdicts_agree():
    pts = sample_points(4, 9)
    for name in Q_IDENTITIES:
        for n in (1, 2, 4):
            for m in (1, 3):
                symbolic = sweep(name, n, m)[-1]
                sampled = verify_sampled(name, n, m, pts)
                assert symbolic.equal == sampled.equal


# ---------------------------------------------------------------------------
# Degeneration
# ---------------------------------------------------------------------------

def test_degeneration_collapses_q_identities():
    for name in Q_IDENTITIES:
        for n in range(1, 7):
            for m in range(1, 3):
                assert degeneration_check(name, n, m)


def test_degeneration_rejects_classical_names():
    with pytest.raises(ValueError):
        degeneration_check("hernandez", 2, 2)


def test_identity_name_groups_are_consistent():
    assert set(CLASSICAL_IDENTITIES) | set(Q_IDENTITIES) == set(IDENTITY_NAMES)
    assert not set(CLASSICAL_IDENTITIES) & set(Q_IDENTITIES)
