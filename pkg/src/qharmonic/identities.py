"""Verifiers for the four identity families, in exact, symbolic, and sampled
modes, plus the lexicographic sweep driver.

The families (all sums over k = 1..n, sign (-1)^(k-1), weight m >= 1):

* ``hernandez``: binomial-weighted endpoint chain sums telescope to the power
  sum: sum_k C(n,k) (-1)^(k-1) mhs_endpoint(k, m) == power_sum(n, m).
* ``dilcher``: binomial-weighted reciprocal powers build the full chain sum:
  sum_k C(n,k) (-1)^(k-1) / k^m == mhs_full(n, m).
* ``dilcher_q``: the q-analogue of ``dilcher``, Gaussian-weighted with the
  power q^(k(k+1)/2 + (m-1)k) against 1/(1-q^k)^m, equal to the full q chain
  sum.
* ``hernandez_q``: the q-analogue of ``hernandez``, Gaussian-weighted with
  q^(-kn + k(k-1)/2) against the q endpoint sums, equal to the q power sum
  sum_k q^(k(m-1)) / (1-q^k)^m.

Classical verification compares Fractions ("exact" mode).  q-side
verification is "symbolic" (canonical rational functions in q, structural
equality, cross-multiplication asserted in debug builds) or "sampled"
(both sides evaluated exactly at deterministic rational points in (0, 1)).
Symbolic q reports carry the denominator degrees of both sides, which grow
quadratically in n (roughly m*n*(n+1)/2), the practical ceiling for symbolic
sweeps.

Setting q = 1 degenerates each q-family to its classical source after
clearing the m-fold pole: ``degeneration_check`` multiplies both sides by
(1-q)^m and takes the value at q = 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from qharmonic.exact_core import (
    Poly,
    RatFunc,
    binomial,
    cross_equal,
    rat_from_str,
    rat_to_str,
    ratfunc_from_obj,
    ratfunc_to_obj,
)
from qharmonic.qcombinatorics import gaussian, gaussian_at
from qharmonic.sums import (
    FactoredRatFunc,
    mhs_endpoint_row,
    mhs_full,
    power_sum,
    q_mhs_endpoint_factored,
    q_mhs_endpoint_row_at,
    q_mhs_full_at,
    q_mhs_full_factored,
    q_power_sum_at,
    q_power_sum_factored,
)

__all__ = [
    "CLASSICAL_IDENTITIES",
    "IDENTITY_NAMES",
    "IdentityReport",
    "Q_IDENTITIES",
    "degeneration_check",
    "sample_points",
    "sweep",
    "verify_dilcher",
    "verify_dilcher_q",
    "verify_hernandez",
    "verify_hernandez_q",
    "verify_sampled",
]

IDENTITY_NAMES = ("hernandez", "dilcher", "dilcher_q", "hernandez_q")
CLASSICAL_IDENTITIES = ("hernandez", "dilcher")
Q_IDENTITIES = ("dilcher_q", "hernandez_q")


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check at one grid cell.

    ``lhs``/``rhs`` hold the computed sides: Fractions in exact mode,
    canonical RatFuncs in symbolic mode, and tuples of Fractions (one per
    sample point, in order) in sampled mode.  ``sample_points`` and ``seed``
    are set in sampled mode only; ``den_degrees`` (denominator degree of each
    side) in symbolic mode only.
    """

    identity: str
    n: int
    m: int
    mode: str
    lhs: object
    rhs: object
    equal: bool
    sample_points: Optional[tuple] = None
    seed: Optional[int] = None
    den_degrees: Optional[tuple] = None

    def to_json_obj(self) -> dict:
        obj = {
            "identity": self.identity,
            "n": self.n,
            "m": self.m,
            "mode": self.mode,
            "lhs": _serialize_side(self.lhs, self.mode),
            "rhs": _serialize_side(self.rhs, self.mode),
            "equal": self.equal,
        }
        if self.sample_points is not None:
            obj["sample_points"] = [rat_to_str(p) for p in self.sample_points]
        if self.seed is not None:
            obj["seed"] = self.seed
        if self.den_degrees is not None:
            obj["den_degrees"] = list(self.den_degrees)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "IdentityReport":
        mode = obj["mode"]
        pts = obj.get("sample_points")
        degs = obj.get("den_degrees")
        return cls(
            identity=obj["identity"],
            n=obj["n"],
            m=obj["m"],
            mode=mode,
            lhs=_parse_side(obj["lhs"], mode),
            rhs=_parse_side(obj["rhs"], mode),
            equal=obj["equal"],
            sample_points=None if pts is None else tuple(rat_from_str(p) for p in pts),
            seed=obj.get("seed"),
            den_degrees=None if degs is None else tuple(degs),
        )

    def side_text(self, side: object) -> str:
        """Human-readable rendering of one side (mode-appropriate)."""
        if self.mode == "sampled":
            return "; ".join(rat_to_str(v) for v in side)
        return str(side)

    def csv_row(self) -> list:
        return [
            self.identity,
            str(self.n),
            str(self.m),
            self.mode,
            str(self.equal).lower(),
            self.side_text(self.lhs),
            self.side_text(self.rhs),
        ]


def _serialize_side(side: object, mode: str) -> object:
    if mode == "sampled":
        return [rat_to_str(v) for v in side]
    if mode == "symbolic":
        return ratfunc_to_obj(side)
    return rat_to_str(side)


def _parse_side(side: object, mode: str) -> object:
    if mode == "sampled":
        return tuple(Fraction(rat_from_str(v)) for v in side)
    if mode == "symbolic":
        return ratfunc_from_obj(side)
    return Fraction(rat_from_str(side))


def _check_cell(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise ValueError("identity grids start at n = 1, m = 1")


# ---------------------------------------------------------------------------
# Side builders
# ---------------------------------------------------------------------------

def _hernandez_sides(n: int, m: int) -> tuple:
    row = mhs_endpoint_row(n, m)
    lhs = Fraction(0)
    for k in range(1, n + 1):
        term = binomial(n, k) * row[k - 1]
        lhs += term if k % 2 else -term
    return lhs, power_sum(n, m)


def _dilcher_sides(n: int, m: int) -> tuple:
    lhs = Fraction(0)
    for k in range(1, n + 1):
        term = binomial(n, k) * Fraction(1, k**m)
        lhs += term if k % 2 else -term
    return lhs, mhs_full(n, m)


def _dilcher_q_sides(n: int, m: int) -> tuple:
    acc = FactoredRatFunc.zero()
    for k in range(1, n + 1):
        num = gaussian(n, k).shift(k * (k + 1) // 2 + (m - 1) * k)
        if k % 2 == 0:
            num = -num
        acc = acc.add(FactoredRatFunc(num, 0, {k: m}))
    return acc.to_ratfunc(), q_mhs_full_factored(n, m).to_ratfunc()


def _hernandez_q_sides(n: int, m: int) -> tuple:
    acc = FactoredRatFunc.zero()
    for k in range(1, n + 1):
        term = (
            q_mhs_endpoint_factored(k, m)
            .mul_poly(gaussian(n, k))
            .mul_qpow(k * (k - 1) // 2 - k * n)
        )
        if k % 2 == 0:
            term = term.scale(-1)
        acc = acc.add(term)
    return acc.to_ratfunc(), q_power_sum_factored(n, m).to_ratfunc()


def _dilcher_q_sides_at(n: int, m: int, q0: Fraction) -> tuple:
    lhs = Fraction(0)
    for k in range(1, n + 1):
        term = (
            gaussian_at(n, k, q0)
            * q0 ** (k * (k + 1) // 2 + (m - 1) * k)
            / (1 - q0**k) ** m
        )
        lhs += term if k % 2 else -term
    return lhs, q_mhs_full_at(n, m, q0)


def _hernandez_q_sides_at(n: int, m: int, q0: Fraction) -> tuple:
    row = q_mhs_endpoint_row_at(n, m, q0)
    lhs = Fraction(0)
    for k in range(1, n + 1):
        term = (
            gaussian_at(n, k, q0)
            * Fraction(q0 ** (k * (k - 1) // 2))
            / q0 ** (k * n)
            * row[k - 1]
        )
        lhs += term if k % 2 else -term
    return lhs, q_power_sum_at(n, m, q0)


_SIDES_EXACT = {"hernandez": _hernandez_sides, "dilcher": _dilcher_sides}
_SIDES_SYMBOLIC = {"dilcher_q": _dilcher_q_sides, "hernandez_q": _hernandez_q_sides}
_SIDES_SAMPLED = {"dilcher_q": _dilcher_q_sides_at, "hernandez_q": _hernandez_q_sides_at}


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------

def verify_hernandez(n: int, m: int) -> IdentityReport:
    """Exact check of the classical endpoint-sum identity at one (n, m)."""
    return _verify_exact("hernandez", n, m)


def verify_dilcher(n: int, m: int) -> IdentityReport:
    """Exact check of the classical full-sum identity at one (n, m)."""
    return _verify_exact("dilcher", n, m)


def _verify_exact(identity: str, n: int, m: int) -> IdentityReport:
    _check_cell(n, m)
    lhs, rhs = _SIDES_EXACT[identity](n, m)
    return IdentityReport(identity, n, m, "exact", lhs, rhs, lhs == rhs)


def verify_dilcher_q(n: int, m: int) -> IdentityReport:
    """Symbolic check of the q full-sum identity at one (n, m)."""
    return _verify_symbolic("dilcher_q", n, m)


def verify_hernandez_q(n: int, m: int) -> IdentityReport:
    """Symbolic check of the q endpoint-sum identity at one (n, m)."""
    return _verify_symbolic("hernandez_q", n, m)


def _verify_symbolic(identity: str, n: int, m: int) -> IdentityReport:
    _check_cell(n, m)
    lhs, rhs = _SIDES_SYMBOLIC[identity](n, m)
    equal = lhs == rhs
    # Structural equality on canonical forms must agree with the
    # representation-free cross-multiplication test.
    assert equal == cross_equal(lhs, rhs), "canonical form inconsistency"
    return IdentityReport(
        identity,
        n,
        m,
        "symbolic",
        lhs,
        rhs,
        equal,
        den_degrees=(lhs.den.degree, rhs.den.degree),
    )


def verify_sampled(
    identity: str,
    n: int,
    m: int,
    points: Sequence[Fraction],
    seed: Optional[int] = None,
) -> IdentityReport:
    """Check a q identity by exact evaluation at rational points in (0, 1).

    Every point must be a rational strictly between 0 and 1 (this keeps all
    1 - q^k factors away from zero).  ``seed`` is recorded in the report when
    the points came from ``sample_points``.
    """
    _check_cell(n, m)
    if identity not in Q_IDENTITIES:
        raise ValueError(f"sampled mode applies to q identities, not {identity!r}")
    pts = tuple(points)
    if not pts:
        raise ValueError("sampled mode needs at least one point")
    for p in pts:
        if not isinstance(p, (int, Fraction)) or not 0 < p < 1:
            raise ValueError(f"sample point {p!r} is not a rational in (0, 1)")
    sides = _SIDES_SAMPLED[identity]
    lhs_vals = []
    rhs_vals = []
    for p in pts:
        lv, rv = sides(n, m, Fraction(p))
        lhs_vals.append(lv)
        rhs_vals.append(rv)
    lhs_t, rhs_t = tuple(lhs_vals), tuple(rhs_vals)
    return IdentityReport(
        identity,
        n,
        m,
        "sampled",
        lhs_t,
        rhs_t,
        lhs_t == rhs_t,
        sample_points=pts,
        seed=seed,
    )


def sample_points(count: int, seed: int) -> list:
    """Deterministic rational sample points in (0, 1), distinct, seeded.

    Each point is p/r with 1 <= p < r <= 1000; duplicates (after reduction)
    are rejected and redrawn, so the result has exactly ``count`` distinct
    points for any seed.
    """
    if count < 1:
        raise ValueError("need at least one sample point")
    rng = random.Random(seed)
    points: list = []
    seen = set()
    while len(points) < count:
        r = rng.randint(2, 1000)
        p = rng.randint(1, r - 1)
        f = Fraction(p, r)
        if f not in seen:
            seen.add(f)
            points.append(f)
    return points


def sweep(
    identity: str,
    n_max: int,
    m_max: int,
    mode: str = "symbolic",
    samples: int = 5,
    seed: int = 0,
) -> list:
    """Verify one identity over the full grid 1 <= n <= n_max, 1 <= m <= m_max.

    Cells are visited in lexicographic (n, m) order and every cell is
    reported (the sweep does not stop at a failure).  Classical identities
    ignore ``mode`` (they are always exact); q identities honor
    ``mode="symbolic"`` or ``mode="sampled"`` (with ``samples`` points drawn
    once from ``seed`` and shared by all cells).
    """
    if identity not in IDENTITY_NAMES:
        raise ValueError(f"unknown identity {identity!r} (choose from {IDENTITY_NAMES})")
    if n_max < 1 or m_max < 1:
        raise ValueError("sweep bounds must be >= 1")
    if mode not in ("symbolic", "sampled"):
        raise ValueError(f"unknown mode {mode!r} (symbolic or sampled)")
    reports = []
    pts = None
    if identity in Q_IDENTITIES and mode == "sampled":
        pts = sample_points(samples, seed)
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            if identity in CLASSICAL_IDENTITIES:
                reports.append(_verify_exact(identity, n, m))
            elif mode == "symbolic":
                reports.append(_verify_symbolic(identity, n, m))
            else:
                reports.append(verify_sampled(identity, n, m, pts, seed=seed))
    return reports


# ---------------------------------------------------------------------------
# Degeneration to the classical identities
# ---------------------------------------------------------------------------

def _cleared_value_at_one(value: RatFunc, m: int) -> Fraction:
    """The value of (1 - q)^m * value at q = 1.

    The canonical denominator is divided by (q - 1) as often as it goes (at
    most m times); what remains must be nonzero at 1.
    """
    num, den = value.num, value.den
    lin = Poly((-1, 1))
    mult = 0
    while mult < m:
        quot, rem = divmod(den, lin)
        if not rem.is_zero:
            break
        den = quot
        mult += 1
    if mult < m:
        # Leftover (q - 1) factors multiply the numerator and kill it at 1.
        return Fraction(0)
    dval = den.evaluate(1)
    if dval == 0:
        raise ZeroDivisionError("pole at q = 1 survives clearing (1 - q)^m")
    sign = -1 if m % 2 else 1
    return sign * Fraction(num.evaluate(1)) / Fraction(dval)


def degeneration_check(identity: str, n: int, m: int) -> bool:
    """True when the q identity collapses to its classical source at q = 1.

    Both q sides are multiplied by (1 - q)^m and evaluated at 1; the results
    must match the corresponding classical sides exactly.
    """
    _check_cell(n, m)
    if identity == "dilcher_q":
        qlhs, qrhs = _dilcher_q_sides(n, m)
        clhs, crhs = _dilcher_sides(n, m)
    elif identity == "hernandez_q":
        qlhs, qrhs = _hernandez_q_sides(n, m)
        clhs, crhs = _hernandez_sides(n, m)
    else:
        raise ValueError(f"degeneration applies to q identities, not {identity!r}")
    return (
        _cleared_value_at_one(qlhs, m) == clhs
        and _cleared_value_at_one(qrhs, m) == crhs
    )
