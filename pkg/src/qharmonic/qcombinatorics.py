"""Gaussian (q-binomial) polynomials, q-Pochhammer products, and the two
finite q-binomial expansions built from them.

Gaussian polynomials are produced by the q-Pascal recurrence

    gauss(n, k) = gauss(n-1, k-1) + q^k * gauss(n-1, k),

with gauss(n, 0) = gauss(n, n) = 1, and are cached module-wide: each row is
computed once per process.  The quotient definition via (q;q)_n products is
deliberately not used here (it needs polynomial division); tests use it as an
independent oracle.

The two expansions, valid for every n >= 0:

    sum_k gauss(n, k) * (-1)^k * q^(k(k-1)/2) * x^k  ==  (x; q)_n
    sum_k gauss(n, k) * (x; q)_k * x^(n-k)           ==  1

Both are exposed as functions of (n, x) returning the summed side, so callers
can check them against ``q_pochhammer`` and 1 respectively.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from qharmonic.exact_core import Poly, RatFunc, as_ratfunc

__all__ = [
    "GaussianTable",
    "gaussian",
    "gaussian_at",
    "q_pochhammer",
    "qbt_alternating_sum",
    "qbt_partition_sum",
]

_ROWS: list = [(Poly.one(),)]
_ROWS_LOCK = threading.Lock()


def _ensure_rows(n: int) -> None:
    if n < len(_ROWS):
        return
    with _ROWS_LOCK:
        while len(_ROWS) <= n:
            prev = _ROWS[-1]
            r = len(_ROWS)
            row = [Poly.one()]
            for k in range(1, r):
                row.append(prev[k - 1] + prev[k].shift(k))
            row.append(Poly.one())
            _ROWS.append(tuple(row))


def gaussian(n: int, k: int) -> Poly:
    """The Gaussian polynomial gauss(n, k); zero outside 0 <= k <= n.

    Degree is k*(n-k); coefficients are nonnegative integers; the value at
    q = 1 is the ordinary binomial coefficient C(n, k).
    """
    if n < 0:
        raise ValueError("gaussian requires n >= 0")
    if k < 0 or k > n:
        return Poly.zero()
    _ensure_rows(n)
    return _ROWS[n][k]


@dataclass(frozen=True)
class GaussianTable:
    """An immutable triangle of Gaussian polynomials, rows 0..n_max.

    ``rows[n][k]`` holds gauss(n, k).  Use :meth:`build` for a correct table;
    the constructor is open so tests can assemble deliberately wrong tables
    (the self-test uses one as a negative control).
    """

    n_max: int
    rows: tuple

    @classmethod
    def build(cls, n_max: int) -> "GaussianTable":
        if n_max < 0:
            raise ValueError("table size must be >= 0")
        _ensure_rows(n_max)
        return cls(n_max, tuple(_ROWS[: n_max + 1]))

    def entry(self, n: int, k: int) -> Poly:
        """gauss(n, k) from the table; zero outside 0 <= k <= n."""
        if not 0 <= n <= self.n_max:
            raise ValueError(f"row {n} outside table (0..{self.n_max})")
        if k < 0 or k > n:
            return Poly.zero()
        return self.rows[n][k]


def gaussian_at(n: int, k: int, q0: Fraction) -> Fraction:
    """gauss(n, k) evaluated at a rational point q0, without building the polynomial.

    Uses the product form prod_{j=1..k} (1 - q0^(n-k+j)) / (1 - q0^j), so q0
    must not be a root of any 1 - q^j for j <= k (q0 in the open interval
    (0, 1) is always safe).
    """
    if n < 0:
        raise ValueError("gaussian_at requires n >= 0")
    if k < 0 or k > n:
        return Fraction(0)
    num = Fraction(1)
    den = Fraction(1)
    for j in range(1, k + 1):
        num *= 1 - q0 ** (n - k + j)
        den *= 1 - q0**j
    return num / den


def q_pochhammer(x: object, n: int) -> RatFunc:
    """The finite q-Pochhammer product (x; q)_n = prod_{j=0..n-1} (1 - x*q^j).

    Empty product for n = 0.  ``x`` may be an int, Fraction, Poly, or RatFunc.
    """
    if n < 0:
        raise ValueError("q_pochhammer requires n >= 0")
    x = as_ratfunc(x)
    acc = RatFunc.one()
    for j in range(n):
        acc = acc * (RatFunc.one() - x * RatFunc.q_power(j))
    return acc


def qbt_alternating_sum(n: int, x: object) -> RatFunc:
    """Alternating Gaussian expansion sum_k gauss(n,k) (-1)^k q^(k(k-1)/2) x^k.

    Equals ``q_pochhammer(x, n)`` for every n >= 0; the triangular power of q
    is essential (without it the sum does not telescope to the product).
    """
    if n < 0:
        raise ValueError("qbt_alternating_sum requires n >= 0")
    x = as_ratfunc(x)
    acc = RatFunc.zero()
    for k in range(n + 1):
        term = as_ratfunc(gaussian(n, k)) * x**k * RatFunc.q_power(k * (k - 1) // 2)
        acc = acc - term if k % 2 else acc + term
    return acc


def qbt_partition_sum(n: int, x: object) -> RatFunc:
    """Complementary Gaussian expansion sum_k gauss(n,k) (x; q)_k x^(n-k).

    Collapses to 1 for every n >= 0.
    """
    if n < 0:
        raise ValueError("qbt_partition_sum requires n >= 0")
    x = as_ratfunc(x)
    acc = RatFunc.zero()
    for k in range(n + 1):
        acc = acc + as_ratfunc(gaussian(n, k)) * q_pochhammer(x, k) * x ** (n - k)
    return acc
