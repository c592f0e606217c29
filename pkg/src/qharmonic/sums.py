"""Classical and q-analogue harmonic chain sums.

The objects here are sums over weakly increasing integer chains
i_1 <= i_2 <= ... <= i_m drawn from 1..n:

* classical: each chain contributes 1 / (i_1 * i_2 * ... * i_m);
* q-analogue: each chain contributes q^(i_1+...+i_m) / prod_j (1 - q^(i_j)).

``mhs_full`` sums over all chains, ``mhs_endpoint`` over chains with fixed
last element i_m = k (so it depends on k and m only), and ``power_sum`` is the
diagonal-free aggregate sum_k 1/k^m, whose q-analogue is
sum_k q^(k(m-1)) / (1 - q^k)^m.  All are computed by a prefix-sum recurrence

    endpoint(k, m) = weight(k) * sum_{j<=k} endpoint(j, m-1),

costing O(n*m) ring operations, with ``mhs_naive_oracle`` enumerating chains
directly as an independent (and deliberately slow) cross-check.

Performance note: q-side values are accumulated in a factored form
num / (q^a * prod_k (1 - q^k)^(e_k)) and reduced only on output.  Reduction
divides the numerator by each irreducible (cyclotomic) factor of the stored
denominator as often as it will go, which lands exactly on the canonical
RatFunc form; results are observationally identical to reducing after every
addition, just much cheaper.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from qharmonic.exact_core import Poly, RatFunc, binomial

__all__ = [
    "ChainSumSpec",
    "FactoredRatFunc",
    "MAX_ORACLE_CHAINS",
    "mhs_endpoint",
    "mhs_endpoint_row",
    "mhs_full",
    "mhs_naive_oracle",
    "power_sum",
    "q_mhs_endpoint",
    "q_mhs_endpoint_at",
    "q_mhs_endpoint_factored",
    "q_mhs_endpoint_row",
    "q_mhs_endpoint_row_at",
    "q_mhs_full",
    "q_mhs_full_at",
    "q_mhs_full_factored",
    "q_power_sum",
    "q_power_sum_at",
    "q_power_sum_factored",
]

#: Refuse naive-oracle enumerations beyond this many chains.
MAX_ORACLE_CHAINS = 10**6


@dataclass(frozen=True)
class ChainSumSpec:
    """A chain-sum instance: chains of length m over 1..n, optionally with a
    fixed endpoint (last, largest element).

    ``endpoint=None`` means the full sum; ``endpoint=k`` restricts to chains
    with i_m = k (their other elements then range over 1..k).
    """

    n: int
    m: int
    endpoint: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("chain sums need n >= 1")
        if self.m < 1:
            raise ValueError("chain sums need m >= 1 (weight at least one)")
        if self.endpoint is not None and not 1 <= self.endpoint <= self.n:
            raise ValueError("endpoint must lie in 1..n")

    def chain_count(self) -> int:
        """Exact number of chains this spec sums over."""
        if self.endpoint is None:
            return binomial(self.n + self.m - 1, self.m)
        return binomial(self.endpoint + self.m - 2, self.m - 1)


# ---------------------------------------------------------------------------
# Classical side (plain Fractions)
# ---------------------------------------------------------------------------

def power_sum(n: int, m: int) -> Fraction:
    """sum_{k=1..n} 1/k^m."""
    _check_nm(n, m)
    return sum((Fraction(1, k**m) for k in range(1, n + 1)), Fraction(0))


def mhs_endpoint_row(n: int, m: int) -> list:
    """[mhs_endpoint(k, m) for k = 1..n]."""
    _check_nm(n, m)
    row = [Fraction(1, k) for k in range(1, n + 1)]
    for _ in range(m - 1):
        acc = Fraction(0)
        nxt = []
        for k, val in enumerate(row, start=1):
            acc += val
            nxt.append(acc / k)
        row = nxt
    return row


def mhs_endpoint(k: int, m: int) -> Fraction:
    """Sum over chains of length m ending exactly at k (elements in 1..k)."""
    if k < 1:
        raise ValueError("endpoint must be >= 1")
    return mhs_endpoint_row(k, m)[-1]


def mhs_full(n: int, m: int) -> Fraction:
    """Sum over all weakly increasing chains of length m in 1..n."""
    _check_nm(n, m)
    return sum(mhs_endpoint_row(n, m), Fraction(0))


def _check_nm(n: int, m: int) -> None:
    if n < 1:
        raise ValueError("chain sums need n >= 1")
    if m < 1:
        raise ValueError("chain sums need m >= 1")


# ---------------------------------------------------------------------------
# Factored accumulator for the q side
# ---------------------------------------------------------------------------

def _mul_one_minus_qk(coeffs: list, k: int) -> list:
    """Coefficient list of p * (1 - q^k)."""
    if not coeffs:
        return []
    out = list(coeffs) + [0] * k
    for i, c in enumerate(coeffs):
        out[i + k] -= c
    return out


def _div_one_minus_qk(coeffs: list, k: int) -> list:
    """Coefficient list of p / (1 - q^k) when the division is exact.

    Solves p_i = h_i - h_(i-k) forward; the tail equations are asserted in
    debug builds.
    """
    if not coeffs:
        return []
    size = len(coeffs) - k
    if size <= 0:
        raise ArithmeticError("division by 1 - q^k is not exact (degree too small)")
    out = [0] * size
    for i in range(size):
        c = coeffs[i]
        if i >= k:
            c = c + out[i - k]
        out[i] = c
    if __debug__:
        for i in range(size, len(coeffs)):
            h = out[i - k] if 0 <= i - k < size else 0
            assert coeffs[i] + h == 0, "inexact division by 1 - q^k"
    return out


class FactoredRatFunc:
    """A rational function held as num / (q^qpow * prod_k (1 - q^k)^e_k).

    This is the working form for q-side sums: addition only needs cheap
    shift-and-subtract cofactor multiplications, and the known factorization
    of the denominator makes the final reduction to canonical
    :class:`RatFunc` form exact and fast.  Instances are immutable by
    convention: every method returns a new object and never mutates state,
    so cached values can be shared freely.
    """

    __slots__ = ("num", "qpow", "factors")

    def __init__(self, num: Poly, qpow: int = 0, factors: Optional[dict] = None):
        if qpow < 0:
            raise ValueError("denominator power of q must be >= 0")
        self.num = num
        self.qpow = 0 if num.is_zero else qpow
        self.factors = {} if num.is_zero else {
            k: e for k, e in (factors or {}).items() if e
        }

    @classmethod
    def zero(cls) -> "FactoredRatFunc":
        return cls(Poly.zero())

    @classmethod
    def one(cls) -> "FactoredRatFunc":
        return cls(Poly.one())

    def scale(self, c: object) -> "FactoredRatFunc":
        return FactoredRatFunc(self.num.scale(c), self.qpow, self.factors)

    def mul_poly(self, p: Poly) -> "FactoredRatFunc":
        return FactoredRatFunc(self.num * p, self.qpow, self.factors)

    def mul_qpow(self, j: int) -> "FactoredRatFunc":
        """Multiply by q^j for any integer j."""
        if self.num.is_zero:
            return self
        if j >= 0:
            num, qpow = self.num.shift(j), self.qpow
        else:
            num, qpow = self.num, self.qpow - j
        # Cancel stored q powers against a numerator divisible by q.
        t = min(num.trailing_zeros(), qpow)
        if t:
            num = Poly(num.coeffs[t:])
            qpow -= t
        return FactoredRatFunc(num, qpow, self.factors)

    def div_factor(self, k: int, e: int = 1) -> "FactoredRatFunc":
        """Multiply by 1 / (1 - q^k)^e."""
        if k < 1 or e < 0:
            raise ValueError("factor index must be >= 1 and exponent >= 0")
        if e == 0 or self.num.is_zero:
            return self
        factors = dict(self.factors)
        factors[k] = factors.get(k, 0) + e
        return FactoredRatFunc(self.num, self.qpow, factors)

    def add(self, other: "FactoredRatFunc") -> "FactoredRatFunc":
        if self.num.is_zero:
            return other
        if other.num.is_zero:
            return self
        qpow = max(self.qpow, other.qpow)
        keys = set(self.factors) | set(other.factors)
        factors = {k: max(self.factors.get(k, 0), other.factors.get(k, 0)) for k in keys}
        a = self._raise_to(qpow, factors)
        b = other._raise_to(qpow, factors)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] += c
        return FactoredRatFunc(Poly(a), qpow, factors)

    def _raise_to(self, qpow: int, factors: dict) -> list:
        """Numerator coefficients after scaling to the common denominator."""
        coeffs = list(self.num.coeffs)
        shift = qpow - self.qpow
        if shift:
            coeffs = [0] * shift + coeffs
        for k, e in factors.items():
            extra = e - self.factors.get(k, 0)
            for _ in range(extra):
                coeffs = _mul_one_minus_qk(coeffs, k)
        return coeffs

    def to_ratfunc(self) -> RatFunc:
        """Reduce to the canonical coprime, monic-denominator form.

        The stored denominator splits into irreducible factors as
        q^qpow * prod_d Phi_d^c_d times a sign, where Phi_d is the d-th
        cyclotomic polynomial and c_d collects the exponents of every stored
        1 - q^k with d | k.  Dividing the numerator by each Phi_d while it
        goes exactly is a complete reduction because each Phi_d is
        irreducible over the rationals.
        """
        num = self.num
        if num.is_zero:
            return RatFunc.zero()
        qpow = self.qpow
        t = min(num.trailing_zeros(), qpow)
        if t:
            num = Poly(num.coeffs[t:])
            qpow -= t
        total = 0
        counts: dict = {}
        for k, e in self.factors.items():
            total += e
            for d in _divisors(k):
                counts[d] = counts.get(d, 0) + e
        if total % 2:
            num = -num
        for d in sorted(counts):
            phi = _cyclotomic(d)
            while counts[d] > 0:
                quot, rem = divmod(num, phi)
                if not rem.is_zero:
                    break
                num = quot
                counts[d] -= 1
        den = Poly.q_power(qpow)
        for d, e in counts.items():
            if e:
                den = den * _cyclotomic(d) ** e
        return RatFunc._from_canonical(num, den)

    def __repr__(self) -> str:
        return f"FactoredRatFunc({self.num!r}, qpow={self.qpow}, factors={self.factors!r})"


def _divisors(k: int) -> list:
    return [d for d in range(1, k + 1) if k % d == 0]


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, via Phi_d = (q^d - 1) / prod_{e|d, e<d} Phi_e."""
    num = Poly.q_power(d) - Poly.one()
    for e in _divisors(d)[:-1]:
        num = num.exact_div(_cyclotomic(e))
    return num


# ---------------------------------------------------------------------------
# q side (symbolic)
# ---------------------------------------------------------------------------

# Endpoint values depend on (k, m) only, so rows are cached per weight and
# extended on demand; prefix sums are kept alongside for the recurrence.
_endpoint_cache: dict = {}
_prefix_cache: dict = {}
_cache_lock = threading.RLock()


def _ensure_endpoint(k: int, m: int) -> None:
    with _cache_lock:
        lst = _endpoint_cache.setdefault(m, [])
        pre = _prefix_cache.setdefault(m, [])
        while len(lst) < k:
            j = len(lst) + 1
            if m == 1:
                val = FactoredRatFunc(Poly.q_power(j), 0, {j: 1})
            else:
                _ensure_endpoint(j, m - 1)
                val = _prefix_cache[m - 1][j - 1].mul_qpow(j).div_factor(j)
            lst.append(val)
            pre.append(val if j == 1 else pre[-1].add(val))


def q_mhs_endpoint_factored(k: int, m: int) -> FactoredRatFunc:
    """Factored form of the q endpoint sum (shared cache; do not mutate)."""
    if k < 1 or m < 1:
        raise ValueError("endpoint sums need k >= 1 and m >= 1")
    _ensure_endpoint(k, m)
    return _endpoint_cache[m][k - 1]


def q_mhs_full_factored(n: int, m: int) -> FactoredRatFunc:
    """Factored form of the full q chain sum (shared cache; do not mutate)."""
    _check_nm(n, m)
    _ensure_endpoint(n, m)
    return _prefix_cache[m][n - 1]


def q_power_sum_factored(n: int, m: int) -> FactoredRatFunc:
    """Factored form of sum_{k=1..n} q^(k(m-1)) / (1 - q^k)^m."""
    _check_nm(n, m)
    acc = FactoredRatFunc.zero()
    for k in range(1, n + 1):
        acc = acc.add(FactoredRatFunc(Poly.q_power(k * (m - 1)), 0, {k: m}))
    return acc


def q_mhs_endpoint(k: int, m: int) -> RatFunc:
    """q-analogue of ``mhs_endpoint``: chains ending at k, each contributing
    q^(sum of elements) / prod (1 - q^element)."""
    return q_mhs_endpoint_factored(k, m).to_ratfunc()


def q_mhs_endpoint_row(n: int, m: int) -> list:
    """[q_mhs_endpoint(k, m) for k = 1..n]."""
    _check_nm(n, m)
    _ensure_endpoint(n, m)
    return [frf.to_ratfunc() for frf in _endpoint_cache[m][:n]]


def q_mhs_full(n: int, m: int) -> RatFunc:
    """q-analogue of ``mhs_full`` over all chains of length m in 1..n."""
    return q_mhs_full_factored(n, m).to_ratfunc()


def q_power_sum(n: int, m: int) -> RatFunc:
    """q-analogue of ``power_sum``: sum_{k=1..n} q^(k(m-1)) / (1 - q^k)^m."""
    return q_power_sum_factored(n, m).to_ratfunc()


# ---------------------------------------------------------------------------
# q side (evaluated at a rational point)
# ---------------------------------------------------------------------------

def q_mhs_endpoint_row_at(n: int, m: int, q0: Fraction) -> list:
    """[q_mhs_endpoint(k, m) at q = q0 for k = 1..n], all exact Fractions.

    q0 must not be a root of any 1 - q^k for k <= n; any rational in (0, 1)
    qualifies.
    """
    _check_nm(n, m)
    weights = [Fraction(q0**k) / (1 - q0**k) for k in range(1, n + 1)]
    row = list(weights)
    for _ in range(m - 1):
        acc = Fraction(0)
        nxt = []
        for k, val in enumerate(row):
            acc += val
            nxt.append(acc * weights[k])
        row = nxt
    return row


def q_mhs_endpoint_at(k: int, m: int, q0: Fraction) -> Fraction:
    if k < 1:
        raise ValueError("endpoint must be >= 1")
    return q_mhs_endpoint_row_at(k, m, q0)[-1]


def q_mhs_full_at(n: int, m: int, q0: Fraction) -> Fraction:
    return sum(q_mhs_endpoint_row_at(n, m, q0), Fraction(0))


def q_power_sum_at(n: int, m: int, q0: Fraction) -> Fraction:
    _check_nm(n, m)
    total = Fraction(0)
    for k in range(1, n + 1):
        total += Fraction(q0 ** (k * (m - 1))) / (1 - q0**k) ** m
    return total


# ---------------------------------------------------------------------------
# Naive oracle
# ---------------------------------------------------------------------------

def mhs_naive_oracle(spec: ChainSumSpec, q_side: bool = False):
    """Chain-by-chain evaluation of a chain sum, as an independent oracle.

    Enumerates every weakly increasing chain explicitly, so it shares no code
    path with the recurrences above.  Returns a Fraction (classical) or a
    canonical RatFunc (q side).  Raises ValueError when the chain count
    exceeds ``MAX_ORACLE_CHAINS``.
    """
    count = spec.chain_count()
    if count > MAX_ORACLE_CHAINS:
        raise ValueError(
            f"naive oracle refuses {count} chains (limit {MAX_ORACLE_CHAINS})"
        )
    if spec.endpoint is None:
        chains = itertools.combinations_with_replacement(range(1, spec.n + 1), spec.m)
        top = spec.n
    else:
        k = spec.endpoint
        chains = (
            head + (k,)
            for head in itertools.combinations_with_replacement(
                range(1, k + 1), spec.m - 1
            )
        )
        top = k
    if not q_side:
        total = Fraction(0)
        for chain in chains:
            prod = 1
            for i in chain:
                prod *= i
            total += Fraction(1, prod)
        return total
    # Common denominator prod_{l<=top} (1 - q^l)^m, expanded once; every chain
    # contributes q^(sum) times the cofactor obtained by exact division.
    den = [1]
    for l in range(1, top + 1):
        for _ in range(spec.m):
            den = _mul_one_minus_qk(den, l)
    num = [0] * len(den)
    for chain in chains:
        cof = den
        for i in chain:
            cof = _div_one_minus_qk(cof, i)
        shift = sum(chain)
        for idx, c in enumerate(cof):
            num[idx + shift] += c
    # One generic reduction; this is the slow, obviously-correct path.
    return RatFunc(Poly(num), Poly(den))
