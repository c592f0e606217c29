"""Inverse pairs of alternating binomial transforms, their q-analogues, the
Euler-style generating function involution, and the connection matrices that
tie the transforms together.

The classical pair: from a sequence a, form the cumulative outputs
B_n = sum_k C(n,k) (-1)^k a_k; differencing consecutive outputs induces a
second sequence b, and applying the same transform to b gives the cumulative
sums of a, so differencing once more recovers a exactly.

The q pair replaces C(n,k) by the Gaussian polynomial and attaches powers of
q: the first transform weights a_k by (-1)^k q^(k(k-1)/2), the second weights
b_k by (-1)^k q^(-kn + k(k-1)/2), and the round trip recovers q^(-n) a_n
(so multiplying by q^n closes the loop).  ``proof_basis_a`` and
``proof_basis_b`` are the explicit sequence pair, parameterized by x, on
which the two relations can be exercised directly.

In matrix language the transforms are lower-triangular connection matrices:

    T(n, k)       = gauss(n,k) (-1)^k q^(k(k-1)/2)
    S(n, k)       = gauss(n,k) (-1)^k q^(k(k-1)/2 - kn)
    U(n, k)       = 1                      (lower-triangular all-ones)
    V(n, k)       = q^(-k)
    T_inv(n, k)   = gauss(n,k) (-1)^k q^(k(k+1)/2 - kn)
    T_inv_U(n, k) = gauss(n-1, k-1) (-1)^k q^(k(k-1)/2 - n(k-1))   for k >= 1

and they satisfy T*T_inv = I and S = V*T_inv*U.  Column 0 of T_inv_U is the
k = 0 edge case the closed form above does not cover; the product V*T_inv*U
forces entry (0,0) = 1 and zeros below it, and that convention is what
``build_matrix`` implements.

``euler_involution_series`` acts on truncated power series by substituting
z -> z/(z-1), which is an involution on formal power series; its coefficient
action is triangular, so truncation commutes with the map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from qharmonic.exact_core import Coeff, Poly, RatFunc, as_ratfunc, binomial, ratfunc_to_obj
from qharmonic.qcombinatorics import gaussian, q_pochhammer

__all__ = [
    "MATRIX_KINDS",
    "QMatrix",
    "SequenceTable",
    "TruncatedSeries",
    "alt_binomial_cumulative",
    "alt_binomial_roundtrip",
    "build_matrix",
    "euler_involution_series",
    "proof_basis_a",
    "proof_basis_b",
    "q_transform_first",
    "q_transform_roundtrip",
    "q_transform_second",
    "qmatrix_mul",
]


@dataclass(frozen=True)
class SequenceTable:
    """A finite sequence a_0, ..., a_N of rational functions (indexed from 0)."""

    entries: tuple

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("sequence table must hold at least a_0")
        for e in self.entries:
            if not isinstance(e, RatFunc):
                raise TypeError("sequence entries must be RatFunc (use from_values)")

    @classmethod
    def from_values(cls, values) -> "SequenceTable":
        """Build from any iterable of ints, Fractions, Polys, or RatFuncs."""
        return cls(tuple(as_ratfunc(v) for v in values))

    @property
    def n_max(self) -> int:
        return len(self.entries) - 1

    def entry(self, n: int) -> RatFunc:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"index {n} outside sequence (0..{self.n_max})")
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, n: int) -> RatFunc:
        return self.entries[n]


@dataclass(frozen=True)
class TruncatedSeries:
    """A power series known through order len(coeffs) - 1, rational coefficients."""

    coeffs: tuple

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("truncated series must hold at least the constant term")
        for c in self.coeffs:
            if not isinstance(c, (int, Fraction)):
                raise TypeError("series coefficients must be exact rationals")

    @classmethod
    def from_values(cls, values) -> "TruncatedSeries":
        return cls(tuple(Fraction(v) if not isinstance(v, (int, Fraction)) else v for v in values))

    @property
    def order(self) -> int:
        """Number of known coefficients (truncation length)."""
        return len(self.coeffs)

    def coeff(self, p: int) -> Coeff:
        if not 0 <= p < self.order:
            raise ValueError(f"coefficient {p} outside series (order {self.order})")
        return self.coeffs[p]


# ---------------------------------------------------------------------------
# Classical transform
# ---------------------------------------------------------------------------

def alt_binomial_cumulative(a: SequenceTable, n: int) -> RatFunc:
    """sum_{k=0..n} C(n,k) (-1)^k a_k (the cumulative transform output at n)."""
    if not 0 <= n <= a.n_max:
        raise ValueError("transform order exceeds the stored sequence")
    acc = RatFunc.zero()
    for k in range(n + 1):
        term = binomial(n, k) * a.entries[k]
        acc = acc - term if k % 2 else acc + term
    return acc


def _difference(values: list) -> list:
    """First differences, keeping the initial value: v_0, v_1 - v_0, ..."""
    out = [values[0]]
    for prev, cur in zip(values, values[1:]):
        out.append(cur - prev)
    return out


def alt_binomial_roundtrip(a: SequenceTable) -> SequenceTable:
    """Run the inverse pair end to end and return the recovered sequence.

    Equals ``a`` identically; exposed so tests and the self-test can assert
    the inversion on arbitrary sequences.
    """
    first = [alt_binomial_cumulative(a, n) for n in range(len(a))]
    induced = SequenceTable(tuple(_difference(first)))
    second = [alt_binomial_cumulative(induced, n) for n in range(len(a))]
    return SequenceTable(tuple(_difference(second)))


# ---------------------------------------------------------------------------
# q transforms
# ---------------------------------------------------------------------------

def q_transform_first(a: SequenceTable, n: int) -> RatFunc:
    """sum_{k=0..n} gauss(n,k) (-1)^k q^(k(k-1)/2) a_k."""
    if not 0 <= n <= a.n_max:
        raise ValueError("transform order exceeds the stored sequence")
    acc = RatFunc.zero()
    for k in range(n + 1):
        term = as_ratfunc(gaussian(n, k)) * RatFunc.q_power(k * (k - 1) // 2) * a.entries[k]
        acc = acc - term if k % 2 else acc + term
    return acc


def q_transform_second(b: SequenceTable, n: int) -> RatFunc:
    """sum_{k=0..n} gauss(n,k) (-1)^k q^(-kn + k(k-1)/2) b_k."""
    if not 0 <= n <= b.n_max:
        raise ValueError("transform order exceeds the stored sequence")
    acc = RatFunc.zero()
    for k in range(n + 1):
        term = (
            as_ratfunc(gaussian(n, k))
            * RatFunc.q_power(-k * n + k * (k - 1) // 2)
            * b.entries[k]
        )
        acc = acc - term if k % 2 else acc + term
    return acc


def q_transform_roundtrip(a: SequenceTable) -> SequenceTable:
    """Inverse pair in the q setting: first transform, difference, second
    transform, difference, unwind the leftover q^(-n) twist.

    Returns the recovered sequence, equal to ``a`` identically.
    """
    first = [q_transform_first(a, n) for n in range(len(a))]
    induced = SequenceTable(tuple(_difference(first)))
    second = [q_transform_second(induced, n) for n in range(len(a))]
    twisted = _difference(second)
    return SequenceTable(
        tuple(RatFunc.q_power(n) * v for n, v in enumerate(twisted))
    )


def proof_basis_a(x: object, n: int) -> RatFunc:
    """The explicit input sequence: a_0 = 1, a_n = q^n x^n (1 - 1/x) for n >= 1."""
    if n < 0:
        raise ValueError("sequence index must be >= 0")
    x = as_ratfunc(x)
    if x.is_zero:
        raise ZeroDivisionError("proof basis needs x != 0")
    if n == 0:
        return RatFunc.one()
    return RatFunc.q_power(n) * x**n * (RatFunc.one() - x**-1)


def proof_basis_b(x: object, n: int) -> RatFunc:
    """The induced partner sequence: b_n = q^n (x; q)_n."""
    if n < 0:
        raise ValueError("sequence index must be >= 0")
    return RatFunc.q_power(n) * q_pochhammer(x, n)


# ---------------------------------------------------------------------------
# Euler-style involution on truncated series
# ---------------------------------------------------------------------------

def euler_involution_series(s: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise action of z -> z/(z-1) on a truncated power series.

    The image coefficient at order p >= 1 is
    sum_{n=1..p} (-1)^n C(p-1, n-1) a_n, and the constant term is unchanged.
    The map is triangular (order p depends on inputs up to p), so applying it
    to a truncation is the truncation of applying it exactly; applying it
    twice returns the original series.
    """
    out: list = [s.coeffs[0]]
    for p in range(1, s.order):
        val: Coeff = 0
        for n in range(1, p + 1):
            term = binomial(p - 1, n - 1) * s.coeffs[n]
            val = val - term if n % 2 else val + term
        out.append(val)
    return TruncatedSeries(tuple(out))


# ---------------------------------------------------------------------------
# Connection matrices
# ---------------------------------------------------------------------------

MATRIX_KINDS = ("T", "S", "U", "V", "T_inv", "T_inv_U")


@dataclass(frozen=True)
class QMatrix:
    """A square matrix of rational functions in q, indexed from 0."""

    size: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("matrix size must be >= 1")
        if len(self.entries) != self.size or any(
            len(row) != self.size for row in self.entries
        ):
            raise ValueError("entries must form a size x size grid")

    @classmethod
    def identity(cls, size: int) -> "QMatrix":
        one, zero = RatFunc.one(), RatFunc.zero()
        return cls(
            size,
            tuple(
                tuple(one if i == j else zero for j in range(size))
                for i in range(size)
            ),
        )

    def entry(self, i: int, j: int) -> RatFunc:
        return self.entries[i][j]

    def to_obj(self) -> dict:
        """JSON-ready form: {"size": ..., "entries": [[{num, den}, ...], ...]}."""
        return {
            "size": self.size,
            "entries": [[ratfunc_to_obj(e) for e in row] for row in self.entries],
        }


def _matrix_entry(kind: str, n: int, k: int) -> RatFunc:
    if k > n:
        return RatFunc.zero()
    sign = -1 if k % 2 else 1
    if kind == "T":
        return as_ratfunc(gaussian(n, k).scale(sign)) * RatFunc.q_power(k * (k - 1) // 2)
    if kind == "S":
        return as_ratfunc(gaussian(n, k).scale(sign)) * RatFunc.q_power(
            k * (k - 1) // 2 - k * n
        )
    if kind == "U":
        return RatFunc.one()
    if kind == "V":
        return RatFunc.q_power(-k)
    if kind == "T_inv":
        return as_ratfunc(gaussian(n, k).scale(sign)) * RatFunc.q_power(
            k * (k + 1) // 2 - k * n
        )
    if kind == "T_inv_U":
        if k == 0:
            # The closed form below starts at k = 1; the product V*T_inv*U has
            # (0,0) = 1 and zeros below it in column 0.
            return RatFunc.one() if n == 0 else RatFunc.zero()
        return as_ratfunc(gaussian(n - 1, k - 1).scale(sign)) * RatFunc.q_power(
            k * (k - 1) // 2 - n * (k - 1)
        )
    raise ValueError(f"unknown matrix kind {kind!r} (choose from {MATRIX_KINDS})")


def build_matrix(kind: str, size: int) -> QMatrix:
    """One of the connection matrices, as a size x size lower-triangular QMatrix.

    Kinds: "T", "S", "U", "V", "T_inv", "T_inv_U" (see the module docstring
    for the entry formulas and the identities they satisfy).
    """
    if kind not in MATRIX_KINDS:
        raise ValueError(f"unknown matrix kind {kind!r} (choose from {MATRIX_KINDS})")
    if size < 1:
        raise ValueError("matrix size must be >= 1")
    return QMatrix(
        size,
        tuple(
            tuple(_matrix_entry(kind, n, k) for k in range(size))
            for n in range(size)
        ),
    )


def qmatrix_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    """Matrix product over the field of rational functions."""
    if a.size != b.size:
        raise ValueError("matrix sizes differ")
    size = a.size
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = RatFunc.zero()
            for k in range(size):
                left = a.entries[i][k]
                if left.is_zero:
                    continue
                right = b.entries[k][j]
                if right.is_zero:
                    continue
                acc = acc + left * right
            row.append(acc)
        rows.append(tuple(row))
    return QMatrix(size, tuple(rows))
