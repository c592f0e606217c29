"""Exact arithmetic substrate: big rationals, dense polynomials in q, and
canonical rational functions.

Three value types carry every quantity in this package:

* ``BigRat`` is an alias for :class:`fractions.Fraction`: an arbitrary
  precision rational with coprime numerator/denominator and positive
  denominator.  A value whose denominator is 1 may equally be held as a plain
  ``int``; the two interoperate freely and compare equal.
* ``Poly`` is a dense univariate polynomial in the indeterminate q over the
  rationals.  Coefficients are stored ascending, so index i is the coefficient
  of q^i.  The zero polynomial is the empty coefficient tuple; otherwise the
  trailing coefficient is nonzero and ``degree == len(coeffs) - 1``.
* ``RatFunc`` is a quotient of two polynomials kept canonical: numerator and
  denominator coprime over the rationals, denominator monic and nonzero, zero
  represented as 0/1.  Canonical form makes equality structural (two equal
  values have identical coefficient tuples).

All three types are immutable after construction, so any value may be shared
between threads; every operation is a pure function.

Serialization (used by the CLI and report emitters): a rational is the string
``"p/q"``, or ``"p"`` when the denominator is 1; a polynomial is the list of
its coefficient strings ascending; a rational function is the object
``{"num": [...], "den": [...]}``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "BigRat",
    "Coeff",
    "Poly",
    "RatFunc",
    "as_ratfunc",
    "binomial",
    "cross_equal",
    "poly_from_strs",
    "poly_gcd",
    "poly_to_strs",
    "rat_from_str",
    "rat_to_str",
    "ratfunc_from_obj",
    "ratfunc_to_obj",
]

BigRat = Fraction

# A polynomial coefficient: an exact rational, held as int whenever the
# denominator is 1 (same value, cheaper arithmetic).
Coeff = Union[int, Fraction]


def _norm_coeff(value: object) -> Coeff:
    """Coerce to a canonical coefficient (int when the denominator is 1)."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"expected an exact rational coefficient, got {type(value).__name__}")


class Poly:
    """Dense univariate polynomial in q with exact rational coefficients.

    Construct from any iterable of coefficients, ascending degree; trailing
    zeros are stripped so the representation is canonical.  ``Poly(())`` is
    the zero polynomial.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[object] = ()):
        cs = [_norm_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def q(cls) -> "Poly":
        """The polynomial q itself."""
        return cls((0, 1))

    @classmethod
    def q_power(cls, k: int) -> "Poly":
        """The monomial q^k, k >= 0."""
        if k < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return cls((0,) * k + (1,))

    @classmethod
    def constant(cls, c: object) -> "Poly":
        return cls((c,))

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> Coeff:
        """Leading coefficient; 0 for the zero polynomial."""
        return self._coeffs[-1] if self._coeffs else 0

    def coeff(self, i: int) -> Coeff:
        """Coefficient of q^i (0 when out of range)."""
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Poly((other,))._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        out = list(self._coeffs)
        bl = len(other._coeffs)
        if bl > len(out):
            out.extend([0] * (bl - len(out)))
        for i, c in enumerate(other._coeffs):
            out[i] -= c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self._coeffs])

    def __mul__(self, other: object) -> "Poly":
        if isinstance(other, Poly):
            a, b = self._coeffs, other._coeffs
            if not a or not b:
                return Poly(())
            out = [0] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if ca == 0:
                    continue
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
            return Poly(out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: object) -> "Poly":
        c = _norm_coeff(c)
        if c == 0:
            return Poly(())
        return Poly([c * a for a in self._coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by q^k, k >= 0."""
        if k < 0:
            raise ValueError("shift amount must be nonnegative")
        if not self._coeffs:
            return self
        return Poly((0,) * k + self._coeffs)

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power must be a nonnegative integer")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def trailing_zeros(self) -> int:
        """Multiplicity of the factor q (0 for the zero polynomial)."""
        for i, c in enumerate(self._coeffs):
            if c != 0:
                return i
        return 0

    def evaluate(self, x: object) -> Coeff:
        """Exact value at a rational point, by Horner's rule."""
        acc: Coeff = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return _norm_coeff(Fraction(acc)) if not isinstance(acc, int) else acc

    def __divmod__(self, other: "Poly") -> tuple:
        """Quotient and remainder over the rationals; deg(rem) < deg(divisor)."""
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        dd = other.degree
        rem = list(self._coeffs)
        if len(rem) - 1 < dd:
            return Poly(()), self
        quot: list = [0] * (len(rem) - dd)
        inv = Fraction(1) / Fraction(other.leading)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = _norm_coeff(Fraction(c) * inv)
            quot[i - dd] = f
            rem[i] = 0
            for j in range(dd):
                rem[i - dd + j] -= f * other._coeffs[j]
        return Poly(quot), Poly(rem[:dd])

    def exact_div(self, other: "Poly") -> "Poly":
        """Exact quotient; raises ArithmeticError when the division leaves a remainder."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: "Poly") -> bool:
        """True when self divides other exactly (self nonzero)."""
        return divmod(other, self)[1].is_zero

    def monic(self) -> "Poly":
        """Scalar multiple with leading coefficient 1 (zero stays zero)."""
        if self.is_zero or self.leading == 1:
            return self
        return self.scale(Fraction(1) / Fraction(self.leading))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts: list = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            neg = c < 0
            mag = -c if neg else c
            if i == 0:
                term = str(mag)
            else:
                base = "q" if i == 1 else f"q^{i}"
                term = base if mag == 1 else f"{mag}*{base}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("-" if neg else "+") + term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({list(self._coeffs)!r})"


def _integer_primitive(p: Poly) -> list:
    """Integer coefficient list of a nonzero polynomial with content removed."""
    den = 1
    for c in p.coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _pseudo_rem(a: list, b: list) -> list:
    """Integer pseudo-remainder of a by b (deg a >= deg b >= 0)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        r = [lb * c for c in r[:-1]]
        k = len(r) - db
        for i in range(db):
            r[k + i] -= lr * b[i]
        while r and r[-1] == 0:
            r.pop()
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over the rationals.

    Computed by the Euclidean algorithm on primitive integer polynomials
    (pseudo-remainders with content removed each step), which keeps
    coefficient growth in check.  Raises ValueError when both inputs are zero.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("gcd undefined for two zero polynomials")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    x = _integer_primitive(a)
    y = _integer_primitive(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _pseudo_rem(x, y)
        if r:
            g = 0
            for c in r:
                g = math.gcd(g, c)
            if g > 1:
                r = [c // g for c in r]
        x, y = y, r
    return Poly(x).monic()


class RatFunc:
    """Canonical quotient of two polynomials in q.

    The constructor reduces to lowest terms and normalizes the denominator to
    be monic, so equal values always have identical representations.  Negative
    powers of q are ordinary values here: q^-j is 1 over the monomial q^j.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: object, den: object = None):
        num = num if isinstance(num, Poly) else Poly((num,))
        if den is None:
            den = Poly.one()
        elif not isinstance(den, Poly):
            den = Poly((den,))
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self._num = Poly.zero()
            self._den = Poly.one()
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading
        if lc != 1:
            inv = Fraction(1) / Fraction(lc)
            num = num.scale(inv)
            den = den.scale(inv)
        self._num = num
        self._den = den

    @classmethod
    def _from_canonical(cls, num: Poly, den: Poly) -> "RatFunc":
        """Wrap an already coprime pair with monic denominator (no reduction)."""
        self = object.__new__(cls)
        if num.is_zero:
            self._num = Poly.zero()
            self._den = Poly.one()
        else:
            self._num = num
            self._den = den
        return self

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls._from_canonical(Poly.zero(), Poly.one())

    @classmethod
    def one(cls) -> "RatFunc":
        return cls._from_canonical(Poly.one(), Poly.one())

    @classmethod
    def q_power(cls, j: int) -> "RatFunc":
        """The value q^j for any integer j (negative j gives 1/q^-j)."""
        if j >= 0:
            return cls._from_canonical(Poly.q_power(j), Poly.one())
        return cls._from_canonical(Poly.one(), Poly.q_power(-j))

    @property
    def num(self) -> Poly:
        return self._num

    @property
    def den(self) -> Poly:
        return self._den

    @property
    def is_zero(self) -> bool:
        return self._num.is_zero

    def __bool__(self) -> bool:
        return not self._num.is_zero

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFunc):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction, Poly)):
            return self == as_ratfunc(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __add__(self, other: object) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(
            self._num * other._den + other._num * self._den,
            self._den * other._den,
        )

    __radd__ = __add__

    def __sub__(self, other: object) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(
            self._num * other._den - other._num * self._den,
            self._den * other._den,
        )

    def __rsub__(self, other: object) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "RatFunc":
        return RatFunc._from_canonical(-self._num, self._den)

    def __mul__(self, other: object) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other: object) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "RatFunc":
        if not isinstance(n, int):
            raise ValueError("rational function power must be an integer")
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of the zero rational function")
            return RatFunc(self._den ** (-n), self._num ** (-n))
        return RatFunc._from_canonical(self._num**n, self._den**n) if n else RatFunc.one()

    def evaluate(self, q0: object) -> Fraction:
        """Exact value at q = q0; raises ZeroDivisionError at a pole."""
        dv = self._den.evaluate(q0)
        if dv == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return Fraction(self._num.evaluate(q0)) / Fraction(dv)

    def __str__(self) -> str:
        num, den = self._num, self._den
        if den == Poly.one():
            return str(num)
        # For display only, make the lowest-order denominator coefficient
        # positive; the canonical (monic) form is unchanged.
        low = den.coeff(den.trailing_zeros())
        if low < 0:
            num, den = -num, -den
        num_s = str(num)
        den_s = str(den)
        if len([c for c in num.coeffs if c != 0]) > 1 or num.leading < 0:
            num_s = f"({num_s})"
        if len([c for c in den.coeffs if c != 0]) > 1:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"RatFunc({self._num!r}, {self._den!r})"


def _coerce(value: object):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (int, Fraction, Poly)):
        return as_ratfunc(value)
    return NotImplemented


def as_ratfunc(value: object) -> RatFunc:
    """Coerce an int, Fraction, Poly, or RatFunc to a RatFunc."""
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly):
        return RatFunc._from_canonical(value, Poly.one())
    if isinstance(value, (int, Fraction)):
        return RatFunc._from_canonical(Poly((value,)), Poly.one())
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational function")


def cross_equal(r: RatFunc, s: RatFunc) -> bool:
    """Equality by cross-multiplication: num(r)*den(s) == num(s)*den(r).

    Agrees with canonical (structural) equality; kept as an independent check.
    """
    return r.num * s.den == s.num * r.den


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); 0 outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def rat_to_str(x: object) -> str:
    """Serialize an exact rational as "p/q", or "p" when the denominator is 1."""
    return str(_norm_coeff(x) if not isinstance(x, (int, Fraction)) else x)

def rat_from_str(s: str) -> Coeff:
    """Parse "p/q" (or "p") back to an exact rational."""
    return _norm_coeff(Fraction(s))


def poly_to_strs(p: Poly) -> list:
    """Serialize a polynomial as its coefficient strings, ascending degree."""
    return [rat_to_str(c) for c in p.coeffs]


def poly_from_strs(items: Sequence[str]) -> Poly:
    return Poly(rat_from_str(s) for s in items)


def ratfunc_to_obj(r: RatFunc) -> dict:
    """Serialize a rational function as {"num": [...], "den": [...]}."""
    return {"num": poly_to_strs(r.num), "den": poly_to_strs(r.den)}


def ratfunc_from_obj(obj: dict) -> RatFunc:
    """Parse the {"num": ..., "den": ...} form; the result is re-canonicalized."""
    try:
        num = obj["num"]
        den = obj["den"]
    except (TypeError, KeyError) as exc:
        raise ValueError("rational function object needs 'num' and 'den' lists") from exc
    return RatFunc(poly_from_strs(num), poly_from_strs(den))
