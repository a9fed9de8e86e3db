"""Exact arithmetic in the real multiquadratic field Q(sqrt2, sqrt3, sqrt5).

Every coefficient in the package lives in this degree-8 field.  A value is
stored as eight integer numerators over a common positive denominator, with
coordinates taken against the radical basis

    1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt10, sqrt15, sqrt30.

All operations are exact; floating point appears only in the optional
decimal rendering of reports.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt

#: Radicands of the basis elements, in fixed coordinate order.
RADICANDS: tuple[int, ...] = (1, 2, 3, 5, 6, 10, 15, 30)

_INDEX = {r: i for i, r in enumerate(RADICANDS)}
_RAD_NAMES = tuple("1" if r == 1 else f"r{r}" for r in RADICANDS)


def _split_square(n: int) -> tuple[int, int]:
    """Split n = c*c*s with s squarefree (n a product of two radicands)."""
    c = 1
    for p in (2, 3, 5):
        if n % (p * p) == 0:
            n //= p * p
            c *= p
    return c, n


#: _MUL[i][j] = (k, c) meaning basis[i] * basis[j] = c * basis[k].
_MUL: tuple[tuple[tuple[int, int], ...], ...] = tuple(
    tuple(
        (_INDEX[_split_square(a * b)[1]], _split_square(a * b)[0])
        for b in RADICANDS
    )
    for a in RADICANDS
)

#: Sign patterns of the seven nontrivial field automorphisms (flips of
#: sqrt2, sqrt3, sqrt5 in every combination except the identity).
_CONJ_SIGNS: tuple[tuple[int, ...], ...] = tuple(
    tuple(
        (-1 if (s2 and r % 2 == 0) else 1)
        * (-1 if (s3 and r % 3 == 0) else 1)
        * (-1 if (s5 and r % 5 == 0) else 1)
        for r in RADICANDS
    )
    for s2 in (False, True)
    for s3 in (False, True)
    for s5 in (False, True)
    if s2 or s3 or s5
)

_ZERO8 = (0,) * 8


class Scalar:
    """An immutable element of Q(sqrt2, sqrt3, sqrt5)."""

    __slots__ = ("nums", "den", "_rat")

    def __init__(self, nums: tuple[int, ...] | list[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("scalar denominator is zero")
        nums = tuple(nums)
        if len(nums) != 8:
            raise ValueError("a scalar needs exactly 8 coordinates")
        if den < 0:
            nums = tuple(-n for n in nums)
            den = -den
        g = den
        for n in nums:
            g = gcd(g, n)
            if g == 1:
                break
        if g > 1:
            nums = tuple(n // g for n in nums)
            den //= g
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_rat", not any(nums[1:]))

    def __setattr__(self, *_args):  # pragma: no cover - immutability guard
        raise AttributeError("Scalar is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "Scalar":
        return cls((n, 0, 0, 0, 0, 0, 0, 0), 1)

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> "Scalar":
        q = Fraction(q)
        return cls((q.numerator, 0, 0, 0, 0, 0, 0, 0), q.denominator)

    @classmethod
    def of_radical(cls, radicand: int, coeff: Fraction | int = 1) -> "Scalar":
        """coeff * sqrt(radicand), for radicand in RADICANDS."""
        if radicand not in _INDEX:
            raise ValueError(f"unsupported radicand {radicand}")
        q = Fraction(coeff)
        nums = [0] * 8
        nums[_INDEX[radicand]] = q.numerator
        return cls(tuple(nums), q.denominator)

    # -- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self._rat

    def as_fraction(self) -> Fraction:
        if not self._rat:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.nums[0], self.den)

    def __bool__(self) -> bool:
        return any(self.nums)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.nums == other.nums and self.den == other.den

    def __hash__(self) -> int:
        if self._rat:
            return hash(Fraction(self.nums[0], self.den))
        return hash((self.nums, self.den))

    # -- ring operations --------------------------------------------------

    def __neg__(self) -> "Scalar":
        return Scalar(tuple(-n for n in self.nums), self.den)

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        da, db = self.den, other.den
        return Scalar(
            tuple(a * db + b * da for a, b in zip(self.nums, other.nums)),
            da * db,
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__add__(-self)

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._rat:
            a = self.nums[0]
            if a == 0:
                return ZERO
            return Scalar(tuple(a * n for n in other.nums), self.den * other.den)
        if other._rat:
            b = other.nums[0]
            if b == 0:
                return ZERO
            return Scalar(tuple(b * n for n in self.nums), self.den * other.den)
        acc = [0] * 8
        for i, a in enumerate(self.nums):
            if a == 0:
                continue
            row = _MUL[i]
            for j, b in enumerate(other.nums):
                if b == 0:
                    continue
                k, c = row[j]
                acc[k] += a * b * c
        return Scalar(tuple(acc), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not any(self.nums):
            raise ZeroDivisionError("division by zero scalar")
        if self._rat:
            return Scalar((self.den, 0, 0, 0, 0, 0, 0, 0), self.nums[0])
        # Product of the seven nontrivial conjugates; times self it gives the
        # (rational) field norm, so inverse = product / norm.
        prod = _conjugate(self, 0)
        for k in range(1, 7):
            prod = prod * _conjugate(self, k)
        norm = self * prod
        if not norm._rat:
            raise ArithmeticError("field norm came out irrational")
        n0 = norm.nums[0]
        return Scalar(tuple(p * norm.den for p in prod.nums), prod.den * n0)

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign under the real embedding (sqrt2 = 1.414..., etc.)."""
        if not any(self.nums):
            return 0
        if self._rat:
            return 1 if self.nums[0] > 0 else -1
        prec = 8
        while True:
            lo, hi = self._bounds(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def _bounds(self, prec: int) -> tuple[int, int]:
        """Integer bounds with value in [lo, hi] / (den * 2**prec)."""
        lo = hi = 0
        for n, s in zip(self.nums, RADICANDS):
            if n == 0:
                continue
            r = isqrt(s << (2 * prec))
            if n > 0:
                lo += n * r
                hi += n * (r + 1)
            else:
                lo += n * (r + 1)
                hi += n * r
        return lo, hi

    def approx(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational interval of width at most 2**-bits containing the value."""
        if bits < 1:
            raise ValueError("bits must be at least 1")
        if not any(self.nums):
            return (Fraction(0), Fraction(0))
        spread = sum(abs(n) for n in self.nums)
        prec = bits + spread.bit_length() + 2
        while True:
            lo, hi = self._bounds(prec)
            d = self.den << prec
            if Fraction(hi - lo, d) <= Fraction(1, 1 << bits):
                return (Fraction(lo, d), Fraction(hi, d))
            prec *= 2

    def __float__(self) -> float:
        lo, hi = self.approx(64)
        return float((lo + hi) / 2)

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() >= 0

    # -- roots ------------------------------------------------------------

    def sqrt(self) -> "Scalar":
        """Exact square root of a nonnegative rational value, if it stays in
        the field (its squarefree part must be one of the basis radicands)."""
        if not self._rat:
            raise ValueError(f"square root of irrational {self} not supported")
        num, den = self.nums[0], self.den
        if num < 0:
            raise ValueError("square root of a negative value")
        if num == 0:
            return ZERO
        m = num * den  # sqrt(num/den) = sqrt(num*den)/den
        square, free = 1, m
        p = 2
        while p * p <= free:
            while free % (p * p) == 0:
                free //= p * p
                square *= p
            p += 1 if p == 2 else 2
        if free not in _INDEX:
            raise ValueError(f"sqrt({self}) lies outside the field")
        nums = [0] * 8
        nums[_INDEX[free]] = square
        return Scalar(tuple(nums), den)

    # -- rendering --------------------------------------------------------

    def coefficient(self, radicand: int) -> Fraction:
        """The rational coordinate multiplying sqrt(radicand)."""
        return Fraction(self.nums[_INDEX[radicand]], self.den)

    def exact_str(self) -> str:
        """Full fixed-form rendering: p0 + p1*r2 + ... + p7*r30."""
        parts = []
        for i, name in enumerate(_RAD_NAMES):
            q = Fraction(self.nums[i], self.den)
            text = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
            parts.append(text if i == 0 else f"{text}*{name}")
        return " + ".join(parts)

    def __str__(self) -> str:
        if not any(self.nums):
            return "0"
        out = []
        for i, name in enumerate(_RAD_NAMES):
            n = self.nums[i]
            if n == 0:
                continue
            q = Fraction(abs(n), self.den)
            body = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
            if i > 0:
                body = name if body == "1" else f"{body}*{name}"
            if not out:
                out.append(body if n > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if n > 0 else f"- {body}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _coerce(x) -> "Scalar":
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar.from_int(x)
    if isinstance(x, Fraction):
        return Scalar.from_fraction(x)
    return NotImplemented


def _conjugate(a: Scalar, which: int) -> Scalar:
    signs = _CONJ_SIGNS[which]
    return Scalar(tuple(s * n for s, n in zip(signs, a.nums)), a.den)


ZERO = Scalar(_ZERO8, 1)
ONE = Scalar.from_int(1)
SQRT2 = Scalar.of_radical(2)
SQRT3 = Scalar.of_radical(3)
SQRT5 = Scalar.of_radical(5)
SQRT6 = Scalar.of_radical(6)
SQRT10 = Scalar.of_radical(10)
SQRT15 = Scalar.of_radical(15)
SQRT30 = Scalar.of_radical(30)


def scalar(x: "Scalar | int | Fraction") -> Scalar:
    """Coerce an int or Fraction (or pass a Scalar through)."""
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot make a scalar from {x!r}")
    return s


# -- spec-surface wrappers ---------------------------------------------------

def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch exact field arithmetic by operation name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def scalar_sign(a: Scalar) -> int:
    return a.sign()


def scalar_approx(a: Scalar, bits: int) -> tuple[Fraction, Fraction]:
    return a.approx(bits)


# -- parsing -----------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?P<coef>-?\d+(?:/\d+)?)?(?:\*?(?P<rad>r(?:2|3|5|6|10|15|30)))?$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse the exact string grammar: rationals as num/den, radicals as rN.

    Accepts both the full eight-term form emitted by exact_str() and compact
    forms like "2", "1/3", "r2", "-3/2*r6", "1 - r2 + 1/2*r30".
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    s = s.replace("+-", "-")
    if s[0] not in "+-":
        s = "+" + s
    tokens = re.findall(r"[+-][^+-]+", s)
    if "".join(tokens) != s:
        raise ValueError(f"cannot parse scalar literal {text!r}")
    coords = [Fraction(0)] * 8
    for tok in tokens:
        sign, body = tok[0], tok[1:]
        m = _TERM_RE.match(body)
        if not m or (m.group("coef") is None and m.group("rad") is None):
            raise ValueError(f"bad term {tok!r} in scalar literal {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if sign == "-":
            coef = -coef
        rad = m.group("rad")
        idx = _INDEX[int(rad[1:])] if rad else 0
        coords[idx] += coef
    den = 1
    for q in coords:
        den = den * q.denominator // gcd(den, q.denominator)
    return Scalar(tuple(int(q * den) for q in coords), den)
