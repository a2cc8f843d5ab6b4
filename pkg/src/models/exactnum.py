# src/models/exactnum.py
"""
Exact arithmetic over Q, Q[q] and the rational function field Q(q).

Every QRatFunc is stored in canonical form: numerator and denominator are
coprime in Q[q] and the denominator is monic, so two equal rational
functions always have identical fields and ``==`` is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Tuple, Union

from utils.exceptions import DivisionByZeroException, PoleException

BigRational = Fraction
Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rational(value: Union[Scalar, str]) -> Fraction:
    """Parse an int, Fraction or "a/b" string into a reduced fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def _strip(coeffs: Iterable[Fraction]) -> Tuple[Fraction, ...]:
    items = list(coeffs)
    while items and items[-1] == 0:
        items.pop()
    return tuple(items)


@dataclass(frozen=True)
class QPoly:
    """Dense polynomial in q over Q, ascending coefficients, no trailing zeros"""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "coeffs",
            _strip(c if type(c) is Fraction else as_rational(c) for c in self.coeffs),
        )

    @classmethod
    def _raw(cls, coeffs: Iterable[Fraction]) -> "QPoly":
        poly = object.__new__(cls)
        object.__setattr__(poly, "coeffs", _strip(coeffs))
        return poly

    # constructors

    @classmethod
    def zero(cls) -> "QPoly":
        return cls._raw(())

    @classmethod
    def one(cls) -> "QPoly":
        return cls._raw((_ONE,))

    @classmethod
    def constant(cls, c: Scalar) -> "QPoly":
        return cls._raw((as_rational(c),))

    @classmethod
    def q(cls) -> "QPoly":
        return cls._raw((_ZERO, _ONE))

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "QPoly":
        return cls._raw((_ZERO,) * degree + (as_rational(c),))

    # structure

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_one(self) -> bool:
        return self.coeffs == (_ONE,)

    # arithmetic

    def __neg__(self) -> "QPoly":
        return QPoly._raw(-c for c in self.coeffs)

    def __add__(self, other: Union["QPoly", Scalar]) -> "QPoly":
        if not isinstance(other, QPoly):
            other = QPoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPoly._raw(
            tuple(x + y for x, y in zip(a, b)) + a[len(b):]
        )

    __radd__ = __add__

    def __sub__(self, other: Union["QPoly", Scalar]) -> "QPoly":
        if not isinstance(other, QPoly):
            other = QPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "QPoly":
        return QPoly.constant(other) - self

    def scale(self, c: Scalar) -> "QPoly":
        c = as_rational(c)
        if c == 0:
            return QPoly.zero()
        if c == 1:
            return self
        return QPoly._raw(tuple(x * c for x in self.coeffs))

    def __mul__(self, other: Union["QPoly", Scalar]) -> "QPoly":
        if not isinstance(other, QPoly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly.zero()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return QPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QPoly":
        if exponent < 0:
            raise ValueError("QPoly powers must be non-negative")
        result = QPoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def divmod(self, other: "QPoly") -> Tuple["QPoly", "QPoly"]:
        """Euclidean division over Q"""
        if other.is_zero():
            raise DivisionByZeroException("Polynomial division by zero")
        if self.degree < other.degree:
            return QPoly.zero(), self
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = 1 / other.leading
        quot = [_ZERO] * (self.degree - d + 1)
        for k in range(self.degree - d, -1, -1):
            c = rem[k + d] * inv_lead
            quot[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return QPoly._raw(quot), QPoly._raw(rem[:d])

    def __mod__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "QPoly") -> "QPoly":
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise DivisionByZeroException("Polynomial division is not exact")
        return quot

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def divides(self, other: "QPoly") -> bool:
        return (other % self).is_zero()

    # gcd

    def linear_power_root(self) -> Optional[Fraction]:
        """Return r when self is c·(q − r)^j with j ≥ 1, else None"""
        j = self.degree
        if j < 1:
            return None
        lead = self.leading
        r = -self.coeffs[j - 1] / (lead * j)
        power = _ONE
        for i in range(j, -1, -1):
            if self.coeffs[i] != lead * comb(j, i) * power:
                return None
            power *= -r
        return r

    def _divide_linear(self, r: Fraction) -> Tuple["QPoly", Fraction]:
        """Synthetic division by (q − r): quotient and remainder"""
        n = self.degree
        if n < 1:
            return QPoly.zero(), self.leading
        quot = [_ZERO] * n
        carry = self.coeffs[n]
        for k in range(n - 1, -1, -1):
            quot[k] = carry
            carry = self.coeffs[k] + r * carry
        return QPoly._raw(quot), carry

    def root_multiplicity(self, r: Fraction, cap: int) -> int:
        count = 0
        poly = self
        while count < cap and not poly.is_zero():
            quot, rem = poly._divide_linear(r)
            if rem != 0:
                break
            poly = quot
            count += 1
        return count

    def gcd(self, other: "QPoly") -> "QPoly":
        """Monic greatest common divisor"""
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        if self.is_constant() or other.is_constant():
            return QPoly.one()
        for poly, factor in ((self, other), (other, self)):
            r = factor.linear_power_root()
            if r is not None:
                m = poly.root_multiplicity(r, factor.degree)
                return QPoly._raw((-r, _ONE)) ** m
        a, b = self, other
        while not b.is_zero():
            a, b = b, (a % b).monic()
        return a.monic()

    # evaluation

    def evaluate(self, q0: Scalar) -> Fraction:
        q0 = as_rational(q0)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    def __str__(self) -> str:
        return _format_terms(self.coeffs, "q")


def _format_terms(coeffs: Tuple[Fraction, ...], var: str) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            power = var if i == 1 else f"{var}^{i}"
            body = power if mag == 1 else f"{mag}*{power}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class QRatFunc:
    """Element of Q(q) held as a canonical quotient num/den"""

    num: QPoly
    den: QPoly = QPoly.one()

    def __post_init__(self) -> None:
        num, den = _canonical(self.num, self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _trusted(cls, num: QPoly, den: QPoly) -> "QRatFunc":
        value = object.__new__(cls)
        object.__setattr__(value, "num", num)
        object.__setattr__(value, "den", den if not num.is_zero() else QPoly.one())
        return value

    # constructors

    @classmethod
    def zero(cls) -> "QRatFunc":
        return cls._trusted(QPoly.zero(), QPoly.one())

    @classmethod
    def one(cls) -> "QRatFunc":
        return cls._trusted(QPoly.one(), QPoly.one())

    @classmethod
    def constant(cls, c: Scalar) -> "QRatFunc":
        return cls._trusted(QPoly.constant(c), QPoly.one())

    @classmethod
    def q(cls) -> "QRatFunc":
        return cls._trusted(QPoly.q(), QPoly.one())

    @classmethod
    def from_poly(cls, poly: QPoly) -> "QRatFunc":
        return cls._trusted(poly, QPoly.one())

    # structure

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    # arithmetic

    def __neg__(self) -> "QRatFunc":
        return QRatFunc._trusted(-self.num, self.den)

    def __add__(self, other: Union["QRatFunc", Scalar]) -> "QRatFunc":
        if not isinstance(other, QRatFunc):
            # gcd(num + c·den, den) = gcd(num, den) = 1
            return QRatFunc._trusted(self.num + self.den * as_rational(other), self.den)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return QRatFunc(a + c, b)
        g = b.gcd(d)
        if g.is_one():
            return QRatFunc._trusted(a * d + c * b, b * d)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        t = a * d1 + c * b1
        h = t.gcd(g)
        if h.is_one():
            return QRatFunc._trusted(t, b1 * d)
        return QRatFunc._trusted(t.exact_div(h), (b1 * d).exact_div(h))

    __radd__ = __add__

    def __sub__(self, other: Union["QRatFunc", Scalar]) -> "QRatFunc":
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "QRatFunc":
        return (-self) + other

    def scale(self, c: Scalar) -> "QRatFunc":
        c = as_rational(c)
        if c == 0:
            return QRatFunc.zero()
        return QRatFunc._trusted(self.num.scale(c), self.den)

    def __mul__(self, other: Union["QRatFunc", Scalar]) -> "QRatFunc":
        if not isinstance(other, QRatFunc):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return QRatFunc.zero()
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return QRatFunc._trusted(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "QRatFunc":
        if self.is_zero():
            raise DivisionByZeroException()
        lead = self.num.leading
        return QRatFunc._trusted(self.den.scale(1 / lead), self.num.scale(1 / lead))

    def __truediv__(self, other: Union["QRatFunc", Scalar]) -> "QRatFunc":
        if not isinstance(other, QRatFunc):
            c = as_rational(other)
            if c == 0:
                raise DivisionByZeroException()
            return self.scale(1 / c)
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "QRatFunc":
        return self.inverse().scale(other)

    def __pow__(self, exponent: int) -> "QRatFunc":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        # powers of a canonical quotient stay coprime, monic den stays monic
        return QRatFunc._trusted(self.num ** exponent, self.den ** exponent)

    # evaluation

    def evaluate(self, q0: Scalar) -> Fraction:
        return eval_at_q(self, q0)

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _canonical(num: QPoly, den: QPoly) -> Tuple[QPoly, QPoly]:
    if den.is_zero():
        raise DivisionByZeroException()
    if num.is_zero():
        return QPoly.zero(), QPoly.one()
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num, den = num.exact_div(g), den.exact_div(g)
    lead = den.leading
    if lead != 1:
        num, den = num.scale(1 / lead), den.scale(1 / lead)
    return num, den


class ArithOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


def ratfunc_arith(a: QRatFunc, b: QRatFunc, op: Union[ArithOp, str]) -> QRatFunc:
    """Field operation on canonical rational functions; dividing by zero raises"""
    op = ArithOp(op)
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    if op is ArithOp.MUL:
        return a * b
    return a / b


def q_number(x: int) -> QRatFunc:
    """[x]_q = (1 − q^x)/(1 − q); for x ≥ 0 the polynomial 1 + q + … + q^(x−1)"""
    if x >= 0:
        return QRatFunc.from_poly(QPoly._raw((_ONE,) * x))
    return (1 - QRatFunc.q() ** x) / (1 - QRatFunc.q())


def eval_at_q(v: QRatFunc, q0: Scalar) -> Fraction:
    """Exact value of v at q = q0; raises PoleException where the denominator vanishes"""
    q0 = as_rational(q0)
    den = v.den.evaluate(q0)
    if den == 0:
        raise PoleException(f"{v} has a pole at q = {q0}")
    return v.num.evaluate(q0) / den
