# src/models/xpoly.py
"""Polynomials in x whose coefficients live in Q(q)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Tuple, Union

from .exactnum import QRatFunc, Scalar, as_rational

Coefficient = Union[QRatFunc, Scalar]


def _lift(c: Coefficient) -> QRatFunc:
    return c if isinstance(c, QRatFunc) else QRatFunc.constant(c)


def _strip(coeffs: Iterable[QRatFunc]) -> Tuple[QRatFunc, ...]:
    items = list(coeffs)
    while items and items[-1].is_zero():
        items.pop()
    return tuple(items)


@dataclass(frozen=True)
class XPoly:
    """Dense ascending list of QRatFunc coefficients, no trailing zeros"""

    coeffs: Tuple[QRatFunc, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(_lift(c) for c in self.coeffs))

    @classmethod
    def _raw(cls, coeffs: Iterable[QRatFunc]) -> "XPoly":
        poly = object.__new__(cls)
        object.__setattr__(poly, "coeffs", _strip(coeffs))
        return poly

    @classmethod
    def zero(cls) -> "XPoly":
        return cls._raw(())

    @classmethod
    def one(cls) -> "XPoly":
        return cls._raw((QRatFunc.one(),))

    @classmethod
    def constant(cls, c: Coefficient) -> "XPoly":
        return cls._raw((_lift(c),))

    @classmethod
    def x(cls) -> "XPoly":
        return cls._raw((QRatFunc.zero(), QRatFunc.one()))

    @classmethod
    def monomial(cls, degree: int, c: Coefficient = 1) -> "XPoly":
        return cls._raw((QRatFunc.zero(),) * degree + (_lift(c),))

    @classmethod
    def from_rationals(cls, coeffs: Sequence[Scalar]) -> "XPoly":
        return cls._raw(QRatFunc.constant(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> QRatFunc:
        return self.coeffs[-1] if self.coeffs else QRatFunc.zero()

    def coefficient(self, i: int) -> QRatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else QRatFunc.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    # arithmetic

    def __neg__(self) -> "XPoly":
        return XPoly._raw(-c for c in self.coeffs)

    def __add__(self, other: Union["XPoly", Coefficient]) -> "XPoly":
        if not isinstance(other, XPoly):
            other = XPoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return XPoly._raw(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __sub__(self, other: Union["XPoly", Coefficient]) -> "XPoly":
        if not isinstance(other, XPoly):
            other = XPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: Coefficient) -> "XPoly":
        return XPoly.constant(other) - self

    def scale(self, c: Coefficient) -> "XPoly":
        if isinstance(c, QRatFunc):
            if c.is_zero():
                return XPoly.zero()
            return XPoly._raw(x * c for x in self.coeffs)
        c = as_rational(c)
        if c == 1:
            return self
        return XPoly._raw(x.scale(c) for x in self.coeffs)

    def __mul__(self, other: Union["XPoly", Coefficient]) -> "XPoly":
        if not isinstance(other, XPoly):
            return self.scale(other)
        if other.is_constant():
            return self.scale(other.leading)
        if self.is_constant():
            return other.scale(self.leading)
        a, b = self.coeffs, other.coeffs
        out = [QRatFunc.zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return XPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "XPoly":
        if exponent < 0:
            raise ValueError("XPoly powers must be non-negative")
        result = XPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __truediv__(self, other: Coefficient) -> "XPoly":
        return self.scale(_lift(other).inverse())

    # substitution and evaluation

    def evaluate(self, x0: Coefficient) -> QRatFunc:
        """Value at x = x0 (a rational or an element of Q(q))"""
        acc = QRatFunc.zero()
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def substitute_linear(self, a: Scalar, b: Scalar = 0) -> "XPoly":
        """p(a·x + b); with b = 0 this is a coefficientwise rescaling"""
        a, b = as_rational(a), as_rational(b)
        if b == 0:
            scaled = []
            power = Fraction(1)
            for c in self.coeffs:
                scaled.append(c.scale(power))
                power *= a
            return XPoly._raw(scaled)
        inner = XPoly.from_rationals([b, a])
        acc = XPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def map_coefficients(self, func: Callable[[QRatFunc], QRatFunc]) -> "XPoly":
        return XPoly._raw(func(c) for c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            power = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = f"[{c}]" if not power else f"[{c}]*{power}"
            terms.append(body)
        return " + ".join(terms)
