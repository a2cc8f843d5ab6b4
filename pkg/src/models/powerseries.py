# src/models/powerseries.py
"""
Truncated formal power series in t over an explicit coefficient ring.

A FormalSeries of order N keeps the coefficients of t^0 … t^N. Sums and
products truncate to the smaller order of their operands, composition to
the smaller order of outer and inner series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Generic, Sequence, Tuple, TypeVar, Union

from utils.exceptions import NonInvertibleException, TruncationException
from .exactnum import QRatFunc, Scalar, as_rational
from .xpoly import XPoly

R = TypeVar("R")
S = TypeVar("S")


@dataclass(frozen=True, eq=False)
class Ring(Generic[R]):
    """Coefficient ring description handed to every series"""

    name: str
    zero: R
    one: R
    from_rational: Callable[[Fraction], R]
    inverse: Callable[[R], R]
    is_zero: Callable[[R], bool]

    def __repr__(self) -> str:
        return f"Ring({self.name})"


def _fraction_inverse(c: Fraction) -> Fraction:
    if c == 0:
        raise NonInvertibleException("0 has no inverse in Q")
    return 1 / c


def _ratfunc_inverse(c: QRatFunc) -> QRatFunc:
    if c.is_zero():
        raise NonInvertibleException("0 has no inverse in Q(q)")
    return c.inverse()


def _xpoly_inverse(c: XPoly) -> XPoly:
    if c.is_zero() or not c.is_constant():
        raise NonInvertibleException(f"{c} is not a unit of Q(q)[x]")
    return XPoly.constant(c.leading.inverse())


RATIONALS: Ring[Fraction] = Ring(
    "Q", Fraction(0), Fraction(1), Fraction, _fraction_inverse, lambda c: c == 0
)
RATFUNCS: Ring[QRatFunc] = Ring(
    "Q(q)",
    QRatFunc.zero(),
    QRatFunc.one(),
    QRatFunc.constant,
    _ratfunc_inverse,
    lambda c: c.is_zero(),
)
XPOLYS: Ring[XPoly] = Ring(
    "Q(q)[x]",
    XPoly.zero(),
    XPoly.one(),
    lambda c: XPoly.constant(QRatFunc.constant(c)),
    _xpoly_inverse,
    lambda c: c.is_zero(),
)


@dataclass(frozen=True)
class FormalSeries(Generic[R]):
    ring: Ring[R]
    coeffs: Tuple[R, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise TruncationException("A series keeps at least its constant term")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    # constructors

    @classmethod
    def from_coefficients(
        cls, ring: Ring[R], coeffs: Sequence[R], order: int
    ) -> "FormalSeries[R]":
        """Pad or cut a coefficient list to exactly order + 1 entries"""
        items = list(coeffs[: order + 1])
        items.extend([ring.zero] * (order + 1 - len(items)))
        return cls(ring, tuple(items))

    @classmethod
    def constant(cls, ring: Ring[R], c: R, order: int) -> "FormalSeries[R]":
        return cls.from_coefficients(ring, [c], order)

    @classmethod
    def identity(cls, ring: Ring[R], order: int) -> "FormalSeries[R]":
        """The series t"""
        return cls.from_coefficients(ring, [ring.zero, ring.one], order)

    # ring changes

    def change_ring(
        self, ring: Ring[S], convert: Callable[[R], S] | None = None
    ) -> "FormalSeries[S]":
        convert = convert or ring.from_rational  # type: ignore[assignment]
        return FormalSeries(ring, tuple(convert(c) for c in self.coeffs))

    def truncate(self, order: int) -> "FormalSeries[R]":
        if order > self.order:
            raise TruncationException(
                f"Cannot raise the order of a series from {self.order} to {order}"
            )
        return FormalSeries(self.ring, self.coeffs[: order + 1])

    # arithmetic

    def _check_ring(self, other: "FormalSeries") -> None:
        if other.ring is not self.ring:
            raise TypeError(
                f"Series over {self.ring.name} and {other.ring.name} cannot be mixed"
            )

    def __add__(self, other: "FormalSeries[R]") -> "FormalSeries[R]":
        self._check_ring(other)
        n = min(self.order, other.order) + 1
        return FormalSeries(
            self.ring, tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))
        )

    def __neg__(self) -> "FormalSeries[R]":
        return FormalSeries(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "FormalSeries[R]") -> "FormalSeries[R]":
        return self + (-other)

    def __mul__(self, other: Union["FormalSeries[R]", R, Scalar]) -> "FormalSeries[R]":
        if isinstance(other, FormalSeries):
            return series_mul(self, other)
        return FormalSeries(self.ring, tuple(c * other for c in self.coeffs))

    def __pow__(self, exponent: int) -> "FormalSeries[R]":
        if exponent < 0:
            return series_inverse(self) ** (-exponent)
        result = FormalSeries.constant(self.ring, self.ring.one, self.order)
        for _ in range(exponent):
            result = series_mul(result, self)
        return result

    def shift_constant(self, c: R) -> "FormalSeries[R]":
        """self + c"""
        return FormalSeries(self.ring, (self.coeffs[0] + c,) + self.coeffs[1:])

    def coefficient(self, n: int, factorial_normalize: bool = False) -> R:
        return extract_coefficient(self, n, factorial_normalize)

    def __str__(self) -> str:
        terms = [f"[{c}]*t^{i}" for i, c in enumerate(self.coeffs)]
        return " + ".join(terms) + f" + O(t^{self.order + 1})"


def series_mul(a: FormalSeries[R], b: FormalSeries[R]) -> FormalSeries[R]:
    """Cauchy product truncated to min(order_a, order_b)"""
    a._check_ring(b)
    ring = a.ring
    order = min(a.order, b.order)
    out = [ring.zero] * (order + 1)
    for i in range(order + 1):
        x = a.coeffs[i]
        if ring.is_zero(x):
            continue
        for j in range(order + 1 - i):
            y = b.coeffs[j]
            if not ring.is_zero(y):
                out[i + j] = out[i + j] + x * y
    return FormalSeries(ring, tuple(out))


def series_inverse(a: FormalSeries[R]) -> FormalSeries[R]:
    """Multiplicative inverse; the constant term must be a unit of the ring"""
    ring = a.ring
    inv0 = ring.inverse(a.coeffs[0])
    out = [inv0]
    for n in range(1, a.order + 1):
        acc = ring.zero
        for i in range(1, n + 1):
            if not ring.is_zero(a.coeffs[i]):
                acc = acc + a.coeffs[i] * out[n - i]
        out.append(-(acc * inv0))
    return FormalSeries(ring, tuple(out))


def series_log1p(order: int) -> FormalSeries[Fraction]:
    """log(1 + t) = Σ_{n≥1} (−1)^(n+1) t^n / n"""
    coeffs = [Fraction(0)] + [
        Fraction((-1) ** (n + 1), n) for n in range(1, order + 1)
    ]
    return FormalSeries(RATIONALS, tuple(coeffs))


def series_expm1(order: int) -> FormalSeries[Fraction]:
    """e^t − 1 = Σ_{n≥1} t^n / n!"""
    coeffs = [Fraction(0)] + [Fraction(1, factorial(n)) for n in range(1, order + 1)]
    return FormalSeries(RATIONALS, tuple(coeffs))


def series_exp(order: int) -> FormalSeries[Fraction]:
    return series_expm1(order).shift_constant(Fraction(1))


def series_compose(
    outer: FormalSeries[R], inner: FormalSeries[R]
) -> FormalSeries[R]:
    """outer(inner(t)) by Horner's rule; inner must have zero constant term"""
    outer._check_ring(inner)
    ring = outer.ring
    if not ring.is_zero(inner.coeffs[0]):
        raise NonInvertibleException(
            "Composition needs an inner series without constant term"
        )
    order = min(outer.order, inner.order)
    inner = inner.truncate(order)
    acc = FormalSeries.constant(ring, outer.coeffs[order], order)
    for i in range(order - 1, -1, -1):
        acc = series_mul(acc, inner).shift_constant(outer.coeffs[i])
    return acc


def binomial_power(alpha: Scalar, order: int) -> FormalSeries[Fraction]:
    """(1 + t)^alpha = Σ C(alpha, n) t^n for a rational exponent"""
    alpha = as_rational(alpha)
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * (alpha - (n - 1)) / n)
    return FormalSeries(RATIONALS, tuple(coeffs))


def extract_coefficient(
    s: FormalSeries[R], n: int, factorial_normalize: bool = False
) -> R:
    """s_n, or n!·s_n under the exponential generating function convention"""
    if n < 0 or n > s.order:
        raise TruncationException(
            f"Coefficient t^{n} requested from a series of order {s.order}"
        )
    c = s.coeffs[n]
    if factorial_normalize:
        return c * s.ring.from_rational(Fraction(factorial(n)))
    return c
