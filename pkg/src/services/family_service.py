# src/services/family_service.py
"""
Constructors for the q-Euler, q-Boole (both kinds) and q-Changhee families.

Each family can be computed along independent paths: coefficient
extraction from its generating function, a Stirling transform of q-Euler
values, or the fermionic functional applied to falling factorials. The
functional I is the unique linear map on polynomials with
q·I(f(y+1)) + I(f(y)) = [2]_q·f(0); its moments I(y^n) are the q-Euler
numbers E_{n,q}.

A value is returned as an XPoly when x is left symbolic (x=None) and as a
QRatFunc when x is an exact rational.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Hashable, List, Optional, Union

from models.exactnum import QRatFunc, Scalar, as_rational, eval_at_q, q_number
from models.powerseries import (
    RATFUNCS,
    XPOLYS,
    FormalSeries,
    binomial_power,
    extract_coefficient,
    series_exp,
    series_inverse,
)
from models.xpoly import XPoly
from schemas.family_schemas import ComputationPath, FamilyKind, FamilyValue
from services.combinatorics_service import StirlingTable, combinatorics_service
from utils.exceptions import InvalidParameterException, OutOfRangeException
from utils.logger import setup_logger

logger = setup_logger("FAMILY_SERVICE")

FamilyResult = Union[XPoly, QRatFunc]
XArg = Optional[Fraction]


@dataclass
class FamilyContext:
    """
    Memo caches for one computation. Single writer: share values, not
    contexts, between concurrent tasks.
    """

    n_max: int
    stirling: StirlingTable
    euler_numbers: Dict[int, List[QRatFunc]] = field(default_factory=dict)
    euler_polys: Dict[tuple, XPoly] = field(default_factory=dict)
    falling: List[XPoly] = field(default_factory=lambda: [XPoly.one()])
    series: Dict[Hashable, FormalSeries] = field(default_factory=dict)
    # caller supplied table, never swapped for the shared one
    pinned: bool = False


def get_context(n_max: int = 12, stirling: Optional[StirlingTable] = None) -> FamilyContext:
    """Fresh context; the Stirling table is sized to n_max + 1 up front"""
    if stirling is None:
        return FamilyContext(n_max=n_max, stirling=combinatorics_service.table(n_max + 1))
    _check_table(stirling, n_max + 1)
    return FamilyContext(n_max=n_max, stirling=stirling, pinned=True)


def _check_table(table: StirlingTable, size: int) -> None:
    if table.n_max < size:
        raise OutOfRangeException(
            f"Supplied Stirling table covers n <= {table.n_max}, {size} is needed"
        )


def _two() -> QRatFunc:
    return q_number(2)


def _check_common(n: int, k: int) -> None:
    if n < 0:
        raise InvalidParameterException(f"Index n must be >= 0, got {n}")
    if k < 1:
        raise InvalidParameterException(f"Order k must be >= 1, got {k}")


def _check_lambda(lam: Scalar) -> Fraction:
    lam = as_rational(lam)
    if lam == 0:
        raise InvalidParameterException("λ must be nonzero")
    return lam


def _at_x(value: XPoly, x: XArg) -> FamilyResult:
    return value if x is None else value.evaluate(x)


class FamilyService:
    # context bookkeeping

    def _ensure_order(self, ctx: FamilyContext, n: int) -> int:
        """Series order used for extraction; grows the context when n exceeds it"""
        if n > ctx.n_max:
            logger.debug(f"Growing context from n_max={ctx.n_max} to {n}")
            ctx.n_max = n
            ctx.series.clear()
        if ctx.n_max + 1 > ctx.stirling.n_max:
            if ctx.pinned:
                _check_table(ctx.stirling, ctx.n_max + 1)
            ctx.stirling = combinatorics_service.table(ctx.n_max + 1)
        return ctx.n_max + 1

    def _cached_series(self, ctx: FamilyContext, key: Hashable, build) -> FormalSeries:
        series = ctx.series.get(key)
        if series is None:
            logger.debug(f"Series cache miss for {key}")
            series = build()
            ctx.series[key] = series
        return series

    def falling_factorial(self, ctx: FamilyContext, m: int) -> XPoly:
        """(x)_m by repeated multiplication with x − j"""
        while len(ctx.falling) <= m:
            j = len(ctx.falling) - 1
            ctx.falling.append(ctx.falling[-1] * XPoly.from_rationals([-j, 1]))
        return ctx.falling[m]

    def _x_series(self, ctx: FamilyContext, x: XArg, order: int) -> FormalSeries:
        """(1+t)^x: Σ (x)_m t^m/m! over Q(q)[x], or the binomial series for rational x"""
        if x is None:
            coeffs = [
                self.falling_factorial(ctx, m).scale(Fraction(1, factorial(m)))
                for m in range(order + 1)
            ]
            return FormalSeries(XPOLYS, tuple(coeffs))
        return binomial_power(x, order).change_ring(RATFUNCS)

    def _exp_x_series(self, x: XArg, order: int) -> FormalSeries:
        """e^{xt} with symbolic or rational x"""
        if x is None:
            coeffs = [
                XPoly.monomial(m, Fraction(1, factorial(m))) for m in range(order + 1)
            ]
            return FormalSeries(XPOLYS, tuple(coeffs))
        coeffs = [
            QRatFunc.constant(x**m / factorial(m)) for m in range(order + 1)
        ]
        return FormalSeries(RATFUNCS, tuple(coeffs))

    def _with_x(self, base: FormalSeries, x_series: FormalSeries) -> FormalSeries:
        if x_series.ring is XPOLYS:
            base = base.change_ring(XPOLYS, XPoly.constant)
        return base * x_series

    # q-Euler

    def q_euler_number(
        self,
        ctx: FamilyContext,
        n: int,
        k: int = 1,
        path: ComputationPath = ComputationPath.RECURRENCE,
    ) -> QRatFunc:
        """E^{(k)}_{n,q}, the t^n/n! coefficient of ([2]_q/(q e^t + 1))^k"""
        _check_common(n, k)
        path = ComputationPath(path)
        if path == ComputationPath.GENFUNC:
            order = self._ensure_order(ctx, n)
            series = self._cached_series(
                ctx, ("euler-gf", k), lambda: self._euler_gf(order) ** k
            )
            return extract_coefficient(series, n, factorial_normalize=True)
        if path != ComputationPath.RECURRENCE:
            raise InvalidParameterException(f"q-Euler numbers have no {path.value} path")
        return self._euler_numbers(ctx, n, k)[n]

    def _euler_gf(self, order: int) -> FormalSeries:
        two = _two()
        denominator = (series_exp(order).change_ring(RATFUNCS) * QRatFunc.q()).shift_constant(
            QRatFunc.one()
        )
        return series_inverse(denominator) * two

    def _euler_numbers(self, ctx: FamilyContext, n: int, k: int) -> List[QRatFunc]:
        values = ctx.euler_numbers.setdefault(k, [])
        if k == 1:
            # q·Σ_{l≤n} C(n,l) E_l + E_n = 0 for n ≥ 1, from the functional equation
            two = _two()
            q = QRatFunc.q()
            while len(values) <= n:
                m = len(values)
                if m == 0:
                    values.append(QRatFunc.one())
                    continue
                acc = QRatFunc.zero()
                for i in range(m):
                    acc = acc + values[i] * comb(m, i)
                values.append(-(q * acc) / two)
            return values
        lower = self._euler_numbers(ctx, n, k - 1)
        first = self._euler_numbers(ctx, n, 1)
        while len(values) <= n:
            m = len(values)
            acc = QRatFunc.zero()
            for i in range(m + 1):
                acc = acc + lower[i] * first[m - i] * comb(m, i)
            values.append(acc)
        return values

    def q_euler_poly(
        self,
        ctx: FamilyContext,
        n: int,
        k: int = 1,
        x: XArg = None,
        path: ComputationPath = ComputationPath.RECURRENCE,
    ) -> FamilyResult:
        """E^{(k)}_{n,q}(x) = Σ_l C(n,l) E^{(k)}_{l,q} x^(n−l)"""
        _check_common(n, k)
        path = ComputationPath(path)
        if path == ComputationPath.GENFUNC:
            order = self._ensure_order(ctx, n)
            key = ("euler-poly-gf", k, x)
            series = self._cached_series(
                ctx,
                key,
                lambda: self._with_x(
                    self._euler_gf(order) ** k, self._exp_x_series(x, order)
                ),
            )
            return extract_coefficient(series, n, factorial_normalize=True)
        if path != ComputationPath.RECURRENCE:
            raise InvalidParameterException(f"q-Euler polynomials have no {path.value} path")
        poly = ctx.euler_polys.get((n, k))
        if poly is None:
            numbers = self._euler_numbers(ctx, n, k)
            poly = XPoly._raw(numbers[n - j] * comb(n, j) for j in range(n + 1))
            ctx.euler_polys[(n, k)] = poly
        return _at_x(poly, x)

    def euler_at_scaled(
        self, ctx: FamilyContext, n: int, k: int, x: XArg, factor: Fraction
    ) -> FamilyResult:
        """E^{(k)}_{n,q}(factor·x), by linear substitution when x is symbolic"""
        if x is None:
            return self.q_euler_poly(ctx, n, k).substitute_linear(factor)
        return self.q_euler_poly(ctx, n, k, x=factor * x)

    # the fermionic functional

    def fermionic_integral(self, ctx: FamilyContext, f: XPoly) -> QRatFunc:
        """I(f) for a polynomial f in y, through the moments I(y^n) = E_{n,q}"""
        numbers = self._euler_numbers(ctx, max(f.degree, 0), 1)
        acc = QRatFunc.zero()
        for j, c in enumerate(f.coeffs):
            acc = acc + c * numbers[j]
        return acc

    def fermionic_integral_shifted(
        self, ctx: FamilyContext, g: XPoly, lam: Scalar
    ) -> XPoly:
        """x ↦ I_y(g(x + λy)), expanding (x + λy)^i binomially"""
        lam = as_rational(lam)
        numbers = self._euler_numbers(ctx, max(g.degree, 0), 1)
        result = XPoly.zero()
        for i, c in enumerate(g.coeffs):
            if c.is_zero():
                continue
            moment = XPoly._raw(
                numbers[i - j] * (comb(i, j) * lam ** (i - j)) for j in range(i + 1)
            )
            result = result + moment.scale(c)
        return result

    def integral_of_falling_factorial(
        self, ctx: FamilyContext, n: int, lam: Scalar, x: XArg = None
    ) -> FamilyResult:
        """I_y((x + λy)_n), expanding the falling factorial in both variables"""
        lam = as_rational(lam)
        # by_y[d] is the coefficient of y^d, a polynomial in x
        by_y: List[XPoly] = [XPoly.one()]
        for j in range(n):
            shift = XPoly.from_rationals([-j, 1])
            grown = [p * shift for p in by_y] + [XPoly.zero()]
            for d, p in enumerate(by_y):
                grown[d + 1] = grown[d + 1] + p.scale(lam)
            by_y = grown
        numbers = self._euler_numbers(ctx, n, 1)
        result = XPoly.zero()
        for d, p in enumerate(by_y):
            result = result + p.scale(numbers[d])
        return _at_x(result, x)

    def integral_of_binomial(
        self, ctx: FamilyContext, n: int, lam: Scalar, x: XArg = None
    ) -> FamilyResult:
        """I_y(C(x + λy, n))"""
        return self.integral_of_falling_factorial(ctx, n, lam, x) * Fraction(
            1, factorial(n)
        )

    def functional_step(self, ctx: FamilyContext, f: XPoly, steps: int) -> tuple:
        """
        Both sides of q^s·I(f(y+s)) + (−1)^(s−1)·I(f) = [2]_q Σ_{l<s} (−1)^(s−1−l) q^l f(l)
        """
        if steps < 1:
            raise InvalidParameterException("The step count must be >= 1")
        q = QRatFunc.q()
        shifted = f.substitute_linear(1, steps)
        lhs = q**steps * self.fermionic_integral(ctx, shifted) + self.fermionic_integral(
            ctx, f
        ) * (-1) ** (steps - 1)
        acc = QRatFunc.zero()
        for j in range(steps):
            acc = acc + q**j * f.evaluate(j) * (-1) ** (steps - 1 - j)
        return lhs, _two() * acc

    # q-Boole, first kind

    def _boole_first_base(self, order: int, k: int, lam: Fraction) -> FormalSeries:
        """(1/(1 + q(1+t)^λ))^k over Q(q)"""
        power = binomial_power(lam, order).change_ring(RATFUNCS)
        denominator = (power * QRatFunc.q()).shift_constant(QRatFunc.one())
        return series_inverse(denominator) ** k

    def q_boole_first(
        self,
        ctx: FamilyContext,
        n: int,
        k: int = 1,
        lam: Scalar = 1,
        x: XArg = None,
        path: ComputationPath = ComputationPath.GENFUNC,
    ) -> FamilyResult:
        """Bl^{(k)}_{n,q}(x|λ): t^n/n! coefficient of (1/(1 + q(1+t)^λ))^k (1+t)^x"""
        _check_common(n, k)
        lam = _check_lambda(lam)
        path = ComputationPath(path)
        if path == ComputationPath.GENFUNC:
            order = self._ensure_order(ctx, n)
            series = self._cached_series(
                ctx,
                ("boole1-gf", k, lam, x),
                lambda: self._with_x(
                    self._boole_first_base(order, k, lam), self._x_series(ctx, x, order)
                ),
            )
            return extract_coefficient(series, n, factorial_normalize=True)
        if path == ComputationPath.STIRLING:
            return self._stirling_transform(ctx, n, k, lam, x)
        if path == ComputationPath.INTEGRAL:
            return _at_x(self._k_fold_integral(ctx, n, k, lam), x)
        raise InvalidParameterException(f"q-Boole polynomials have no {path.value} path")

    def q_boole_number(
        self, ctx: FamilyContext, n: int, k: int, lam: Scalar
    ) -> QRatFunc:
        """Bl^{(k)}_{n,q}(λ) = Bl^{(k)}_{n,q}(0|λ)"""
        _check_common(n, k)
        lam = _check_lambda(lam)
        order = self._ensure_order(ctx, n)
        series = self._cached_series(
            ctx, ("boole1-numbers", k, lam), lambda: self._boole_first_base(order, k, lam)
        )
        return extract_coefficient(series, n, factorial_normalize=True)

    def _stirling_transform(
        self, ctx: FamilyContext, n: int, k: int, lam: Fraction, x: XArg
    ) -> FamilyResult:
        """[2]_q^(−k) Σ_l S1(n,l) λ^l E^{(k)}_{l,q}(x/λ)"""
        self._ensure_order(ctx, n)
        acc: FamilyResult = XPoly.zero() if x is None else QRatFunc.zero()
        for j in range(n + 1):
            s1 = ctx.stirling.stirling1(n, j)
            if s1 == 0:
                continue
            term = self.euler_at_scaled(ctx, j, k, x, 1 / lam)
            acc = acc + term * (s1 * lam**j)
        return acc * (_two() ** -k)

    def _k_fold_integral(self, ctx: FamilyContext, n: int, k: int, lam: Fraction) -> XPoly:
        """[2]_q^(−k) applied to I_{y_1}…I_{y_k}((λ(y_1+…+y_k) + x)_n)"""
        value = self.falling_factorial(ctx, n)
        for _ in range(k):
            value = self.fermionic_integral_shifted(ctx, value, lam)
        return value * (_two() ** -k)

    # q-Changhee

    def q_changhee(
        self,
        ctx: FamilyContext,
        n: int,
        x: XArg = None,
        path: ComputationPath = ComputationPath.GENFUNC,
    ) -> FamilyResult:
        """Ch_{n,q}(x): t^n/n! coefficient of [2]_q/([2]_q + q t)·(1+t)^x"""
        _check_common(n, 1)
        path = ComputationPath(path)
        if path == ComputationPath.GENFUNC:
            order = self._ensure_order(ctx, n)
            series = self._cached_series(
                ctx,
                ("changhee-gf", x),
                lambda: self._with_x(self._changhee_base(order), self._x_series(ctx, x, order)),
            )
            return extract_coefficient(series, n, factorial_normalize=True)
        if path == ComputationPath.INTEGRAL:
            return self.integral_of_falling_factorial(ctx, n, 1, x)
        raise InvalidParameterException(f"q-Changhee polynomials have no {path.value} path")

    def _changhee_base(self, order: int) -> FormalSeries:
        two = _two()
        denominator = FormalSeries.from_coefficients(RATFUNCS, [two, QRatFunc.q()], order)
        return series_inverse(denominator) * two

    # q-Boole, second kind

    def _boole_second_base(self, order: int, k: int, lam: Fraction) -> FormalSeries:
        """((1+t)^λ/(q + (1+t)^λ))^k over Q(q)"""
        power = binomial_power(lam, order).change_ring(RATFUNCS)
        return (power * series_inverse(power.shift_constant(QRatFunc.q()))) ** k

    def q_boole_second(
        self,
        ctx: FamilyContext,
        n: int,
        k: int = 1,
        lam: Scalar = 1,
        x: XArg = None,
        path: ComputationPath = ComputationPath.GENFUNC,
    ) -> FamilyResult:
        """Second-kind Bl^{(k)}_{n,q}(x|λ): t^n/n! coefficient of ((1+t)^λ/(q + (1+t)^λ))^k (1+t)^x"""
        _check_common(n, k)
        lam = _check_lambda(lam)
        path = ComputationPath(path)
        if path == ComputationPath.GENFUNC:
            order = self._ensure_order(ctx, n)
            series = self._cached_series(
                ctx,
                ("boole2-gf", k, lam, x),
                lambda: self._with_x(
                    self._boole_second_base(order, k, lam), self._x_series(ctx, x, order)
                ),
            )
            return extract_coefficient(series, n, factorial_normalize=True)
        if path == ComputationPath.REFLECTION:
            return self.q_boole_first(ctx, n, k, -lam, x, ComputationPath.GENFUNC)
        if path == ComputationPath.STIRLING:
            return self._second_kind_stirling(ctx, n, k, lam, x)
        raise InvalidParameterException(
            f"Second-kind q-Boole polynomials have no {path.value} path"
        )

    def _second_kind_stirling(
        self, ctx: FamilyContext, n: int, k: int, lam: Fraction, x: XArg
    ) -> FamilyResult:
        """[2]_q^(−k) Σ_l S1(n,l) (−1)^l λ^l E^{(k)}_{l,q}(−x/λ)"""
        self._ensure_order(ctx, n)
        acc: FamilyResult = XPoly.zero() if x is None else QRatFunc.zero()
        for j in range(n + 1):
            s1 = ctx.stirling.stirling1(n, j)
            if s1 == 0:
                continue
            term = self.euler_at_scaled(ctx, j, k, x, -1 / lam)
            acc = acc + term * (s1 * (-lam) ** j)
        return acc * (_two() ** -k)

    # dispatch

    def compute(
        self,
        ctx: FamilyContext,
        family: FamilyKind,
        n: int,
        k: int = 1,
        lam: Optional[Scalar] = None,
        x: XArg = None,
        path: Optional[ComputationPath] = None,
    ) -> FamilyValue:
        family = FamilyKind(family)
        if family == FamilyKind.Q_EULER_NUMBER:
            path = ComputationPath(path or ComputationPath.RECURRENCE)
            value: FamilyResult = self.q_euler_number(ctx, n, k, path)
            x = Fraction(0)
        elif family == FamilyKind.Q_EULER_POLY:
            path = ComputationPath(path or ComputationPath.RECURRENCE)
            value = self.q_euler_poly(ctx, n, k, x, path)
        elif family == FamilyKind.Q_CHANGHEE:
            path = ComputationPath(path or ComputationPath.GENFUNC)
            value = self.q_changhee(ctx, n, x, path)
            k = 1
        else:
            if lam is None:
                raise InvalidParameterException(f"{family.value} needs λ")
            path = ComputationPath(path or ComputationPath.GENFUNC)
            if family == FamilyKind.Q_BOOLE_FIRST:
                value = self.q_boole_first(ctx, n, k, lam, x, path)
            else:
                value = self.q_boole_second(ctx, n, k, lam, x, path)
        return FamilyValue(
            family=family,
            n=n,
            k=k,
            lam=as_rational(lam) if lam is not None and family.uses_lambda else None,
            x=x,
            value=value,
            path=path,
        )

    def classical_limit(self, v: FamilyValue) -> Union[Fraction, XPoly]:
        """Set q = 1 in every coefficient; a pole there means a bug upstream"""
        if isinstance(v.value, QRatFunc):
            return eval_at_q(v.value, 1)
        return v.value.map_coefficients(lambda c: QRatFunc.constant(eval_at_q(c, 1)))


family_service = FamilyService()
