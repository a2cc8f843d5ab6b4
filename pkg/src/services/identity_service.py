# src/services/identity_service.py
"""
Executable identity checks.

Every verifier is a generator of (params, lhs, rhs) triples over the
parameter ranges it is given. The runner compares the two sides
structurally: canonical QRatFunc and XPoly values are equal exactly when
their fields are, so a pass never depends on numerical tolerance.
"""

import random
import time
from fractions import Fraction
from math import comb, factorial
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from core.config import settings
from models.exactnum import QRatFunc, q_number
from models.powerseries import extract_coefficient, series_expm1, series_log1p
from models.xpoly import XPoly
from schemas.base_schemas import format_rational_or_symbolic, parse_rational
from schemas.family_schemas import ComputationPath
from schemas.identity_schemas import (
    CheckStatus,
    Counterexample,
    IdentityId,
    IdentityRanges,
    IdentityReport,
    VerifyReport,
    XMode,
)
from services.combinatorics_service import combinatorics_service, compositions, multinomial
from services.family_service import FamilyContext, family_service, get_context
from services.render_service import encode_value
from utils.logger import setup_logger

logger = setup_logger("IDENTITY_SERVICE")

Check = Tuple[Dict[str, str], Any, Any]
Verifier = Callable[[FamilyContext, IdentityRanges], Iterator[Check]]

GENFUNC = ComputationPath.GENFUNC


def default_lambdas() -> List[Fraction]:
    return [parse_rational(item) for item in settings.DEFAULT_LAMBDAS]


def _lambdas(ranges: IdentityRanges) -> List[Fraction]:
    return list(ranges.lambdas) or default_lambdas()


def x_points(ranges: IdentityRanges) -> List[Optional[Fraction]]:
    """[None] for symbolic x, otherwise seeded random rationals"""
    if XMode(ranges.x_mode) == XMode.SYMBOLIC:
        return [None]
    rng = random.Random(ranges.seed)
    height = settings.SAMPLED_X_HEIGHT
    return [
        Fraction(rng.randint(-height, height), rng.randint(1, height))
        for _ in range(ranges.samples)
    ]


def _params(**values: Any) -> Dict[str, str]:
    out = {}
    for key, value in values.items():
        if key == "x":
            out[key] = format_rational_or_symbolic(value)
        elif key == "lam":
            out["lambda"] = str(value)
        else:
            out[key] = str(value)
    return out


def _at(poly: XPoly, x: Optional[Fraction]):
    return poly if x is None else poly.evaluate(x)


def _negated(value, x: Optional[Fraction]):
    """value(−x) for a value already taken at −x (sampled) or symbolic in x"""
    return value.substitute_linear(-1) if x is None else value


def _zero(x: Optional[Fraction]):
    return XPoly.zero() if x is None else QRatFunc.zero()


# Boole polynomials, order 1


def _boole_stirling_expansion(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """Bl_n(x|λ) = [2]^-1 Σ_m λ^m E_m(x/λ) S1(n,m), and [2]·Bl_n(x|λ) = I_y((x+λy)_n)"""
    two = q_number(2)
    for lam in _lambdas(ranges):
        for x in x_points(ranges):
            for n in range(ranges.n_max + 1):
                lhs = family_service.q_boole_first(ctx, n, 1, lam, x, GENFUNC)
                rhs = _zero(x)
                for m in range(n + 1):
                    s1 = ctx.stirling.stirling1(n, m)
                    if s1:
                        euler = family_service.euler_at_scaled(ctx, m, 1, x, 1 / lam)
                        rhs = rhs + euler * (s1 * lam**m)
                yield _params(n=n, lam=lam, x=x), lhs, rhs / two
                moment = family_service.integral_of_falling_factorial(ctx, n, lam, x)
                yield _params(n=n, lam=lam, x=x, form="integral"), lhs * two, moment


def _boole_stirling_inversion(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """Σ_{n≤m} Bl_n(x|λ) S2(m,n) = [2]^-1 λ^m E_m(x/λ)"""
    two = q_number(2)
    for lam in _lambdas(ranges):
        for x in x_points(ranges):
            for m in range(ranges.n_max + 1):
                lhs = _zero(x)
                for n in range(m + 1):
                    s2 = ctx.stirling.stirling2(m, n)
                    if s2:
                        lhs = lhs + family_service.q_boole_first(ctx, n, 1, lam, x, GENFUNC) * s2
                euler = family_service.euler_at_scaled(ctx, m, 1, x, 1 / lam)
                yield _params(m=m, lam=lam, x=x), lhs, euler * lam**m / two


# Boole numbers of order k


def _boole_multinomial(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """Bl^(k)_n(λ) = Σ_{l1+…+lk=n} n!/(l1!…lk!) Π Bl_{li}(λ)"""
    for lam in _lambdas(ranges):
        singles = [
            family_service.q_boole_number(ctx, n, 1, lam) for n in range(ranges.n_max + 1)
        ]
        for k in range(1, ranges.k_max + 1):
            for n in range(ranges.n_max + 1):
                lhs = family_service.q_boole_number(ctx, n, k, lam)
                rhs = QRatFunc.zero()
                for parts in compositions(n, k):
                    term = QRatFunc.constant(multinomial(n, parts))
                    for part in parts:
                        term = term * singles[part]
                    rhs = rhs + term
                yield _params(n=n, k=k, lam=lam), lhs, rhs


def _boole_numbers_stirling_expansion(
    ctx: FamilyContext, ranges: IdentityRanges
) -> Iterator[Check]:
    """Bl^(k)_n(λ) = [2]^-k Σ_l S1(n,l) λ^l E^(k)_l"""
    for lam in _lambdas(ranges):
        for k in range(1, ranges.k_max + 1):
            scale = q_number(2) ** -k
            for n in range(ranges.n_max + 1):
                lhs = family_service.q_boole_number(ctx, n, k, lam)
                rhs = QRatFunc.zero()
                for j in range(n + 1):
                    s1 = ctx.stirling.stirling1(n, j)
                    if s1:
                        rhs = rhs + family_service.q_euler_number(ctx, j, k) * (s1 * lam**j)
                yield _params(n=n, k=k, lam=lam), lhs, rhs * scale


def _boole_numbers_stirling_inversion(
    ctx: FamilyContext, ranges: IdentityRanges
) -> Iterator[Check]:
    """Σ_{n≤m} Bl^(k)_n(λ) S2(m,n) = [2]^-k E^(k)_m λ^m"""
    for lam in _lambdas(ranges):
        for k in range(1, ranges.k_max + 1):
            scale = q_number(2) ** -k
            for m in range(ranges.n_max + 1):
                lhs = QRatFunc.zero()
                for n in range(m + 1):
                    s2 = ctx.stirling.stirling2(m, n)
                    if s2:
                        lhs = lhs + family_service.q_boole_number(ctx, n, k, lam) * s2
                rhs = family_service.q_euler_number(ctx, m, k) * lam**m * scale
                yield _params(m=m, k=k, lam=lam), lhs, rhs


# Boole polynomials of order k


def _higher_boole_falling_expansion(
    ctx: FamilyContext, ranges: IdentityRanges
) -> Iterator[Check]:
    """Bl^(k)_n(x|λ) = Σ_m C(n,m) Bl^(k)_{n−m}(λ) (x)_m"""
    for lam in _lambdas(ranges):
        for k in range(1, ranges.k_max + 1):
            for x in x_points(ranges):
                for n in range(ranges.n_max + 1):
                    lhs = family_service.q_boole_first(ctx, n, k, lam, x, GENFUNC)
                    rhs = _zero(x)
                    for m in range(n + 1):
                        number = family_service.q_boole_number(ctx, n - m, k, lam) * comb(n, m)
                        rhs = rhs + _at(family_service.falling_factorial(ctx, m), x) * number
                    yield _params(n=n, k=k, lam=lam, x=x), lhs, rhs


def _higher_boole_stirling_inversion(
    ctx: FamilyContext, ranges: IdentityRanges
) -> Iterator[Check]:
    """Σ_{n≤m} Bl^(k)_n(x|λ) S2(m,n) = [2]^-k λ^m E^(k)_m(x/λ)"""
    for lam in _lambdas(ranges):
        for k in range(1, ranges.k_max + 1):
            scale = q_number(2) ** -k
            for x in x_points(ranges):
                for m in range(ranges.n_max + 1):
                    lhs = _zero(x)
                    for n in range(m + 1):
                        s2 = ctx.stirling.stirling2(m, n)
                        if s2:
                            value = family_service.q_boole_first(ctx, n, k, lam, x, GENFUNC)
                            lhs = lhs + value * s2
                    euler = family_service.euler_at_scaled(ctx, m, k, x, 1 / lam)
                    yield _params(m=m, k=k, lam=lam, x=x), lhs, euler * lam**m * scale


def _higher_boole_stirling_expansion(
    ctx: FamilyContext, ranges: IdentityRanges
) -> Iterator[Check]:
    """Generating-function and Stirling-transform values of Bl^(k)_n(x|λ) agree"""
    for lam in _lambdas(ranges):
        for k in range(1, ranges.k_max + 1):
            for x in x_points(ranges):
                for n in range(ranges.n_max + 1):
                    lhs = family_service.q_boole_first(ctx, n, k, lam, x, GENFUNC)
                    rhs = family_service.q_boole_first(
                        ctx, n, k, lam, x, ComputationPath.STIRLING
                    )
                    yield _params(n=n, k=k, lam=lam, x=x), lhs, rhs


def _second_kind_stirling_transforms(
    ctx: FamilyContext, ranges: IdentityRanges
) -> Iterator[Check]:
    """
    Second kind: the S1 expansion in E^(k)_l(−x/λ) and its S2 inverse
    Σ_{n≤m} Bl^(k)_n(x|λ) S2(m,n) = [2]^-k (−λ)^m E^(k)_m(−x/λ)
    """
    for lam in _lambdas(ranges):
        for k in range(1, ranges.k_max + 1):
            scale = q_number(2) ** -k
            for x in x_points(ranges):
                for n in range(ranges.n_max + 1):
                    lhs = family_service.q_boole_second(ctx, n, k, lam, x, GENFUNC)
                    rhs = family_service.q_boole_second(
                        ctx, n, k, lam, x, ComputationPath.STIRLING
                    )
                    yield _params(n=n, k=k, lam=lam, x=x, form="expansion"), lhs, rhs
                for m in range(ranges.n_max + 1):
                    lhs = _zero(x)
                    for n in range(m + 1):
                        s2 = ctx.stirling.stirling2(m, n)
                        if s2:
                            value = family_service.q_boole_second(ctx, n, k, lam, x, GENFUNC)
                            lhs = lhs + value * s2
                    euler = family_service.euler_at_scaled(ctx, m, k, x, -1 / lam)
                    rhs = euler * (-lam) ** m * scale
                    yield _params(m=m, k=k, lam=lam, x=x, form="inversion"), lhs, rhs


# Changhee and reflections


def _changhee_reduction(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """[2]·Bl_n(x|1) = Ch_n(x)"""
    two = q_number(2)
    for x in x_points(ranges):
        for n in range(ranges.n_max + 1):
            lhs = family_service.q_boole_first(ctx, n, 1, 1, x, GENFUNC) * two
            rhs = family_service.q_changhee(ctx, n, x, GENFUNC)
            yield _params(n=n, x=x), lhs, rhs


def _second_kind_reflection(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """Second-kind Bl^(k)_n(x|λ) = first-kind Bl^(k)_n(x|−λ)"""
    for lam in _lambdas(ranges):
        for k in range(1, ranges.k_max + 1):
            for x in x_points(ranges):
                for n in range(ranges.n_max + 1):
                    lhs = family_service.q_boole_second(ctx, n, k, lam, x, GENFUNC)
                    rhs = family_service.q_boole_first(ctx, n, k, -lam, x, GENFUNC)
                    yield _params(n=n, k=k, lam=lam, x=x), lhs, rhs


def _reflection_pairs(
    ctx: FamilyContext, ranges: IdentityRanges, left, right
) -> Iterator[Check]:
    """
    (−1)^n [2]·left_n(x|λ)/n! = [2] Σ_{m=1..n} C(n−1,m−1) right_m(−x|λ)/m!, n ≥ 1
    """
    two = q_number(2)
    top = min(ranges.n_max, ranges.reflection_n_max)
    for lam in _lambdas(ranges):
        for x in x_points(ranges):
            minus_x = None if x is None else -x
            for n in range(1, top + 1):
                lhs = left(ctx, n, 1, lam, x, GENFUNC) * (two * Fraction((-1) ** n, factorial(n)))
                rhs = _zero(x)
                for m in range(1, n + 1):
                    value = _negated(right(ctx, m, 1, lam, minus_x, GENFUNC), x)
                    rhs = rhs + value * Fraction(comb(n - 1, m - 1), factorial(m))
                yield _params(n=n, lam=lam, x=x), lhs, rhs * two


def _negation_reflection(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    yield from _reflection_pairs(
        ctx, ranges, family_service.q_boole_first, family_service.q_boole_second
    )


def _negation_reflection_dual(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    yield from _reflection_pairs(
        ctx, ranges, family_service.q_boole_second, family_service.q_boole_first
    )


# Euler, Changhee and the fermionic functional


def _euler_generating_function(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """E^(k)_n(x) from ([2]/(qe^t+1))^k e^(xt) equals the binomial convolution"""
    for k in range(1, ranges.k_max + 1):
        for x in x_points(ranges):
            for n in range(ranges.n_max + 1):
                lhs = family_service.q_euler_poly(ctx, n, k, x, GENFUNC)
                rhs = family_service.q_euler_poly(ctx, n, k, x, ComputationPath.RECURRENCE)
                yield _params(n=n, k=k, x=x), lhs, rhs


def _changhee_moments(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """I_y((x+y)_n) = Ch_n(x), and I_y(C(x+y, n)) = Ch_n(x)/n!"""
    for x in x_points(ranges):
        for n in range(ranges.n_max + 1):
            lhs = family_service.integral_of_falling_factorial(ctx, n, 1, x)
            rhs = family_service.q_changhee(ctx, n, x, GENFUNC)
            yield _params(n=n, x=x), lhs, rhs
            binomial = family_service.integral_of_binomial(ctx, n, 1, x)
            yield _params(n=n, x=x, form="binomial"), binomial, rhs * Fraction(1, factorial(n))


def _higher_boole_integral(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """[2]^k·Bl^(k)_n(x|λ) = I_y1…I_yk((x + λ(y1+…+yk))_n)"""
    for lam in _lambdas(ranges):
        for k in range(1, ranges.k_max + 1):
            scale = q_number(2) ** k
            for x in x_points(ranges):
                for n in range(ranges.n_max + 1):
                    lhs = family_service.q_boole_first(ctx, n, k, lam, x, GENFUNC) * scale
                    integrand = family_service.falling_factorial(ctx, n)
                    for _ in range(k):
                        integrand = family_service.fermionic_integral_shifted(ctx, integrand, lam)
                    yield _params(n=n, k=k, lam=lam, x=x), lhs, _at(integrand, x)


def _functional_equation(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """q^s·I(f(y+s)) + (−1)^(s−1)·I(f) = [2] Σ_{l<s} (−1)^(s−1−l) q^l f(l) on f = y^j"""
    for j in range(ranges.n_max + 1):
        monomial = XPoly.monomial(j)
        for steps in range(1, ranges.functional_steps + 1):
            lhs, rhs = family_service.functional_step(ctx, monomial, steps)
            yield _params(j=j, steps=steps), lhs, rhs


def _stirling_orthogonality(ctx: FamilyContext, ranges: IdentityRanges) -> Iterator[Check]:
    """
    Both S1·S2 products are the identity, S1 and S2 match (log(1+t))^m and
    (e^t−1)^m, and the power and falling-factorial bases convert back and forth
    """
    table = ctx.stirling
    top = ranges.n_max
    for n in range(top + 1):
        for j in range(top + 1):
            delta = int(n == j)
            first = sum(table.stirling1(n, m) * table.stirling2(m, j) for m in range(n + 1))
            second = sum(table.stirling2(n, m) * table.stirling1(m, j) for m in range(n + 1))
            yield _params(n=n, j=j, form="s1*s2"), first, delta
            yield _params(n=n, j=j, form="s2*s1"), second, delta
    log_series = series_log1p(top)
    expm1_series = series_expm1(top)
    for m in range(top + 1):
        log_power = log_series**m
        exp_power = expm1_series**m
        for n in range(m, top + 1):
            s1 = extract_coefficient(log_power, n, factorial_normalize=True) / factorial(m)
            s2 = extract_coefficient(exp_power, n, factorial_normalize=True) / factorial(m)
            yield _params(n=n, m=m, form="log-series"), s1, Fraction(table.stirling1(n, m))
            yield _params(n=n, m=m, form="exp-series"), s2, Fraction(table.stirling2(n, m))
    for n in range(top + 1):
        coeffs = combinatorics_service.powers_as_falling_factorial(n)
        powers = combinatorics_service.falling_to_powers(coeffs)
        yield _params(n=n, form="basis-change"), powers, XPoly.monomial(n)


VERIFIERS: Dict[IdentityId, Verifier] = {
    IdentityId.BOOLE_STIRLING_EXPANSION: _boole_stirling_expansion,
    IdentityId.BOOLE_STIRLING_INVERSION: _boole_stirling_inversion,
    IdentityId.BOOLE_MULTINOMIAL: _boole_multinomial,
    IdentityId.BOOLE_NUMBERS_STIRLING_EXPANSION: _boole_numbers_stirling_expansion,
    IdentityId.BOOLE_NUMBERS_STIRLING_INVERSION: _boole_numbers_stirling_inversion,
    IdentityId.HIGHER_BOOLE_FALLING_EXPANSION: _higher_boole_falling_expansion,
    IdentityId.HIGHER_BOOLE_STIRLING_INVERSION: _higher_boole_stirling_inversion,
    IdentityId.HIGHER_BOOLE_STIRLING_EXPANSION: _higher_boole_stirling_expansion,
    IdentityId.SECOND_KIND_STIRLING_TRANSFORMS: _second_kind_stirling_transforms,
    IdentityId.CHANGHEE_REDUCTION: _changhee_reduction,
    IdentityId.SECOND_KIND_REFLECTION: _second_kind_reflection,
    IdentityId.NEGATION_REFLECTION: _negation_reflection,
    IdentityId.NEGATION_REFLECTION_DUAL: _negation_reflection_dual,
    IdentityId.EULER_GENERATING_FUNCTION: _euler_generating_function,
    IdentityId.CHANGHEE_MOMENTS: _changhee_moments,
    IdentityId.HIGHER_BOOLE_INTEGRAL: _higher_boole_integral,
    IdentityId.FUNCTIONAL_EQUATION: _functional_equation,
    IdentityId.STIRLING_ORTHOGONALITY: _stirling_orthogonality,
}


class IdentityService:
    def run_checks(
        self,
        identity_id: IdentityId,
        ranges: IdentityRanges,
        checks: Iterable[Check],
        timing: bool = False,
    ) -> IdentityReport:
        """Compare every (lhs, rhs) pair and keep the first mismatch"""
        started = time.perf_counter()
        count = 0
        counterexample: Optional[Counterexample] = None
        for params, lhs, rhs in checks:
            count += 1
            if lhs != rhs:
                counterexample = Counterexample(
                    params=params, lhs=encode_value(lhs), rhs=encode_value(rhs)
                )
                break
        status = CheckStatus.PASS if counterexample is None else CheckStatus.FAIL
        elapsed = (time.perf_counter() - started) * 1000 if timing else None

        if counterexample is None:
            logger.info(f"{identity_id.value}: pass after {count} checks")
        else:
            logger.warning(
                f"{identity_id.value}: fail at {counterexample.params} after {count} checks"
            )
        return IdentityReport(
            identity_id=identity_id,
            params=ranges,
            status=status,
            checks=count,
            first_counterexample=counterexample,
            elapsed_ms=round(elapsed, 3) if elapsed is not None else None,
        )

    def verify(
        self,
        identity_id: IdentityId,
        ranges: IdentityRanges,
        ctx: Optional[FamilyContext] = None,
        timing: bool = False,
    ) -> IdentityReport:
        identity_id = IdentityId(identity_id)
        ctx = ctx or get_context(ranges.n_max)
        if not ranges.lambdas:
            ranges = ranges.model_copy(update={"lambdas": default_lambdas()})
        logger.debug(f"Verifying {identity_id.value} with {ranges.model_dump()}")
        return self.run_checks(identity_id, ranges, VERIFIERS[identity_id](ctx, ranges), timing)

    def verify_all(
        self,
        ranges: IdentityRanges,
        identities: Optional[List[IdentityId]] = None,
        ctx: Optional[FamilyContext] = None,
        timing: bool = False,
    ) -> VerifyReport:
        """Run the selected verifiers in declaration order on one shared context"""
        ctx = ctx or get_context(ranges.n_max)
        selected = [IdentityId(i) for i in identities] if identities else list(IdentityId)
        reports = [self.verify(i, ranges, ctx, timing) for i in selected]
        failed = any(r.status == CheckStatus.FAIL for r in reports)
        return VerifyReport(
            status=CheckStatus.FAIL if failed else CheckStatus.PASS,
            identities=reports,
        )


identity_service = IdentityService()
