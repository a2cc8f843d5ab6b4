# tests/test_identities.py
from fractions import Fraction

import pytest

from schemas.identity_schemas import CheckStatus, IdentityId, IdentityRanges, XMode
from services.combinatorics_service import StirlingKind, combinatorics_service
from services.family_service import family_service, get_context
from services.identity_service import identity_service, x_points
from services.render_service import decode_value

SMALL = IdentityRanges(
    n_max=6,
    k_max=2,
    lambdas=[Fraction(2), Fraction(-1), Fraction(1, 2)],
    reflection_n_max=6,
    functional_steps=3,
)


def corrupted_context(n_max: int):
    table = combinatorics_service.table(n_max + 1).with_entry(StirlingKind.FIRST, 3, 1, 3)
    return get_context(n_max, stirling=table)


@pytest.mark.parametrize("identity_id", list(IdentityId))
def test_every_identity_holds_symbolically(identity_id, shared_ctx):
    report = identity_service.verify(identity_id, SMALL, shared_ctx)
    assert report.status == CheckStatus.PASS.value
    assert report.first_counterexample is None
    assert report.checks > 0


@pytest.mark.parametrize(
    "identity_id",
    [
        IdentityId.BOOLE_STIRLING_EXPANSION,
        IdentityId.HIGHER_BOOLE_FALLING_EXPANSION,
        IdentityId.SECOND_KIND_STIRLING_TRANSFORMS,
        IdentityId.NEGATION_REFLECTION,
        IdentityId.NEGATION_REFLECTION_DUAL,
        IdentityId.HIGHER_BOOLE_INTEGRAL,
    ],
)
def test_identities_hold_at_sampled_x(identity_id, shared_ctx):
    ranges = SMALL.model_copy(update={"x_mode": XMode.SAMPLED, "samples": 2, "seed": 11})
    report = identity_service.verify(identity_id, ranges, shared_ctx)
    assert report.status == CheckStatus.PASS.value


@pytest.mark.parametrize("identity_id", list(IdentityId))
def test_every_identity_holds_over_full_range(identity_id, shared_ctx):
    report = identity_service.verify(identity_id, IdentityRanges(n_max=12, k_max=3), shared_ctx)
    assert report.status == CheckStatus.PASS.value, report.first_counterexample
    assert report.params.n_max == 12
    assert len(report.params.lambdas) == 6


def test_dual_path_agreement_full_range():
    ranges = IdentityRanges(n_max=12, k_max=3)
    report = identity_service.verify(IdentityId.HIGHER_BOOLE_STIRLING_EXPANSION, ranges)
    assert report.status == CheckStatus.PASS.value
    # 6 default λ values × 3 orders × 13 indices
    assert report.checks == 6 * 3 * 13


def test_reflection_range_starts_at_one():
    ranges = IdentityRanges(n_max=12, lambdas=[Fraction(2)], reflection_n_max=10)
    report = identity_service.verify(IdentityId.NEGATION_REFLECTION, ranges)
    assert report.status == CheckStatus.PASS.value
    assert report.checks == 10


def test_stirling_inversion_at_m_one(ctx, q, two):
    # Σ_{n≤1} Bl_n(x|3) S2(1,n) = Bl_1(x|3) = x/(1+q) − 3q/(1+q)^2
    value = family_service.q_boole_first(ctx, 1, 1, 3)
    euler = family_service.euler_at_scaled(ctx, 1, 1, None, Fraction(1, 3))
    assert value == euler * 3 / two
    assert value.coefficient(0) == -(q * 3) / two**2


def test_changhee_reduction_at_zero(ctx, two):
    lhs = family_service.q_boole_first(ctx, 0, 1, 1, Fraction(0)) * two
    assert lhs == family_service.q_changhee(ctx, 0, Fraction(0))


def test_multinomial_is_trivial_at_order_one(ctx):
    ranges = IdentityRanges(n_max=5, k_max=1, lambdas=[Fraction(3)])
    report = identity_service.verify(IdentityId.BOOLE_MULTINOMIAL, ranges, ctx)
    assert report.status == CheckStatus.PASS.value


def test_stirling_expansion_and_inversion_compose_to_identity(ctx):
    """Applying the S2 transform to the S1 expansion returns λ^m E_m(x/λ)"""
    table = ctx.stirling
    lam = Fraction(-2)
    for m in range(9):
        total = None
        for n in range(m + 1):
            expansion = None
            for j in range(n + 1):
                euler = family_service.euler_at_scaled(ctx, j, 1, None, 1 / lam)
                term = euler * (table.stirling1(n, j) * lam**j)
                expansion = term if expansion is None else expansion + term
            term = expansion * table.stirling2(m, n)
            total = term if total is None else total + term
        expected = family_service.euler_at_scaled(ctx, m, 1, None, 1 / lam) * lam**m
        assert total == expected


def test_printed_second_reflection_form_would_fail(ctx):
    """The closing reflection cannot hold for both kinds with the same right side"""
    assert family_service.q_boole_first(ctx, 1, 1, 2) != family_service.q_boole_second(ctx, 1, 1, 2)


def test_corrupted_table_is_caught():
    ctx = corrupted_context(8)
    ranges = IdentityRanges(n_max=8, k_max=1, lambdas=[Fraction(1)])
    report = identity_service.verify(IdentityId.BOOLE_STIRLING_EXPANSION, ranges, ctx)
    assert report.status == CheckStatus.FAIL.value
    counterexample = report.first_counterexample
    assert counterexample.params == {"n": "3", "lambda": "1", "x": "sym"}
    assert decode_value(counterexample.lhs) != decode_value(counterexample.rhs)
    assert decode_value(counterexample.lhs) == family_service.q_boole_first(get_context(8), 3, 1, 1)


def test_orthogonality_sees_the_corruption():
    report = identity_service.verify(
        IdentityId.STIRLING_ORTHOGONALITY, IdentityRanges(n_max=5), corrupted_context(5)
    )
    assert report.status == CheckStatus.FAIL.value


def test_verify_all(shared_ctx):
    report = identity_service.verify_all(SMALL, ctx=shared_ctx)
    assert report.status == CheckStatus.PASS.value
    assert [r.identity_id for r in report.identities] == [i.value for i in IdentityId]
    assert all(r.elapsed_ms is None for r in report.identities)


def test_timing_is_opt_in(shared_ctx):
    report = identity_service.verify(
        IdentityId.CHANGHEE_REDUCTION, SMALL, shared_ctx, timing=True
    )
    assert report.elapsed_ms is not None and report.elapsed_ms >= 0


def test_sampled_points_are_seeded():
    ranges = IdentityRanges(x_mode=XMode.SAMPLED, samples=4, seed=3)
    first = x_points(ranges)
    assert first == x_points(ranges)
    assert len(first) == 4
    assert all(isinstance(x, Fraction) for x in first)
    assert x_points(IdentityRanges()) == [None]


def test_default_lambdas_fill_empty_ranges(shared_ctx):
    report = identity_service.verify(
        IdentityId.SECOND_KIND_REFLECTION, IdentityRanges(n_max=3, k_max=1), shared_ctx
    )
    assert [str(lam) for lam in report.params.lambdas] == ["1", "2", "3", "-1", "-2", "1/2"]
