# src/schemas/identity_schemas.py
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional
from pydantic import Field

from .base_schemas import BaseSchema


class IdentityId(str, Enum):
    BOOLE_STIRLING_EXPANSION = "boole-stirling-expansion"
    BOOLE_STIRLING_INVERSION = "boole-stirling-inversion"
    BOOLE_MULTINOMIAL = "boole-multinomial"
    BOOLE_NUMBERS_STIRLING_EXPANSION = "boole-numbers-stirling-expansion"
    BOOLE_NUMBERS_STIRLING_INVERSION = "boole-numbers-stirling-inversion"
    HIGHER_BOOLE_FALLING_EXPANSION = "higher-boole-falling-expansion"
    HIGHER_BOOLE_STIRLING_INVERSION = "higher-boole-stirling-inversion"
    HIGHER_BOOLE_STIRLING_EXPANSION = "higher-boole-stirling-expansion"
    SECOND_KIND_STIRLING_TRANSFORMS = "second-kind-stirling-transforms"
    CHANGHEE_REDUCTION = "changhee-reduction"
    SECOND_KIND_REFLECTION = "second-kind-reflection"
    NEGATION_REFLECTION = "negation-reflection"
    NEGATION_REFLECTION_DUAL = "negation-reflection-dual"
    EULER_GENERATING_FUNCTION = "euler-generating-function"
    CHANGHEE_MOMENTS = "changhee-moments"
    HIGHER_BOOLE_INTEGRAL = "higher-boole-integral"
    FUNCTIONAL_EQUATION = "functional-equation"
    STIRLING_ORTHOGONALITY = "stirling-orthogonality"


# Short selectors accepted by `verify --identity` alongside the names above
IDENTITY_ALIASES: Dict[str, IdentityId] = {
    "thm2.1": IdentityId.BOOLE_STIRLING_EXPANSION,
    "thm2.2": IdentityId.BOOLE_STIRLING_INVERSION,
    "cor2.3": IdentityId.BOOLE_MULTINOMIAL,
    "thm2.4": IdentityId.BOOLE_NUMBERS_STIRLING_EXPANSION,
    "thm2.5": IdentityId.BOOLE_NUMBERS_STIRLING_INVERSION,
    "thm2.6": IdentityId.HIGHER_BOOLE_FALLING_EXPANSION,
    "thm2.7": IdentityId.HIGHER_BOOLE_STIRLING_INVERSION,
    "thm2.8": IdentityId.HIGHER_BOOLE_STIRLING_EXPANSION,
    "thm2.9": IdentityId.SECOND_KIND_STIRLING_TRANSFORMS,
    "eq2.13": IdentityId.CHANGHEE_REDUCTION,
    "eq2.35": IdentityId.SECOND_KIND_REFLECTION,
    "reflection": IdentityId.NEGATION_REFLECTION,
}


def resolve_identity(selector: str) -> IdentityId:
    """Map a selector (full name or short alias) onto its IdentityId"""
    key = selector.strip().lower()
    if key in IDENTITY_ALIASES:
        return IDENTITY_ALIASES[key]
    return IdentityId(key)


class XMode(str, Enum):
    SYMBOLIC = "sym"
    SAMPLED = "sampled"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class IdentityRanges(BaseSchema):
    """Parameter ranges one verifier sweeps"""

    n_max: int = Field(12, ge=0)
    k_max: int = Field(3, ge=1)
    lambdas: List[Fraction] = Field(default_factory=list)
    x_mode: XMode = XMode.SYMBOLIC
    samples: int = Field(3, ge=1)
    seed: int = 0
    reflection_n_max: int = Field(10, ge=1)
    functional_steps: int = Field(5, ge=1)


class Counterexample(BaseSchema):
    params: Dict[str, str]
    lhs: Any
    rhs: Any


class IdentityReport(BaseSchema):
    identity_id: IdentityId
    params: IdentityRanges
    status: CheckStatus
    checks: int = 0
    first_counterexample: Optional[Counterexample] = None
    elapsed_ms: Optional[float] = None


class VerifyReport(BaseSchema):
    status: CheckStatus
    identities: List[IdentityReport]
