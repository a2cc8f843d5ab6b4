# src/schemas/cli_schemas.py
from enum import Enum
from fractions import Fraction
from typing import List, Optional
from pydantic import Field, field_validator, model_validator

from core.config import settings
from .base_schemas import BaseSchema, parse_rational, parse_rational_or_symbolic
from .family_schemas import ComputationPath, FamilyKind
from .identity_schemas import IdentityId, XMode, resolve_identity

ALL_IDENTITIES = "all"


class Subcommand(str, Enum):
    TABLE = "table"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    PRETTY = "pretty"


class CliConfig(BaseSchema):
    """Validated options of one command line invocation"""

    subcommand: Subcommand
    family: Optional[FamilyKind] = None
    n_max: int = Field(settings.DEFAULT_N_MAX, ge=0)
    order: int = Field(1, ge=1)
    order_max: int = Field(settings.DEFAULT_ORDER_MAX, ge=1)
    lambda_: Optional[Fraction] = Field(None, alias="lambda")
    x: Optional[Fraction] = None
    q: Optional[Fraction] = None
    format: OutputFormat = OutputFormat(settings.DEFAULT_FORMAT)
    identity: str = ALL_IDENTITIES
    lambdas: List[Fraction] = Field(default_factory=list)
    x_mode: XMode = XMode.SYMBOLIC
    samples: int = Field(settings.SAMPLED_X_COUNT, ge=1)
    seed: int = 0
    path: Optional[ComputationPath] = None
    timing: bool = False
    verbose: bool = False

    @field_validator("lambda_", mode="before")
    def parse_lambda(cls, v):
        return None if v is None else parse_rational(v)

    @field_validator("x", "q", mode="before")
    def parse_symbolic(cls, v):
        return parse_rational_or_symbolic(v)

    @field_validator("lambdas", mode="before")
    def split_lambdas(cls, v):
        if isinstance(v, str):
            v = [item for item in v.split(",") if item.strip()]
        return [parse_rational(item) for item in v or []]

    @field_validator("identity")
    def check_identity(cls, v: str) -> str:
        if v.lower() == ALL_IDENTITIES:
            return ALL_IDENTITIES
        return resolve_identity(v).value

    @model_validator(mode="after")
    def check_combination(self) -> "CliConfig":
        if self.n_max > settings.N_MAX_LIMIT:
            raise ValueError(f"n_max must be <= {settings.N_MAX_LIMIT}, got {self.n_max}")

        if self.subcommand == Subcommand.TABLE:
            if self.family is None:
                raise ValueError("table needs --family")
            if FamilyKind(self.family).uses_lambda:
                if self.lambda_ is None:
                    raise ValueError(f"{self.family} needs --lambda")
                if self.lambda_ == 0:
                    raise ValueError("λ must be nonzero")
        else:
            if self.format == OutputFormat.CSV:
                raise ValueError("verify reports are written as json or pretty")
            if any(lam == 0 for lam in self.lambdas):
                raise ValueError("λ must be nonzero")
        return self

    @property
    def identities(self) -> Optional[List[IdentityId]]:
        """Selected identities, None for all"""
        if self.identity == ALL_IDENTITIES:
            return None
        return [IdentityId(self.identity)]
