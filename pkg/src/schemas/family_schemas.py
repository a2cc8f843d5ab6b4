# src/schemas/family_schemas.py
from enum import Enum
from fractions import Fraction
from typing import Optional, Union
from pydantic import Field

from models.exactnum import QRatFunc
from models.xpoly import XPoly
from .base_schemas import BaseSchema


class FamilyKind(str, Enum):
    Q_EULER_NUMBER = "euler-number"
    Q_EULER_POLY = "euler"
    Q_BOOLE_FIRST = "boole1"
    Q_BOOLE_SECOND = "boole2"
    Q_CHANGHEE = "changhee"

    @property
    def uses_lambda(self) -> bool:
        return self in (FamilyKind.Q_BOOLE_FIRST, FamilyKind.Q_BOOLE_SECOND)

    @property
    def uses_order(self) -> bool:
        return self is not FamilyKind.Q_CHANGHEE

    @property
    def uses_x(self) -> bool:
        return self is not FamilyKind.Q_EULER_NUMBER


class ComputationPath(str, Enum):
    GENFUNC = "genfunc"
    STIRLING = "stirling"
    INTEGRAL = "integral"
    RECURRENCE = "recurrence"
    REFLECTION = "reflection"


class FamilyValue(BaseSchema):
    """One member of a family together with how it was computed"""

    family: FamilyKind
    n: int = Field(ge=0)
    k: int = Field(1, ge=1)
    lam: Optional[Fraction] = None
    x: Optional[Fraction] = None
    value: Union[QRatFunc, XPoly]
    path: ComputationPath
