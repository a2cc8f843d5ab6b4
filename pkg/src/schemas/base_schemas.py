# src/schemas/base_schemas.py
from fractions import Fraction
from typing import Optional, Union
from pydantic import BaseModel, ConfigDict

from models.exactnum import as_rational


class BaseSchema(BaseModel):
    """Base schema with common configuration"""

    model_config = ConfigDict(
        from_attributes=True,
        populate_by_name=True,
        str_strip_whitespace=True,
        use_enum_values=True,
        arbitrary_types_allowed=True,
    )


SYMBOLIC = "sym"


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    """Read a "p/q" string (or an int / Fraction) as an exact rational"""
    try:
        return as_rational(value.strip() if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise ValueError(f"{value!r} is not an exact rational 'p/q'") from e


def parse_rational_or_symbolic(
    value: Union[str, int, Fraction, None],
) -> Optional[Fraction]:
    """None and "sym" keep the variable symbolic, anything else must be rational"""
    if value is None:
        return None
    if isinstance(value, str) and value.strip().lower() == SYMBOLIC:
        return None
    return parse_rational(value)


def format_rational_or_symbolic(value: Optional[Fraction]) -> str:
    return SYMBOLIC if value is None else str(value)
