# src/schemas/table_schemas.py
from typing import Any, Optional
from pydantic import Field

from .base_schemas import BaseSchema


class TableRecord(BaseSchema):
    """One emitted row; field order is the JSON key order"""

    family: str
    n: int
    k: int
    lambda_: Optional[str] = Field(None, alias="lambda")
    x: Optional[str] = None
    q: str
    value: Any
