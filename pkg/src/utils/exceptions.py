# src/utils/exceptions.py
from typing import Any, Optional


class BaseQBooleException(Exception):
    """Root of every error the library and the CLI raise on purpose"""

    exit_code: int = 2

    def __init__(self, detail: Any = None, exit_code: Optional[int] = None) -> None:
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self) -> str:
        return str(self.detail)


class DivisionByZeroException(BaseQBooleException):
    def __init__(self, detail: str = "Division by the zero rational function"):
        super().__init__(detail=detail)


class PoleException(BaseQBooleException):
    """Evaluation hit a zero of the denominator; not an arithmetic failure"""

    def __init__(self, detail: str = "Denominator vanishes at the evaluation point"):
        super().__init__(detail=detail)


class NonInvertibleException(BaseQBooleException):
    def __init__(self, detail: str = "Constant term is not invertible"):
        super().__init__(detail=detail)


class TruncationException(BaseQBooleException):
    def __init__(self, detail: str = "Coefficient index exceeds the series order"):
        super().__init__(detail=detail)


class OutOfRangeException(BaseQBooleException):
    def __init__(self, detail: str = "Index outside the table"):
        super().__init__(detail=detail)


class InvalidParameterException(BaseQBooleException):
    def __init__(self, detail: str = "Invalid parameter"):
        super().__init__(detail=detail)

