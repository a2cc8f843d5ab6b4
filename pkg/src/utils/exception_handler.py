# src/utils/exception_handler.py
from pydantic import ValidationError
from .logger import setup_logger
from .exceptions import BaseQBooleException, PoleException

logger = setup_logger("EXCEPTION HANDLER")

EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_USAGE = 2


def _validation_message(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error.get("loc", ()))
        message = error.get("msg", "invalid value")
        parts.append(f"{location}: {message}" if location else message)
    return "; ".join(parts)


def handle_cli_exception(exc: BaseException) -> int:
    """Log an exception raised while serving a CLI command and pick the exit code"""
    if isinstance(exc, ValidationError):
        logger.warning(f"Configuration error: {_validation_message(exc)}")
        return EXIT_USAGE

    if isinstance(exc, PoleException):
        # Every family value has a denominator built from powers of 1+q,
        # a pole anywhere else points at a bug
        logger.error(f"Unexpected pole: {exc.detail}", exc_info=True)
        return exc.exit_code

    if isinstance(exc, BaseQBooleException):
        logger.warning(f"{exc.__class__.__name__}: {exc.detail}")
        return exc.exit_code

    logger.error(f"Unexpected error: {str(exc)}", exc_info=True)
    return EXIT_USAGE
