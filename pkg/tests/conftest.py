# tests/conftest.py
import pytest

from models.exactnum import QRatFunc, q_number
from services.family_service import get_context


@pytest.fixture
def q() -> QRatFunc:
    return QRatFunc.q()


@pytest.fixture
def two() -> QRatFunc:
    return q_number(2)


@pytest.fixture
def ctx():
    """Fresh memo context sized for the usual n <= 12 sweeps"""
    return get_context(12)


@pytest.fixture(scope="module")
def shared_ctx():
    return get_context(12)
