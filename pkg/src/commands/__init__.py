# src/commands/__init__.py
from .table import run_table
from .verify import run_verify

__all__ = ["run_table", "run_verify"]
