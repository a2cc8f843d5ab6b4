# src/commands/table.py
import sys
from typing import Any, List, Optional, TextIO

from models.exactnum import QRatFunc, eval_at_q
from models.xpoly import XPoly
from schemas.base_schemas import format_rational_or_symbolic
from schemas.cli_schemas import CliConfig, OutputFormat
from schemas.family_schemas import FamilyKind, FamilyValue
from schemas.table_schemas import TableRecord
from services.family_service import FamilyContext, family_service, get_context
from services.render_service import encode_value, render_service
from utils.exception_handler import EXIT_OK
from utils.logger import setup_logger

logger = setup_logger("TABLE_COMMAND")


def _display(value: Any, q) -> Any:
    if q is None:
        return value
    if isinstance(value, XPoly):
        return value.map_coefficients(lambda c: QRatFunc.constant(eval_at_q(c, q)))
    return eval_at_q(value, q)


def to_record(v: FamilyValue, q) -> TableRecord:
    family = FamilyKind(v.family)
    return TableRecord(
        family=family.value,
        n=v.n,
        k=v.k,
        lambda_=str(v.lam) if v.lam is not None else None,
        x=format_rational_or_symbolic(v.x) if family.uses_x else None,
        q=format_rational_or_symbolic(q),
        value=encode_value(v.value, q),
    )


def build_table(cfg: CliConfig, context: Optional[FamilyContext] = None) -> List[FamilyValue]:
    """One family value for every n = 0..n_max, in order"""
    ctx = context or get_context(cfg.n_max)
    family = FamilyKind(cfg.family)
    k = cfg.order if family.uses_order else 1
    return [
        family_service.compute(ctx, family, n, k, cfg.lambda_, cfg.x, cfg.path)
        for n in range(cfg.n_max + 1)
    ]


def run_table(
    cfg: CliConfig,
    context: Optional[FamilyContext] = None,
    out: Optional[TextIO] = None,
) -> int:
    """Compute and write the table; errors propagate to the CLI exception handler"""
    out = out or sys.stdout
    values = build_table(cfg, context)
    records = [to_record(v, cfg.q) for v in values]
    logger.info(f"Computed {len(records)} rows of {cfg.family}")

    if cfg.format == OutputFormat.CSV:
        out.write(render_service.table_csv(records))
    elif cfg.format == OutputFormat.PRETTY:
        out.write(render_service.table_pretty(records, [_display(v.value, cfg.q) for v in values]))
    else:
        out.write(render_service.table_json(records))
    return EXIT_OK
