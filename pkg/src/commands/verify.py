# src/commands/verify.py
import sys
from typing import Optional, TextIO

from core.config import settings
from schemas.cli_schemas import CliConfig, OutputFormat
from schemas.identity_schemas import CheckStatus, IdentityRanges
from services.family_service import FamilyContext
from services.identity_service import identity_service
from services.render_service import render_service
from utils.exception_handler import EXIT_IDENTITY_FAILED, EXIT_OK
from utils.logger import setup_logger

logger = setup_logger("VERIFY_COMMAND")


def ranges_from_config(cfg: CliConfig) -> IdentityRanges:
    return IdentityRanges(
        n_max=cfg.n_max,
        k_max=cfg.order_max,
        lambdas=cfg.lambdas,
        x_mode=cfg.x_mode,
        samples=cfg.samples,
        seed=cfg.seed,
        reflection_n_max=settings.REFLECTION_N_MAX,
    )


def run_verify(
    cfg: CliConfig,
    context: Optional[FamilyContext] = None,
    out: Optional[TextIO] = None,
) -> int:
    """
    Run the selected identities. A context may be injected, for example
    one built on a deliberately corrupted Stirling table.
    """
    out = out or sys.stdout
    report = identity_service.verify_all(
        ranges_from_config(cfg), cfg.identities, ctx=context, timing=cfg.timing
    )

    if cfg.format == OutputFormat.PRETTY:
        out.write(render_service.report_pretty(report, cfg.timing))
    else:
        out.write(render_service.report_json(report, cfg.timing))

    if report.status == CheckStatus.FAIL:
        failed = [r.identity_id for r in report.identities if r.status == CheckStatus.FAIL]
        logger.warning(f"Failed identities: {', '.join(failed)}")
        return EXIT_IDENTITY_FAILED
    return EXIT_OK
