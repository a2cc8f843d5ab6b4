# src/main.py
import argparse
import logging
import sys
from typing import List, Optional

from commands import run_table, run_verify
from core.config import app_config, settings
from schemas.cli_schemas import ALL_IDENTITIES, CliConfig, OutputFormat, Subcommand
from schemas.family_schemas import ComputationPath, FamilyKind
from schemas.identity_schemas import IDENTITY_ALIASES, IdentityId, XMode
from utils.exception_handler import handle_cli_exception
from utils.logger import set_log_level, setup_logger

logger = setup_logger("QBOOLE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=app_config.APP_NAME, description=app_config.DESCRIPTION)
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {app_config.APP_VERSION}"
    )
    parser.add_argument(
        "--verbose", action="store_true", help="Debug diagnostics on stderr"
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    table = subparsers.add_parser("table", help="Emit one family for n = 0..n_max")
    table.add_argument(
        "--family", required=True, choices=[f.value for f in FamilyKind]
    )
    table.add_argument("--n-max", dest="n_max", type=int, default=settings.DEFAULT_N_MAX)
    table.add_argument("--order", "-k", dest="order", type=int, default=1)
    table.add_argument("--lambda", dest="lambda", help="Rational 'p/q', nonzero")
    table.add_argument("--x", dest="x", default="0", help="'sym' or a rational 'p/q'")
    table.add_argument("--q", dest="q", default="sym", help="'sym' or a rational 'p/q'")
    table.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=settings.DEFAULT_FORMAT,
    )
    table.add_argument(
        "--path",
        choices=[p.value for p in ComputationPath],
        help="Computation path (default: genfunc, recurrence for Euler values)",
    )

    verify = subparsers.add_parser("verify", help="Run identity checks")
    verify.add_argument(
        "--identity",
        default=ALL_IDENTITIES,
        choices=[ALL_IDENTITIES] + [i.value for i in IdentityId] + list(IDENTITY_ALIASES),
    )
    verify.add_argument("--n-max", dest="n_max", type=int, default=settings.DEFAULT_N_MAX)
    verify.add_argument(
        "--order-max", dest="order_max", type=int, default=settings.DEFAULT_ORDER_MAX
    )
    verify.add_argument(
        "--lambdas",
        default=",".join(settings.DEFAULT_LAMBDAS),
        help="Comma separated rationals",
    )
    verify.add_argument(
        "--x", dest="x_mode", choices=[m.value for m in XMode], default=XMode.SYMBOLIC.value
    )
    verify.add_argument("--samples", type=int, default=settings.SAMPLED_X_COUNT)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument(
        "--timing", action="store_true", help="Include per-identity timings in the report"
    )
    verify.add_argument(
        "--format",
        choices=[OutputFormat.JSON.value, OutputFormat.PRETTY.value],
        default=OutputFormat.JSON.value,
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help / --version
        return int(e.code or 0)

    if args.verbose:
        set_log_level(logging.DEBUG)

    try:
        cfg = CliConfig.model_validate(vars(args))
        logger.debug(f"Running {cfg.subcommand} with {cfg.model_dump(by_alias=True)}")
        if cfg.subcommand == Subcommand.TABLE:
            return run_table(cfg)
        return run_verify(cfg)
    except Exception as e:
        return handle_cli_exception(e)


if __name__ == "__main__":
    sys.exit(main())
