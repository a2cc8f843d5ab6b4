# src/services/render_service.py
"""
Encoders for table records and identity reports.

Every number leaves the process as a base-10 string ("3", "-1/2"), since
coefficients outgrow 64-bit integers quickly. A QRatFunc with symbolic q
becomes {"num": [...], "den": [...]} with ascending coefficients; with a
rational q it becomes a single fraction string. An XPoly becomes a dense
ascending list of [degree, value] pairs.
"""

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from rich import box
from rich.console import Console
from rich.table import Table

from models.exactnum import QPoly, QRatFunc, eval_at_q
from models.xpoly import XPoly
from schemas.identity_schemas import CheckStatus, VerifyReport
from schemas.table_schemas import TableRecord

EncodedValue = Union[str, Dict[str, List[str]], List[list]]

CSV_COLUMNS = ["family", "n", "k", "lambda", "x", "q", "degree", "num", "den"]
PRETTY_WIDTH = 160


def _encode_poly(poly: QPoly) -> List[str]:
    return [str(c) for c in poly.coeffs] or ["0"]


def encode_value(value: Any, q: Optional[Fraction] = None) -> EncodedValue:
    """JSON-ready form of a scalar, QRatFunc or XPoly, optionally taken at q = q0"""
    if isinstance(value, XPoly):
        return [[i, encode_value(c, q)] for i, c in enumerate(value.coeffs)]
    if isinstance(value, QRatFunc):
        if q is not None:
            return str(eval_at_q(value, q))
        return {"num": _encode_poly(value.num), "den": _encode_poly(value.den)}
    if isinstance(value, (int, Fraction)):
        return str(value)
    raise TypeError(f"Cannot encode {type(value).__name__}")


def decode_value(data: EncodedValue) -> Union[Fraction, QRatFunc, XPoly]:
    """Inverse of encode_value; the result is canonicalized again"""
    if isinstance(data, str):
        return Fraction(data)
    if isinstance(data, dict):
        num = QPoly(tuple(Fraction(c) for c in data["num"]))
        den = QPoly(tuple(Fraction(c) for c in data["den"]))
        return QRatFunc(num, den)
    coeffs: List[QRatFunc] = []
    for degree, item in data:
        while len(coeffs) < degree:
            coeffs.append(QRatFunc.zero())
        decoded = decode_value(item)
        coeffs.append(decoded if isinstance(decoded, QRatFunc) else QRatFunc.constant(decoded))
    return XPoly(tuple(coeffs))


def _dump(model) -> Dict[str, Any]:
    return model.model_dump(mode="json", by_alias=True)


def _to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _text_table(table: Table) -> str:
    buffer = io.StringIO()
    console = Console(
        file=buffer, width=PRETTY_WIDTH, color_system=None, force_terminal=False
    )
    console.print(table)
    return buffer.getvalue()


class RenderService:
    # tables

    def table_json(self, records: Sequence[TableRecord]) -> str:
        return _to_json([_dump(r) for r in records])

    def table_csv(self, records: Sequence[TableRecord]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for record in records:
            head = [
                record.family,
                record.n,
                record.k,
                record.lambda_,
                record.x,
                record.q,
            ]
            for degree, value in self._flatten(record.value):
                writer.writerow(head + [degree] + self._csv_cells(value))
        return buffer.getvalue()

    def _flatten(self, value: EncodedValue) -> List[tuple]:
        if isinstance(value, list):
            return [(degree, item) for degree, item in value]
        return [("", value)]

    def _csv_cells(self, value: Union[str, Dict[str, List[str]]]) -> List[str]:
        if isinstance(value, dict):
            return [";".join(value["num"]), ";".join(value["den"])]
        fraction = Fraction(value)
        return [str(fraction.numerator), str(fraction.denominator)]

    def table_pretty(self, records: Sequence[TableRecord], values: Sequence[Any]) -> str:
        table = Table(box=box.SIMPLE, show_lines=False)
        for column in ("family", "n", "k", "λ", "x", "q", "value"):
            table.add_column(column, overflow="fold")
        for record, value in zip(records, values):
            table.add_row(
                record.family,
                str(record.n),
                str(record.k),
                record.lambda_ or "",
                record.x or "",
                record.q,
                str(value),
            )
        return _text_table(table)

    # reports

    def report_payload(self, report: VerifyReport, timing: bool = False) -> Dict[str, Any]:
        payload = _dump(report)
        if not timing:
            for item in payload["identities"]:
                item.pop("elapsed_ms", None)
        return payload

    def report_json(self, report: VerifyReport, timing: bool = False) -> str:
        return _to_json(self.report_payload(report, timing))

    def report_pretty(self, report: VerifyReport, timing: bool = False) -> str:
        table = Table(box=box.SIMPLE, title=f"status: {report.status}")
        table.add_column("identity")
        table.add_column("status")
        table.add_column("checks", justify="right")
        if timing:
            table.add_column("ms", justify="right")
        table.add_column("first counterexample", overflow="fold")
        for item in report.identities:
            counterexample = ""
            if item.first_counterexample is not None:
                counterexample = ", ".join(
                    f"{key}={value}" for key, value in item.first_counterexample.params.items()
                )
            row = [item.identity_id, item.status, str(item.checks)]
            if timing:
                row.append(f"{item.elapsed_ms:.1f}" if item.elapsed_ms is not None else "")
            row.append(counterexample)
            table.add_row(*row)
        text = _text_table(table)
        for item in report.identities:
            if item.status == CheckStatus.FAIL and item.first_counterexample is not None:
                text += f"\n{item.identity_id}\n  lhs: {json.dumps(item.first_counterexample.lhs)}"
                text += f"\n  rhs: {json.dumps(item.first_counterexample.rhs)}\n"
        return text


render_service = RenderService()
