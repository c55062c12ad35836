# Set-literal grammar and the JSON-lines report schema

import json
import math
from dataclasses import asdict
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, IO, Iterable, List

from ..errors import MalformedParams
from ..types import CheckReport

SCHEMA_VERSION = 1

# Integers past this magnitude are written as decimal strings
_JSON_SAFE_INT = 2 ** 53


def parse_int_list(field: str, text: str) -> List[int]:
    """'1,2,4' -> [1, 2, 4]; the empty literal is the empty set."""
    text = text.strip().strip("{}[]")
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise MalformedParams(field, f"expected comma-separated integers, got {text!r}") from None


def parse_rational_list(field: str, text: str) -> List[Fraction]:
    """'1/2,3,-4/7' -> Fractions."""
    text = text.strip().strip("{}[]")
    if not text:
        return []
    try:
        return [Fraction(tok.strip()) for tok in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise MalformedParams(field, f"expected comma-separated num/den tokens, got {text!r}") from None


def to_jsonable(value: Any, big_ints_as_strings: bool = False) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, int):
        if big_ints_as_strings or abs(value) >= _JSON_SAFE_INT:
            return str(value)
        return value
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    return str(value)


def report_to_dict(report: CheckReport) -> Dict[str, Any]:
    raw = asdict(report)
    out = {key: to_jsonable(val) for key, val in raw.items() if key != "lhs"}
    out["lhs"] = to_jsonable(report.lhs, big_ints_as_strings=True)
    out["schema"] = SCHEMA_VERSION
    return out


def report_to_json(report: CheckReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True)


def write_reports(reports: Iterable[CheckReport], stream: IO[str]):
    for report in reports:
        stream.write(report_to_json(report))
        stream.write("\n")


def read_reports(path: str) -> List[Dict[str, Any]]:
    """Load a JSON-lines report file as plain dicts."""
    records = []
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise MalformedParams("reports", f"line {number}: {exc.msg}") from None
                if not isinstance(record, dict) or "check_id" not in record:
                    raise MalformedParams("reports", f"line {number}: not a check report")
                records.append(record)
    except OSError as exc:
        raise MalformedParams("reports", str(exc)) from None
    return records
