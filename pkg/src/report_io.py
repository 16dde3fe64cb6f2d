"""Report emission (CSV, JSON, console tables) and the matrix / replay file formats."""

import csv
import io
import json
import logging
import math
import os
import sys
from collections import OrderedDict
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import tabulate

from errors import ReportIOError, ShapeMismatch
from matrix_core import CMatrix, as_cmatrix
from models import BoundReport, Check, OutputFormat, Verdict

logger = logging.getLogger('report_io')

CSV_COLUMNS = ["case_id", "oracle", "bound_name", "bound_value", "verdict", "margin"]
MAX_DETAILED_REPORTS = 10
ENCODING = "utf-8"


def format_number(value: float) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return format(float(value), ".17g")


def _json_number(value: float) -> Optional[float]:
    value = float(value)
    return None if math.isnan(value) else value


def verdict_text(check: Check) -> str:
    if check.verdict is Verdict.SKIPPED:
        return f"SKIPPED({check.reason})"
    return check.verdict.value


# Matrix and input encoding

def matrix_to_json(A) -> Dict[str, Any]:
    """{"rows", "cols", "re", "im"} with row-major entry lists."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise ShapeMismatch(f"only 2-D matrices can be encoded, got shape {A.shape}")
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]),
            "re": [float(x) for x in A.real.ravel()], "im": [float(x) for x in A.imag.ravel()]}


def matrix_from_json(obj: Dict[str, Any]) -> CMatrix:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", [0.0] * (rows * cols)), dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise ReportIOError(f"malformed matrix object: {e}") from e
    if re.size != rows * cols or im.size != rows * cols:
        raise ShapeMismatch(f"matrix declares {rows}x{cols} but has {re.size} real and {im.size} imaginary entries")
    return as_cmatrix((re + 1j * im).reshape(rows, cols))


def encode_value(value: Any) -> Any:
    """Turn report inputs into JSON-safe values; decode_value inverts it."""
    if isinstance(value, np.ndarray) and value.ndim == 2:
        return matrix_to_json(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [encode_value(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return value


def decode_value(value: Any) -> Any:
    if isinstance(value, dict):
        if {"rows", "cols", "re"} <= value.keys():
            return matrix_from_json(value)
        if value.keys() == {"re", "im"}:
            return complex(value["re"], value["im"])
        return {k: decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode_value(v) for v in value]
    return value


# Emission

def _emit_csv(reports: Iterable[BoundReport]) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        for check in report.checks:
            writer.writerow([report.case_id, format_number(report.oracle_value), check.bound_name,
                             format_number(check.bound_value), verdict_text(check), format_number(check.margin)])
    return buffer.getvalue().encode(ENCODING)


def report_to_json(report: BoundReport, with_inputs: Optional[bool] = None) -> Dict[str, Any]:
    """Inputs are included for reports with a violation unless with_inputs says otherwise."""
    obj = OrderedDict(case_id=report.case_id, suite=report.suite,
                      oracle=_json_number(report.oracle_value),
                      slack_used=_json_number(report.slack_used),
                      checks=[OrderedDict(bound_name=c.bound_name, bound_value=_json_number(c.bound_value),
                                          verdict=verdict_text(c), margin=_json_number(c.margin))
                              for c in report.checks])
    if with_inputs if with_inputs is not None else report.violated:
        obj["inputs"] = encode_value(report.inputs)
    return obj


def _emit_json(reports: Iterable[BoundReport], with_inputs: Optional[bool]) -> bytes:
    payload = [report_to_json(r, with_inputs) for r in reports]
    return (json.dumps(payload, indent=2, allow_nan=False) + "\n").encode(ENCODING)


def _ranked_table(report: BoundReport) -> str:
    ranked = report.ranked_bounds()
    rows = [[rank, c.bound_name, format(c.bound_value, ".12g"), format(c.margin, ".3e"), verdict_text(c)]
            for rank, c in enumerate(ranked, start=1)]
    return tabulate.tabulate(rows, ["Rank", "Bound", "Value", "Margin", "Verdict"], tablefmt="grid")


def _checks_table(report: BoundReport) -> str:
    rows = [[c.bound_name, format_number(c.bound_value), format_number(c.margin), verdict_text(c)]
            for c in report.checks if not c.upper_bound]
    return tabulate.tabulate(rows, ["Check", "Value", "Margin", "Verdict"], tablefmt="grid")


def _summary_table(reports: List[BoundReport]) -> str:
    stats: Dict[str, List] = OrderedDict()
    for report in reports:
        for c in report.checks:
            entry = stats.setdefault(c.bound_name, [0, 0, 0, math.inf])
            entry[0] += c.verdict is Verdict.HOLDS
            entry[1] += c.verdict is Verdict.VIOLATED
            entry[2] += c.verdict is Verdict.SKIPPED
            if c.verdict is not Verdict.SKIPPED:
                entry[3] = min(entry[3], c.margin)
    rows = [[name, h, v, s, "" if math.isinf(m) else format(m, ".3e")] for name, (h, v, s, m) in stats.items()]
    return tabulate.tabulate(rows, ["Check", "Holds", "Violated", "Skipped", "Worst margin"], tablefmt="grid")


def _emit_human(reports: List[BoundReport]) -> bytes:
    lines = []
    if len(reports) <= MAX_DETAILED_REPORTS:
        for report in reports:
            lines.append("--------------------")
            lines.append(f"{report.case_id} ({report.suite})  oracle = {report.oracle_value:.12g}")
            lines.append("--------------------")
            if report.ranked_bounds():
                lines.append("Bounds, tightest first:")
                lines.append(_ranked_table(report))
            if any(not c.upper_bound for c in report.checks):
                lines.append(_checks_table(report))
            lines.append("")
    else:
        lines.append(_summary_table(reports))
    violated = [r for r in reports if r.violated]
    lines.append("--------------------")
    lines.append(f"{len(reports)} reports, {len(violated)} with violations")
    for report in violated:
        for c in report.violations:
            lines.append(f"  {report.case_id}: {c.bound_name} violated by {-c.margin:.3e}")
    lines.append("--------------------")
    return ("\n".join(lines) + "\n").encode(ENCODING)


def emit(reports: Iterable[BoundReport], fmt=OutputFormat.CSV, with_inputs: Optional[bool] = None) -> bytes:
    """Serialize reports; UTF-8 with LF line endings."""
    reports = list(reports)
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.CSV:
        return _emit_csv(reports)
    if fmt is OutputFormat.JSON:
        return _emit_json(reports, with_inputs)
    return _emit_human(reports)


def write_output(data: bytes, path: Optional[str] = None):
    """Write to path, or to stdout when path is None."""
    try:
        if path is None:
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
            return
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "wb") as f:
            f.write(data)
        logger.info(f"Wrote {len(data)} bytes to {path}")
    except OSError as e:
        logger.error(f"Error writing {path or 'stdout'}: {e}")
        raise ReportIOError(f"cannot write {path or 'stdout'}: {e}") from e


# Reading

def _read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding=ENCODING) as f:
            return json.load(f)
    except OSError as e:
        logger.error(f"Error reading {path}: {e}")
        raise ReportIOError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {path}: {e}")
        raise ReportIOError(f"{path} is not valid JSON: {e}") from e


def load_matrix(path: str) -> CMatrix:
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise ReportIOError(f"{path} must hold a single matrix object")
    return matrix_from_json(obj)


def load_replay_cases(path: str) -> List[Dict[str, Any]]:
    """Cases with stored inputs from a JSON report file: dicts with case_id, suite, inputs."""
    payload = _read_json(path)
    if isinstance(payload, dict):
        payload = [payload]
    if not isinstance(payload, list):
        raise ReportIOError(f"{path} must hold a JSON array of reports")
    cases = []
    for entry in payload:
        if not isinstance(entry, dict) or "case_id" not in entry:
            raise ReportIOError(f"{path} has an entry without a case_id")
        if "inputs" not in entry:
            continue
        cases.append({"case_id": entry["case_id"], "suite": entry.get("suite", ""),
                      "inputs": decode_value(entry["inputs"])})
    logger.info(f"Loaded {len(cases)} replayable cases from {path}")
    return cases
