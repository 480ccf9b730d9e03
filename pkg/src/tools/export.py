"""
Linkform - Export Tools Module

CSV and JSON Lines output for censuses, JSON for single reports.
"""

import csv
import io
import json
from collections.abc import Iterable
from pathlib import Path
from typing import Any, Literal, TextIO

from ..state import CensusRow, ClassificationReport

CENSUS_COLUMNS = ("a1", "a2", "a3", "b1", "b2", "b3", "n", "h4_order", "rho", "kappa", "verdict", "egs_prime")

RESOURCE_EXCEEDED_MARKER = "ResourceExceeded"

CensusFormat = Literal["csv", "jsonl"]


def row_to_dict(row: CensusRow) -> dict[str, Any]:
    """Flat record of a census row; `error` is present only on failed rows."""
    out: dict[str, Any] = dict(row.params.field_dict())
    out.update(
        n=row.n,
        h4_order=row.h4_order,
        rho=row.rho,
        kappa=row.kappa,
        verdict=row.verdict.value if row.verdict is not None else None,
        egs_prime=row.egs_prime,
    )
    if row.error is not None:
        out["verdict"] = RESOURCE_EXCEEDED_MARKER
        out["error"] = row.error
    return out


def _write_csv(rows: Iterable[CensusRow], handle: TextIO) -> int:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CENSUS_COLUMNS)
    count = 0
    for row in rows:
        record = row_to_dict(row)
        writer.writerow(["" if record[c] is None else record[c] for c in CENSUS_COLUMNS])
        count += 1
    return count


def row_to_json(row: CensusRow) -> str:
    """One JSON Lines record."""
    return json.dumps(row_to_dict(row))


def _write_jsonl(rows: Iterable[CensusRow], handle: TextIO) -> int:
    count = 0
    for row in rows:
        handle.write(row_to_json(row) + "\n")
        count += 1
    return count


def rows_to_csv_text(rows: Iterable[CensusRow]) -> str:
    """Census rows as CSV text with the fixed header."""
    buffer = io.StringIO()
    _write_csv(rows, buffer)
    return buffer.getvalue()


def write_census(rows: Iterable[CensusRow], path: Path, fmt: CensusFormat = "csv") -> int:
    """
    Stream census rows to a file.

    Args:
        rows: Rows in output order
        path: Destination file
        fmt: "csv" or "jsonl"

    Returns:
        Number of rows written

    Raises:
        OSError: if the file cannot be written
    """
    with open(path, "w", encoding="utf-8", newline="") as handle:
        if fmt == "csv":
            return _write_csv(rows, handle)
        return _write_jsonl(rows, handle)


def report_to_json(report: ClassificationReport) -> str:
    """Pretty-printed JSON for one classification report."""
    return json.dumps(report.to_json_dict(), indent=2)
