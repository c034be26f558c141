"""Data ingestion and machine-readable output.

CSV matrices in, full-precision CSV matrices out, plus JSON Lines traces
(one object per outer iteration) so convergence behaviour can be plotted or
diffed without re-running the solver.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .linalg import as_symmetric
from .selfconcordant import IterationTrace

__all__ = [
    "Dataset",
    "CsvFormatError",
    "load_matrix_csv",
    "empirical_covariance",
    "write_matrix_csv",
    "write_trace_jsonl",
    "read_trace_jsonl",
]


class CsvFormatError(ValueError):
    """Malformed CSV input (ragged rows, unparseable numbers)."""


@dataclass(frozen=True)
class Dataset:
    """A parsed input: either sample rows (m x p) or a covariance (p x p)."""

    kind: str  # "samples" or "covariance"
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.kind not in ("samples", "covariance"):
            raise ValueError(f"unknown dataset kind {self.kind!r}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("dataset entries must be finite")
        if self.kind == "covariance":
            object.__setattr__(self, "values", as_symmetric(self.values, atol=1e-8))


def _is_numeric_row(row: list[str]) -> bool:
    try:
        for cell in row:
            float(cell)
    except ValueError:
        return False
    return len(row) > 0


def load_matrix_csv(path: str, kind: str = "covariance") -> Dataset:
    """Load a comma-separated matrix, auto-detecting one optional header row.

    A non-numeric first row is treated as a header and skipped; ragged rows
    or unparseable cells raise :class:`CsvFormatError` with a line number.
    """
    rows: list[list[float]] = []
    width: Optional[int] = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, raw in enumerate(csv.reader(fh), start=1):
            if not raw or (len(raw) == 1 and raw[0].strip() == ""):
                continue  # blank line
            if lineno == 1 and not _is_numeric_row(raw):
                continue  # header
            try:
                parsed = [float(cell) for cell in raw]
            except ValueError as exc:
                raise CsvFormatError(f"{path}: parse error at line {lineno}") from exc
            if width is None:
                width = len(parsed)
            elif len(parsed) != width:
                raise CsvFormatError(
                    f"{path}: ragged row at line {lineno} "
                    f"(expected {width} columns, got {len(parsed)})"
                )
            rows.append(parsed)
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    return Dataset(kind=kind, values=np.array(rows, dtype=float))


def empirical_covariance(samples: Dataset, unbiased: bool = False) -> np.ndarray:
    """Empirical covariance of sample rows.

    Uses the maximum-likelihood 1/m normalization by default; ``unbiased``
    switches to 1/(m-1).
    """
    if samples.kind != "samples":
        raise ValueError("empirical_covariance needs a samples dataset")
    x = samples.values
    m = x.shape[0]
    if m < 2:
        raise ValueError(f"need at least 2 samples, got {m}")
    centered = x - x.mean(axis=0)
    denom = m - 1 if unbiased else m
    return as_symmetric(centered.T @ centered / denom)


def write_matrix_csv(path: str, matrix: np.ndarray) -> None:
    """Write a matrix as comma-separated full-precision decimals, no header."""
    matrix = np.asarray(matrix, dtype=float)
    with open(path, "w", encoding="utf-8") as fh:
        for row in matrix:
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")


def write_trace_jsonl(path: str, trace: Iterable[IterationTrace]) -> None:
    """One JSON object per outer iteration; objective only when recorded."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, row in enumerate(trace):
            rec = {
                "iter": i,
                "lambda": row.lam,
                "alpha": row.alpha,
                "inner_iters": row.inner_iters,
                "elapsed_ms": row.elapsed * 1000.0,
            }
            if row.objective is not None:
                rec["objective"] = row.objective
            fh.write(json.dumps(rec))
            fh.write("\n")


def read_trace_jsonl(path: str) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
