"""Error tables against reference solutions and CSV emission."""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Sequence

from .problems import ProblemSpec
from .series import Series, evaluate
from .solver import SolveResult

__all__ = [
    "ErrorRow",
    "ErrorTable",
    "error_table",
    "max_abs_error",
    "emit_csv",
    "emit_series_csv",
]


@dataclass(frozen=True)
class ErrorRow:
    """One grid point: reference value (if known), series value, defect."""

    x: float
    exact: float | None
    approx: float
    abs_error: float | None


@dataclass(frozen=True)
class ErrorTable:
    rows: tuple[ErrorRow, ...]
    max_abs_error: float | None


def error_table(
    spec: ProblemSpec, result: SolveResult, grid: Sequence[float]
) -> ErrorTable:
    """Tabulate the solved series against the reference on a grid.

    Without a reference solution the exact and error columns stay empty.
    The grid must be strictly increasing so emitted tables read naturally.
    """
    grid = [float(x) for x in grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    rows = []
    worst: float | None = None
    for x in grid:
        approx = evaluate(result.solution, x)
        if spec.exact is not None:
            exact = spec.exact.evaluate(x)
            err = abs(approx - exact)
            worst = err if worst is None else max(worst, err)
        else:
            exact = None
            err = None
        rows.append(ErrorRow(x=x, exact=exact, approx=approx, abs_error=err))
    return ErrorTable(rows=tuple(rows), max_abs_error=worst)


def max_abs_error(table: ErrorTable) -> float:
    """Largest defect in the table; requires a reference solution."""
    if table.max_abs_error is None:
        raise ValueError("table has no reference solution to compare against")
    return table.max_abs_error


def _fmt(value: float | None) -> str:
    # 17 significant digits round-trip doubles exactly
    return "" if value is None else format(value, ".17g")


def emit_csv(table: ErrorTable, destination: IO[str]) -> None:
    """Write the table as CSV; absent values become empty fields."""
    destination.write("x,exact,approx,abs_error\n")
    for row in table.rows:
        destination.write(
            f"{_fmt(row.x)},{_fmt(row.exact)},{_fmt(row.approx)},"
            f"{_fmt(row.abs_error)}\n"
        )


def emit_series_csv(solution: Series, destination: IO[str]) -> None:
    """Write the solution coefficients as a degree,coefficient CSV."""
    destination.write("degree,coefficient\n")
    for degree, c in enumerate(solution.coeffs):
        destination.write(f"{degree},{_fmt(c)}\n")
