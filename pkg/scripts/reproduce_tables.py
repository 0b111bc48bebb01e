#!/usr/bin/env python3
"""Reproduce the four benchmark error tables and write them as CSV.

Runs every built-in problem at the default settings (series degree 12, one
correction), prints the solved constants and the error table on the 0(0.1)1
grid, and stores one CSV per problem next to an overall summary.  The
published reference rows for comparison live in the test suite; this script
only regenerates our side of the tables.
"""

from __future__ import annotations

import argparse
import pathlib

from vihpm import builtin, emit_csv, error_table, solve

GRID = tuple(i / 10 for i in range(11))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        type=pathlib.Path,
        default=pathlib.Path("tables"),
        help="output directory for CSV files (default: ./tables)",
    )
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    summary = []
    for n in range(1, 5):
        spec = builtin(n)
        result = solve(spec)
        table = error_table(spec, result, GRID)
        print(f"problem {n}: newton steps {result.newton_iterations}, "
              f"boundary residual {result.bc_residual_norm:.3e}")
        for degree, value in zip(spec.unknown_degrees(), result.constants):
            print(f"  coefficient of x^{degree}: {value!r}")
        for row in table.rows:
            print(f"  x={row.x:.1f}  exact={row.exact:+.12e}  "
                  f"approx={row.approx:+.12e}  error={row.abs_error:.6e}")
        print(f"  max abs error: {table.max_abs_error:.6e}")
        print()
        path = args.out / f"problem_{n}.csv"
        with path.open("w", encoding="utf-8") as handle:
            emit_csv(table, handle)
        summary.append((n, table.max_abs_error, result.newton_iterations))

    print("summary (problem, max abs error, newton steps):")
    for n, err, steps in summary:
        print(f"  {n}  {err:.6e}  {steps}")
    print(f"CSV tables written to {args.out}/")


if __name__ == "__main__":
    main()
