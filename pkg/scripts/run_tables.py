"""Recompute the calibration tables and list any cells off their printed
values by more than the rounding tolerance."""

import sys

from calvobench.tables import TABLE_NAMES, reproduce_table


def main() -> int:
    any_flag = False
    for name in TABLE_NAMES:
        rpt = reproduce_table(name)
        print(f"Table {name}:")
        for cell in rpt.cells:
            mark = "  *" if cell.flagged else "   "
            print(
                f"{mark} {cell.row:<12} {cell.column:<8} "
                f"computed {cell.computed:+.4f}   printed {cell.printed:+.4f}"
            )
            any_flag = any_flag or cell.flagged
    if any_flag:
        print("\n* cells beyond the 0.001 rounding tolerance")
    return 0


if __name__ == "__main__":
    sys.exit(main())
