"""Regenerate the noise-threshold comparison tables and write them as CSV.

Usage::

    python3 scripts/reproduce_tables.py [--out tables.csv] [--kappa 1.0]
"""
import argparse
from pathlib import Path

from skewmum.reports import table_text, tables_csv
from skewmum.thresholds import TABLE_IDS, reproduce_table


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=None, help="CSV output path (default: print text tables)")
    parser.add_argument("--kappa", type=float, default=None)
    args = parser.parse_args()

    comps = [reproduce_table(tid, kappa=args.kappa) for tid in TABLE_IDS]
    if args.out is None:
        for comp in comps:
            print(table_text(comp))
            print()
    else:
        args.out.write_text(tables_csv(comps))
        print(f"wrote {len(comps)} tables to {args.out}")


if __name__ == "__main__":
    main()
