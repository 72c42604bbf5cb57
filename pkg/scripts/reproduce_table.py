"""Print the integral, twisted and mod-2 cohomology of small real quadrics Q_{p,q}."""

import argparse

from qcohom.cli import render_table, table_sing


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=("md", "csv", "json"), default="md")
    ap.add_argument("pq", nargs="*", default=["4,4", "4,5", "5,5", "5,6"], help="pairs p,q")
    args = ap.parse_args()
    for pair in args.pq:
        p, q = map(int, pair.split(","))
        header, rows = table_sing(p, q)
        print(f"Q_{{{p},{q}}}\n")
        print(render_table(header, rows, args.format))
        print()


if __name__ == "__main__":
    main()
