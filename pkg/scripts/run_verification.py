"""Run every verification suite and write the report; exit 2 if any check fails."""

import argparse
import time

from qcohom.verify import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("suites", nargs="*", metavar="SUITE", help=f"any of {', '.join(SUITES)} (default: all)")
    ap.add_argument("--out", help="also write the report here")
    args = ap.parse_args()
    unknown = set(args.suites) - set(SUITES)
    if unknown:
        ap.error(f"unknown suites: {', '.join(sorted(unknown))}")
    lines, failed = [], 0
    for s in args.suites or SUITES:
        t = time.perf_counter()
        results = run_suite(s)
        lines.append(f"## {s} ({time.perf_counter() - t:.1f}s)")
        lines += [r.line() for r in results]
        failed += sum(not r.ok for r in results)
    lines.append(f"{failed} failing checks")
    text = "\n".join(lines)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    raise SystemExit(2 if failed else 0)


if __name__ == "__main__":
    main()
