"""Run the identity check suites and print a summary table.

Example::

    python scripts/run_check_report.py --suite all --seed 0 --json report.json
"""

from __future__ import annotations

import argparse
import json
import time

from siegel_theta.checks import SUITES, run_suites


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--suite", action="append", choices=(*SUITES, "all"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="also write the records here")
    args = p.parse_args(argv)

    start = time.perf_counter()
    cases = run_suites(args.suite or ["all"], seed=args.seed)
    elapsed = time.perf_counter() - start

    width = max(len(c.id) for c in cases)
    for c in cases:
        mark = "pass" if c.passed else "FAIL"
        print(f"{c.id:<{width}}  {c.residual:11.3e}  <= {c.tolerance:8.1e}  {mark}")
    n_fail = sum(not c.passed for c in cases)
    print(f"\n{len(cases) - n_fail}/{len(cases)} passed in {elapsed:.1f} s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([c.as_record() for c in cases], fh, indent=2)
    return 0 if n_fail == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
