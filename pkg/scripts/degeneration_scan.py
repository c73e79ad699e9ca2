"""Scan the family tau(t) = [[b, t], [t, b]] towards the split locus.

Prints chi_2/t, I/t^4 and the theta-divisor torsion at each sample together
with the closed-form limits, so the leading constants can be read off.
"""

from __future__ import annotations

import argparse
import math

import numpy as np

from siegel_theta.cli import parse_complex
from siegel_theta.degeneration import (
    DegenerationFamily,
    check_chi2_limit,
    check_I_limit,
    check_second_deriv_identity,
    kummer_invariant,
    loglog_slope,
)
from siegel_theta.modular_g1 import chi1
from siegel_theta.siegel import chi_g
from siegel_theta.theta import SiegelPoint
from siegel_theta.torsion import torsion_theta_divisor


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--base", default="2i", help="diagonal entry b")
    p.add_argument("--tmin", type=float, default=1e-4)
    p.add_argument("--tmax", type=float, default=1e-2)
    p.add_argument("--n", type=int, default=9)
    args = p.parse_args(argv)

    base = parse_complex(args.base)
    ts = np.geomspace(args.tmax, args.tmin, args.n)
    fam = DegenerationFamily(base, tuple(ts))
    c1 = complex(chi1(base).value)
    e = (0, 0, 0, 1)

    print(f"{'t':>10} {'|chi2/t|':>14} {'|I/t^4|':>14} {'torsion':>14}")
    tors = []
    for t in ts:
        tau = fam.tau_at(t)
        ch = complex(chi_g(2, tau).value) / t
        inv = kummer_invariant(SiegelPoint(tau.tau / 2), e) / t**4
        tors.append(torsion_theta_divisor(2, tau))
        print(f"{t:10.2e} {abs(ch):14.8e} {abs(inv):14.8e} {tors[-1]:14.8e}")

    print(f"\ntorsion log-log slope: {loglog_slope(ts, tors):+.5f}")
    print(f"|pi/2 chi_1^8|       = {math.pi / 2 * abs(c1) ** 8:.8e}")
    print(f"|pi^4/16 chi_1^32|   = {math.pi**4 / 16 * abs(c1) ** 32:.8e}")
    for report in (check_second_deriv_identity(base), check_chi2_limit(base), check_I_limit(base)):
        print(f"\n{report.name}")
        for c in report.cases:
            print(f"  {c.id:<48} {c.residual:10.3e}  {'pass' if c.passed else 'FAIL'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
