"""Build the Kummer quartic at one period matrix and report its invariants."""

from __future__ import annotations

import argparse

import numpy as np

from siegel_theta.checks import random_siegel
from siegel_theta.cli import parse_tau
from siegel_theta.kummer import KummerModel, discriminant_2_2, level2_map, normalize, tangent_plane


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--tau", help="2x2 period matrix; random if omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=200)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    tau = parse_tau(args.tau) if args.tau else random_siegel(2, rng)
    model = KummerModel.at(tau)
    s = model.scale
    print("tau =\n", np.array2string(tau.tau, precision=4))
    for name, c in zip("ABCDE", model.coeffs):
        print(f"{name} = {complex(c.value):.10e}  (err {float(c.err):.1e})")

    xy = rng.uniform(0, 1, size=(args.points, 2, 2))
    w = normalize(level2_map(xy[:, 0] + xy[:, 1] @ tau.tau.T, tau))
    nodes = normalize(model.nodes)
    print(f"\nmax |F(image)|/scale     = {np.max(np.abs(model.F(w).value)) / s:.2e}")
    print(f"max |F(node)|/scale      = {np.max(np.abs(model.F(nodes).value)) / s:.2e}")
    print(f"max |grad F(node)|/scale = {np.max(np.abs(model.grad(nodes))) / s:.2e}")
    duals = normalize(tangent_plane(w[:50], tau))
    print(f"max |F(tangent plane)|/scale = {np.max(np.abs(model.F(duals).value)) / s:.2e}")
    inc = (np.abs(nodes @ nodes.T) < 1e-8).sum(axis=1)
    print(f"tropes through each node: {sorted(set(inc.tolist()))}")

    generic = rng.normal(size=4) + 1j * rng.normal(size=4)
    print(f"\nDelta_2_2(generic u)       = {complex(discriminant_2_2(generic, tau).value.value):.6e}")
    print(f"Delta_2_2(tangent plane u) = {complex(discriminant_2_2(duals[0], tau).value.value):.6e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
