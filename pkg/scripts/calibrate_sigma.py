#!/usr/bin/env python3
"""Fit the diffusion decay rate under both noise-scaling conventions.

The autocorrelation of a matrix coefficient under the noise-only process
decays exponentially. Matching the second-order operator requires noise
scales sqrt(2 E'_j) ("corrected"), which this script confirms by fitting the
observed rate against the two candidates (1/2) sum E_k and (1/4) sum E_k.

Example:
    python scripts/calibrate_sigma.py --n 1 --paths 10000 --seed 3
"""

import argparse

from spinfock import hamiltonian, sde


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1)
    parser.add_argument("--energies", default=None, help="comma list, default 1..n")
    parser.add_argument("--t-max", type=float, default=1.0)
    parser.add_argument("--points", type=int, default=11)
    parser.add_argument("--dt", type=float, default=1e-3)
    parser.add_argument("--paths", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    return parser.parse_args()


def main():
    args = parse_args()
    energies = (
        tuple(float(k) for k in range(1, args.n + 1))
        if args.energies is None
        else tuple(float(x) for x in args.energies.split(","))
    )
    spec = hamiltonian.HamiltonianSpec(args.n, energies)
    step = args.t_max / (args.points - 1)
    grid = [round(i * step, 12) for i in range(args.points)]
    total = sum(energies)

    print(f"n={args.n} energies={energies} paths={args.paths} dt={args.dt} seed={args.seed}")
    print(f"candidates: corrected {0.5 * total:.4f}, literal {0.25 * total:.4f}")
    for convention in ("corrected", "paper_literal"):
        rows = sde.decay_curve(spec, grid, args.paths, args.dt, args.seed, convention)
        rate, stderr = sde.fit_decay_rate(rows)
        print(f"{convention:>14}: fitted rate {rate:.4f} +- {stderr:.4f}")


if __name__ == "__main__":
    main()
