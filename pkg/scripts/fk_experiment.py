#!/usr/bin/env python3
"""Compare the Monte Carlo semigroup estimator against the exact values.

Runs the noise-only diffusion from Haar initial points and prints, for each
grid time, the exact inner product, the path-expectation estimate, its
standard error, and the z-score.

Example:
    python scripts/fk_experiment.py --n 2 --energies 1,2 --state 1,2 \
        --t-grid 0.1,0.3,0.6 --paths 20000 --seed 7
"""

import argparse

from spinfock import feynman_kac, fock, hamiltonian


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1)
    parser.add_argument("--energies", default=None, help="comma list, default 1..n")
    parser.add_argument("--state", default="top", help="vacuum | top | comma mode list")
    parser.add_argument("--t-grid", default="0.25,0.5,1.0")
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
    if args.state == "vacuum":
        state = fock.vacuum(args.n)
    elif args.state == "top":
        state = fock.basis_vector(args.n, range(1, args.n + 1))
    else:
        state = fock.basis_vector(args.n, [int(x) for x in args.state.split(",")])
    grid = [float(x) for x in args.t_grid.split(",")]

    rows = feynman_kac.fk_report(state, state, spec, grid, args.paths, args.dt, args.seed)
    print(f"n={args.n} energies={energies} paths={args.paths} dt={args.dt} seed={args.seed}")
    print(f"{'t':>8} {'exact':>12} {'estimate':>24} {'stderr':>10} {'z':>6}")
    for row in rows:
        est = f"{row.rhs_mean.real:+.6f}{row.rhs_mean.imag:+.6f}j"
        print(f"{row.t:8.3f} {row.lhs.real:12.6f} {est:>24} {row.std_error:10.6f} {row.z_score:6.2f}")


if __name__ == "__main__":
    main()
