"""Monte Carlo verification of the semigroup inner-product identity.

For embedded matrix coefficients f = F(psi), g = F(phi) the semigroup inner
product (f, e^{-tH} g) over the group equals the path expectation

    E[ conj(f(X(0))) * (e^{-tS} phi-coefficient)(X(t)) ],

where X is the noise-only diffusion started from Haar measure, and
S = sum_k E_k (N_k - 1/2) is the self-adjoint spin matrix of the first-order
part times i. The exact left side reduces to 2^{-n} <psi, e^{-tH_num} phi>
with H_num the diagonal number Hamiltonian; the 2^{-n} is the Schur
orthogonality factor of the 2^n-dimensional representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hamiltonian, sde, spin_group
from .errors import DomainError, SizeError
from .fock import FockVector
from .hamiltonian import HamiltonianSpec


@dataclass(frozen=True)
class FKEstimate:
    mean: complex
    std_error: float
    n_paths: int
    lhs_exact: complex
    z_score: float


@dataclass(frozen=True)
class FKRow:
    t: float
    lhs: complex
    rhs_mean: complex
    std_error: float
    z_score: float


def fk_lhs_exact(psi: FockVector, phi: FockVector, spec: HamiltonianSpec, t: float) -> complex:
    """2^{-n} <psi, e^{-t H} phi> with H the diagonal number Hamiltonian."""
    if psi.n != spec.n or phi.n != spec.n:
        raise SizeError("mode counts differ")
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    diag = hamiltonian.number_hamiltonian_diagonal(spec)
    weights = np.exp(-t * diag)
    return complex(np.sum(np.conj(psi.amplitudes) * weights * phi.amplitudes) / (1 << spec.n))


def _phase_evolved(phi: FockVector, spec: HamiltonianSpec, t: float) -> np.ndarray:
    s_mat = hamiltonian.ib0_spin_matrix(spec)
    return hamiltonian.exact_semigroup(s_mat, t) @ phi.amplitudes


def fk_report(
    psi: FockVector,
    phi: FockVector,
    spec: HamiltonianSpec,
    t_grid,
    n_paths: int,
    dt: float,
    seed: int,
) -> list:
    """Exact-vs-Monte-Carlo comparison over a time grid, sharing one ensemble.

    Deterministic given the seed. Returns one FKRow per grid time.
    """
    if psi.n != spec.n or phi.n != spec.n:
        raise SizeError("mode counts differ")
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        return []
    if n_paths < 100:
        raise SizeError(f"need at least 100 paths, got {n_paths}")
    for t in t_grid:
        if t < 0:
            raise DomainError(f"grid times must be >= 0, got {t}")
    horizon = max(t_grid)
    config = sde.SDEConfig(spec, "p0", dt, horizon, "corrected", seed)
    chi = {t: _phase_evolved(phi, spec, t) for t in t_grid}
    values = {t: [] for t in t_grid}
    for _, u0, snaps in sde.evolve_ensemble(config, n_paths, t_grid):
        a0 = np.einsum("pab,b->pa", u0, psi.amplitudes)[:, 0]
        for t in t_grid:
            at = np.einsum("pab,b->pa", snaps[t], chi[t])[:, 0]
            values[t].append(np.conj(a0) * at)
    rows = []
    for t in t_grid:
        mean, stderr = spin_group.complex_mean_stderr(np.concatenate(values[t]))
        lhs = fk_lhs_exact(psi, phi, spec, t)
        gap = abs(mean - lhs)
        z = gap / stderr if stderr > 0 else (0.0 if gap == 0 else float("inf"))
        rows.append(FKRow(t, lhs, mean, stderr, z))
    return rows


def fk_rhs_mc(
    psi: FockVector,
    phi: FockVector,
    spec: HamiltonianSpec,
    t: float,
    n_paths: int,
    dt: float,
    seed: int,
) -> FKEstimate:
    """Path-expectation estimate of the semigroup inner product at one time."""
    (row,) = fk_report(psi, phi, spec, [t], n_paths, dt, seed)
    return FKEstimate(row.rhs_mean, row.std_error, n_paths, row.lhs, row.z_score)
