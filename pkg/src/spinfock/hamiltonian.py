"""Quasi-Hamiltonian assembly and exact matrix semigroups.

For mode energies 0 < E_1 <= ... <= E_n the quasi-Hamiltonian is
H = sum_k E_k D_k^+ D_k^- with D_k^+/- the representation images of the
raising/lowering elements. It decomposes as H = P0 + i B0 where

    P0 = -sum_k E_k L_k,   L_k = rep(X_{2k-1,2n+1})^2 + rep(X_{2k,2n+1})^2,
    B0 = -sum_k E_k T_k,   T_k = rep(X_{2k-1,2k}),

an identity that holds in any representation because it already holds in the
enveloping algebra. In the spin representation P0 is the scalar
(sum_k E_k)/2 and i B0 = sum_k E_k (N_k - 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import so_algebra
from .errors import DomainError, SizeError
from .fock import check_mode_count, fock_dim


@dataclass(frozen=True)
class HamiltonianSpec:
    """Mode count and strictly positive, non-decreasing mode energies."""

    n: int
    energies: tuple

    def __post_init__(self):
        check_mode_count(self.n)
        energies = tuple(float(e) for e in self.energies)
        if len(energies) != self.n:
            raise SizeError(f"need {self.n} energies, got {len(energies)}")
        if energies[0] <= 0 or any(a > b for a, b in zip(energies, energies[1:])):
            raise DomainError(f"energies must satisfy 0 < E_1 <= ... <= E_n, got {energies}")
        object.__setattr__(self, "energies", energies)


@dataclass(frozen=True)
class HamiltonianParts:
    """All operator matrices of the quasi-Hamiltonian in one representation."""

    rep_tag: str
    n: int
    h_tilde: np.ndarray
    p0: np.ndarray
    b0: np.ndarray
    t: tuple  # per-mode Cartan-direction images T_k
    l: tuple  # per-mode second-order images L_k
    d_plus: tuple
    d_minus: tuple


def t_element(k: int, n: int) -> so_algebra.AlgebraElement:
    return so_algebra.basis_element(n, 2 * k - 1, 2 * k)


def b0_element(spec: HamiltonianSpec) -> so_algebra.AlgebraElement:
    """First-order part: B0 = -sum_k E_k X_{2k-1,2k}."""
    out = so_algebra.zero_element(spec.n)
    for k, e in enumerate(spec.energies, start=1):
        out = out + t_element(k, spec.n) * (-e)
    return out


def build_parts(spec: HamiltonianSpec, rep: so_algebra.Representation) -> HamiltonianParts:
    """Assemble H, P0, B0 and the per-mode pieces in the given representation."""
    n = spec.n
    if rep.n != n:
        raise SizeError(f"representation is for n={rep.n}, spec has n={n}")
    N = so_algebra.matrix_size(n)
    t_mats = []
    l_mats = []
    d_plus = []
    d_minus = []
    for k in range(1, n + 1):
        t_mats.append(rep.apply(t_element(k, n)))
        a = rep.apply(so_algebra.basis_element(n, 2 * k - 1, N))
        b = rep.apply(so_algebra.basis_element(n, 2 * k, N))
        l_mats.append(a @ a + b @ b)
        d_plus.append(rep.apply(so_algebra.ladder_element(k, n)))
        d_minus.append(rep.apply(so_algebra.ladder_element(-k, n)))
    dim = d_plus[0].shape[0]
    h = np.zeros((dim, dim), dtype=complex)
    p0 = np.zeros((dim, dim), dtype=complex)
    b0 = np.zeros((dim, dim), dtype=complex)
    for e, tk, lk, dp, dm in zip(spec.energies, t_mats, l_mats, d_plus, d_minus):
        h += e * (dp @ dm)
        p0 -= e * lk
        b0 -= e * tk
    return HamiltonianParts(
        rep.tag, n, h, p0, b0, tuple(t_mats), tuple(l_mats), tuple(d_plus), tuple(d_minus)
    )


def car_residual(parts: HamiltonianParts) -> float:
    """Worst deviation of the D_k^+/- family from the anticommutation relations."""
    dim = parts.d_plus[0].shape[0]
    eye = np.eye(dim)
    worst = 0.0
    n = parts.n
    for j in range(n):
        for k in range(n):
            dm, dp = parts.d_minus[j], parts.d_plus[k]
            delta = eye if j == k else 0.0
            worst = max(worst, np.max(np.abs(dm @ dp + dp @ dm - delta)))
            a, b = parts.d_plus[j], parts.d_plus[k]
            worst = max(worst, np.max(np.abs(a @ b + b @ a)))
            a, b = parts.d_minus[j], parts.d_minus[k]
            worst = max(worst, np.max(np.abs(a @ b + b @ a)))
    return float(worst)


def car_on_subspace_check(parts: HamiltonianParts, tol: float = 1e-12) -> bool:
    """Whether the representation images of the ladder elements satisfy the CAR.

    True in the spin representation; false in the defining representation,
    where the relations only hold after projection onto the embedded subspace.
    """
    return car_residual(parts) <= tol


def exact_semigroup(m: np.ndarray, t: float) -> np.ndarray:
    """e^{-t m} for Hermitian m, via eigendecomposition."""
    m = np.asarray(m, dtype=complex)
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.conj().T)) > 1e-10 * scale:
        raise DomainError("matrix is not Hermitian within 1e-10")
    w, v = np.linalg.eigh(m)
    return (v * np.exp(-t * w)) @ v.conj().T


def number_hamiltonian_diagonal(spec: HamiltonianSpec) -> np.ndarray:
    """Diagonal of sum_k E_k N_k in the occupation basis (independent route)."""
    diag = np.zeros(fock_dim(spec.n))
    for mask in range(fock_dim(spec.n)):
        diag[mask] = sum(
            e for k, e in enumerate(spec.energies, start=1) if mask >> (k - 1) & 1
        )
    return diag


def subset_sums(spec: HamiltonianSpec) -> np.ndarray:
    """Sorted multiset { sum_{k in S} E_k : S subset of modes }."""
    sums = []
    for r in range(spec.n + 1):
        for combo in combinations(spec.energies, r):
            sums.append(sum(combo))
    return np.sort(np.array(sums))


def ib0_spin_matrix(spec: HamiltonianSpec) -> np.ndarray:
    """Hermitian matrix of i B0 in the spin representation, sum_k E_k (N_k - 1/2)."""
    return 1j * so_algebra.spin_rep(b0_element(spec))
