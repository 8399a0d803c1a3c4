"""Fermionic Fock space over n modes, with ladder operators.

Basis states are indexed by occupation bitmasks ``S``: bit ``j-1`` set means
mode ``j`` is occupied. The vacuum is bitmask 0. Creation of mode ``j`` on a
basis state picks up the Jordan-Wigner sign ``(-1)**(# occupied modes < j)``,
which is the sign produced by sorting ``e_j`` into an ascending wedge word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import IndexRangeError, SizeError

# Dense 2^n x 2^n matrices must stay desk-sized.
MAX_MODES = 12


def fock_dim(n: int) -> int:
    """Dimension 2**n of the n-mode Fock space."""
    return 1 << n


def check_mode_count(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_MODES:
        raise SizeError(f"mode count must be an integer in [1, {MAX_MODES}], got {n!r}")


def _check_mode(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise IndexRangeError(f"mode index must satisfy 1 <= j <= {n}, got {j}")


@dataclass(frozen=True, eq=False)
class FockVector:
    """A state in the 2^n-dimensional occupation-number basis."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        check_mode_count(self.n)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (fock_dim(self.n),):
            raise SizeError(
                f"amplitude vector must have length {fock_dim(self.n)}, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def apply(self, matrix: np.ndarray) -> "FockVector":
        """Apply a 2^n x 2^n operator matrix to this state."""
        return FockVector(self.n, matrix @ self.amplitudes)


def vacuum(n: int) -> FockVector:
    amps = np.zeros(fock_dim(n), dtype=complex)
    amps[0] = 1.0
    return FockVector(n, amps)


def basis_vector(n: int, modes: Iterable[int] = ()) -> FockVector:
    """Basis state e_{j1} ^ ... ^ e_{jk} for the given set of occupied modes."""
    check_mode_count(n)
    mask = 0
    for j in modes:
        _check_mode(j, n)
        if mask & (1 << (j - 1)):
            raise IndexRangeError(f"mode {j} listed twice")
        mask |= 1 << (j - 1)
    amps = np.zeros(fock_dim(n), dtype=complex)
    amps[mask] = 1.0
    return FockVector(n, amps)


@dataclass(frozen=True)
class FockBasis:
    """The indexed family of 2^n orthonormal basis vectors."""

    n: int
    states: tuple

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, mask: int) -> FockVector:
        return self.states[mask]


def make_fock_space(n: int) -> FockBasis:
    """All 2^n occupation-basis vectors, indexed by bitmask; mask 0 is the vacuum."""
    check_mode_count(n)
    dim = fock_dim(n)
    eye = np.eye(dim, dtype=complex)
    return FockBasis(n, tuple(FockVector(n, eye[:, mask]) for mask in range(dim)))


def fock_inner(v: FockVector, w: FockVector) -> complex:
    """Hermitian inner product, antilinear in the first argument."""
    if v.n != w.n:
        raise SizeError(f"mode counts differ: {v.n} != {w.n}")
    return complex(np.vdot(v.amplitudes, w.amplitudes))


@dataclass(frozen=True)
class LadderOperator:
    """Creation or annihilation operator for one mode, as a dense matrix."""

    mode: int
    kind: str  # "creation" | "annihilation"
    n: int
    matrix: np.ndarray


def _creation_matrix(j: int, n: int) -> np.ndarray:
    dim = fock_dim(n)
    bit = 1 << (j - 1)
    below = bit - 1
    m = np.zeros((dim, dim), dtype=complex)
    for mask in range(dim):
        if mask & bit:
            continue
        sign = -1.0 if (mask & below).bit_count() % 2 else 1.0
        m[mask | bit, mask] = sign
    return m


def ladder(j: int, kind: str, n: int) -> LadderOperator:
    """Ladder operator c_j (annihilation) or c_j^dagger (creation)."""
    check_mode_count(n)
    _check_mode(j, n)
    if kind not in ("creation", "annihilation"):
        raise ValueError(f"kind must be 'creation' or 'annihilation', got {kind!r}")
    created = _creation_matrix(j, n)
    matrix = created if kind == "creation" else created.conj().T
    return LadderOperator(j, kind, n, matrix)


def creation(j: int, n: int) -> np.ndarray:
    return ladder(j, "creation", n).matrix


def annihilation(j: int, n: int) -> np.ndarray:
    return ladder(j, "annihilation", n).matrix


def number_operator(j: int, n: int) -> np.ndarray:
    """N_j = c_j^dagger c_j (diagonal in the occupation basis)."""
    c = creation(j, n)
    return c @ c.conj().T
