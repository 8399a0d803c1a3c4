"""Group-level machinery on SO(2n+1) and its double cover.

Haar samples are drawn on SO(2n+1) by QR-orthonormalization of a Gaussian
matrix (with the usual R-diagonal sign fix and a determinant correction) and
lifted to the spin representation through the principal matrix logarithm.
The lift is only defined up to the deck sign, which is immaterial here: every
integrand used downstream is a product of an even number of half-spin matrix
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import fock, so_algebra
from .errors import DomainError, SizeError

# Rotation angles this close to pi make the principal logarithm ill
# conditioned; Haar samples there are resampled (a measure-zero event).
ANGLE_PI_TOL = 1e-8


class AnglePiError(ArithmeticError):
    """A rotation angle fell within the guard band around pi."""


@dataclass(frozen=True, eq=False)
class GroupPoint:
    """A group element: unitary spin matrix, optional orthogonal defining matrix."""

    n: int
    spin_matrix: np.ndarray
    defining_matrix: np.ndarray | None = None

    def __post_init__(self):
        fock.check_mode_count(self.n)
        u = np.asarray(self.spin_matrix, dtype=complex)
        dim = fock.fock_dim(self.n)
        if u.shape != (dim, dim):
            raise SizeError(f"spin matrix must be {dim}x{dim}, got {u.shape}")
        if np.max(np.abs(u.conj().T @ u - np.eye(dim))) > 1e-10:
            raise DomainError("spin matrix is not unitary within 1e-10")
        object.__setattr__(self, "spin_matrix", u)
        if self.defining_matrix is not None:
            r = np.asarray(self.defining_matrix, dtype=float)
            N = so_algebra.matrix_size(self.n)
            if r.shape != (N, N):
                raise SizeError(f"defining matrix must be {N}x{N}, got {r.shape}")
            if np.max(np.abs(r.T @ r - np.eye(N))) > 1e-10 or np.linalg.det(r) < 0:
                raise DomainError("defining matrix is not special orthogonal within 1e-10")
            object.__setattr__(self, "defining_matrix", r)


def identity_point(n: int) -> GroupPoint:
    return GroupPoint(n, np.eye(fock.fock_dim(n), dtype=complex),
                      np.eye(so_algebra.matrix_size(n)))


def deck_flip(g: GroupPoint) -> GroupPoint:
    """The other preimage of the same rotation: spin matrix negated."""
    return GroupPoint(g.n, -g.spin_matrix, g.defining_matrix)


def expm_antihermitian(m: np.ndarray) -> np.ndarray:
    """Unitary exponential of an anti-Hermitian matrix via diagonalization."""
    w, v = np.linalg.eigh(1j * np.asarray(m, dtype=complex))
    return (v * np.exp(-1j * w)) @ v.conj().T


def matrix_exp(m: np.ndarray) -> np.ndarray:
    """Unchecked matrix exponential (for non-unitary semigroup directions)."""
    return scipy.linalg.expm(np.asarray(m, dtype=complex))


def _check_real_coefficients(elem: so_algebra.AlgebraElement) -> None:
    if not elem.has_real_coefficients():
        raise DomainError(
            "group exponential needs real coefficients in the antisymmetric basis"
        )


def rep_exp(elem: so_algebra.AlgebraElement, rep: so_algebra.Representation) -> np.ndarray:
    """exp(rep(elem)) for a real element; the image is anti-Hermitian."""
    _check_real_coefficients(elem)
    return expm_antihermitian(rep.apply(elem))


def group_exp(elem: so_algebra.AlgebraElement) -> GroupPoint:
    """Exponentiate a real algebra element into both representations."""
    _check_real_coefficients(elem)
    n = elem.n
    spin = expm_antihermitian(so_algebra.spin_rep(elem))
    defining = expm_antihermitian(so_algebra.defining_rep(elem)).real
    return GroupPoint(n, spin, defining)


def _so3_log(r: np.ndarray) -> np.ndarray:
    """Principal log of a 3x3 rotation via the Rodrigues formula."""
    cos_theta = np.clip((np.trace(r) - 1.0) / 2.0, -1.0, 1.0)
    theta = np.arccos(cos_theta)
    if theta > np.pi - ANGLE_PI_TOL:
        raise AnglePiError("rotation angle within guard band of pi")
    skew = 0.5 * (r - r.T)
    if theta < 1e-12:
        return skew
    return (theta / np.sin(theta)) * skew


def _schur_log(r: np.ndarray) -> np.ndarray:
    """Principal log of a special orthogonal matrix via the real Schur form."""
    t, q = scipy.linalg.schur(r, output="real")
    N = r.shape[0]
    log_t = np.zeros((N, N))
    i = 0
    while i < N:
        if i + 1 < N and abs(t[i + 1, i]) > 1e-12:
            # 2x2 rotation block [[cos, -sin], [sin, cos]]
            theta = np.arctan2(t[i + 1, i], t[i, i])
            if abs(theta) > np.pi - ANGLE_PI_TOL:
                raise AnglePiError("rotation angle within guard band of pi")
            log_t[i, i + 1] = -theta
            log_t[i + 1, i] = theta
            i += 2
        else:
            if t[i, i] < 0:
                # an isolated -1 eigenvalue is an exact angle-pi rotation
                raise AnglePiError("rotation angle within guard band of pi")
            i += 1
    a = q @ log_t @ q.T
    return 0.5 * (a - a.T)


def principal_so_log(r: np.ndarray) -> np.ndarray:
    """Real antisymmetric A with exp(A) = r and all rotation angles in (-pi, pi).

    Raises AnglePiError when some angle falls within ANGLE_PI_TOL of pi.
    """
    r = np.asarray(r, dtype=float)
    if r.shape[0] == 3:
        return _so3_log(r)
    return _schur_log(r)


def algebra_from_antisymmetric(n: int, a: np.ndarray) -> so_algebra.AlgebraElement:
    """Expand a real antisymmetric matrix over the ordered basis pairs."""
    N = so_algebra.matrix_size(n)
    a = np.asarray(a)
    if a.shape != (N, N):
        raise SizeError(f"matrix must be {N}x{N}, got {a.shape}")
    coeffs = {}
    for j in range(1, N + 1):
        for k in range(j + 1, N + 1):
            coeffs[(j, k)] = a[j - 1, k - 1]
    return so_algebra.AlgebraElement(n, coeffs)


def spin_lift(n: int, r: np.ndarray) -> np.ndarray:
    """One of the two unitary preimages of a rotation, via exp(spin(log r))."""
    a = principal_so_log(r)
    return expm_antihermitian(so_algebra.spin_rep(algebra_from_antisymmetric(n, a)))


def haar_orthogonal(rng: np.random.Generator, size: int) -> np.ndarray:
    """Haar sample on SO(size): QR of a Gaussian matrix, sign and det fixed."""
    g = rng.standard_normal((size, size))
    q, r = np.linalg.qr(g)
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    q = q * signs
    if np.linalg.det(q) < 0:
        q[:, -1] = -q[:, -1]
    return q


def haar_sample(rng: np.random.Generator, n: int) -> GroupPoint:
    """Haar-distributed group point; resamples on the angle-pi guard."""
    fock.check_mode_count(n)
    N = so_algebra.matrix_size(n)
    while True:
        r = haar_orthogonal(rng, N)
        try:
            u = spin_lift(n, r)
        except AnglePiError:
            continue
        return GroupPoint(n, u, r)


@dataclass(frozen=True)
class MatrixCoefficient:
    """The function g -> <vacuum, spin(g) psi> on the group."""

    state: fock.FockVector


def evaluate_coefficient(coeff: MatrixCoefficient, g: GroupPoint) -> complex:
    if coeff.state.n != g.n:
        raise SizeError(f"mode counts differ: {coeff.state.n} != {g.n}")
    return complex((g.spin_matrix @ coeff.state.amplitudes)[0])


@dataclass(frozen=True)
class MCEstimate:
    mean: complex
    std_error: float
    n_samples: int


def complex_mean_stderr(values: np.ndarray) -> tuple:
    """Mean and combined standard error sqrt((var Re + var Im)/N)."""
    values = np.asarray(values)
    n = values.size
    mean = complex(values.mean())
    if n < 2:
        return mean, float("inf")
    var = values.real.var(ddof=1) + values.imag.var(ddof=1)
    return mean, float(np.sqrt(var / n))


def l2_inner_mc(
    psi: fock.FockVector,
    phi: fock.FockVector,
    n_samples: int,
    rng: np.random.Generator,
) -> MCEstimate:
    """Monte Carlo Haar quadrature of the L^2 product of two matrix coefficients.

    Estimates the integral over the group of conj(<vac, spin(g) psi>) times
    <vac, spin(g) phi>, which equals 2^{-n} <psi, phi> by Schur orthogonality.
    """
    if psi.n != phi.n:
        raise SizeError(f"mode counts differ: {psi.n} != {phi.n}")
    if n_samples < 100:
        raise SizeError(f"need at least 100 samples, got {n_samples}")
    values = np.empty(n_samples, dtype=complex)
    for i in range(n_samples):
        g = haar_sample(rng, psi.n)
        a = (g.spin_matrix @ psi.amplitudes)[0]
        b = (g.spin_matrix @ phi.amplitudes)[0]
        values[i] = np.conj(a) * b
    mean, stderr = complex_mean_stderr(values)
    return MCEstimate(mean, stderr, n_samples)
