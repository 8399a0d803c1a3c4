"""Named algebraic verification checks with residuals, for the verify command.

Every check reports its worst residual against a fixed tolerance; the suite
passes iff every check passes. Symbolic checks are exact (residual counts
nonzero normal forms), numeric checks compare matrices entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import clifford, fock, hamiltonian, so_algebra, uea
from .errors import SizeError
from .hamiltonian import HamiltonianSpec

# Test harness hook: replaces the structure constants inside the
# homomorphism sweep so the failure path of the verify command can be
# exercised deliberately.
_STRUCTURE_BRACKET_OVERRIDE = None

MAX_VERIFY_MODES = 4
MAX_SYMBOLIC_MODES = 3


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool


def _result(name: str, residual: float, tolerance: float) -> CheckResult:
    residual = float(residual)
    return CheckResult(name, residual, tolerance, residual <= tolerance)


def _max_abs(m) -> float:
    return float(np.max(np.abs(m)))


def check_car(n: int) -> CheckResult:
    eye = np.eye(fock.fock_dim(n))
    worst = 0.0
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            cj = fock.annihilation(j, n)
            ckd = fock.creation(k, n)
            ck = fock.annihilation(k, n)
            cjd = fock.creation(j, n)
            delta = eye if j == k else 0.0
            worst = max(worst, _max_abs(cj @ ckd + ckd @ cj - delta))
            worst = max(worst, _max_abs(cj @ ck + ck @ cj))
            worst = max(worst, _max_abs(cjd @ ckd + ckd @ cjd))
    return _result("car", worst, 1e-12)


def check_ladder_structure(n: int) -> CheckResult:
    worst = 0.0
    for j in range(1, n + 1):
        cdag = fock.creation(j, n)
        c = fock.annihilation(j, n)
        worst = max(worst, _max_abs(cdag - c.conj().T))
        worst = max(worst, _max_abs(cdag @ cdag))
        worst = max(worst, _max_abs(c @ c))
        nonzero = np.abs(cdag[np.abs(cdag) > 0])
        if nonzero.size != fock.fock_dim(n) // 2 or np.any(nonzero != 1.0):
            worst = max(worst, 1.0)
    return _result("ladder-structure", worst, 1e-12)


def check_clifford_anticommutation(n: int) -> CheckResult:
    eye = np.eye(fock.fock_dim(n))
    gammas = clifford.make_clifford_generators(n).gammas
    worst = 0.0
    for j, gj in enumerate(gammas):
        worst = max(worst, _max_abs(gj + gj.conj().T))
        for k, gk in enumerate(gammas):
            delta = 2.0 * eye if j == k else 0.0
            worst = max(worst, _max_abs(gj @ gk + gk @ gj + delta))
    return _result("clifford-anticommutation", worst, 1e-12)


def check_clifford_reconstruction(n: int) -> CheckResult:
    worst = 0.0
    for j in range(1, n + 1):
        g_odd = clifford.gamma(2 * j - 1, n)
        g_even = clifford.gamma(2 * j, n)
        worst = max(worst, _max_abs(0.5 * (g_odd + 1j * g_even) - fock.creation(j, n)))
        worst = max(worst, _max_abs(0.5 * (-g_odd + 1j * g_even) - fock.annihilation(j, n)))
    return _result("clifford-reconstruction", worst, 1e-12)


def check_defining_trace(n: int) -> CheckResult:
    N = so_algebra.matrix_size(n)
    worst = 0.0
    for a in range(1, 2 * n + 1):
        xa = so_algebra.defining_basis_matrix(a, N, n)
        for b in range(1, 2 * n + 1):
            xb = so_algebra.defining_basis_matrix(b, N, n)
            delta = -2.0 if a == b else 0.0
            worst = max(worst, abs(np.trace(xa @ xb) - delta))
    return _result("defining-trace-normalization", worst, 1e-12)


def _homomorphism_residual(n: int, rep: so_algebra.Representation, bracket_fn) -> float:
    syms = so_algebra.symbols(n)
    mats = {s: rep.apply(so_algebra.basis_element(n, *s)) for s in syms}
    dim = next(iter(mats.values())).shape[0]
    worst = 0.0
    for sa in syms:
        for sb in syms:
            lhs = np.zeros((dim, dim), dtype=complex)
            for sym, sign in bracket_fn(sa, sb):
                lhs += sign * mats[sym]
            comm = mats[sa] @ mats[sb] - mats[sb] @ mats[sa]
            worst = max(worst, _max_abs(lhs - comm))
    return worst


def check_homomorphism(n: int, tag: str, bracket_fn=None) -> CheckResult:
    if bracket_fn is None:
        bracket_fn = _STRUCTURE_BRACKET_OVERRIDE or so_algebra.bracket_symbols
    rep = so_algebra.representation(tag, n)
    return _result(f"homomorphism-{tag}", _homomorphism_residual(n, rep, bracket_fn), 1e-12)


def check_ladder_spin_image(n: int) -> CheckResult:
    worst = 0.0
    for j in range(1, n + 1):
        worst = max(
            worst,
            _max_abs(so_algebra.spin_rep(so_algebra.ladder_element(j, n)) - fock.creation(j, n)),
        )
        worst = max(
            worst,
            _max_abs(
                so_algebra.spin_rep(so_algebra.ladder_element(-j, n)) - fock.annihilation(j, n)
            ),
        )
    return _result("ladder-spin-image", worst, 1e-12)


def check_cartan_weights(n: int) -> CheckResult:
    worst = 0.0
    vac = fock.vacuum(n).amplitudes
    top = fock.basis_vector(n, range(1, n + 1)).amplitudes
    for j in range(1, n + 1):
        half_bracket = 0.5 * so_algebra.bracket(
            so_algebra.ladder_element(j, n), so_algebra.ladder_element(-j, n)
        )
        diff = half_bracket - so_algebra.cartan_element(j, n)
        worst = max(worst, max((abs(v) for v in diff.coefficients.values()), default=0.0))
        h = so_algebra.spin_rep(so_algebra.cartan_element(j, n))
        worst = max(worst, _max_abs(h @ vac + 0.5 * vac))
        worst = max(worst, _max_abs(h @ top - 0.5 * top))
    return _result("cartan-weights", worst, 1e-12)


def check_uea_normal_order(n: int) -> CheckResult:
    """Exact vanishing of the second-order/Cartan commutators, plus the
    commutation of the two quasi-Hamiltonian parts, order-by-symbol."""
    n_sym = min(n, MAX_SYMBOLIC_MODES)
    failures = 0
    for ell in range(1, n_sym + 1):
        for k in range(1, n_sym + 1):
            if not uea.commutator_LU(ell, k, n_sym).is_zero():
                failures += 1
    second, first = uea.quasi_hamiltonian_symbols(n_sym, [Fraction(k) for k in range(1, n_sym + 1)])
    if not uea.uea_commuting_pair_check(second, first):
        failures += 1
    return _result("uea-normal-order-zero", float(failures), 0.0)


def check_decomposition(spec: HamiltonianSpec) -> CheckResult:
    worst = 0.0
    for tag in ("spin", "defining"):
        parts = hamiltonian.build_parts(spec, so_algebra.representation(tag, spec.n))
        worst = max(worst, _max_abs(parts.h_tilde - (parts.p0 + 1j * parts.b0)))
    return _result("hamiltonian-decomposition", worst, 1e-12)


def check_spectrum(spec: HamiltonianSpec) -> CheckResult:
    parts = hamiltonian.build_parts(spec, so_algebra.spin_representation(spec.n))
    eigs = np.sort(np.linalg.eigvalsh(parts.h_tilde))
    expected = hamiltonian.subset_sums(spec)
    return _result("spectrum-subset-sums", _max_abs(eigs - expected), 1e-10)


def check_commutation_shadow(spec: HamiltonianSpec) -> CheckResult:
    worst = 0.0
    for tag in ("spin", "defining"):
        parts = hamiltonian.build_parts(spec, so_algebra.representation(tag, spec.n))
        worst = max(worst, _max_abs(parts.p0 @ parts.b0 - parts.b0 @ parts.p0))
        for tk in parts.t:
            for lk in parts.l:
                worst = max(worst, _max_abs(tk @ lk - lk @ tk))
            for tl in parts.t:
                worst = max(worst, _max_abs(tk @ tl - tl @ tk))
    return _result("commutation-shadow", worst, 1e-12)


def check_car_on_subspace(spec: HamiltonianSpec) -> CheckResult:
    parts = hamiltonian.build_parts(spec, so_algebra.spin_representation(spec.n))
    return _result("car-on-subspace", hamiltonian.car_residual(parts), 1e-12)


def check_factorized_identity(spec: HamiltonianSpec) -> CheckResult:
    n = spec.n
    N = so_algebra.matrix_size(n)
    worst = 0.0
    for tag in ("spin", "defining"):
        rep = so_algebra.representation(tag, n)
        parts = hamiltonian.build_parts(spec, rep)
        dim = parts.h_tilde.shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for k, e in enumerate(spec.energies, start=1):
            a = rep.apply(so_algebra.basis_element(n, 2 * k - 1, N))
            b = rep.apply(so_algebra.basis_element(n, 2 * k, N))
            total -= e * ((a + 1j * b) @ (a - 1j * b))
        worst = max(worst, _max_abs(total - parts.h_tilde))
    return _result("factorized-identity", worst, 1e-12)


def run_verify(n: int, energies, bracket_fn=None) -> list:
    """Run the full named check suite at one mode count."""
    if n > MAX_VERIFY_MODES:
        raise SizeError(f"verify sweeps are bounded at n <= {MAX_VERIFY_MODES}, got {n}")
    spec = HamiltonianSpec(n, tuple(energies))
    return [
        check_car(n),
        check_ladder_structure(n),
        check_clifford_anticommutation(n),
        check_clifford_reconstruction(n),
        check_defining_trace(n),
        check_homomorphism(n, "defining", bracket_fn),
        check_homomorphism(n, "spin", bracket_fn),
        check_ladder_spin_image(n),
        check_cartan_weights(n),
        check_uea_normal_order(n),
        check_decomposition(spec),
        check_spectrum(spec),
        check_commutation_shadow(spec),
        check_car_on_subspace(spec),
        check_factorized_identity(spec),
    ]
