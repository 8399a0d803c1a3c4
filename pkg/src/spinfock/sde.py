"""Geometric Stratonovich integrator for the left-invariant diffusions.

Two processes are simulated in the spin representation, both driven by the
2n noise directions A_j = X_{j,2n+1} with weights E'_{2k-1} = E'_{2k} = E_k:

    (p)   dY = sum_j sigma_j A_j(Y) o dW^j - B0(Y) dt
    (p0)  dX = sum_j sigma_j A_j(X) o dW^j

Each step right-multiplies the state by the exponential of the sampled
algebra increment, so unitarity is preserved up to rounding. The noise-only
exponent is a Clifford vector gamma(c)/2, whose square is the scalar
-|c|^2/4, giving the step matrix in closed form; drifted steps go through an
eigendecomposition.

The diffusion generator is (1/2) sum_j sigma_j^2 A_j^2 + drift. Matching the
second-order operator sum_j E'_j A_j^2 therefore needs sigma_j = sqrt(2 E'_j)
(the "corrected" convention); sigma_j = sqrt(E'_j) ("paper_literal") is kept
selectable and produces exactly half the decay rate, which the calibration
command measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hamiltonian, so_algebra, spin_group
from .errors import DomainError, NumericError, SizeError
from .fock import FockVector, vacuum
from .hamiltonian import HamiltonianSpec
from .spin_group import ANGLE_PI_TOL, GroupPoint

SIGMA_CONVENTIONS = ("corrected", "paper_literal")
PROCESSES = ("p0", "p")


@dataclass(frozen=True)
class SDEConfig:
    spec: HamiltonianSpec
    process: str = "p0"
    dt: float = 1e-3
    horizon: float = 0.0
    sigma_convention: str = "corrected"
    seed: int = 0

    def __post_init__(self):
        if self.process not in PROCESSES:
            raise DomainError(f"process must be one of {PROCESSES}, got {self.process!r}")
        if self.sigma_convention not in SIGMA_CONVENTIONS:
            raise DomainError(
                f"sigma convention must be one of {SIGMA_CONVENTIONS}, got {self.sigma_convention!r}"
            )
        if not self.dt > 0:
            raise DomainError(f"dt must be positive, got {self.dt}")
        if self.horizon < 0:
            raise DomainError(f"horizon must be >= 0, got {self.horizon}")
        if self.horizon > 0 and self.dt > self.horizon * (1 + 1e-12):
            raise DomainError(f"dt={self.dt} exceeds horizon={self.horizon}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise DomainError(f"seed must be a non-negative integer, got {self.seed!r}")

    @property
    def eprime(self) -> np.ndarray:
        """Per-direction weights: E'_{2k-1} = E'_{2k} = E_k, j = 1..2n."""
        return np.repeat(np.asarray(self.spec.energies), 2)

    @property
    def sigmas(self) -> np.ndarray:
        if self.sigma_convention == "corrected":
            return np.sqrt(2.0 * self.eprime)
        return np.sqrt(self.eprime)


@dataclass(frozen=True)
class PathState:
    time: float
    point: GroupPoint


def noise_generator_matrices(n: int) -> np.ndarray:
    """Spin images of the noise directions, stacked (2n, 2^n, 2^n)."""
    N = so_algebra.matrix_size(n)
    return np.stack(
        [so_algebra.spin_symbol_matrix((j, N), n) for j in range(1, 2 * n + 1)]
    )


def drift_matrix(spec: HamiltonianSpec) -> np.ndarray:
    """Drift of the process (p): the negated spin image of the first-order part."""
    return -so_algebra.spin_rep(hamiltonian.b0_element(spec))


def _expm_antihermitian_batch(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(1j * m)
    return (v * np.exp(-1j * w)[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def _noise_step_matrices(scaled: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """exp(gamma(c)/2) batched over paths; scaled has shape (paths, 2n)."""
    dim = gens.shape[-1]
    g = np.einsum("pj,jab->pab", scaled, gens)
    om = 0.5 * np.sqrt(np.einsum("pj,pj->p", scaled, scaled))
    eye = np.eye(dim)
    return np.cos(om)[:, None, None] * eye + np.sinc(om / np.pi)[:, None, None] * g


def _step_matrix(scaled: np.ndarray, gens: np.ndarray, drift: np.ndarray | None, dt: float):
    if drift is None:
        return _noise_step_matrices(scaled, gens)
    g = np.einsum("pj,jab->pab", scaled, gens) + drift * dt
    return _expm_antihermitian_batch(g)


def sde_step(state: PathState, increments: np.ndarray, config: SDEConfig) -> PathState:
    """One exponential update from Gaussian increments ~ N(0, dt)."""
    increments = np.asarray(increments, dtype=float)
    n = config.spec.n
    if increments.shape != (2 * n,):
        raise SizeError(f"need {2 * n} increments, got shape {increments.shape}")
    if not np.all(np.isfinite(increments)):
        raise NumericError("non-finite Brownian increments")
    gens = noise_generator_matrices(n)
    drift = drift_matrix(config.spec) if config.process == "p" else None
    scaled = (increments * config.sigmas)[None, :]
    step = _step_matrix(scaled, gens, drift, config.dt)[0]
    point = GroupPoint(n, state.point.spin_matrix @ step)
    return PathState(state.time + config.dt, point)


def num_steps(config: SDEConfig) -> int:
    if config.horizon == 0:
        return 0
    return int(math.ceil(config.horizon / config.dt - 1e-9))


def simulate_path(
    config: SDEConfig, initial: GroupPoint, rng: np.random.Generator
) -> PathState:
    """Compose sde_step over ceil(horizon/dt) steps; deterministic given the rng."""
    state = PathState(0.0, initial)
    sqrt_dt = math.sqrt(config.dt)
    for _ in range(num_steps(config)):
        dw = rng.standard_normal(2 * config.spec.n) * sqrt_dt
        state = sde_step(state, dw, config)
    return state


def path_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for one path, derived from the master seed."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def _haar_log_batch(n: int, rngs: list) -> np.ndarray:
    """Principal logs of per-path Haar rotations; resamples angle-pi draws."""
    N = so_algebra.matrix_size(n)
    out = np.empty((len(rngs), N, N))
    if N == 3:
        pending = list(range(len(rngs)))
        while pending:
            g = np.stack([rngs[i].standard_normal((3, 3)) for i in pending])
            q, r = np.linalg.qr(g)
            signs = np.where(np.einsum("pii->pi", r) < 0, -1.0, 1.0)
            q = q * signs[:, None, :]
            det = np.linalg.det(q)
            q[det < 0, :, -1] *= -1.0
            tr = np.einsum("pii->p", q)
            theta = np.arccos(np.clip((tr - 1.0) / 2.0, -1.0, 1.0))
            ok = theta <= np.pi - ANGLE_PI_TOL
            skew = 0.5 * (q - np.swapaxes(q, 1, 2))
            safe = np.where(theta < 1e-12, 1.0, np.sin(theta))
            factor = np.where(theta < 1e-12, 1.0, theta / safe)
            logs = factor[:, None, None] * skew
            done = [i for i, good in zip(pending, ok) if good]
            out[np.asarray(done, dtype=int)] = logs[ok]
            pending = [i for i, good in zip(pending, ok) if not good]
        return out
    for i, rng in enumerate(rngs):
        while True:
            r = spin_group.haar_orthogonal(rng, N)
            try:
                out[i] = spin_group.principal_so_log(r)
                break
            except spin_group.AnglePiError:
                continue
    return out


def _haar_spin_batch(n: int, rngs: list) -> np.ndarray:
    """Spin lifts of per-path Haar rotations, stacked (paths, 2^n, 2^n)."""
    logs = _haar_log_batch(n, rngs)
    syms = so_algebra.symbols(n)
    imgs = np.stack([so_algebra.spin_symbol_matrix(s, n) for s in syms])
    coeffs = np.stack([logs[:, j - 1, k - 1] for (j, k) in syms], axis=1)
    return _expm_antihermitian_batch(np.einsum("ps,sab->pab", coeffs, imgs))


def evolve_ensemble(
    config: SDEConfig,
    n_paths: int,
    t_grid,
    initial: GroupPoint | None = None,
    chunk_size: int = 4096,
):
    """Evolve independent paths, yielding per-chunk states at the grid times.

    Yields (start_index, U0, snapshots) where U0 is the stack of initial spin
    matrices (Haar-distributed unless ``initial`` pins them) and snapshots
    maps each grid time to the stack of spin matrices at that time. Path i
    draws from the stream path_rng(config.seed, i), so results do not depend
    on the chunk size.
    """
    spec = config.spec
    n = spec.n
    steps_for = {}
    for t in t_grid:
        t = float(t)
        s = int(round(t / config.dt))
        if t < 0 or abs(s * config.dt - t) > 1e-9 * max(1.0, t):
            raise DomainError(f"grid time {t} is not a multiple of dt={config.dt}")
        steps_for[t] = s
    total_steps = max(steps_for.values(), default=0)
    gens = noise_generator_matrices(n)
    sig = config.sigmas
    drift = drift_matrix(spec) if config.process == "p" else None
    sqrt_dt = math.sqrt(config.dt)

    for start in range(0, n_paths, chunk_size):
        count = min(chunk_size, n_paths - start)
        rngs = [path_rng(config.seed, start + i) for i in range(count)]
        if initial is None:
            u0 = _haar_spin_batch(n, rngs)
        else:
            u0 = np.tile(initial.spin_matrix, (count, 1, 1))
        dw = np.empty((count, total_steps, 2 * n))
        for i, rng in enumerate(rngs):
            dw[i] = rng.standard_normal((total_steps, 2 * n))
        dw *= sqrt_dt
        u = u0.copy()
        snapshots = {t: u0 for t, s in steps_for.items() if s == 0}
        for m in range(total_steps):
            step = _step_matrix(dw[:, m, :] * sig, gens, drift, config.dt)
            u = u @ step
            for t, s in steps_for.items():
                if s == m + 1:
                    snapshots[t] = u.copy() if m + 1 < total_steps else u
        yield start, u0, snapshots


@dataclass(frozen=True)
class GeneratorCheck:
    empirical: complex
    std_error: float
    target: complex


def generator_check(
    psi: FockVector,
    x: GroupPoint,
    dt: float,
    n_samples: int,
    config: SDEConfig,
) -> GeneratorCheck:
    """Finite-difference estimate of the generator against its exact value.

    Compares (E[f(X(dt))] - f(x)) / dt, for f the matrix coefficient of psi,
    with the image of (1/2) sum_j sigma_j^2 A_j^2 + drift applied to psi and
    evaluated at x. Discriminates the two sigma conventions.
    """
    n = config.spec.n
    if psi.n != n or x.n != n:
        raise SizeError("mode counts differ between state, point, and config")
    gens = noise_generator_matrices(n)
    drift = drift_matrix(config.spec) if config.process == "p" else None
    lmat = 0.5 * np.einsum("j,jab,jbc->ac", config.sigmas**2, gens, gens)
    if drift is not None:
        lmat = lmat + drift
    target = complex((x.spin_matrix @ (lmat @ psi.amplitudes))[0])

    rng = np.random.default_rng(config.seed)
    dw = rng.standard_normal((n_samples, 2 * n)) * math.sqrt(dt)
    step = _step_matrix(dw * config.sigmas, gens, drift, dt)
    amps = np.einsum("ab,pbc,c->pa", x.spin_matrix, step, psi.amplitudes)[:, 0]
    f0 = (x.spin_matrix @ psi.amplitudes)[0]
    values = (amps - f0) / dt
    mean, stderr = spin_group.complex_mean_stderr(values)
    return GeneratorCheck(mean, stderr, target)


def decay_curve(
    spec: HamiltonianSpec,
    t_grid,
    n_paths: int,
    dt: float,
    seed: int,
    sigma_convention: str = "corrected",
    psi: FockVector | None = None,
):
    """Autocorrelation E[conj(f(X(0))) f(X(t))] of a matrix coefficient.

    Under the noise-only process started from Haar this decays at rate
    (1/2) sum E_k for the corrected convention and (1/4) sum E_k for the
    literal one. Returns rows (t, mean, std_error).
    """
    if psi is None:
        psi = vacuum(spec.n)
    horizon = max(float(t) for t in t_grid) if len(t_grid) else 0.0
    config = SDEConfig(spec, "p0", dt, horizon, sigma_convention, seed)
    values = {float(t): [] for t in t_grid}
    for _, u0, snaps in evolve_ensemble(config, n_paths, t_grid):
        a0 = np.einsum("pab,b->pa", u0, psi.amplitudes)[:, 0]
        for t, ut in snaps.items():
            at = np.einsum("pab,b->pa", ut, psi.amplitudes)[:, 0]
            values[t].append(np.conj(a0) * at)
    rows = []
    for t in sorted(values):
        mean, stderr = spin_group.complex_mean_stderr(np.concatenate(values[t]))
        rows.append((t, mean, stderr))
    return rows


def fit_decay_rate(rows) -> tuple:
    """Least-squares exponential rate from (t, mean, std_error) rows.

    Fits ln Re<corr> = a - rate * t and returns (rate, rate_std_error).
    """
    ts = np.array([t for t, mean, _ in rows if mean.real > 0])
    ys = np.log(np.array([mean.real for _, mean, _ in rows if mean.real > 0]))
    if ts.size < 2:
        raise SizeError("need at least two usable grid points to fit a rate")
    tbar = ts.mean()
    sxx = np.sum((ts - tbar) ** 2)
    if sxx == 0:
        raise SizeError("grid times are all equal")
    slope = np.sum((ts - tbar) * (ys - ys.mean())) / sxx
    resid = ys - (ys.mean() + slope * (ts - tbar))
    dof = max(ts.size - 2, 1)
    stderr = math.sqrt(float(np.sum(resid**2)) / dof / sxx)
    return -float(slope), stderr
