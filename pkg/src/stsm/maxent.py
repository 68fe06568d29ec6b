"""Maximum-relative-entropy estimation of a qubit state from a sigma_z mean.

Configurations are triples (theta, phi, r): a preparation direction on the
Bloch sphere and a sigma_z outcome r = +-1.  Joint densities are restricted
to the Born-rule form

    p~(theta, phi, r) = q(r | theta) p(theta, phi),   q(+1|theta) = cos^2(theta/2)

and only the marginal p is varied.  With a constraint on <sigma_z> the
maximizer is the exponential family  p'(theta, phi) = m e^{-lam cos(theta)} / Z,
and integrating the projectors |theta,phi><theta,phi| against it gives
rho = (I + sigma_z_mean * sigma_z) / 2.

Densities are per steradian and live on a ``SphericalGrid``; every integral
is a weighted grid sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import DensityMatrix, born_conditional, ket_components, mixed_state
from .errors import (
    IncompatibleDensityError,
    NonPositivePriorError,
    OutOfRangeError,
)
from .quadrature import SphericalGrid, make_grid
from .roots import bisect_secant, expand_bracket

OUTCOMES = (1, -1)
MAX_ABS_SIGMA_Z = 1.0 - 1e-9
LAMBDA_BRACKET = (-75.0, 75.0)
LAMBDA_LIMIT = 1e12
_NORM_TOL = 1e-8
_COMPAT_TOL = 1e-10
_COMPAT_FLOOR = 1e-14


def _check_normalized(grid: SphericalGrid, total: float, what: str):
    if abs(total - 1.0) > _NORM_TOL:
        raise ValueError(f"{what} integrates to {total!r}, not 1")


@dataclass(frozen=True, eq=False)
class MarginalDensity:
    """Density p(theta, phi) per steradian, sampled on the grid mesh."""

    grid: SphericalGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(np.broadcast_to(self.values, self.grid.shape), dtype=float)
        if np.any(vals < 0) or not np.all(np.isfinite(vals)):
            raise ValueError("marginal density must be finite and nonnegative")
        _check_normalized(self.grid, self.grid.integrate(vals), "marginal density")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class JointDensity:
    """Density p~(theta, phi, r); ``values[0]`` is r = +1, ``values[1]`` is r = -1."""

    grid: SphericalGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (2,) + self.grid.shape:
            raise ValueError(f"joint density must have shape {(2,) + self.grid.shape}")
        if np.any(vals < 0) or not np.all(np.isfinite(vals)):
            raise ValueError("joint density must be finite and nonnegative")
        _check_normalized(self.grid, self.grid.integrate(vals.sum(axis=0)), "joint density")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def outcome(self, r: int) -> np.ndarray:
        return self.values[OUTCOMES.index(r)]

    def marginal(self) -> MarginalDensity:
        return MarginalDensity(self.grid, self.values[0] + self.values[1])

    def compatibility_error(self) -> float:
        """Largest deviation of p~(+1)/(p~(+1)+p~(-1)) from cos^2(theta/2)."""
        total = self.values[0] + self.values[1]
        mask = total > _COMPAT_FLOOR
        if not np.any(mask):
            return 0.0
        theta, phi = self.grid.mesh()
        q_plus = born_conditional(1, theta, phi)
        ratio = self.values[0][mask] / total[mask]
        return float(np.max(np.abs(ratio - q_plus[mask])))

    def is_qm_compatible(self) -> bool:
        return self.compatibility_error() <= _COMPAT_TOL


@dataclass(frozen=True, eq=False)
class LagrangeSolution:
    lam: float
    log_Z: float
    sigma_z_target: float
    residual: float
    grid: SphericalGrid
    prior: MarginalDensity

    @property
    def Z(self) -> float:
        return math.exp(self.log_Z) if self.log_Z < 709.0 else math.inf


@dataclass(frozen=True, eq=False)
class EstimationReport:
    solution: LagrangeSolution
    density: JointDensity
    rho: DensityMatrix
    entropy: float

    def to_dict(self) -> dict:
        sol = self.solution
        Z = sol.Z
        return {
            "sigma_z": sol.sigma_z_target,
            "lambda": sol.lam,
            "Z": Z if math.isfinite(Z) else None,
            "log_Z": sol.log_Z,
            "residual": sol.residual,
            "entropy": self.entropy,
            "rho": [[float(z.real), float(z.imag)] for z in self.rho.entries.reshape(-1)],
            "grid": {"n_theta": sol.grid.n_theta, "n_phi": sol.grid.n_phi},
        }


def uniform_prior(grid: SphericalGrid) -> MarginalDensity:
    return MarginalDensity(grid, np.full(grid.shape, 1.0 / (4.0 * math.pi)))


def born_table(grid: SphericalGrid) -> np.ndarray:
    """q(r | theta, phi) on the mesh, stacked as (r=+1, r=-1)."""
    theta, phi = grid.mesh()
    return np.stack([born_conditional(r, theta, phi) for r in OUTCOMES])


def joint_from_marginal(p: MarginalDensity) -> JointDensity:
    return JointDensity(p.grid, born_table(p.grid) * p.values)


def expectation_sigma_z(p: JointDensity) -> float:
    """<sigma_z> as the integral of cos(theta) against the marginal."""
    return p.grid.integrate(p.grid.cos_theta() * (p.values[0] + p.values[1]))


def expectation_sigma_z_outcomes(p: JointDensity) -> float:
    """<sigma_z> as the outcome-weighted sum over r of the joint density."""
    return sum(r * p.grid.integrate(p.outcome(r)) for r in OUTCOMES)


def _entropy_terms(p: np.ndarray, m: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = p[pos] * np.log(p[pos] / m[pos])
    return out


def relative_entropy_marginal(p: MarginalDensity, m: MarginalDensity) -> float:
    """-integral p log(p/m); zero iff p = m on the grid, negative otherwise."""
    if not p.grid.same_as(m.grid):
        raise ValueError("densities live on different grids")
    if np.any(m.values <= 0):
        raise NonPositivePriorError("prior must be strictly positive on the grid")
    return -p.grid.integrate(_entropy_terms(p.values, m.values))


def relative_entropy_joint(p: JointDensity, m: JointDensity) -> float:
    """-sum_r integral p~ log(p~/m~) over the configuration space."""
    if not p.grid.same_as(m.grid):
        raise ValueError("densities live on different grids")
    if np.any(m.values <= 0):
        raise NonPositivePriorError("prior must be strictly positive on the grid")
    for name, d in (("density", p), ("prior", m)):
        err = d.compatibility_error()
        if err > _COMPAT_TOL:
            raise IncompatibleDensityError(
                f"{name} outcome conditional deviates from the Born rule by {err:.3e}"
            )
    terms = _entropy_terms(p.values, m.values)
    return -p.grid.integrate(terms[0] + terms[1])


def _tilted_weights(lam: float, grid: SphericalGrid, prior: MarginalDensity):
    """Normalized node weights of m e^{-lam u} and log Z.

    The exponent is measured from the node that dominates (largest u for
    lam < 0, smallest otherwise), so it is never positive and is small
    exactly where the weight is concentrated.
    """
    u = grid.cos_theta()
    ref = float(grid.u.max() if lam < 0 else grid.u.min())
    t = prior.values * grid.weights * np.exp(-lam * (u - ref))
    total = float(np.sum(t))
    return t / total, -lam * ref + math.log(total)


def _constraint_residual(lam: float, grid: SphericalGrid, prior: MarginalDensity,
                         target: float) -> float:
    t, _ = _tilted_weights(lam, grid, prior)
    return float(np.sum(t * (grid.cos_theta() - target)))


def solve_lambda(
    sigma_z: float,
    tol: float = 1e-12,
    grid: SphericalGrid | None = None,
    prior: MarginalDensity | None = None,
) -> LagrangeSolution:
    """Find the multiplier that makes the grid mean of cos(theta) equal ``sigma_z``.

    The bracket starts at LAMBDA_BRACKET and is widened geometrically when
    the target lies outside it, which happens for |sigma_z| above ~0.987.

    Raises
    ------
    OutOfRangeError
        If |sigma_z| > 1 - 1e-9.
    NoConvergenceError
        If the grid cannot represent the target mean (it lies beyond the
        outermost quadrature node) or the iteration stalls above ``tol``.
    """
    sigma_z = float(sigma_z)
    if not math.isfinite(sigma_z) or abs(sigma_z) > MAX_ABS_SIGMA_Z:
        raise OutOfRangeError(
            f"sigma_z must satisfy |sigma_z| <= 1 - 1e-9, got {sigma_z!r}"
        )
    grid = make_grid() if grid is None else grid
    prior = uniform_prior(grid) if prior is None else prior
    if not prior.grid.same_as(grid):
        raise ValueError("prior lives on a different grid")
    if np.any(prior.values <= 0):
        raise NonPositivePriorError("prior must be strictly positive on the grid")

    def g(lam):
        return _constraint_residual(lam, grid, prior, sigma_z)

    lo, hi, glo, ghi = expand_bracket(g, *LAMBDA_BRACKET, limit=LAMBDA_LIMIT)
    lam = bisect_secant(g, lo, hi, tol=tol, flo=glo, fhi=ghi)
    _, log_Z = _tilted_weights(lam, grid, prior)
    return LagrangeSolution(lam, log_Z, sigma_z, abs(g(lam)), grid, prior)


def partition_function(lam: float, grid: SphericalGrid | None = None,
                       prior: MarginalDensity | None = None) -> float:
    grid = make_grid() if grid is None else grid
    prior = uniform_prior(grid) if prior is None else prior
    return math.exp(_tilted_weights(lam, grid, prior)[1])


def maxent_density(sol: LagrangeSolution, grid: SphericalGrid | None = None) -> JointDensity:
    """Joint density q(r|theta) m e^{-lam cos(theta)} / Z on ``grid``.

    Evaluating on a grid other than the solver's renormalizes with that
    grid's own partition sum.
    """
    grid = sol.grid if grid is None else grid
    prior = sol.prior if grid.same_as(sol.grid) else uniform_prior(grid)
    t, _ = _tilted_weights(sol.lam, grid, prior)
    marginal = t / grid.weights
    return JointDensity(grid, born_table(grid) * marginal)


def reconstruct_density_matrix(p: JointDensity) -> DensityMatrix:
    """Integrate |theta,phi><theta,phi| against the joint density, summed over r."""
    theta, phi = p.grid.mesh()
    up, down = ket_components(theta, phi)
    w = p.grid.weights * (p.values[0] + p.values[1])
    kets = (up, down)
    rho = np.empty((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            rho[i, j] = np.sum(w * kets[i] * np.conj(kets[j]))
    return DensityMatrix(rho)


def von_neumann_check(sigma_z: float) -> DensityMatrix:
    """Closed-form maximum von Neumann entropy state, (I + sigma_z sigma_z_op)/2."""
    if abs(sigma_z) > 1.0:
        raise OutOfRangeError(f"|sigma_z| must not exceed 1, got {sigma_z!r}")
    return mixed_state((0.0, 0.0, float(sigma_z)))


def estimate(
    sigma_z: float,
    n_theta: int = 64,
    n_phi: int = 8,
    tol: float = 1e-12,
) -> EstimationReport:
    """Run the full pipeline: solve for the multiplier, build p~', integrate rho."""
    grid = make_grid(n_theta, n_phi)
    prior = uniform_prior(grid)
    sol = solve_lambda(sigma_z, tol=tol, grid=grid, prior=prior)
    density = maxent_density(sol)
    rho = reconstruct_density_matrix(density)
    entropy = relative_entropy_marginal(density.marginal(), prior)
    return EstimationReport(sol, density, rho, entropy)
