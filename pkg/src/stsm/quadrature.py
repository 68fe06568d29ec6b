"""Product quadrature on the unit sphere.

Gauss-Legendre in u = cos(theta) times the uniform rule in phi.  The
measure sin(theta) dtheta dphi becomes du dphi, so grid weights already
carry the Jacobian and sum to 4 pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCountError

DEFAULT_N_THETA = 64
DEFAULT_N_PHI = 8


@dataclass(frozen=True, eq=False)
class SphericalGrid:
    u: np.ndarray
    u_weights: np.ndarray
    phi: np.ndarray
    phi_weights: np.ndarray

    @property
    def n_theta(self) -> int:
        return len(self.u)

    @property
    def n_phi(self) -> int:
        return len(self.phi)

    @property
    def shape(self) -> tuple:
        return (self.n_theta, self.n_phi)

    @property
    def theta(self) -> np.ndarray:
        return np.arccos(self.u)

    @property
    def weights(self) -> np.ndarray:
        """Solid-angle weights on the (n_theta, n_phi) mesh."""
        return np.outer(self.u_weights, self.phi_weights)

    def mesh(self):
        """Broadcast-ready (theta, phi) arrays of shape (n_theta, n_phi)."""
        theta, phi = np.meshgrid(self.theta, self.phi, indexing="ij")
        return theta, phi

    def cos_theta(self) -> np.ndarray:
        return np.broadcast_to(self.u[:, None], self.shape)

    def integrate(self, values) -> float:
        """Weighted sum of ``values`` over the mesh.

        Accepts a callable f(theta, phi) or an array broadcastable to the mesh.
        """
        if callable(values):
            values = values(*self.mesh())
        values = np.broadcast_to(np.asarray(values), self.shape)
        return float(np.sum(values * self.weights))

    def same_as(self, other: "SphericalGrid") -> bool:
        return self is other or (
            self.shape == other.shape
            and np.array_equal(self.u, other.u)
            and np.array_equal(self.phi, other.phi)
        )


def _legendre(n: int, x: np.ndarray):
    """P_n(x) and P_n'(x) by the three-term recurrence."""
    p0, p1 = np.ones_like(x), x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1, n * (x * p1 - p0) / (x * x - 1)


def gauss_legendre(n: int):
    """Gauss-Legendre nodes and weights on [-1, 1], polished to ~1 ulp.

    numpy's nodes are refined by Newton steps and symmetrized; weights come
    from 2 / ((1 - x^2) P_n'(x)^2).  Unpolished nodes leave relative errors
    near 1e-14 in tilted moments at n = 128, enough to break 1e-10 agreement
    of partition sums between grids.
    """
    x, _ = np.polynomial.legendre.leggauss(n)
    for _ in range(3):
        x = 0.5 * (x - x[::-1])
        p, dp = _legendre(n, x)
        x = x - p / dp
    x = 0.5 * (x - x[::-1])
    _, dp = _legendre(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    return x, 0.5 * (w + w[::-1])


def make_grid(n_theta: int = DEFAULT_N_THETA, n_phi: int = DEFAULT_N_PHI) -> SphericalGrid:
    if int(n_theta) != n_theta or n_theta < 2:
        raise InvalidCountError(f"n_theta must be an integer >= 2, got {n_theta!r}")
    if int(n_phi) != n_phi or n_phi < 1:
        raise InvalidCountError(f"n_phi must be an integer >= 1, got {n_phi!r}")
    u, wu = gauss_legendre(int(n_theta))
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    wphi = np.full(int(n_phi), 2.0 * math.pi / n_phi)
    for arr in (u, wu, phi, wphi):
        arr.setflags(write=False)
    return SphericalGrid(u, wu, phi, wphi)
