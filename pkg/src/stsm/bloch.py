"""Exact single-qubit and Bell-pair mathematics.

Pure states are parameterized on the Bloch sphere as

    |theta, phi> = cos(theta/2) |z+> + exp(i phi) sin(theta/2) |z->

and every probability is obtained from explicit complex inner products.
Closed-form shortcuts such as cos^2(angle/2) are left to the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi
_POLE_TOL = 1e-14
_NORM_TOL = 1e-12
_MATRIX_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"outcome sign must be +1 or -1, got {sign!r}")
    return int(sign)


@dataclass(frozen=True)
class BlochDirection:
    """Unit direction on the Bloch sphere (polar ``theta``, azimuth ``phi``).

    ``phi`` is reduced to [0, 2pi) and set to 0 at the poles, so two
    directions compare equal iff they are the same point of the sphere.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError("angles must be finite")
        if theta < -_POLE_TOL or theta > math.pi + _POLE_TOL:
            raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
        if theta <= _POLE_TOL:
            theta, phi = 0.0, 0.0
        elif theta >= math.pi - _POLE_TOL:
            theta, phi = math.pi, 0.0
        else:
            phi = math.fmod(phi, TWO_PI)
            if phi < 0.0:
                phi += TWO_PI
            if phi >= TWO_PI:
                phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    def antipode(self) -> "BlochDirection":
        return BlochDirection(math.pi - self.theta, self.phi + math.pi)

    def label(self) -> str:
        return f"({self.theta!r},{self.phi!r})"


Z_AXIS = BlochDirection(0.0, 0.0)
X_AXIS = BlochDirection(math.pi / 2, 0.0)
Y_AXIS = BlochDirection(math.pi / 2, math.pi / 2)


def ket_components(theta, phi):
    """Amplitudes of ``|theta, phi>`` on (|z+>, |z->); broadcasts over arrays."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    up = np.cos(theta / 2) + 0j
    down = np.exp(1j * phi) * np.sin(theta / 2)
    return up, down


@dataclass(frozen=True)
class PureQubitState:
    """Normalized qubit state in the sigma_z eigenbasis, global phase fixed.

    The phase is chosen so that the |z+> amplitude is real and nonnegative,
    or, when it vanishes, the |z-> amplitude is real and positive.
    """

    up: complex
    down: complex

    def __post_init__(self):
        up, down = complex(self.up), complex(self.down)
        norm = abs(up) ** 2 + abs(down) ** 2
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized (|a|^2+|b|^2 = {norm!r})")
        if abs(up) > 0.0:
            phase = up / abs(up)
        else:
            phase = down / abs(down)
        up, down = up / phase, down / phase
        if abs(up) > 0.0:
            up = complex(abs(up), 0.0)
        else:
            up, down = 0j, complex(abs(down), 0.0)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", down)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=complex)

    def isclose(self, other: "PureQubitState", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.vector, other.vector, rtol=0.0, atol=atol))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """2x2 Hermitian, unit-trace, positive-semidefinite operator."""

    entries: np.ndarray = field(repr=True)

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError(f"density matrix must be 2x2, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > _MATRIX_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > _MATRIX_TOL:
            raise ValueError(f"density matrix trace is {np.trace(rho)!r}, not 1")
        if np.min(np.linalg.eigvalsh(rho)) < -_MATRIX_TOL:
            raise ValueError("density matrix has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    @property
    def bloch_vector(self) -> np.ndarray:
        return np.real(
            [np.trace(self.entries @ s) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
        )

    def max_deviation(self, other: "DensityMatrix") -> float:
        return float(np.max(np.abs(self.entries - other.entries)))


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Two-qubit pure state with amplitudes ordered ++, +-, -+, -- in z (x) z."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ValueError("two-qubit state needs exactly 4 amplitudes")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"two-qubit state is not normalized ({norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


BELL_STATE = TwoQubitState(np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2))


def pauli_contraction(n: BlochDirection) -> np.ndarray:
    """The operator n . (sigma_x, sigma_y, sigma_z)."""
    nx, ny, nz = n.vector
    return nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z


def state_from_direction(n: BlochDirection) -> PureQubitState:
    """The +1 eigenstate of ``pauli_contraction(n)``."""
    up, down = ket_components(n.theta, n.phi)
    return PureQubitState(complex(up), complex(down))


def eigenstate(n: BlochDirection, sign: int = 1) -> PureQubitState:
    """Eigenstate of ``pauli_contraction(n)`` with eigenvalue ``sign``."""
    if _check_sign(sign) == 1:
        return state_from_direction(n)
    return state_from_direction(n.antipode())


def transition_probability(
    prep: BlochDirection, meas: BlochDirection, outcome: int, prep_sign: int = 1
) -> float:
    """Probability of ``outcome`` when measuring along ``meas``.

    The system is prepared in the ``prep_sign`` eigenstate of ``prep``
    (the +1 eigenstate unless stated otherwise).
    """
    bra = eigenstate(meas, outcome).vector
    ket = eigenstate(prep, prep_sign).vector
    return float(abs(np.vdot(bra, ket)) ** 2)


def born_conditional(r, theta, phi=0.0):
    """Born-rule probability of sigma_z outcome ``r`` for the state ``|theta, phi>``.

    Works elementwise on arrays of angles.
    """
    up, down = ket_components(theta, phi)
    amp = up if _check_sign(r) == 1 else down
    return np.abs(amp) ** 2 if np.ndim(amp) else float(abs(amp) ** 2)


def bell_joint_probability(
    a: BlochDirection,
    b: BlochDirection,
    ra: int,
    rb: int,
    state: TwoQubitState = BELL_STATE,
) -> float:
    """Joint outcome probability for local measurements along ``a`` and ``b``."""
    bra = np.kron(eigenstate(a, ra).vector, eigenstate(b, rb).vector)
    return float(abs(np.vdot(bra, state.amplitudes)) ** 2)


def projector(s: PureQubitState) -> DensityMatrix:
    v = s.vector
    return DensityMatrix(np.outer(v, v.conj()))


def mixed_state(bloch_vector) -> DensityMatrix:
    """The density matrix (I + r . sigma) / 2."""
    rx, ry, rz = bloch_vector
    return DensityMatrix(0.5 * (IDENTITY + rx * SIGMA_X + ry * SIGMA_Y + rz * SIGMA_Z))
