"""Colored-noise dephasing channel driven by random telegraph noise along z.

Both qubits see independent noise of amplitude a and correlation time tau. Single-qubit
coherences decay by the envelope Lambda(nu) with nu = t / (2 tau).
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from discordlab.matcore import I2, SIGMA_Z, DensityMatrix4, as_density, kron

REGIME = Enum("REGIME", "UNDERDAMPED CRITICAL OVERDAMPED")

CRITICAL_TOL = 1e-12


class DimensionlessTime(float):
    """nu = t / (2 tau), never negative."""

    def __new__(cls, nu: Any):
        try:
            value = float(nu)
        except (TypeError, ValueError) as exc:
            raise TypeError(f"Invalid dimensionless time: {nu!r}") from exc
        if not value >= 0.0:
            raise ValueError(f"Dimensionless time must be >= 0, got {nu!r}")
        return super().__new__(cls, value)


@dataclass(frozen=True)
class DephasingChannel:
    """Noise amplitude a (1/time) and correlation time tau (time)."""

    a: float
    tau: float

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError(f"Noise amplitude must be >= 0, got {self.a!r}")
        if not self.tau > 0:
            raise ValueError(f"Correlation time must be > 0, got {self.tau!r}")

    @property
    def strength(self) -> float:
        """4 a tau, the memory parameter that selects the envelope branch."""
        return 4 * self.a * self.tau

    @property
    def regime(self) -> REGIME:
        if abs(self.strength - 1) <= CRITICAL_TOL:
            return REGIME.CRITICAL
        if self.strength > 1:
            return REGIME.UNDERDAMPED
        return REGIME.OVERDAMPED

    @property
    def mu(self) -> float:
        """Frequency sqrt((4 a tau)^2 - 1); zero outside the underdamped regime."""
        if self.regime != REGIME.UNDERDAMPED:
            return 0.0
        return math.sqrt(self.strength**2 - 1)

    @property
    def kappa(self) -> float:
        """Rate split sqrt(1 - (4 a tau)^2); zero outside the overdamped regime."""
        if self.regime != REGIME.OVERDAMPED:
            return 0.0
        return math.sqrt(1 - self.strength**2)

    def nu_of(self, t: float) -> float:
        return t / (2 * self.tau)

    def time_of(self, nu: float) -> float:
        return 2 * self.tau * nu


def lambda_envelope(ch: DephasingChannel, nu: Any) -> Any:
    """Decoherence envelope Lambda(nu), clipped to [-1, 1].

    Accepts a scalar or an array of nu; returns the same shape.
    """
    values = np.asarray(nu, dtype=float)
    if np.any(~(values >= 0)):
        raise ValueError(f"Dimensionless time must be >= 0, got {nu!r}")
    regime = ch.regime
    if regime == REGIME.UNDERDAMPED:
        mu = ch.mu
        lam = np.exp(-values) * (np.cos(mu * values) + np.sin(mu * values) / mu)
    elif regime == REGIME.CRITICAL:
        lam = np.exp(-values) * (1 + values)
    else:
        kappa = ch.kappa
        # e^-nu cosh and e^-nu sinh / kappa written without overflow at large nu
        slow = np.exp(-(1 - kappa) * values)
        cosh_part = (slow + np.exp(-(1 + kappa) * values)) / 2
        sinh_part = slow * -np.expm1(-2 * kappa * values) / (2 * kappa)
        lam = cosh_part + sinh_part
    lam = np.clip(lam, -1.0, 1.0)
    if lam.ndim == 0:
        return float(lam)
    return lam


def kraus_ops(ch: DephasingChannel, nu: Any) -> tuple[np.ndarray, np.ndarray]:
    """Single-qubit Kraus pair M1 = sqrt((1+L)/2) I, M2 = sqrt((1-L)/2) sigma_z."""
    lam = lambda_envelope(ch, DimensionlessTime(nu))
    m1 = math.sqrt((1 + lam) / 2) * I2
    m2 = math.sqrt((1 - lam) / 2) * SIGMA_Z
    return m1, m2


def apply_two_qubit(ch: DephasingChannel, rho0: Any, nu: Any) -> DensityMatrix4:
    """Evolve a two-qubit state: sum over (Mi x Mj) rho (Mi x Mj)^dagger."""
    rho = as_density(rho0).data
    ops = kraus_ops(ch, nu)
    out = np.zeros((4, 4), dtype=complex)
    for mi in ops:
        for mj in ops:
            k = kron(mi, mj)
            out += k @ rho @ k.conj().T
    return DensityMatrix4(out)


def volterra_coherence(
    ch: DephasingChannel, t_max: float, dt: float
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate the memory-kernel equation for rho01(t) / rho01(0) on [0, t_max].

    d rho01/dt = -4 a^2 int_0^t exp(-(t - s)/tau) rho01(s) ds is reduced exactly to
    y' = -4 a^2 z, z' = -z/tau + y with y(0) = 1, z(0) = 0 and advanced by
    classical RK4.
    Returns (times, coherence).
    """
    if not dt > 0:
        raise ValueError(f"Step must be > 0, got {dt!r}")
    if not t_max > 0:
        raise ValueError(f"Time span must be > 0, got {t_max!r}")
    n = int(math.ceil(t_max / dt - 1e-9))
    k = 4 * ch.a**2
    rate = 1 / ch.tau

    def rhs(y: float, z: float) -> tuple[float, float]:
        return -k * z, -rate * z + y

    y, z = 1.0, 0.0
    coherence = [y]
    for _ in range(n):
        k1y, k1z = rhs(y, z)
        k2y, k2z = rhs(y + dt / 2 * k1y, z + dt / 2 * k1z)
        k3y, k3z = rhs(y + dt / 2 * k2y, z + dt / 2 * k2z)
        k4y, k4z = rhs(y + dt * k3y, z + dt * k3z)
        y += dt / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        z += dt / 6 * (k1z + 2 * k2z + 2 * k3z + k4z)
        coherence.append(y)
    times = np.arange(n + 1) * dt
    return times, np.array(coherence)
