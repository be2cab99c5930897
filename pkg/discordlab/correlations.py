"""Mutual information, classical correlation and quantum discord of two-qubit states.

Measurements are rank-1 projective pairs on subsystem B:
|pi1> = cos(theta)|0> + e^{i phi} sin(theta)|1>,
|pi2> = sin(theta)|0> - e^{i phi} cos(theta)|1>.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from discordlab.matcore import (
    I2,
    SUBSYSTEM,
    DensityMatrix4,
    _largest_off_x,
    as_density,
    partial_trace,
    qubit_entropies,
    von_neumann_entropy,
)

logger = logging.getLogger(__name__)

PROB_TOL = 1e-12
TIE_TOL = 1e-10
X_TOL = 1e-10
ANGLE_TOL = 1e-12

THETA_GRID = np.linspace(0.0, np.pi / 2, 181)
PHI_GRID = np.arange(36) * (np.pi / 18)
RESTARTS = 3
GOLDEN_XTOL = 1e-10
GOLDEN_MAX_ITER = 200
ASCENT_MAX_ROUNDS = 50

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2

# grid rows, peak mask over the grid values, refined rows
Candidates = tuple[np.ndarray, np.ndarray, np.ndarray]


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective measurement on B given by the polar angle theta and the phase phi."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not -ANGLE_TOL <= self.theta <= np.pi + ANGLE_TOL:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not 0.0 <= self.phi < 2 * np.pi:
            raise ValueError(f"phi must lie in [0, 2 pi), got {self.phi!r}")

    @property
    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = math.cos(self.theta), math.sin(self.theta)
        e = complex(math.cos(self.phi), math.sin(self.phi))
        return np.array([c, e * s]), np.array([s, -e * c])

    @property
    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        return tuple(np.outer(v, v.conj()) for v in self.vectors)


@dataclass(frozen=True)
class ConditionalOutcome:
    """Outcome k of the measurement on B: probability and normalized state of A."""

    k: int
    probability: float
    state: np.ndarray


@dataclass(frozen=True)
class CorrelationBreakdown:
    """Mutual information, classical correlation and discord (bits) of one state.

    optimizer_trace has one row (theta, phi, objective) per evaluated basis.
    """

    mutual_info: float
    classical: float
    discord: float
    optimal_basis: MeasurementBasis
    optimizer_trace: np.ndarray = field(repr=False)


def _basis_vectors(theta: np.ndarray, phi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    c, s = np.cos(theta), np.sin(theta)
    e = np.exp(1j * phi)
    return np.stack([c + 0j, e * s], axis=-1), np.stack([s + 0j, -e * c], axis=-1)


def _conditionals(tensor: np.ndarray, theta: Any, phi: Any):
    """Unnormalized conditional states of A and their probabilities, both outcomes."""
    theta, phi = np.broadcast_arrays(
        np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    )
    out = []
    for v in _basis_vectors(theta, phi):
        sigma = np.einsum("...b,ibjc,...c->...ij", v.conj(), tensor, v)
        prob = sigma[..., 0, 0].real + sigma[..., 1, 1].real
        out.append((prob, sigma))
    return out


def _objective(tensor: np.ndarray, s_a: float, theta: Any, phi: Any) -> np.ndarray:
    """S(rho_A) - sum_k p_k S(rho_A|k) at every (theta, phi) of the broadcast inputs."""
    conditional = 0.0
    for prob, sigma in _conditionals(tensor, theta, phi):
        kept = prob > PROB_TOL
        safe = np.where(kept, prob, 1.0)
        entropy = qubit_entropies(sigma / safe[..., None, None])
        conditional = conditional + np.where(kept, prob * entropy, 0.0)
    return s_a - conditional


def _prepare(rho: Any) -> tuple[DensityMatrix4, np.ndarray, float]:
    rho = as_density(rho)
    tensor = rho.data.reshape(2, 2, 2, 2)
    s_a = float(qubit_entropies(partial_trace(rho, SUBSYSTEM.A)))
    return rho, tensor, s_a


def mutual_information(rho: Any) -> float:
    """I = S(rho_A) + S(rho_B) - S(rho_AB) in bits."""
    rho = as_density(rho)
    return (
        von_neumann_entropy(partial_trace(rho, SUBSYSTEM.A))
        + von_neumann_entropy(partial_trace(rho, SUBSYSTEM.B))
        - von_neumann_entropy(rho)
    )


def measure_on_B(
    rho: Any, basis: MeasurementBasis
) -> tuple[ConditionalOutcome, ConditionalOutcome]:
    """Both outcomes of the projective measurement on B.

    An outcome with p <= 1e-12 carries the maximally mixed state as a placeholder.
    """
    rho = as_density(rho)
    tensor = rho.data.reshape(2, 2, 2, 2)
    outcomes = []
    conditionals = _conditionals(tensor, basis.theta, basis.phi)
    for k, (prob, sigma) in enumerate(conditionals, start=1):
        p = float(prob)
        state = sigma / p if p > PROB_TOL else I2 / 2
        outcomes.append(ConditionalOutcome(k, p, np.array(state)))
    return outcomes[0], outcomes[1]


def classical_correlation_at(rho: Any, basis: MeasurementBasis) -> float:
    """S(rho_A) - sum_k p_k S(rho_A|k) for one basis, in bits."""
    _, tensor, s_a = _prepare(rho)
    return float(_objective(tensor, s_a, basis.theta, basis.phi))


def real_x_plane(rho: Any) -> float | None:
    """Best measurement plane phi for a real X state, None for any other state.

    The objective depends on phi only through
    |cos(phi) (r03 + r12) + i sin(phi) (r03 - r12)|, so phi = 0 is optimal when
    |r03 + r12| >= |r03 - r12| and phi = pi/2 otherwise.
    """
    a = as_density(rho).data
    if _largest_off_x(a)[1] > X_TOL:
        return None
    if abs(a[0, 3].imag) > X_TOL or abs(a[1, 2].imag) > X_TOL:
        return None
    r03, r12 = a[0, 3].real, a[1, 2].real
    return 0.0 if abs(r03 + r12) >= abs(r03 - r12) else np.pi / 2


def golden_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = GOLDEN_XTOL,
    max_iter: int = GOLDEN_MAX_ITER,
) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal f on [lo, hi].

    Returns (x, f(x)) for the better of the two final interior points.
    """
    a, b = min(lo, hi), max(lo, hi)
    h = b - a
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(max_iter):
        if h <= xtol:
            break
        if yc >= yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
    return (c, yc) if yc >= yd else (d, yd)


def _grid_peaks(values: np.ndarray) -> np.ndarray:
    """Grid cells no lower than their neighbours; phi wraps around, theta does not."""
    pad = [(1, 1)] + [(0, 0)] * (values.ndim - 1)
    padded = np.pad(values, pad, constant_values=-np.inf)
    peaks = (values >= padded[:-2]) & (values >= padded[2:])
    if values.ndim == 2:
        peaks &= values >= np.roll(values, 1, axis=1)
        peaks &= values >= np.roll(values, -1, axis=1)
    return peaks


def _pick(grid: np.ndarray, peaks: np.ndarray, refined: np.ndarray) -> np.ndarray:
    """Optimal row of (theta, phi, value).

    An objective whose grid spread is within 1e-10 is constant and is reported at
    the first grid row. Otherwise the grid peaks and the refined restarts compete,
    and values within 1e-10 of the best are tied toward small theta then phi.
    """
    if np.ptp(grid[:, 2]) <= TIE_TOL:
        return grid[0]
    candidates = np.vstack([grid[peaks], refined])
    best = candidates[:, 2].max()
    near = candidates[candidates[:, 2] >= best - TIE_TOL]
    order = np.lexsort((near[:, 1], near[:, 0]))
    return near[order[0]]


def _optimize_plane(tensor: np.ndarray, s_a: float, phi: float) -> Candidates:
    values = _objective(tensor, s_a, THETA_GRID, phi)
    grid = np.column_stack([THETA_GRID, np.full_like(THETA_GRID, phi), values])
    refined = []
    last = len(THETA_GRID) - 1
    for i in np.argsort(-values, kind="stable")[:RESTARTS]:
        lo, hi = THETA_GRID[max(i - 1, 0)], THETA_GRID[min(i + 1, last)]
        theta, value = golden_max(
            lambda t: float(_objective(tensor, s_a, t, phi)), lo, hi
        )
        logger.debug(
            "restart at theta=%.6f refined to %.12f (J=%.15f)",
            THETA_GRID[i],
            theta,
            value,
        )
        refined.append([theta, phi, value])
    return grid, _grid_peaks(values), np.array(refined)


def _optimize_sphere(tensor: np.ndarray, s_a: float) -> Candidates:
    values = _objective(tensor, s_a, THETA_GRID[:, None], PHI_GRID[None, :])
    tt, pp = np.meshgrid(THETA_GRID, PHI_GRID, indexing="ij")
    grid = np.column_stack([tt.ravel(), pp.ravel(), values.ravel()])
    refined = []
    d_theta = THETA_GRID[1] - THETA_GRID[0]
    d_phi = PHI_GRID[1] - PHI_GRID[0]
    flat = values.ravel()
    for idx in np.argsort(-flat, kind="stable")[:RESTARTS]:
        i, j = np.unravel_index(idx, values.shape)
        theta, phi, value = THETA_GRID[i], PHI_GRID[j], flat[idx]
        for _ in range(ASCENT_MAX_ROUNDS):
            previous = value
            theta, value = golden_max(
                lambda t: float(_objective(tensor, s_a, t, phi)),
                max(theta - d_theta, 0.0),
                min(theta + d_theta, np.pi / 2),
            )
            phi, value = golden_max(
                lambda f: float(_objective(tensor, s_a, theta, f)),
                phi - d_phi,
                phi + d_phi,
            )
            if value - previous < 1e-12:
                break
        phi = float(np.mod(phi, 2 * np.pi))
        if phi >= 2 * np.pi:
            phi = 0.0
        logger.debug(
            "ascent from cell (%d, %d) ended at (%.9f, %.9f) J=%.15f",
            i,
            j,
            theta,
            phi,
            value,
        )
        refined.append([theta, phi, value])
    return grid, _grid_peaks(values).ravel(), np.array(refined)


def _optimize(
    rho: Any, full_scan: bool = False
) -> tuple[float, MeasurementBasis, np.ndarray]:
    _, tensor, s_a = _prepare(rho)
    plane = None if full_scan else real_x_plane(rho)
    if plane is None:
        grid, peaks, refined = _optimize_sphere(tensor, s_a)
    else:
        grid, peaks, refined = _optimize_plane(tensor, s_a, plane)
    theta, phi, value = _pick(grid, peaks, refined)
    trace = np.vstack([grid, refined])
    return float(value), MeasurementBasis(float(theta), float(phi)), trace


def classical_correlation(
    rho: Any, full_scan: bool = False
) -> tuple[float, MeasurementBasis]:
    """Maximal classical correlation J over projective measurements on B and its basis.

    Real X states are optimized over theta in one plane; any other state, or
    full_scan=True, searches the whole (theta, phi) sphere.
    """
    value, basis, _ = _optimize(rho, full_scan)
    return value, basis


def quantum_discord(rho: Any, full_scan: bool = False) -> CorrelationBreakdown:
    """D = I - J with the measurement on subsystem B."""
    rho = as_density(rho)
    mutual_info = mutual_information(rho)
    classical, basis, trace = _optimize(rho, full_scan)
    return CorrelationBreakdown(
        mutual_info=mutual_info,
        classical=classical,
        discord=mutual_info - classical,
        optimal_basis=basis,
        optimizer_trace=trace,
    )
