"""Two-qubit state families: Bell-diagonal, perturbed Bell-diagonal and real X states.

Also holds the random X-state sampler and the JSON state descriptors read by the CLI.
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from discordlab.matcore import (
    I2,
    I4,
    PAULI,
    SIGMA_Z,
    DensityMatrix4,
    InvalidStateError,
    NotXShapedError,
    _largest_off_x,
    as_density,
    kron,
)

PARAM_TOL = 1e-12
X_TOL = 1e-10

BELL_STATES = {
    "phi+": (1.0, -1.0, 1.0),
    "phi-": (-1.0, 1.0, 1.0),
    "psi+": (1.0, 1.0, -1.0),
    "psi-": (-1.0, -1.0, -1.0),
}


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation coefficients (c1, c2, c3) of a Bell-diagonal state."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            value = getattr(self, name)
            if not -1.0 - PARAM_TOL <= value <= 1.0 + PARAM_TOL:
                raise ValueError(f"{name} must lie in [-1, 1], got {value}")
        lowest = min(bds_eigenvalues(self))
        if lowest < -PARAM_TOL:
            raise InvalidStateError(
                "params",
                -lowest,
                f"Bell-diagonal coefficients {self.as_tuple()} "
                f"give eigenvalue {lowest:.6g}",
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class PerturbedBDSParams:
    """Bell-diagonal coefficients plus the local-field perturbation epsilon."""

    c1: float
    c2: float
    c3: float
    epsilon: float

    def __post_init__(self):
        DensityMatrix4(self.matrix())

    @property
    def primed(self) -> tuple[float, float, float]:
        """Shifted coefficients c'1 = c1 - eps, c'2 = c2 + eps, c'3 = c3."""
        return (self.c1 - self.epsilon, self.c2 + self.epsilon, self.c3)

    def matrix(self) -> np.ndarray:
        """Raw matrix: shifted coefficients plus a local z field on both qubits."""
        m = pauli_expansion(self.primed)
        if self.epsilon:
            m = m + self.epsilon * (kron(I2, SIGMA_Z) + kron(SIGMA_Z, I2)) / 4
        return m


@dataclass(frozen=True)
class XStateParams:
    """Populations and real coherences of an X state."""

    p00: float
    p11: float
    p22: float
    p33: float
    r12: float
    r03: float

    def __post_init__(self):
        populations = self.populations
        if min(populations) < -PARAM_TOL:
            raise InvalidStateError("params", -min(populations), "Negative population")
        total_dev = abs(sum(populations) - 1)
        if total_dev > PARAM_TOL:
            raise InvalidStateError("trace", total_dev)
        bound03 = np.sqrt(max(self.p00 * self.p33, 0.0))
        bound12 = np.sqrt(max(self.p11 * self.p22, 0.0))
        excess = max(abs(self.r03) - bound03, abs(self.r12) - bound12)
        if excess > PARAM_TOL:
            raise InvalidStateError(
                "psd", excess, f"Coherence exceeds its block bound by {excess:.3e}"
            )

    @property
    def populations(self) -> tuple[float, float, float, float]:
        return (self.p00, self.p11, self.p22, self.p33)

    def as_tuple(self) -> tuple[float, ...]:
        return (self.p00, self.p11, self.p22, self.p33, self.r12, self.r03)


@dataclass(frozen=True)
class SampleSeed:
    """Seed and stream selecting one reproducible random sequence."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        for name in ("seed", "stream"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or not 0 <= value < 2**64:
                raise ValueError(
                    f"{name} must be an unsigned 64-bit integer, got {value!r}"
                )

    def generator(self, offset: int = 0) -> np.random.Generator:
        """Generator for one chunk of this stream.

        Distinct (stream, offset) pairs give independent sequences.
        """
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream, offset))
        return np.random.Generator(np.random.PCG64(sequence))


def pauli_expansion(c: tuple[float, float, float]) -> np.ndarray:
    """Raw matrix (I4 + sum_j c_j sigma_j x sigma_j) / 4, not validated."""
    m = np.array(I4)
    for cj, sigma in zip(c, PAULI):
        m = m + cj * kron(sigma, sigma)
    return m / 4


def bds_eigenvalues(p: BellDiagonalParams) -> tuple[float, float, float, float]:
    """Spectrum of the Bell-diagonal state in closed form."""
    c1, c2, c3 = p.c1, p.c2, p.c3
    return (
        (1 + c1 + c2 - c3) / 4,
        (1 - c1 - c2 - c3) / 4,
        (1 + c1 - c2 + c3) / 4,
        (1 - c1 + c2 + c3) / 4,
    )


def bds_to_density(p: BellDiagonalParams) -> DensityMatrix4:
    return DensityMatrix4(pauli_expansion(p.as_tuple()))


def bell_state(name: str) -> DensityMatrix4:
    """Projector onto one of the four Bell states: phi+, phi-, psi+ or psi-."""
    try:
        return bds_to_density(BellDiagonalParams(*BELL_STATES[name.lower()]))
    except KeyError as exc:
        raise ValueError(f"Invalid Bell state: {name!r}") from exc


def perturbed_bds_to_density(p: PerturbedBDSParams) -> DensityMatrix4:
    """Shifted Bell-diagonal state plus a local z field on both qubits."""
    return DensityMatrix4(p.matrix())


def xstate_to_density(p: XStateParams) -> DensityMatrix4:
    m = np.diag(np.array(p.populations, dtype=complex))
    m[0, 3] = m[3, 0] = p.r03
    m[1, 2] = m[2, 1] = p.r12
    return DensityMatrix4(m)


def density_to_xparams(rho: Any) -> XStateParams:
    """Read the six X-state parameters back from a density matrix."""
    a = as_density(rho).data
    entry, magnitude = _largest_off_x(a)
    if magnitude > X_TOL:
        raise NotXShapedError(entry, magnitude)
    for i, j in ((0, 3), (1, 2)):
        if abs(a[i, j].imag) > X_TOL:
            raise NotXShapedError((i, j), abs(a[i, j].imag))
    p00, p11, p22, p33 = (float(x) for x in a.diagonal().real)
    return XStateParams(p00, p11, p22, p33, float(a[1, 2].real), float(a[0, 3].real))


def constraint_gap(p: XStateParams) -> float:
    """rho00 rho22 - rho11 rho33, zero on states able to change basis suddenly."""
    return p.p00 * p.p22 - p.p11 * p.p33


def product_state(rho_a: Any, rho_b: Any) -> DensityMatrix4:
    return DensityMatrix4(kron(rho_a, rho_b))


def sample_xstate_batch(seed: SampleSeed, n: int, offset: int = 0) -> np.ndarray:
    """Draw n X states as rows (p00, p11, p22, p33, r12, r03).

    Populations are uniform on the simplex, coherences uniform in magnitude up to
    their positivity bound with a random sign.
    """
    if n < 1:
        raise ValueError(f"Sample count must be positive, got {n}")
    rng = seed.generator(offset)
    populations = rng.dirichlet(np.ones(4), size=n)
    magnitudes = rng.uniform(0.0, 1.0, size=(n, 2))
    signs = rng.choice(np.array([-1.0, 1.0]), size=(n, 2))
    p00, p11, p22, p33 = populations.T
    r03 = signs[:, 0] * magnitudes[:, 0] * np.sqrt(p00 * p33)
    r12 = signs[:, 1] * magnitudes[:, 1] * np.sqrt(p11 * p22)
    return np.column_stack([populations, r12, r03])


def sample_random_xstate(seed: SampleSeed) -> XStateParams:
    row = sample_xstate_batch(seed, 1)[0]
    return XStateParams(*(float(x) for x in row))


StateParams = BellDiagonalParams | PerturbedBDSParams | XStateParams

X_FIELDS = ("p00", "p11", "p22", "p33", "r12", "r03")


def parse_descriptor(descriptor: dict) -> StateParams:
    """Build state parameters from a JSON descriptor.

    The descriptor is {"type": "bds" | "perturbed" | "x", ...} with the matching fields.
    """
    if not isinstance(descriptor, dict):
        raise TypeError("State descriptor must be a JSON object")
    kinds = {
        "bds": (BellDiagonalParams, ("c1", "c2", "c3")),
        "perturbed": (PerturbedBDSParams, ("c1", "c2", "c3", "epsilon")),
        "x": (XStateParams, X_FIELDS),
    }
    kind = descriptor.get("type")
    if kind not in kinds:
        raise ValueError(f"Invalid state type: {kind!r}")
    cls, fields = kinds[kind]
    extra = set(descriptor) - set(fields) - {"type"}
    if extra:
        raise ValueError(f"Unknown fields for {kind!r} state: {sorted(extra)}")
    try:
        values = [float(descriptor[name]) for name in fields]
    except KeyError as exc:
        raise ValueError(f"Missing field {exc.args[0]!r} for {kind!r} state") from exc
    except (TypeError, ValueError) as exc:
        raise ValueError(f"Non-numeric field in {kind!r} state") from exc
    return cls(*values)


def descriptor_of(params: StateParams) -> dict:
    if isinstance(params, BellDiagonalParams):
        return {"type": "bds", "c1": params.c1, "c2": params.c2, "c3": params.c3}
    if isinstance(params, PerturbedBDSParams):
        return {
            "type": "perturbed",
            "c1": params.c1,
            "c2": params.c2,
            "c3": params.c3,
            "epsilon": params.epsilon,
        }
    if isinstance(params, XStateParams):
        return {"type": "x", **dict(zip(X_FIELDS, params.as_tuple()))}
    raise TypeError(f"Not a state parameter object: {type(params).__name__}")


def to_density(params: StateParams) -> DensityMatrix4:
    if isinstance(params, BellDiagonalParams):
        return bds_to_density(params)
    if isinstance(params, PerturbedBDSParams):
        return perturbed_bds_to_density(params)
    if isinstance(params, XStateParams):
        return xstate_to_density(params)
    raise TypeError(f"Not a state parameter object: {type(params).__name__}")


def density_from_descriptor(descriptor: dict) -> DensityMatrix4:
    return to_density(parse_descriptor(descriptor))
