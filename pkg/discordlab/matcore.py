"""Dense complex-matrix kernel for one and two qubits.

Matrices are plain numpy arrays of shape (2, 2) or (4, 4). The two-qubit basis
order is |00>, |01>, |10>, |11> with subsystem A as the left (slow) factor.
"""

from enum import Enum
from typing import Any

import numpy as np

SUBSYSTEM = Enum("SUBSYSTEM", "A B")

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 50


def _constant(values) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    arr.flags.writeable = False
    return arr


I2 = _constant([[1, 0], [0, 1]])
SIGMA_X = _constant([[0, 1], [1, 0]])
SIGMA_Y = _constant([[0, -1j], [1j, 0]])
SIGMA_Z = _constant([[1, 0], [0, -1]])
I4 = _constant(np.eye(4))
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class InvalidStateError(ValueError):
    """A matrix failed one of the density-matrix invariants."""

    def __init__(self, invariant: str, deviation: float, message: str | None = None):
        self.invariant = invariant
        self.deviation = float(deviation)
        super().__init__(
            message or f"Invalid state: {invariant} violated by {self.deviation:.3e}"
        )


class NotXShapedError(ValueError):
    """A matrix has weight outside the diagonal and anti-diagonal."""

    def __init__(self, entry: tuple[int, int], magnitude: float):
        self.entry = entry
        self.magnitude = float(magnitude)
        super().__init__(
            f"Matrix is not X-shaped: |rho{entry[0]}{entry[1]}| = {self.magnitude:.3e}"
        )


def check_matrix(m: Any, dims: tuple[int, ...] = (2, 4)) -> np.ndarray:
    """Return m as a complex square array, raising if its dimension is not allowed."""
    if isinstance(m, DensityMatrix4):
        return m.data
    try:
        arr = np.asarray(m, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"Cannot interpret {type(m).__name__} as a matrix") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in dims:
        raise ValueError(f"Invalid matrix shape {arr.shape}, expected dim in {dims}")
    return arr


def hermitian_deviation(m: np.ndarray) -> float:
    """Largest elementwise |m - m^dagger|."""
    return float(np.max(np.abs(m - m.conj().T)))


def kron(a: Any, b: Any) -> np.ndarray:
    """Tensor product of two single-qubit operators, A as the slow index."""
    a = check_matrix(a, dims=(2,))
    b = check_matrix(b, dims=(2,))
    return np.kron(a, b)


def eig_hermitian(m: Any) -> list[float]:
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, descending."""
    a = check_matrix(m)
    deviation = hermitian_deviation(a)
    if deviation > HERMITIAN_TOL:
        raise ValueError(f"Matrix is not Hermitian (deviation {deviation:.3e})")
    a = (a + a.conj().T) / 2
    dim = a.shape[0]
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= JACOBI_TOL:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                b = abs(apq)
                if b == 0.0:
                    continue
                phase = apq / b
                angle = 0.5 * np.arctan2(2 * b, a[p, p].real - a[q, q].real)
                c, s = np.cos(angle), np.sin(angle)
                u = np.eye(dim, dtype=complex)
                u[p, p] = c
                u[p, q] = -s
                u[q, p] = s * phase.conjugate()
                u[q, q] = c * phase.conjugate()
                a = u.conj().T @ a @ u
    return sorted((float(x) for x in np.diag(a).real), reverse=True)


def x_block_eigenvalues(m: Any) -> list[float]:
    """Closed-form spectrum of a 4x4 X matrix from its two 2x2 blocks, descending."""
    a = check_matrix(m, dims=(4,))
    values = []
    for i, j in ((0, 3), (1, 2)):
        mean = (a[i, i].real + a[j, j].real) / 2
        radius = np.hypot((a[i, i].real - a[j, j].real) / 2, abs(a[i, j]))
        values.extend([mean + radius, mean - radius])
    return sorted((float(x) for x in values), reverse=True)


def _entropy_of_spectrum(values) -> float:
    """-sum(l log2 l) with 0 log 0 = 0 and small negative eigenvalues clamped."""
    spectrum = np.asarray(values, dtype=float)
    lowest = float(spectrum.min())
    if lowest < -PSD_TOL:
        raise InvalidStateError("psd", -lowest)
    spectrum = spectrum[spectrum > 0]
    return float(max(0.0, -np.sum(spectrum * np.log2(spectrum))))


def von_neumann_entropy(m: Any) -> float:
    """Von Neumann entropy in bits."""
    a = check_matrix(m)
    trace_dev = abs(np.trace(a) - 1)
    if trace_dev > PSD_TOL:
        raise InvalidStateError("trace", trace_dev)
    return _entropy_of_spectrum(eig_hermitian(a))


def qubit_entropies(stack: np.ndarray) -> np.ndarray:
    """Entropies (bits) of a stack of normalized 2x2 Hermitian matrices (..., 2, 2)."""
    a = stack[..., 0, 0].real
    d = stack[..., 1, 1].real
    b = np.abs(stack[..., 0, 1])
    radius = np.clip(np.hypot(a - d, 2 * b), 0.0, 1.0)
    up = (1 + radius) / 2
    down = (1 - radius) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(up > 0, up * np.log2(up), 0.0) + np.where(
            down > 0, down * np.log2(down), 0.0
        )
    return -terms


def is_x_shaped(m: Any, tol: float = PSD_TOL) -> bool:
    """True if every entry off the diagonal and anti-diagonal is within tol of zero."""
    return _largest_off_x(check_matrix(m, dims=(4,)))[1] <= tol


def _largest_off_x(a: np.ndarray) -> tuple[tuple[int, int], float]:
    mask = np.ones((4, 4), dtype=bool)
    idx = np.arange(4)
    mask[idx, idx] = False
    mask[idx, 3 - idx] = False
    magnitudes = np.where(mask, np.abs(a), 0.0)
    row, col = np.unravel_index(np.argmax(magnitudes), magnitudes.shape)
    return (int(row), int(col)), float(magnitudes[row, col])


class DensityMatrix4:
    """Two-qubit density matrix, immutable and checked on construction."""

    def __init__(self, data: Any):
        arr = np.array(check_matrix(data, dims=(4,)), dtype=complex)
        self._check(arr)
        arr.flags.writeable = False
        self._data = arr

    @staticmethod
    def _check(a: np.ndarray) -> None:
        trace_dev = abs(np.trace(a) - 1)
        if trace_dev > TRACE_TOL:
            raise InvalidStateError("trace", trace_dev)
        herm_dev = hermitian_deviation(a)
        if herm_dev > HERMITIAN_TOL:
            raise InvalidStateError("hermitian", herm_dev)
        lowest = eig_hermitian(a)[-1]
        if lowest < -PSD_TOL:
            raise InvalidStateError(
                "psd", -lowest, f"Invalid state: minimum eigenvalue {lowest:.6g} < 0"
            )

    def __repr__(self):
        return f"DensityMatrix4({np.array2string(self._data, precision=6)})"

    def __getitem__(self, key):
        return self._data[key]

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix4):
            return False
        return np.array_equal(self._data, other._data)

    def __hash__(self):
        return hash(self._data.tobytes())

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def diagonal(self) -> np.ndarray:
        return self._data.diagonal().real


def validate_density(m: Any) -> DensityMatrix4:
    """Check trace, Hermiticity and positivity and wrap the matrix.

    Raises InvalidStateError naming the failed invariant and the measured deviation.
    """
    return DensityMatrix4(m)


def as_density(m: Any) -> DensityMatrix4:
    """Return m unchanged if already validated, otherwise validate it."""
    if isinstance(m, DensityMatrix4):
        return m
    return validate_density(m)


def _subsystem(keep: Any) -> SUBSYSTEM:
    if isinstance(keep, SUBSYSTEM):
        return keep
    try:
        return SUBSYSTEM[str(keep).upper()]
    except KeyError as exc:
        raise ValueError(f"Invalid subsystem: {keep!r}") from exc


def partial_trace(rho: Any, keep: Any) -> np.ndarray:
    """Reduced state of the kept qubit."""
    tensor = as_density(rho).data.reshape(2, 2, 2, 2)
    if _subsystem(keep) == SUBSYSTEM.A:
        return np.einsum("ibjb->ij", tensor)
    return np.einsum("aiaj->ij", tensor)
