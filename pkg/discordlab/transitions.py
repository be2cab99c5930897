"""Discord trajectories, sudden-change detection, basis conditions and surveys."""

import logging
import multiprocessing
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from typing import Any, Callable, Iterable

import numpy as np
from scipy.optimize import bisect

from discordlab.channel import DephasingChannel, apply_two_qubit, lambda_envelope
from discordlab.correlations import _objective, _prepare, quantum_discord
from discordlab.matcore import NotXShapedError, as_density
from discordlab.states import (
    BellDiagonalParams,
    SampleSeed,
    XStateParams,
    constraint_gap,
    density_to_xparams,
    sample_xstate_batch,
)

logger = logging.getLogger(__name__)

BASIS = Enum("BASIS", "SIGMA_X SIGMA_Z INTERMEDIATE")
KIND = Enum("KIND", "SUDDEN CONTINUOUS INDETERMINATE")
CHEN = Enum("CHEN", "SIGMA_Z_OPTIMAL SIGMA_X_OPTIMAL BOTH NEITHER")

LABEL_TOL = 1e-3
SURVEY_CHUNK = 10_000
HISTOGRAM_EDGES = np.arange(-12.0, 1.0)
SWITCH_GRID = 20_001
SWITCH_XTOL = 1e-10


@dataclass(frozen=True)
class TransitionTolerances:
    """Thresholds of the refinement protocol (radians for angles, nu for widths)."""

    jump: float = 0.1
    continuity: float = 0.05
    floor: float = 1e-7
    slope_step: float = 1e-5
    sudden: float = 1e-9

    def __post_init__(self):
        for name in ("jump", "continuity", "floor", "slope_step", "sudden"):
            if not getattr(self, name) > 0:
                raise ValueError(
                    f"Tolerance {name} must be > 0, got {getattr(self, name)!r}"
                )
        if self.continuity > self.jump:
            raise ValueError(
                f"Continuity tolerance {self.continuity} "
                f"exceeds jump threshold {self.jump}"
            )


@dataclass(frozen=True)
class TrajectoryPoint:
    nu: float
    discord: float
    classical: float
    mutual_info: float
    theta_star: float
    basis_label: BASIS


@dataclass(frozen=True)
class TransitionEvent:
    """One coarse interval where the optimal angle jumped, after refinement."""

    nu_lo: float
    nu_hi: float
    kind: KIND
    theta_jump: float
    refinement_depth: int
    slope_left: float = float("nan")
    slope_right: float = float("nan")
    sudden_capable: bool | None = None
    constraint_gap: float | None = None


@dataclass
class TransitionReport:
    events: list[TransitionEvent]
    derivative_gap: float
    path: list[TrajectoryPoint] = field(default_factory=list, repr=False)

    def count(self, kind: KIND) -> int:
        return sum(1 for e in self.events if e.kind == kind)

    @property
    def max_jump(self) -> float:
        """Largest adjacent optimal-angle jump along the refined path."""
        return max_adjacent_jump([p.theta_star for p in self.path])


@dataclass(frozen=True)
class ChenClass:
    """Optimal-basis label from the sigma_z and sigma_x sufficient conditions.

    sigma_z holds when lhs <= rhs of (|r12| + |r03|)^2 <= (p00 - p11)(p33 - p22),
    sigma_x when |sqrt(p00 p33) - sqrt(p11 p22)| <= |r12| + |r03|.
    """

    label: CHEN
    sigma_z: tuple[float, float]
    sigma_x: tuple[float, float]
    flipped: bool = False

    @property
    def lhs_rhs(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return self.sigma_z, self.sigma_x


@dataclass
class SurveyReport:
    seed: SampleSeed
    n: int
    tol: float
    n_sudden_capable: int
    n_by_chen_class: dict[CHEN, int]
    histogram: np.ndarray = field(repr=False)
    bin_edges: np.ndarray = field(
        default_factory=lambda: HISTOGRAM_EDGES.copy(), repr=False
    )

    def as_row(self) -> dict:
        return {
            "seed": self.seed.seed,
            "n": self.n,
            "n_sudden_capable": self.n_sudden_capable,
            "n_sigma_z": self.n_by_chen_class[CHEN.SIGMA_Z_OPTIMAL],
            "n_sigma_x": self.n_by_chen_class[CHEN.SIGMA_X_OPTIMAL],
            "n_both": self.n_by_chen_class[CHEN.BOTH],
            "n_neither": self.n_by_chen_class[CHEN.NEITHER],
        }


def basis_label(theta: float, tol: float = LABEL_TOL) -> BASIS:
    if abs(theta - np.pi / 4) <= tol:
        return BASIS.SIGMA_X
    if min(abs(theta), abs(np.pi / 2 - theta)) <= tol:
        return BASIS.SIGMA_Z
    return BASIS.INTERMEDIATE


def max_adjacent_jump(thetas: Iterable[float]) -> float:
    values = np.asarray(list(thetas), dtype=float)
    if values.size < 2:
        return 0.0
    return float(np.max(np.abs(np.diff(values))))


def trajectory_point(
    state0: Any, ch: DephasingChannel, nu: float, full_scan: bool = False
) -> TrajectoryPoint:
    """Evolve the state to nu and evaluate its correlations."""
    breakdown = quantum_discord(apply_two_qubit(ch, state0, nu), full_scan=full_scan)
    theta = breakdown.optimal_basis.theta
    return TrajectoryPoint(
        nu=float(nu),
        discord=breakdown.discord,
        classical=breakdown.classical,
        mutual_info=breakdown.mutual_info,
        theta_star=theta,
        basis_label=basis_label(theta),
    )


def _check_grid(nu_grid: Any) -> np.ndarray:
    grid = np.asarray(nu_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("Time grid must be a non-empty sequence")
    if grid[0] != 0.0:
        raise ValueError(f"Time grid must start at 0, got {grid[0]!r}")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("Time grid must be strictly increasing")
    return grid


def evolve_trajectory(
    state0: Any,
    ch: DephasingChannel,
    nu_grid: Any,
    workers: int = 1,
    full_scan: bool = False,
) -> list[TrajectoryPoint]:
    """Correlations along the grid; workers > 1 spreads the points over a pool."""
    grid = _check_grid(nu_grid)
    state0 = as_density(state0)
    point = partial(trajectory_point, state0, ch, full_scan=full_scan)
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            points = pool.map(point, grid.tolist())
    else:
        points = [point(nu) for nu in grid.tolist()]
    logger.info("evolved %d points up to nu=%.6g", len(points), grid[-1])
    return points


def _bisect_jump(
    theta_of: Callable[[float], float],
    samples: dict[float, float],
    lo: float,
    hi: float,
    depth: int,
    max_depth: int,
    tolerances: TransitionTolerances,
) -> None:
    if abs(samples[hi] - samples[lo]) < tolerances.continuity:
        return
    if depth >= max_depth or hi - lo <= tolerances.floor:
        return
    mid = (lo + hi) / 2
    samples[mid] = theta_of(mid)
    logger.debug(
        "depth %d: [%.12g, %.12g] theta %.6f | %.6f | %.6f",
        depth,
        lo,
        hi,
        samples[lo],
        samples[mid],
        samples[hi],
    )
    _bisect_jump(theta_of, samples, lo, mid, depth + 1, max_depth, tolerances)
    _bisect_jump(theta_of, samples, mid, hi, depth + 1, max_depth, tolerances)


def refine_jump(
    theta_of: Callable[[float], float],
    lo: float,
    hi: float,
    theta_lo: float,
    theta_hi: float,
    max_depth: int,
    tolerances: TransitionTolerances = TransitionTolerances(),
) -> TransitionEvent:
    """Bisect one coarse interval of an optimal-angle path and classify the jump.

    Halves whose angle difference stays at or above the continuity tolerance are split
    until max_depth or the width floor. The largest remaining adjacent jump decides:
    >= jump threshold is sudden, < continuity tolerance is continuous, otherwise
    indeterminate.
    """
    samples = {lo: theta_lo, hi: theta_hi}
    _bisect_jump(theta_of, samples, lo, hi, 0, max_depth, tolerances)
    nus = sorted(samples)
    jumps = np.abs(np.diff([samples[nu] for nu in nus]))
    k = int(np.argmax(jumps))
    jump = float(jumps[k])
    width = nus[k + 1] - nus[k]
    depth = int(round(np.log2((hi - lo) / width)))
    if jump >= tolerances.jump:
        kind = KIND.SUDDEN
    elif jump < tolerances.continuity:
        kind = KIND.CONTINUOUS
    else:
        kind = KIND.INDETERMINATE
    return TransitionEvent(nus[k], nus[k + 1], kind, jump, depth)


def detect_transitions(
    state0: Any,
    ch: DephasingChannel,
    nu_max: float,
    initial_step: float,
    max_depth: int,
    tolerances: TransitionTolerances = TransitionTolerances(),
    workers: int = 1,
    full_scan: bool = False,
) -> TransitionReport:
    """Scan the optimal angle on a coarse grid and refine every jump above threshold."""
    if not nu_max > 0:
        raise ValueError(f"nu_max must be > 0, got {nu_max!r}")
    if not initial_step > 0:
        raise ValueError(f"Initial step must be > 0, got {initial_step!r}")
    if max_depth < 1:
        raise ValueError(f"Maximum depth must be >= 1, got {max_depth!r}")
    state0 = as_density(state0)
    grid = np.linspace(0.0, nu_max, max(int(round(nu_max / initial_step)), 1) + 1)
    coarse = evolve_trajectory(state0, ch, grid, workers=workers, full_scan=full_scan)
    cache = {p.nu: p for p in coarse}

    def point_at(nu: float) -> TrajectoryPoint:
        if nu not in cache:
            cache[nu] = trajectory_point(state0, ch, nu, full_scan=full_scan)
        return cache[nu]

    def theta_of(nu: float) -> float:
        return point_at(nu).theta_star

    capable, gap = _sudden_verdict(state0, tolerances.sudden)
    events = []
    for lo, hi in zip(grid[:-1].tolist(), grid[1:].tolist()):
        t_lo, t_hi = cache[lo].theta_star, cache[hi].theta_star
        if abs(t_hi - t_lo) <= tolerances.jump:
            continue
        event = refine_jump(theta_of, lo, hi, t_lo, t_hi, max_depth, tolerances)
        left, right = _slopes(point_at, event.nu_lo, event.nu_hi, tolerances.slope_step)
        event = TransitionEvent(
            event.nu_lo,
            event.nu_hi,
            event.kind,
            event.theta_jump,
            event.refinement_depth,
            left,
            right,
            capable,
            gap,
        )
        if event.kind == KIND.SUDDEN and capable is False:
            logger.warning(
                "sudden event at nu in [%.10g, %.10g] for a state with constraint gap "
                "%.3e; the passage is narrower than the refinement floor",
                event.nu_lo,
                event.nu_hi,
                gap,
            )
        logger.info(
            "%s event at nu in [%.10g, %.10g], jump %.4f rad, depth %d",
            event.kind.name,
            event.nu_lo,
            event.nu_hi,
            event.theta_jump,
            event.refinement_depth,
        )
        events.append(event)
    derivative_gap = max(
        (abs(e.slope_left - e.slope_right) for e in events), default=0.0
    )
    path = [cache[nu] for nu in sorted(cache)]
    return TransitionReport(events, derivative_gap, path)


def _slopes(
    point_at: Callable[[float], TrajectoryPoint],
    nu_lo: float,
    nu_hi: float,
    step: float,
) -> tuple[float, float]:
    """One-sided discord slopes just outside an event interval."""
    left_start = max(nu_lo - 2 * step, 0.0)
    if left_start < nu_lo:
        rise = point_at(nu_lo).discord - point_at(left_start).discord
        left = rise / (nu_lo - left_start)
    else:
        left = float("nan")
    right = (point_at(nu_hi + 2 * step).discord - point_at(nu_hi).discord) / (2 * step)
    return left, right


def _sudden_verdict(state: Any, tol: float) -> tuple[bool | None, float | None]:
    try:
        params = density_to_xparams(state)
    except NotXShapedError:
        return None, None
    return sudden_capable(params, tol), constraint_gap(params)


def scan_basis(
    state: Any, theta_grid: Any, phi: float = 0.0
) -> list[tuple[float, float]]:
    """Measurement objective along theta in the plane phi, for plotting."""
    _, tensor, s_a = _prepare(state)
    thetas = np.asarray(theta_grid, dtype=float)
    values = _objective(tensor, s_a, thetas, phi)
    return list(zip(thetas.tolist(), np.atleast_1d(values).tolist()))


def chen_sides(batch: np.ndarray) -> tuple[np.ndarray, ...]:
    """Both sides of the sigma_z and sigma_x conditions.

    Rows are (p00, p11, p22, p33, r12, r03).
    """
    batch = np.atleast_2d(np.asarray(batch, dtype=float))
    p00, p11, p22, p33, r12, r03 = batch.T
    coherence = np.abs(r12) + np.abs(r03)
    z_lhs = coherence**2
    z_rhs = (p00 - p11) * (p33 - p22)
    outer = np.sqrt(np.maximum(p00 * p33, 0.0))
    inner = np.sqrt(np.maximum(p11 * p22, 0.0))
    x_lhs = np.abs(outer - inner)
    x_rhs = coherence
    return z_lhs, z_rhs, x_lhs, x_rhs


def _chen_codes(z_lhs, z_rhs, x_lhs, x_rhs) -> np.ndarray:
    """0 sigma_z, 1 sigma_x, 2 both, 3 neither."""
    z_ok = z_lhs <= z_rhs
    x_ok = x_lhs <= x_rhs
    return np.select([z_ok & x_ok, z_ok, x_ok], [2, 0, 1], default=3)


_CODE_LABELS = (CHEN.SIGMA_Z_OPTIMAL, CHEN.SIGMA_X_OPTIMAL, CHEN.BOTH, CHEN.NEITHER)


def chen_classify(p: XStateParams) -> ChenClass:
    """Classify an X state by the sufficient conditions for sigma_z or sigma_x.

    States with |r12 + r03| < |r12 - r03| are first normalized by flipping the sign
    of r03, which leaves every magnitude entering the conditions unchanged.
    """
    flipped = abs(p.r12 + p.r03) < abs(p.r12 - p.r03)
    row = np.array([p.p00, p.p11, p.p22, p.p33, p.r12, -p.r03 if flipped else p.r03])
    z_lhs, z_rhs, x_lhs, x_rhs = (float(v[0]) for v in chen_sides(row))
    code = int(_chen_codes(z_lhs, z_rhs, x_lhs, x_rhs))
    return ChenClass(_CODE_LABELS[code], (z_lhs, z_rhs), (x_lhs, x_rhs), flipped)


def sudden_capable(p: XStateParams, tol: float = 1e-9) -> bool:
    """True when |p00 p22 - p11 p33| <= tol, needed for a sudden basis switch."""
    return abs(constraint_gap(p)) <= tol


def _survey_chunk(
    seed: SampleSeed, tol: float, chunk: tuple[int, int]
) -> tuple[int, np.ndarray, np.ndarray]:
    index, size = chunk
    batch = sample_xstate_batch(seed, size, offset=index)
    p00, p11, p22, p33 = batch[:, :4].T
    gap = np.abs(p00 * p22 - p11 * p33)
    codes = _chen_codes(*chen_sides(batch))
    with np.errstate(divide="ignore"):
        exponents = np.clip(np.log10(gap), HISTOGRAM_EDGES[0], HISTOGRAM_EDGES[-1])
    histogram, _ = np.histogram(exponents, bins=HISTOGRAM_EDGES)
    return int(np.count_nonzero(gap <= tol)), np.bincount(codes, minlength=4), histogram


def random_survey(
    n: int, seed: SampleSeed, tol: float = 1e-9, workers: int = 1
) -> SurveyReport:
    """Count sudden-capable states and basis-condition classes among n random X states.

    Samples are drawn in chunks of 10 000; chunk j draws from spawn key
    (seed.stream, j), so the report does not depend on the number of workers and
    surveys on different streams never share a chunk.
    """
    if n < 1:
        raise ValueError(f"Sample count must be positive, got {n}")
    starts = range(0, n, SURVEY_CHUNK)
    chunks = [(j, min(SURVEY_CHUNK, n - start)) for j, start in enumerate(starts)]
    run = partial(_survey_chunk, seed, tol)
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(run, chunks)
    else:
        results = [run(chunk) for chunk in chunks]
    capable = sum(r[0] for r in results)
    codes = np.sum([r[1] for r in results], axis=0)
    histogram = np.sum([r[2] for r in results], axis=0)
    report = SurveyReport(
        seed=seed,
        n=n,
        tol=tol,
        n_sudden_capable=capable,
        n_by_chen_class={label: int(codes[i]) for i, label in enumerate(_CODE_LABELS)},
        histogram=histogram,
    )
    logger.info("survey of %d states: %d sudden-capable", n, capable)
    return report


def bds_switch_times(
    params: BellDiagonalParams, ch: DephasingChannel, nu_max: float
) -> list[float]:
    """Instants where |c1(nu)| or |c2(nu)| crosses |c3|.

    These are the basis switches of a Bell-diagonal state: roots of
    Lambda(nu)^2 = |c3| / max(|c1|, |c2|), bracketed on a fine grid and bisected.
    """
    largest = max(abs(params.c1), abs(params.c2))
    if largest == 0.0:
        return []
    target = abs(params.c3) / largest
    if target == 0.0 or target >= 1.0:
        return []

    def excess(nu: float) -> float:
        return lambda_envelope(ch, nu) ** 2 - target

    grid = np.linspace(0.0, nu_max, SWITCH_GRID)
    values = lambda_envelope(ch, grid) ** 2 - target
    roots = []
    for i in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0):
        roots.append(float(bisect(excess, grid[i], grid[i + 1], xtol=SWITCH_XTOL)))
    return roots
