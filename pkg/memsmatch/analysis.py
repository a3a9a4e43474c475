"""Configuration-space enumeration, Smith-chart coverage, phase span and loss studies."""

import cmath
import logging
import math
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from memsmatch.errors import EmptyInput
from memsmatch.evaluator import CircuitEvaluator
from memsmatch.interfaces.network_evaluator import INetworkEvaluator
from memsmatch.matching_network import build_full_network, build_phase_stage_network
from memsmatch.types.component_table import ComponentTable
from memsmatch.types.configuration_word import COUPLER_BIT, FIRST_STAGE_BITS, N_BITS, PHASE_BITS, ConfigurationWord, words_over
from memsmatch.types.coupler_mode import CouplerMode
from memsmatch.types.coverage_report import CoverageReport
from memsmatch.types.loss_model import LossModel
from memsmatch.types.loss_sweep_row import LossSweepRow
from memsmatch.types.phase_span_report import PhaseSpanReport
from memsmatch.types.state_point import StatePoint
from memsmatch.types.varactor_model import VaractorModel

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.1
DEFAULT_GRID_N = 101
DISTINCT_TOLERANCE = 1e-6

PHASE_SPAN_TARGET_DEG = 340.0
PHASE_SPAN_TOLERANCE_DEG = 40.0
LOSS_FACTOR_TARGET = 0.9

# corners of the plausible loss grid: (q_l, q_c, r_on)
LIGHT_LOSS_CORNER = (100.0, 500.0, 0.5)
HEAVY_LOSS_CORNER = (10.0, 50.0, 5.0)


def evaluate_states(evaluator: INetworkEvaluator, words: Sequence[ConfigurationWord]) -> list[StatePoint]:
    """Evaluate `words` and return the state points sorted by ascending word."""
    blocks = evaluator.evaluate_many(words)
    points = [StatePoint(word=w, f=evaluator.frequency, s11=b.s11, s21=b.s21, s22=b.s22) for w, b in zip(words, blocks)]
    return sorted(points, key=lambda p: p.word)


def enumerate_states(
    table: ComponentTable,
    mode: CouplerMode,
    f: float,
    loss: LossModel,
    bit_subset: Iterable[int] = range(N_BITS),
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
    threads: int | None = None,
) -> list[StatePoint]:
    """
    Evaluate the full network for every word over `bit_subset`, other bits held at 0.

    Args:
        table: Component values.
        mode: Coupler model.
        f: Frequency in Hz.
        loss: Loss model.
        bit_subset: Control bits to vary; bits 0-7 give the 256 Π-stage states, all bits the 2048 states.
        varactor_model: Varactor expansion.
        threads: Worker threads for the solves.

    Returns:
        One state per word, in ascending word order; identical for any thread count.

    Raises:
        StateEvaluationError: If a word cannot be solved.

    Examples:
        ```python
        points = enumerate_states(ComponentTable(), CouplerMode.IDEAL, 620e6, LossModel(), range(8))
        len(points)  # 256
        ```
    """
    words = words_over(bit_subset)
    netlist = build_full_network(table, mode, varactor_model=varactor_model)
    logger.info("enumerating %d states at %.6g Hz (%s coupler)", len(words), f, mode.value)
    points = evaluate_states(CircuitEvaluator(netlist, f, loss, threads=threads), words)
    logger.info("enumeration done: %d states", len(points))
    return points


def frequency_sweep(
    table: ComponentTable,
    mode: CouplerMode,
    word: ConfigurationWord,
    frequencies: Iterable[float],
    loss: LossModel,
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
) -> list[StatePoint]:
    """S11, S21 and S22 of one word over a set of frequencies, in ascending frequency order."""
    netlist = build_full_network(table, mode, varactor_model=varactor_model)
    points: list[StatePoint] = []
    for f in sorted(frequencies):
        block = CircuitEvaluator(netlist, f, loss, threads=1).evaluate(word)
        points.append(StatePoint(word=word, f=f, s11=block.s11, s21=block.s21, s22=block.s22))
    return points


def grid_coverage(gammas: Sequence[complex], epsilon: float, grid_n: int = DEFAULT_GRID_N) -> float:
    """
    Fraction of a grid_n x grid_n grid over the unit disc lying within `epsilon` of some gamma.

    Raises:
        EmptyInput: If `gammas` is empty.
        ValueError: If grid_n < 16 or epsilon <= 0.
    """
    if not gammas:
        raise EmptyInput("no reflection coefficients to cover")
    if grid_n < 16:
        raise ValueError(f"grid_n must be at least 16, got {grid_n}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    axis = np.linspace(-1.0, 1.0, grid_n)
    gx, gy = np.meshgrid(axis, axis)
    inside = gx**2 + gy**2 <= 1.0
    grid = np.column_stack([gx[inside], gy[inside]])
    cloud = np.array([[g.real, g.imag] for g in gammas])
    distances, _ = cKDTree(cloud).query(grid, k=1)
    return float(np.count_nonzero(distances <= epsilon)) / len(grid)


def distinct_count(gammas: Sequence[complex], tolerance: float = DISTINCT_TOLERANCE) -> int:
    """Number of clusters of gammas whose members chain together within `tolerance`."""
    if not gammas:
        return 0
    cloud = np.array([[g.real, g.imag] for g in gammas])
    pairs = np.array(sorted(cKDTree(cloud).query_pairs(r=tolerance)), dtype=np.int64).reshape(-1, 2)
    n = len(cloud)
    adjacency = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    count, _ = connected_components(adjacency, directed=False)
    return int(count)


def coverage_metrics(points: Sequence[StatePoint], epsilon: float = DEFAULT_EPSILON, grid_n: int = DEFAULT_GRID_N, *, phase_span_deg: float | None = None) -> CoverageReport:
    """
    Summarize the Smith-chart coverage of the output reflection coefficients of `points`.

    Raises:
        EmptyInput: If `points` is empty.

    Examples:
        ```python
        report = coverage_metrics(points, epsilon=0.1, grid_n=101)
        report.grid_coverage, report.max_radius
        ```
    """
    if not points:
        raise EmptyInput("no states to summarize")
    gammas = [p.gamma_out for p in points]
    return CoverageReport(
        points=sorted(points, key=lambda p: p.word),
        max_radius=max(abs(g) for g in gammas),
        epsilon=epsilon,
        grid_n=grid_n,
        grid_coverage=grid_coverage(gammas, epsilon, grid_n),
        distinct_count=distinct_count(gammas),
        phase_span_deg=phase_span_deg,
    )


def circular_span(angles_deg: Iterable[float]) -> float:
    """
    Length in degrees of the smallest circular arc holding every angle.

    Examples:
        ```python
        circular_span([0.0, 90.0, 340.0])  # 110.0
        circular_span([42.0])              # 0.0
        ```
    """
    wrapped = sorted(a % 360.0 for a in angles_deg)
    if len(wrapped) < 2:
        return 0.0
    gaps = [b - a for a, b in zip(wrapped, wrapped[1:])]
    gaps.append(wrapped[0] + 360.0 - wrapped[-1])
    return 360.0 - max(gaps)


def phase_stage_phases(
    table: ComponentTable,
    mode: CouplerMode,
    f: float,
    loss: LossModel,
    phase_bits: Iterable[int] = PHASE_BITS,
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
) -> list[float]:
    """S21 phase in [0, 360) of the phase stage alone, for each word over `phase_bits`, ascending word order."""
    netlist = build_phase_stage_network(table, mode, varactor_model=varactor_model)
    evaluator = CircuitEvaluator(netlist, f, loss, threads=1)
    words = words_over(phase_bits)
    return [math.degrees(cmath.phase(b.s21)) % 360.0 for b in evaluator.evaluate_many(words)]


def phase_span(
    table: ComponentTable,
    mode: CouplerMode,
    f: float,
    loss: LossModel,
    phase_bits: Iterable[int] = PHASE_BITS,
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
) -> float:
    """
    Phase-control span of the phase stage: the smallest arc holding all its S21 phases.

    Args:
        phase_bits: Phase words to include; all three by default, (8, 9) freezes bit 10 at 0.
    """
    return circular_span(phase_stage_phases(table, mode, f, loss, phase_bits, varactor_model=varactor_model))


def phase_span_report(
    table: ComponentTable,
    mode: CouplerMode,
    f: float,
    loss: LossModel,
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
    target_deg: float = PHASE_SPAN_TARGET_DEG,
    tolerance_deg: float = PHASE_SPAN_TOLERANCE_DEG,
) -> PhaseSpanReport:
    """
    Measure the phase span over all eight phase words and compare it with the design target.

    A span outside tolerance is reported with a calibration note (and a warning) rather
    than silently accepted.
    """
    phases = phase_stage_phases(table, mode, f, loss, varactor_model=varactor_model)
    span = circular_span(phases)
    report = PhaseSpanReport(mode=mode, span_deg=span, phases_deg=phases, target_deg=target_deg, tolerance_deg=tolerance_deg)
    if report.within_tolerance:
        return report

    load_only = phase_span(table, mode, f, loss, (bit for bit in PHASE_BITS if bit != COUPLER_BIT), varactor_model=varactor_model)
    note = " ".join(
        [
            f"span {span:.1f} deg is outside {target_deg:.0f} +/- {tolerance_deg:.0f} deg for the {mode.value} coupler;",
            f"the reflective loads alone span {load_only:.1f} deg and bit 10 extends it by {span - load_only:.1f} deg.",
            "The coupler internals and C_2var placement are reconstructions; revise them in matching_network to calibrate.",
        ]
    )
    logger.warning(note)
    return PhaseSpanReport(mode=mode, span_deg=span, phases_deg=phases, target_deg=target_deg, tolerance_deg=tolerance_deg, calibration_note=note)


def max_radius(
    table: ComponentTable,
    mode: CouplerMode,
    f: float,
    loss: LossModel,
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
    threads: int | None = None,
) -> float:
    """Largest |gamma_out| over all 2048 words."""
    points = enumerate_states(table, mode, f, loss, varactor_model=varactor_model, threads=threads)
    return max(abs(p.gamma_out) for p in points)


def loss_sweep(
    table: ComponentTable,
    mode: CouplerMode,
    f: float,
    loss_grid: Sequence[LossModel],
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
    threads: int | None = None,
) -> list[LossSweepRow]:
    """
    Coverage radius for each loss setting, relative to the lossless radius.

    The lossless reference is evaluated once; a lossless entry in `loss_grid` reports a
    ratio of exactly 1.

    Returns:
        One row per entry of `loss_grid`, in the same order.
    """
    reference = max_radius(table, mode, f, LossModel.ideal(), varactor_model=varactor_model, threads=threads)
    rows: list[LossSweepRow] = []
    for loss in loss_grid:
        radius = reference if loss.lossless else max_radius(table, mode, f, loss, varactor_model=varactor_model, threads=threads)
        rows.append(LossSweepRow(loss=loss, max_radius=radius, radius_ratio=radius / reference))
        logger.debug("loss %s -> radius ratio %.4f", loss, radius / reference)
    return rows


def loss_grid(q_l: Iterable[float], q_c: Iterable[float], r_on: Iterable[float], c_off: Iterable[float], *, include_lossless: bool = True) -> list[LossModel]:
    """Cartesian product of loss parameters, preceded by the lossless point."""
    grid = [LossModel.ideal()] if include_lossless else []
    c_offs = list(c_off)
    r_ons = list(r_on)
    q_cs = list(q_c)
    for ql in q_l:
        for qc in q_cs:
            for r in r_ons:
                for co in c_offs:
                    grid.append(LossModel(q_l=ql, q_c=qc, r_on=r, c_off=co))
    return grid


def interpolate_loss(t: float, base: LossModel | None = None) -> LossModel:
    """
    Loss model a fraction `t` of the way from the lightest to the heaviest plausible corner.

    Quality factors and contact resistance are interpolated geometrically.
    """
    base = base or LossModel()
    light, heavy = LIGHT_LOSS_CORNER, HEAVY_LOSS_CORNER
    q_l, q_c, r_on = (lo ** (1.0 - t) * hi**t for lo, hi in zip(light, heavy))
    return base.with_values(q_l=q_l, q_c=q_c, r_on=r_on, lossless=False)


def calibrate_loss_factor(
    table: ComponentTable,
    mode: CouplerMode,
    f: float,
    target: float = LOSS_FACTOR_TARGET,
    *,
    iterations: int = 10,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
    threads: int | None = None,
) -> LossSweepRow:
    """
    Find a loss setting on the plausible grid whose radius ratio is closest to `target`.

    Bisects along `interpolate_loss` between the light and heavy corners. If the corners do
    not bracket the target the closer corner is returned and a warning is logged.
    """
    reference = max_radius(table, mode, f, LossModel.ideal(), varactor_model=varactor_model, threads=threads)

    def row_at(t: float) -> LossSweepRow:
        loss = interpolate_loss(t)
        radius = max_radius(table, mode, f, loss, varactor_model=varactor_model, threads=threads)
        return LossSweepRow(loss=loss, max_radius=radius, radius_ratio=radius / reference)

    lo, hi = row_at(0.0), row_at(1.0)
    if not hi.radius_ratio <= target <= lo.radius_ratio:
        closest = min((lo, hi), key=lambda r: abs(r.radius_ratio - target))
        logger.warning("radius ratios %.4f..%.4f on the plausible grid do not bracket %.3f", hi.radius_ratio, lo.radius_ratio, target)
        return closest

    t_lo, t_hi = 0.0, 1.0
    best = min((lo, hi), key=lambda r: abs(r.radius_ratio - target))
    for _ in range(iterations):
        t_mid = 0.5 * (t_lo + t_hi)
        mid = row_at(t_mid)
        if abs(mid.radius_ratio - target) < abs(best.radius_ratio - target):
            best = mid
        if mid.radius_ratio > target:
            t_lo = t_mid
        else:
            t_hi = t_mid
    return best


def coverage_comparison(
    table: ComponentTable,
    mode: CouplerMode,
    f: float,
    loss: LossModel,
    epsilon: float = DEFAULT_EPSILON,
    grid_n: int = DEFAULT_GRID_N,
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
    threads: int | None = None,
) -> dict[str, CoverageReport]:
    """
    Coverage of the first stage alone (bits 0-7 varied, phase bits at 0) next to the full network.

    The first-stage cloud is the subset of the full enumeration with bits 8-10 clear, so
    the full network is evaluated once.

    Returns:
        `{"first_stage": ..., "full": ...}`; the full report carries the phase span.
    """
    points = enumerate_states(table, mode, f, loss, varactor_model=varactor_model, threads=threads)
    first_stage_words = set(words_over(FIRST_STAGE_BITS))
    first_stage = [p for p in points if p.word in first_stage_words]
    span = phase_span(table, mode, f, loss, varactor_model=varactor_model)
    return {
        "first_stage": coverage_metrics(first_stage, epsilon, grid_n),
        "full": coverage_metrics(points, epsilon, grid_n, phase_span_deg=span),
    }
