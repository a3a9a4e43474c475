"""
Command-line front end.

Every subcommand writes data (CSV, JSON or netlist text) to stdout or `--output` and
diagnostics to stderr. Exit codes: 0 success, 1 solver or model error, 2 usage error.
"""

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from memsmatch.analysis import (
    calibrate_loss_factor,
    coverage_comparison,
    coverage_metrics,
    enumerate_states,
    frequency_sweep,
    loss_grid,
    loss_sweep,
    phase_span,
    phase_span_report,
)
from memsmatch.config import FORMATS, parse_bits, parse_complex, parse_float_list, parse_frequency, resolve_config
from memsmatch.errors import BadValue, MemsMatchError, UsageError
from memsmatch.matching_network import build_full_network
from memsmatch.netlist import serialize_netlist
from memsmatch.tuner import DEFAULT_RESTARTS, tune_exhaustive, tune_greedy
from memsmatch.types.component_table import ComponentTable
from memsmatch.types.configuration_word import N_BITS, N_WORDS, ConfigurationWord
from memsmatch.types.coupler_mode import CouplerMode
from memsmatch.types.loss_model import LossModel
from memsmatch.types.loss_sweep_row import LossSweepRow
from memsmatch.types.run_config import RunConfig
from memsmatch.types.state_point import StatePoint
from memsmatch.types.tune_objective import TuneObjective
from memsmatch.types.tune_query import TuneQuery
from memsmatch.types.varactor_model import VaractorModel

logger = logging.getLogger(__name__)

STATE_HEADER = ["word", "f_hz", "re_s11", "im_s11", "re_s21", "im_s21", "re_s22", "im_s22"]
LOSS_HEADER = ["q_l", "q_c", "r_on", "c_off", "radius_ratio"]

DEFAULT_Q_L_GRID = "10,30,100"
DEFAULT_Q_C_GRID = "50,100,500"
DEFAULT_R_ON_GRID = "0.5,1.5,5"

_OBJECTIVES = {"reflection": TuneObjective.MIN_INPUT_REFLECTION, "gain": TuneObjective.MAX_TRANSDUCER_GAIN}


def format_float(x: float) -> str:
    """17 significant digits, enough to round-trip a float."""
    return f"{x:.17g}"


def states_to_csv(points: Sequence[StatePoint]) -> str:
    """
    CSV rows `word,f_hz,re_s11,im_s11,re_s21,im_s21,re_s22,im_s22`, one per state.

    Words are decimal, floats carry 17 significant digits, lines end in `\\n`.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(STATE_HEADER)
    for p in points:
        values = (p.f, p.s11.real, p.s11.imag, p.s21.real, p.s21.imag, p.s22.real, p.s22.imag)
        writer.writerow([str(p.word.value), *(format_float(v) for v in values)])
    return buffer.getvalue()


def states_to_json(points: Sequence[StatePoint]) -> list[dict[str, Any]]:
    return [
        {
            "word": p.word.value,
            "f_hz": p.f,
            "s11": [p.s11.real, p.s11.imag],
            "s21": [p.s21.real, p.s21.imag],
            "s22": [p.s22.real, p.s22.imag],
        }
        for p in points
    ]


def _loss_columns(loss: LossModel) -> list[float]:
    if loss.lossless:
        return [math.inf, math.inf, 0.0, 0.0]
    return [loss.q_l, loss.q_c, loss.r_on, loss.c_off]


def loss_rows_to_csv(rows: Sequence[LossSweepRow]) -> str:
    """CSV rows `q_l,q_c,r_on,c_off,radius_ratio`; the lossless row has infinite Q and zero parasitics."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(LOSS_HEADER)
    for row in rows:
        writer.writerow([format_float(v) for v in (*_loss_columns(row.loss), row.radius_ratio)])
    return buffer.getvalue()


def loss_row_to_dict(row: LossSweepRow) -> dict[str, Any]:
    q_l, q_c, r_on, c_off = _loss_columns(row.loss)
    return {
        "lossless": row.loss.lossless,
        "q_l": q_l if math.isfinite(q_l) else None,
        "q_c": q_c if math.isfinite(q_c) else None,
        "r_on": r_on,
        "c_off": c_off,
        "max_radius": row.max_radius,
        "radius_ratio": row.radius_ratio,
    }


def to_json(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def _emit(config: RunConfig, text: str) -> None:
    if config.output is None:
        sys.stdout.write(text)
        return
    try:
        config.output.write_text(text, encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot write {config.output}: {e}") from e
    logger.info("wrote %s", config.output)


def _word(value: str) -> ConfigurationWord:
    try:
        return ConfigurationWord(int(value, 0))
    except ValueError as e:
        raise UsageError(f"configuration word must be an integer in [0, {N_WORDS - 1}], got {value!r}") from e


def cmd_netlist(config: RunConfig, args: argparse.Namespace) -> None:
    """Emit the network netlist; switched, or frozen under `--word`."""
    word = _word(args.word) if args.word is not None else None
    netlist = build_full_network(ComponentTable(), config.mode, word, varactor_model=config.varactor_model, loss=config.loss)
    _emit(config, serialize_netlist(netlist))


def cmd_enumerate(config: RunConfig, args: argparse.Namespace) -> None:
    """Emit the state table over `--bits` (all 11 by default)."""
    bits = parse_bits(args.bits) if args.bits is not None else list(range(N_BITS))
    points = enumerate_states(ComponentTable(), config.mode, config.frequency, config.loss, bits, varactor_model=config.varactor_model, threads=config.threads)
    _emit(config, states_to_csv(points) if config.format == "csv" else to_json(states_to_json(points)))


def cmd_coverage(config: RunConfig, args: argparse.Namespace) -> None:
    """Emit the coverage report of the full network, or of both stages with `--compare`."""
    table = ComponentTable()
    if args.compare:
        reports = coverage_comparison(
            table, config.mode, config.frequency, config.loss, config.epsilon, config.grid_n, varactor_model=config.varactor_model, threads=config.threads
        )
        _emit(config, to_json({name: report.to_dict(include_points=args.points) for name, report in reports.items()}))
        return
    points = enumerate_states(table, config.mode, config.frequency, config.loss, varactor_model=config.varactor_model, threads=config.threads)
    span = phase_span(table, config.mode, config.frequency, config.loss, varactor_model=config.varactor_model)
    report = coverage_metrics(points, config.epsilon, config.grid_n, phase_span_deg=span)
    _emit(config, to_json(report.to_dict(include_points=args.points)))


def cmd_tune(config: RunConfig, args: argparse.Namespace) -> None:
    """Emit the best word for `--load`."""
    try:
        query = TuneQuery(
            z_load=parse_complex(args.load),
            z_source=parse_complex(args.source),
            f=config.frequency,
            objective=_OBJECTIVES[args.objective],
            mode=config.mode,
            loss=config.loss,
            varactor_model=config.varactor_model,
        )
    except BadValue as e:
        raise UsageError(str(e)) from e
    table = ComponentTable()
    if args.method == "greedy":
        result = tune_greedy(query, table, args.restarts, config.seed, threads=config.threads)
    else:
        result = tune_exhaustive(query, table, threads=config.threads)
    _emit(config, to_json(result.to_dict()))


def cmd_loss_sweep(config: RunConfig, args: argparse.Namespace) -> None:
    """
    Emit the radius ratio for the lossless point, the configured loss model and a loss grid.

    The JSON form reports the configured row against `--target`. With `--calibrate` (JSON only) the grid setting closest to the target ratio is appended.
    """
    if args.calibrate and config.format != "json":
        raise UsageError("--calibrate requires --format json")
    c_offs = parse_float_list(args.c_off_grid) if args.c_off_grid else [config.loss.c_off]
    grid = [LossModel.ideal(), config.loss]
    grid.extend(loss_grid(parse_float_list(args.q_l_grid), parse_float_list(args.q_c_grid), parse_float_list(args.r_on_grid), c_offs, include_lossless=False))
    table = ComponentTable()
    rows = loss_sweep(table, config.mode, config.frequency, grid, varactor_model=config.varactor_model, threads=config.threads)
    if config.format == "csv":
        _emit(config, loss_rows_to_csv(rows))
        return
    document: dict[str, Any] = {"rows": [loss_row_to_dict(r) for r in rows], "configured": loss_row_to_dict(rows[1]) | {"target": args.target}}
    if args.calibrate:
        calibrated = calibrate_loss_factor(table, config.mode, config.frequency, args.target, varactor_model=config.varactor_model, threads=config.threads)
        document["calibrated"] = loss_row_to_dict(calibrated) | {"target": args.target}
    _emit(config, to_json(document))


def cmd_phase_span(config: RunConfig, args: argparse.Namespace) -> None:
    """Emit the phase-span report of the phase stage."""
    report = phase_span_report(ComponentTable(), config.mode, config.frequency, config.loss, varactor_model=config.varactor_model)
    _emit(config, to_json(report.to_dict()))


def cmd_sweep(config: RunConfig, args: argparse.Namespace) -> None:
    """Emit the S-parameters of one word over a linear frequency grid."""
    start, stop = parse_frequency(args.start), parse_frequency(args.stop)
    if args.points < 1 or stop < start:
        raise UsageError("sweep needs --points >= 1 and --stop >= --start")
    frequencies = [float(f) for f in np.linspace(start, stop, args.points)]
    points = frequency_sweep(ComponentTable(), config.mode, _word(args.word), frequencies, config.loss, varactor_model=config.varactor_model)
    _emit(config, states_to_csv(points) if config.format == "csv" else to_json(states_to_json(points)))


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key=value settings file; flags override it")
    common.add_argument("--frequency", help="analysis frequency, e.g. 620M (default 620 MHz)")
    common.add_argument("--mode", choices=[m.value for m in CouplerMode], help="coupler model (default ideal)")
    common.add_argument("--varactor-model", dest="varactor_model", choices=[m.value for m in VaractorModel], help="varactor expansion (default switched)")
    common.add_argument("--lossless", action="store_true", default=None, help="zero every parasitic")
    common.add_argument("--q-l", dest="q_l", help="inductor quality factor")
    common.add_argument("--q-c", dest="q_c", help="capacitor quality factor")
    common.add_argument("--r-on", dest="r_on", help="relay contact resistance in ohm")
    common.add_argument("--c-off", dest="c_off", help="open relay coupling capacitance, e.g. 50f")
    common.add_argument("--threads", help="worker threads (default: available parallelism)")
    common.add_argument("--seed", help="seed for randomized searches (default 0)")
    common.add_argument("--epsilon", help="coverage distance (default 0.1)")
    common.add_argument("--grid-n", dest="grid_n", help="coverage grid points per axis (default 101)")
    common.add_argument("--output", "-o", help="output file (default stdout)")
    common.add_argument("--format", choices=FORMATS, help="csv or json where both apply (default csv)")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per workflow."""
    common = _common_options()
    parser = argparse.ArgumentParser(prog="memsmatch", description="Simulate, survey and tune the RF-MEMS reconfigurable matching network.")
    commands = parser.add_subparsers(dest="command", required=True)

    netlist = commands.add_parser("netlist", parents=[common], help="emit the network netlist")
    netlist.add_argument("--word", help="freeze the switched elements under this word")
    netlist.set_defaults(handler=cmd_netlist)

    enumerate_ = commands.add_parser("enumerate", parents=[common], help="S-parameters of every configuration word")
    enumerate_.add_argument("--bits", help="bits to vary, e.g. 0-7 (default all)")
    enumerate_.set_defaults(handler=cmd_enumerate)

    coverage = commands.add_parser("coverage", parents=[common], help="Smith-chart coverage report (JSON)")
    coverage.add_argument("--compare", action="store_true", help="report the first stage alone next to the full network")
    coverage.add_argument("--points", action="store_true", help="include every gamma_out in the report")
    coverage.set_defaults(handler=cmd_coverage)

    tune = commands.add_parser("tune", parents=[common], help="best word for a load impedance (JSON)")
    tune.add_argument("--load", required=True, help="load impedance, e.g. 25-40j")
    tune.add_argument("--source", default="50", help="source impedance (default 50)")
    tune.add_argument("--objective", choices=sorted(_OBJECTIVES), default="reflection", help="minimize |gamma_in| or maximize transducer gain")
    tune.add_argument("--method", choices=["exhaustive", "greedy"], default="exhaustive")
    tune.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS, help="greedy restarts")
    tune.set_defaults(handler=cmd_tune)

    sweep = commands.add_parser("loss-sweep", parents=[common], help="coverage radius ratio over a loss grid")
    sweep.add_argument("--q-l-grid", default=DEFAULT_Q_L_GRID)
    sweep.add_argument("--q-c-grid", default=DEFAULT_Q_C_GRID)
    sweep.add_argument("--r-on-grid", default=DEFAULT_R_ON_GRID)
    sweep.add_argument("--c-off-grid", help="default: the configured c_off")
    sweep.add_argument("--calibrate", action="store_true", help="also search the grid for the target ratio (JSON)")
    sweep.add_argument("--target", type=float, default=0.9)
    sweep.set_defaults(handler=cmd_loss_sweep)

    phase = commands.add_parser("phase-span", parents=[common], help="phase-control span of the phase stage (JSON)")
    phase.set_defaults(handler=cmd_phase_span)

    freq = commands.add_parser("sweep", parents=[common], help="S-parameters of one word over frequency")
    freq.add_argument("--word", default="0")
    freq.add_argument("--start", default="400M")
    freq.add_argument("--stop", default="800M")
    freq.add_argument("--points", type=int, default=41)
    freq.set_defaults(handler=cmd_sweep)

    return parser


_SETTING_FLAGS = ("frequency", "mode", "varactor_model", "lossless", "q_l", "q_c", "r_on", "c_off", "threads", "seed", "epsilon", "grid_n", "output", "format")


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run one subcommand.

    Examples:
        ```python
        main(["enumerate", "--bits", "0-7", "--lossless"])
        main(["tune", "--load", "25-40j", "--objective", "gain"])
        ```

    Returns:
        0 on success, 1 for solver or model errors, 2 for usage errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    handler: Callable[[RunConfig, argparse.Namespace], None] = args.handler
    try:
        config = resolve_config(args.config, {key: getattr(args, key) for key in _SETTING_FLAGS})
        handler(config, args)
    except UsageError as e:
        print(f"memsmatch: error: {e}", file=sys.stderr)
        return 2
    except MemsMatchError as e:
        print(f"memsmatch: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0
