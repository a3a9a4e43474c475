from .analysis import calibrate_loss_factor, coverage_comparison, coverage_metrics, enumerate_states, frequency_sweep, loss_grid, loss_sweep, phase_span, phase_span_report
from .components import ideal_hybrid_smatrix, rtps_response
from .errors import MemsMatchError
from .evaluator import CircuitEvaluator
from .interfaces import INetworkEvaluator
from .matching_network import build_full_network, build_phase_stage_network
from .netlist import freeze_netlist, parse_netlist, serialize_netlist, validate
from .solver import solve_sparameters
from .tuner import tune_exhaustive, tune_greedy
from .types import (
    ComponentTable,
    ConfigurationWord,
    CouplerMode,
    CoverageReport,
    LossModel,
    Netlist,
    SParameterBlock,
    StatePoint,
    TuneObjective,
    TuneQuery,
    TuneResult,
    VaractorModel,
)

__all__ = [
    "CircuitEvaluator",
    "INetworkEvaluator",
    "MemsMatchError",
    "parse_netlist",
    "serialize_netlist",
    "validate",
    "freeze_netlist",
    "solve_sparameters",
    "ideal_hybrid_smatrix",
    "rtps_response",
    "build_full_network",
    "build_phase_stage_network",
    "enumerate_states",
    "coverage_metrics",
    "coverage_comparison",
    "frequency_sweep",
    "phase_span",
    "phase_span_report",
    "loss_grid",
    "loss_sweep",
    "calibrate_loss_factor",
    "tune_exhaustive",
    "tune_greedy",
    "ComponentTable",
    "ConfigurationWord",
    "CouplerMode",
    "CoverageReport",
    "LossModel",
    "Netlist",
    "SParameterBlock",
    "StatePoint",
    "TuneObjective",
    "TuneQuery",
    "TuneResult",
    "VaractorModel",
]
