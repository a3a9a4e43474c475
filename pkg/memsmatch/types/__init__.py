from .component_table import ComponentTable
from .configuration_word import ConfigurationWord
from .coupler_mode import CouplerMode
from .coverage_report import CoverageReport
from .element import Element
from .element_kind import ElementKind
from .loss_model import LossModel
from .loss_sweep_row import LossSweepRow
from .netlist import Netlist
from .phase_span_report import PhaseSpanReport
from .run_config import RunConfig
from .sparameter_block import SParameterBlock
from .state_point import StatePoint
from .tune_objective import TuneObjective
from .tune_query import TuneQuery
from .tune_result import TuneResult
from .varactor_model import VaractorModel

__all__ = [
    "ComponentTable",
    "ConfigurationWord",
    "CouplerMode",
    "CoverageReport",
    "Element",
    "ElementKind",
    "LossModel",
    "LossSweepRow",
    "Netlist",
    "PhaseSpanReport",
    "RunConfig",
    "SParameterBlock",
    "StatePoint",
    "TuneObjective",
    "TuneQuery",
    "TuneResult",
    "VaractorModel",
]
