from dataclasses import dataclass, field
from pathlib import Path

from .coupler_mode import CouplerMode
from .loss_model import LossModel
from .varactor_model import VaractorModel


@dataclass
class RunConfig:
    """
    Settings shared by every command-line workflow.

    Built from defaults, then a `key=value` config file, then command-line flags.

    Attributes:
        frequency: Analysis frequency in Hz.
        mode: Coupler model.
        varactor_model: Varactor expansion.
        loss: Loss model.
        output: Output file; None writes to stdout.
        format: "csv" or "json" where a workflow supports both.
        seed: Seed for randomized searches.
        threads: Worker threads; None uses the available parallelism.
        epsilon: Coverage distance.
        grid_n: Coverage grid resolution.
    """

    frequency: float = 620e6
    mode: CouplerMode = CouplerMode.IDEAL
    varactor_model: VaractorModel = VaractorModel.SWITCHED
    loss: LossModel = field(default_factory=LossModel)
    output: Path | None = None
    format: str = "csv"
    seed: int = 0
    threads: int | None = None
    epsilon: float = 0.1
    grid_n: int = 101
