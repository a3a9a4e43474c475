from dataclasses import dataclass, field

from memsmatch.errors import BadValue

from .coupler_mode import CouplerMode
from .loss_model import LossModel
from .tune_objective import TuneObjective
from .varactor_model import VaractorModel


@dataclass(frozen=True)
class TuneQuery:
    """
    A matching request: find the word that best matches `z_load` (at port 2) to `z_source` (at port 1).

    Attributes:
        z_load: Load impedance in ohm, Re >= 0.
        z_source: Source impedance in ohm, Re > 0.
        f: Frequency in Hz.
        objective: Quantity to optimize.
        mode: Coupler model.
        loss: Loss model.
        varactor_model: Varactor expansion.
    """

    z_load: complex
    z_source: complex = 50 + 0j
    f: float = 620e6
    objective: TuneObjective = TuneObjective.MIN_INPUT_REFLECTION
    mode: CouplerMode = CouplerMode.IDEAL
    loss: LossModel = field(default_factory=LossModel)
    varactor_model: VaractorModel = VaractorModel.SWITCHED

    def __post_init__(self) -> None:
        if self.z_load.real < 0:
            raise BadValue(f"load impedance must be passive, got {self.z_load}")
        if self.z_source.real <= 0:
            raise BadValue(f"source impedance must have a positive real part, got {self.z_source}")
        if self.f <= 0:
            raise BadValue(f"frequency must be positive, got {self.f}")
