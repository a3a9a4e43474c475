from dataclasses import dataclass
from typing import Any

from .coupler_mode import CouplerMode


@dataclass(frozen=True)
class PhaseSpanReport:
    """
    Measured phase-control span of the phase stage against the design target.

    Attributes:
        mode: Coupler model used.
        span_deg: Smallest circular arc holding every S21 phase.
        phases_deg: S21 phase of each evaluated phase word, in [0, 360), ascending word order.
        target_deg: Design target.
        tolerance_deg: Accepted deviation from the target.
        calibration_note: Explanation emitted when the span falls outside tolerance.
    """

    mode: CouplerMode
    span_deg: float
    phases_deg: list[float]
    target_deg: float = 340.0
    tolerance_deg: float = 40.0
    calibration_note: str | None = None

    @property
    def within_tolerance(self) -> bool:
        return abs(self.span_deg - self.target_deg) <= self.tolerance_deg

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode.value,
            "span_deg": self.span_deg,
            "phases_deg": self.phases_deg,
            "target_deg": self.target_deg,
            "tolerance_deg": self.tolerance_deg,
            "within_tolerance": self.within_tolerance,
            "calibration_note": self.calibration_note,
        }
