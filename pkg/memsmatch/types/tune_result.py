import math
from dataclasses import dataclass
from typing import Any

from .configuration_word import ConfigurationWord
from .tune_objective import TuneObjective


@dataclass(frozen=True)
class TuneResult:
    """
    Outcome of a tuning search.

    Attributes:
        word: Best configuration word found.
        objective: Objective that was optimized.
        objective_value: |gamma_in| or transducer gain of `word`.
        gamma_in: Input reflection coefficient of `word` with the query load attached.
        gap_to_second_best: Objective distance to the runner-up among evaluated words; 0 if there is none.
        evaluations: Number of distinct words evaluated.
    """

    word: ConfigurationWord
    objective: TuneObjective
    objective_value: float
    gamma_in: complex
    gap_to_second_best: float
    evaluations: int

    @property
    def return_loss_db(self) -> float:
        magnitude = abs(self.gamma_in)
        return math.inf if magnitude == 0 else -20.0 * math.log10(magnitude)

    @property
    def vswr(self) -> float:
        magnitude = abs(self.gamma_in)
        return math.inf if magnitude >= 1.0 else (1 + magnitude) / (1 - magnitude)

    @property
    def mismatch_loss_db(self) -> float:
        magnitude = abs(self.gamma_in)
        return math.inf if magnitude >= 1.0 else -10.0 * math.log10(1 - magnitude**2)

    def to_dict(self) -> dict[str, Any]:
        return {
            "word": self.word.value,
            "bits": format(self.word.value, "011b"),
            "objective": self.objective.value,
            "objective_value": self.objective_value,
            "gamma_in": {"re": self.gamma_in.real, "im": self.gamma_in.imag},
            "gap_to_second_best": self.gap_to_second_best,
            "evaluations": self.evaluations,
            "return_loss_db": _finite_or_none(self.return_loss_db),
            "vswr": _finite_or_none(self.vswr),
            "mismatch_loss_db": _finite_or_none(self.mismatch_loss_db),
        }


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None
