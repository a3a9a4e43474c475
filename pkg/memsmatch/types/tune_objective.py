from enum import Enum


class TuneObjective(Enum):
    """What the tuner optimizes."""

    MIN_INPUT_REFLECTION = "min_input_reflection"
    MAX_TRANSDUCER_GAIN = "max_transducer_gain"

    @property
    def maximize(self) -> bool:
        return self is TuneObjective.MAX_TRANSDUCER_GAIN
