from dataclasses import dataclass

from .configuration_word import ConfigurationWord


@dataclass(frozen=True)
class StatePoint:
    """
    Two-port response of the network for one configuration word at one frequency.

    Attributes:
        word: Configuration word.
        f: Frequency in Hz.
        s11: Input reflection with port 2 terminated in z0.
        s21: Forward transmission.
        s22: Output reflection with port 1 terminated in z0.
    """

    word: ConfigurationWord
    f: float
    s11: complex
    s21: complex
    s22: complex

    @property
    def gamma_out(self) -> complex:
        """Reflection coefficient presented at port 2, the Smith-chart coverage quantity."""
        return self.s22
