from abc import ABC, abstractmethod
from typing import Sequence

from memsmatch.types.configuration_word import ConfigurationWord
from memsmatch.types.sparameter_block import SParameterBlock


class INetworkEvaluator(ABC):
    """Evaluates the two-port response of one circuit for any configuration word."""

    @property
    @abstractmethod
    def frequency(self) -> float:
        """
        Frequency in Hz at which words are evaluated.
        """
        ...

    @abstractmethod
    def evaluate(self, word: ConfigurationWord) -> SParameterBlock:
        """
        Solve the circuit for one word.
        """
        ...

    @abstractmethod
    def evaluate_many(self, words: Sequence[ConfigurationWord]) -> list[SParameterBlock]:
        """
        Solve the circuit for several words; results are in the order of `words`.
        """
        ...
