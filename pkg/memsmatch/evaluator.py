"""Thread-pooled evaluation of configuration words against one switched netlist."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence, override

from memsmatch.errors import SolverError, StateEvaluationError
from memsmatch.interfaces.network_evaluator import INetworkEvaluator
from memsmatch.solver import solve_sparameters
from memsmatch.types.configuration_word import ConfigurationWord
from memsmatch.types.loss_model import LossModel
from memsmatch.types.netlist import Netlist
from memsmatch.types.sparameter_block import SParameterBlock

logger = logging.getLogger(__name__)


class CircuitEvaluator(INetworkEvaluator):
    """
    Nodal-analysis evaluator for a fixed switched netlist, frequency and loss model.

    Evaluation is a pure function of the word, so `evaluate_many` spreads words over a
    thread pool and returns results in input order regardless of completion order.

    Attributes:
        netlist: The switched netlist.
        loss: Loss model.
        threads: Worker threads; None uses the available parallelism, 1 runs inline.

    Examples:
        ```python
        netlist = build_full_network(ComponentTable(), CouplerMode.IDEAL)
        evaluator = CircuitEvaluator(netlist, 620e6, LossModel())
        block = evaluator.evaluate(ConfigurationWord(0))
        block.s22
        ```
    """

    def __init__(self, netlist: Netlist, frequency: float, loss: LossModel, *, threads: int | None = None) -> None:
        if frequency <= 0:
            raise ValueError(f"frequency must be positive, got {frequency}")
        self.netlist = netlist
        self.loss = loss
        self.threads = threads
        self._frequency = frequency

    @property
    @override
    def frequency(self) -> float:
        return self._frequency

    @override
    def evaluate(self, word: ConfigurationWord) -> SParameterBlock:
        """
        Solve the netlist for one word.

        Raises:
            StateEvaluationError: Wrapping any solver failure with the word and frequency.
        """
        try:
            return solve_sparameters(self.netlist, self._frequency, word, self.loss)
        except SolverError as e:
            logger.error("evaluation failed for word %d at %.6g Hz: %s", word.value, self._frequency, e)
            raise StateEvaluationError(word.value, self._frequency, str(e)) from e

    @override
    def evaluate_many(self, words: Sequence[ConfigurationWord]) -> list[SParameterBlock]:
        workers = self.threads or os.cpu_count() or 1
        if workers == 1 or len(words) < 2:
            return [self.evaluate(w) for w in words]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(self.evaluate, words))
