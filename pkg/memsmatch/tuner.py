"""Inverse matching: choose the configuration word that best matches a load."""

import logging
from typing import Sequence

import numpy as np

from memsmatch.errors import BadValue
from memsmatch.evaluator import CircuitEvaluator
from memsmatch.interfaces.network_evaluator import INetworkEvaluator
from memsmatch.matching_network import build_full_network
from memsmatch.solver import reflection
from memsmatch.types.component_table import ComponentTable
from memsmatch.types.configuration_word import N_WORDS, ConfigurationWord
from memsmatch.types.sparameter_block import SParameterBlock
from memsmatch.types.tune_query import TuneQuery
from memsmatch.types.tune_result import TuneResult

logger = logging.getLogger(__name__)

DEFAULT_RESTARTS = 8


def input_reflection(block: SParameterBlock, gamma_load: complex) -> complex:
    """
    Reflection coefficient at port 1 with port 2 terminated in `gamma_load`.

    Γ_in = S11 + S12·S21·Γ_L / (1 - S22·Γ_L). A vanishing denominator (a lossless output
    resonating with a reactive load) gives an infinite Γ_in.

    Examples:
        ```python
        input_reflection(rtps_response(1j), 0.0)  # 0j: matched output, ideal stage
        ```
    """
    denominator = 1 - block.s22 * gamma_load
    if denominator == 0:
        return complex(float("inf"), 0.0)
    return block.s11 + block.s12 * block.s21 * gamma_load / denominator


def transducer_gain(block: SParameterBlock, gamma_source: complex, gamma_load: complex) -> float:
    """
    Power delivered to the load over power available from the source.

    G_T = |S21|²(1 - |Γ_S|²)(1 - |Γ_L|²) / |(1 - S11·Γ_S)(1 - S22·Γ_L) - S12·S21·Γ_S·Γ_L|²

    A purely reactive load (|Γ_L| = 1) absorbs nothing, so the gain is 0.
    """
    denominator = (1 - block.s11 * gamma_source) * (1 - block.s22 * gamma_load) - block.s12 * block.s21 * gamma_source * gamma_load
    if denominator == 0:
        return 0.0
    numerator = abs(block.s21) ** 2 * (1 - abs(gamma_source) ** 2) * (1 - abs(gamma_load) ** 2)
    return max(numerator / abs(denominator) ** 2, 0.0)


class ObjectiveCache:
    """
    Scores words against one query, evaluating each word at most once.

    Scores are ranks to minimize: |Γ_in| for the reflection objective and -G_T for the
    gain objective. Ties are broken by the smaller word.

    Attributes:
        query: The matching request.
        evaluator: Evaluator of the full network at the query frequency and loss.
    """

    def __init__(self, query: TuneQuery, evaluator: INetworkEvaluator, z0: float) -> None:
        self.query = query
        self.evaluator = evaluator
        self.gamma_load = reflection(query.z_load, z0)
        self.gamma_source = reflection(query.z_source, z0)
        self._scores: dict[ConfigurationWord, tuple[float, float, complex]] = {}

    @property
    def evaluations(self) -> int:
        """Number of distinct words evaluated so far."""
        return len(self._scores)

    def prefetch(self, words: Sequence[ConfigurationWord]) -> None:
        """Evaluate every word of `words` not yet cached, in one batch."""
        missing = [w for w in dict.fromkeys(words) if w not in self._scores]
        for word, block in zip(missing, self.evaluator.evaluate_many(missing)):
            gamma_in = input_reflection(block, self.gamma_load)
            if self.query.objective.maximize:
                value = transducer_gain(block, self.gamma_source, self.gamma_load)
                rank = -value
            else:
                value = abs(gamma_in)
                rank = value
            self._scores[word] = (rank, value, gamma_in)

    def key(self, word: ConfigurationWord) -> tuple[float, int]:
        """Sort key: best word first."""
        self.prefetch([word])
        return self._scores[word][0], word.value

    def result(self, word: ConfigurationWord) -> TuneResult:
        """Result for `word`, with the gap to the best other evaluated word."""
        _, value, gamma_in = self._scores[word]
        others = [rank for w, (rank, _, _) in self._scores.items() if w != word]
        gap = max(min(others) - self._scores[word][0], 0.0) if others else 0.0
        return TuneResult(
            word=word,
            objective=self.query.objective,
            objective_value=value,
            gamma_in=gamma_in,
            gap_to_second_best=gap,
            evaluations=self.evaluations,
        )


def _cache_for(query: TuneQuery, table: ComponentTable, threads: int | None, evaluator: INetworkEvaluator | None) -> ObjectiveCache:
    if evaluator is None:
        netlist = build_full_network(table, query.mode, varactor_model=query.varactor_model)
        evaluator = CircuitEvaluator(netlist, query.f, query.loss, threads=threads)
    elif evaluator.frequency != query.f:
        raise BadValue(f"evaluator frequency {evaluator.frequency} differs from the query frequency {query.f}")
    return ObjectiveCache(query, evaluator, table.z0)


def tune_exhaustive(query: TuneQuery, table: ComponentTable, *, threads: int | None = None, evaluator: INetworkEvaluator | None = None) -> TuneResult:
    """
    Global optimum over all 2048 words.

    Args:
        query: The matching request.
        table: Component values.
        threads: Worker threads for the scan.
        evaluator: Evaluator of the full network to reuse across queries; it must match the
            query's frequency, mode and loss. Built from `table` and the query when omitted.

    Returns:
        The best word, ties broken by the smallest word; `evaluations` is 2048.

    Raises:
        BadValue: If `evaluator` runs at another frequency than the query.
        StateEvaluationError: If a word cannot be solved.

    Examples:
        ```python
        result = tune_exhaustive(TuneQuery(z_load=25 - 40j), ComponentTable())
        result.word, result.objective_value, result.vswr
        ```
    """
    cache = _cache_for(query, table, threads, evaluator)
    words = [ConfigurationWord(v) for v in range(N_WORDS)]
    cache.prefetch(words)
    best = min(words, key=cache.key)
    result = cache.result(best)
    logger.info("exhaustive tune of %s: word %d, %s = %.6g", query.z_load, best.value, query.objective.value, result.objective_value)
    return result


def climb(cache: ObjectiveCache, start: ConfigurationWord) -> ConfigurationWord:
    """
    Steepest-descent bit-flip search from `start`.

    Every step scores all 11 single-bit neighbors and moves to the best one if it strictly
    improves on the current word; otherwise the current word is a local optimum.
    """
    current = start
    while True:
        neighbors = list(current.neighbors())
        cache.prefetch([current, *neighbors])
        best = min(neighbors, key=cache.key)
        if cache.key(best)[0] >= cache.key(current)[0]:
            return current
        current = best


def tune_greedy(
    query: TuneQuery,
    table: ComponentTable,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    *,
    starts: Sequence[ConfigurationWord] | None = None,
    threads: int | None = None,
    evaluator: INetworkEvaluator | None = None,
) -> TuneResult:
    """
    Hill climbing from several start words, keeping the best local optimum.

    Args:
        query: The matching request.
        table: Component values.
        restarts: Number of distinct random start words, 1 to 2048.
        seed: Seed of the start-word generator; equal seeds give equal results.
        starts: Explicit start words; overrides `restarts` and `seed`.
        threads: Worker threads for neighbor batches.
        evaluator: Evaluator of the full network to reuse, as for `tune_exhaustive`.

    Returns:
        The best local optimum found; `evaluations` counts distinct words scored.

    Raises:
        BadValue: If `restarts` is outside [1, 2048], `starts` is empty, or `evaluator` runs at
            another frequency than the query.

    Examples:
        ```python
        result = tune_greedy(TuneQuery(z_load=25 - 40j), ComponentTable(), restarts=8, seed=42)
        result.evaluations  # far fewer than 2048
        ```
    """
    if starts is None:
        if not 1 <= restarts <= N_WORDS:
            raise BadValue(f"restarts must be in [1, {N_WORDS}], got {restarts}")
        rng = np.random.default_rng(seed)
        starts = [ConfigurationWord(int(v)) for v in rng.choice(N_WORDS, size=restarts, replace=False)]
    if not starts:
        raise BadValue("at least one start word is required")

    cache = _cache_for(query, table, threads, evaluator)
    optima = [climb(cache, start) for start in starts]
    best = min(optima, key=cache.key)
    logger.debug("greedy tune: %d restarts, %d evaluations, best word %d", len(starts), cache.evaluations, best.value)
    return cache.result(best)
