from dataclasses import dataclass
from typing import Iterable, Iterator

N_BITS = 11
N_WORDS = 1 << N_BITS

SHUNT_BITS = (0, 1, 2, 3)
SERIES_BITS = (4, 5, 6, 7)
PHASE1_BIT = 8
PHASE2_BIT = 9
COUPLER_BIT = 10
FIRST_STAGE_BITS = SHUNT_BITS + SERIES_BITS
PHASE_BITS = (PHASE1_BIT, PHASE2_BIT, COUPLER_BIT)


@dataclass(frozen=True, order=True)
class ConfigurationWord:
    """
    The 11-bit actuation state of the network.

    Bit assignment:
        - bits 0-3: shunt varactors of CL-sections 1-4 (section 1 is C_pa, sections 2-4 are C_p)
        - bits 4-7: series varactors C_s of CL-sections 1-4
        - bit 8: both C_phase1 varactors
        - bit 9: both C_phase2 varactors
        - bit 10: both C_2var varactors

    A set bit means the device is actuated and the varactor sits at its high value.

    Examples:
        ```python
        word = ConfigurationWord.from_bits([0, 4])
        word.value        # 17
        word.bit(4)       # True
        word.flip(4)      # ConfigurationWord(value=1)
        ```
    """

    value: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.value < N_WORDS:
            raise ValueError(f"configuration word must be in [0, {N_WORDS - 1}], got {self.value}")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "ConfigurationWord":
        """Build a word with exactly the given bits set."""
        value = 0
        for b in bits:
            value |= 1 << b
        return cls(value)

    def bit(self, index: int) -> bool:
        """State of one control bit."""
        return bool(self.value >> index & 1)

    def flip(self, index: int) -> "ConfigurationWord":
        """Word with one control bit inverted."""
        return ConfigurationWord(self.value ^ (1 << index))

    def neighbors(self) -> Iterator["ConfigurationWord"]:
        """All words at Hamming distance one, in bit order."""
        for i in range(N_BITS):
            yield self.flip(i)

    def __int__(self) -> int:
        return self.value


def words_over(bits: Iterable[int]) -> list[ConfigurationWord]:
    """
    Every word that varies `bits` while holding the other bits at 0, in ascending order.

    Raises:
        ValueError: If a bit index is outside [0, 10].
    """
    subset = sorted(set(bits))
    for b in subset:
        if not 0 <= b < N_BITS:
            raise ValueError(f"bit index {b} outside [0, {N_BITS - 1}]")
    words: list[ConfigurationWord] = []
    for combo in range(1 << len(subset)):
        words.append(ConfigurationWord.from_bits(b for i, b in enumerate(subset) if combo >> i & 1))
    return sorted(words)
