from enum import Enum


class VaractorModel(Enum):
    """How two-valued MEMS varactors are expanded into elements."""

    SWITCHED = "switched"  # one switched-capacitor element
    RELAY = "relay"  # C_low in parallel with an ohmic relay in series with C_high - C_low
