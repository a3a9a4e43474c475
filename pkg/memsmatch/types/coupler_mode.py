from enum import Enum


class CouplerMode(Enum):
    """How the 3-dB quadrature coupler of the phase stage is modeled."""

    IDEAL = "ideal"  # design-equation four-port
    LUMPED = "lumped"  # L_h / C_1 / C_2 ring
