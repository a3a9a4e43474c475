from dataclasses import dataclass

from .loss_model import LossModel


@dataclass(frozen=True)
class LossSweepRow:
    """Coverage radius for one loss setting, relative to the lossless radius."""

    loss: LossModel
    max_radius: float
    radius_ratio: float
