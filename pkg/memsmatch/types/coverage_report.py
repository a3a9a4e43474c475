from dataclasses import dataclass, field
from typing import Any

from .state_point import StatePoint


@dataclass(frozen=True)
class CoverageReport:
    """
    Smith-chart coverage summary of a cloud of output reflection coefficients.

    Attributes:
        points: The states the report summarizes, in ascending word order.
        max_radius: Largest |gamma_out| over the cloud.
        epsilon: Distance used for grid coverage.
        grid_n: Grid resolution per axis.
        grid_coverage: Fraction of grid points inside the unit disc lying within `epsilon` of some gamma_out.
        distinct_count: Number of gamma_out values distinct at a 1e-6 tolerance.
        phase_span_deg: Phase-control span of the phase stage, if it was measured.
    """

    points: list[StatePoint] = field(repr=False)
    max_radius: float
    epsilon: float
    grid_n: int
    grid_coverage: float
    distinct_count: int
    phase_span_deg: float | None = None

    def to_dict(self, *, include_points: bool = False) -> dict[str, Any]:
        """JSON-ready mapping of the report fields."""
        data: dict[str, Any] = {
            "n_points": len(self.points),
            "max_radius": self.max_radius,
            "epsilon": self.epsilon,
            "grid_n": self.grid_n,
            "grid_coverage": self.grid_coverage,
            "distinct_count": self.distinct_count,
            "phase_span_deg": self.phase_span_deg,
        }
        if include_points:
            data["points"] = [{"word": p.word.value, "re": p.gamma_out.real, "im": p.gamma_out.imag} for p in self.points]
        return data
