from dataclasses import dataclass, fields

from memsmatch.errors import BadValue

TwoValued = tuple[float, float]


@dataclass(frozen=True)
class ComponentTable:
    """
    Component values of the matching network, in SI units.

    Two-valued entries are (low, high) pairs for MEMS varactors; the low value is the
    up-state (bit 0) capacitance. The defaults are the published design values at 620 MHz.
    """

    c_pa: TwoValued = (4.5e-12, 6.5e-12)
    c_p: TwoValued = (4e-12, 7e-12)
    c_s: TwoValued = (4e-12, 7e-12)
    c_1: float = 5.14e-12
    c_2: float = 2.12e-12
    c_2var: TwoValued = (2.12e-12, 5.5e-12)
    c_decoup: float = 6e-12
    c_phase1: TwoValued = (0.57e-12, 3.14e-12)
    c_phase2: TwoValued = (2e-12, 7.14e-12)
    l_s: float = 16e-9
    l_h: float = 8.5e-9
    l_res: float = 16e-9
    f_design: float = 620e6
    z0: float = 50.0

    def __post_init__(self) -> None:
        for f in fields(self):
            value: float | TwoValued = getattr(self, f.name)
            if isinstance(value, tuple):
                low, high = value
                if not 0 < low < high:
                    raise BadValue(f"{f.name}: expected 0 < low < high, got {value}")
            elif value <= 0:
                raise BadValue(f"{f.name}: expected a positive value, got {value}")

    @property
    def load_capacitance_range(self) -> TwoValued:
        """Smallest and largest parallel capacitance of the two reflective-load varactors."""
        return (self.c_phase1[0] + self.c_phase2[0], self.c_phase1[1] + self.c_phase2[1])
