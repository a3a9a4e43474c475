from dataclasses import dataclass, replace

from memsmatch.errors import BadValue


@dataclass(frozen=True)
class LossModel:
    """
    Parasitic loss parameters applied to every element that does not override them.

    The defaults are plausible values for an electroplated-gold MEMS process. They are
    calibration knobs, not measured data.

    Attributes:
        q_l: Inductor quality factor at `f_ref`.
        q_c: Capacitor quality factor at `f_ref`.
        r_on: Ohmic contact resistance of an actuated relay, in ohm.
        c_off: Up-state coupling capacitance of an open relay, in F. 0 means a true open.
        f_ref: Frequency in Hz at which the Q values are specified.
        lossless: If True every parasitic is zeroed regardless of the other fields.

    Examples:
        ```python
        default = LossModel()
        heavy = default.with_values(q_l=10.0, r_on=5.0)
        ideal = LossModel.ideal()
        ```
    """

    q_l: float = 30.0
    q_c: float = 100.0
    r_on: float = 1.5
    c_off: float = 50e-15
    f_ref: float = 620e6
    lossless: bool = False

    def __post_init__(self) -> None:
        if self.q_l <= 0 or self.q_c <= 0:
            raise BadValue(f"quality factors must be positive (q_l={self.q_l}, q_c={self.q_c})")
        if self.r_on < 0 or self.c_off < 0:
            raise BadValue(f"r_on and c_off must be non-negative (r_on={self.r_on}, c_off={self.c_off})")
        if self.f_ref <= 0:
            raise BadValue(f"f_ref must be positive, got {self.f_ref}")

    @classmethod
    def ideal(cls) -> "LossModel":
        """A model with every parasitic zeroed."""
        return cls(lossless=True)

    def with_values(self, **changes: float | bool) -> "LossModel":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)
