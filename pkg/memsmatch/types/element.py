from dataclasses import dataclass

from .element_kind import ElementKind


@dataclass(frozen=True)
class Element:
    """
    One circuit element connected between numbered nodes (0 is ground).

    Only the fields meaningful for `kind` are set; the others stay None.

    Attributes:
        label: Unique element name.
        kind: Element kind.
        nodes: Node indices; 2 for two-terminal elements and ports (signal, ground), 4 for an ideal hybrid.
        value: R in ohm, L in H, C in F, or C_low in F for a switched capacitor.
        value_high: C_high in F for a switched capacitor.
        q: Explicit quality factor, overriding the loss model's Q_L / Q_C.
        r_on: Explicit contact resistance in ohm, overriding the loss model.
        c_off: Explicit up-state relay capacitance in F, overriding the loss model.
        bit: Control-bit index for switched capacitors and relays.
        z0: Reference impedance in ohm for ports and hybrids.
        port: Port number (1-based) for ports.
    """

    label: str
    kind: ElementKind
    nodes: tuple[int, ...]
    value: float | None = None
    value_high: float | None = None
    q: float | None = None
    r_on: float | None = None
    c_off: float | None = None
    bit: int | None = None
    z0: float | None = None
    port: int | None = None
