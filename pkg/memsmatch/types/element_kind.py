from enum import Enum, auto


class ElementKind(Enum):
    """Kind of a netlist element."""

    RESISTOR = auto()
    INDUCTOR = auto()
    CAPACITOR = auto()
    SWITCHED_CAPACITOR = auto()
    RELAY = auto()
    IDEAL_HYBRID = auto()
    PORT = auto()

    @property
    def token(self) -> str:
        """Kind token used in netlist text. Fixed and switched capacitors share `cap`."""
        return _TOKENS[self]

    @property
    def n_nodes(self) -> int:
        """Number of node connections the element takes."""
        return 4 if self is ElementKind.IDEAL_HYBRID else 2

    @property
    def is_switched(self) -> bool:
        """Whether the element state depends on a control bit."""
        return self in (ElementKind.SWITCHED_CAPACITOR, ElementKind.RELAY)


_TOKENS: dict[ElementKind, str] = {
    ElementKind.RESISTOR: "r",
    ElementKind.INDUCTOR: "ind",
    ElementKind.CAPACITOR: "cap",
    ElementKind.SWITCHED_CAPACITOR: "cap",
    ElementKind.RELAY: "relay",
    ElementKind.IDEAL_HYBRID: "hyb90",
    ElementKind.PORT: "port",
}
