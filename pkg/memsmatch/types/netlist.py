from dataclasses import dataclass

from .element import Element
from .element_kind import ElementKind


@dataclass(frozen=True)
class Netlist:
    """
    An ordered, immutable list of elements over numbered nodes.

    Attributes:
        elements: Elements in definition order.
        node_names: Node name for each index; index 0 is ground and is always named "0".
        n_bits: Declared number of control bits. Every switched element's bit must lie below it.
    """

    elements: tuple[Element, ...]
    node_names: tuple[str, ...] = ("0",)
    n_bits: int = 0

    @property
    def n_nodes(self) -> int:
        """Number of nodes including ground."""
        return len(self.node_names)

    @property
    def ports(self) -> tuple[Element, ...]:
        """Port elements sorted by port number."""
        return tuple(sorted((e for e in self.elements if e.kind is ElementKind.PORT), key=lambda e: e.port or 0))

    @property
    def n_ports(self) -> int:
        return len(self.ports)

    @property
    def used_bits(self) -> frozenset[int]:
        """Distinct control-bit indices referenced by switched elements."""
        return frozenset(e.bit for e in self.elements if e.kind.is_switched and e.bit is not None)

    def node_index(self, name: str) -> int:
        """
        Look up a node index by name.

        Raises:
            KeyError: If no node carries that name.
        """
        try:
            return self.node_names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def element(self, label: str) -> Element:
        """
        Look up an element by label.

        Raises:
            KeyError: If no element carries that label.
        """
        for e in self.elements:
            if e.label == label:
                return e
        raise KeyError(label)
