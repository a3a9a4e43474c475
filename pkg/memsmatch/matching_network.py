"""
Builders for the two-stage reconfigurable matching network.

The first stage is a Π-matching cascade of four CL-sections: a two-valued shunt varactor
followed by a series inductor L_s partially resonated out by a two-valued series varactor
C_s. The second stage is a reflective-type phase shifter: a 3-dB quadrature coupler whose
load ports see identical reflective loads (series L_res, then two parallel shunt varactors).

Reconstruction points that the published description leaves open are isolated here:
section ordering, C_decoup position, C_2var placement and the lumped coupler internals.
"""

import cmath
from typing import Any

from memsmatch.components import element_impedance, reflective_load_impedance
from memsmatch.netlist import freeze_netlist
from memsmatch.types.component_table import ComponentTable, TwoValued
from memsmatch.types.configuration_word import COUPLER_BIT, N_BITS, PHASE1_BIT, PHASE2_BIT, SERIES_BITS, SHUNT_BITS, ConfigurationWord
from memsmatch.types.coupler_mode import CouplerMode
from memsmatch.types.element import Element
from memsmatch.types.element_kind import ElementKind
from memsmatch.types.loss_model import LossModel
from memsmatch.types.netlist import Netlist
from memsmatch.types.varactor_model import VaractorModel

INPUT_NODE = "in"
HYBRID_IN = "hyb_in"
HYBRID_OUT = "hyb_out"
HYBRID_LOAD_A = "hyb_a"
HYBRID_LOAD_B = "hyb_b"
GROUND = "0"


class NetlistBuilder:
    """
    Accumulates elements over named nodes; node indices follow first appearance.

    Building assigns indices the same way `parse_netlist` does, so a built netlist
    survives a serialize/parse round trip unchanged.
    """

    def __init__(self, varactor_model: VaractorModel = VaractorModel.SWITCHED) -> None:
        self.varactor_model = varactor_model
        self._names: list[str] = [GROUND]
        self._elements: list[Element] = []

    def _nodes(self, *names: str) -> tuple[int, ...]:
        indices: list[int] = []
        for name in names:
            if name not in self._names:
                self._names.append(name)
            indices.append(self._names.index(name))
        return tuple(indices)

    def add(self, label: str, kind: ElementKind, nodes: tuple[str, ...], **params: Any) -> None:
        self._elements.append(Element(label, kind, self._nodes(*nodes), **params))

    def inductor(self, label: str, a: str, b: str, l: float) -> None:
        self.add(label, ElementKind.INDUCTOR, (a, b), value=l)

    def capacitor(self, label: str, a: str, b: str, c: float) -> None:
        self.add(label, ElementKind.CAPACITOR, (a, b), value=c)

    def varactor(self, label: str, a: str, b: str, values: TwoValued, bit: int) -> None:
        """
        A two-valued MEMS varactor between `a` and `b`.

        In the relay model it becomes the physical device: C_low in parallel with an
        ohmic relay in series with the extra capacitance C_high - C_low.
        """
        low, high = values
        if self.varactor_model is VaractorModel.SWITCHED:
            self.add(label, ElementKind.SWITCHED_CAPACITOR, (a, b), value=low, value_high=high, bit=bit)
            return
        contact = f"{label}_sw"
        self.capacitor(f"{label}_lo", a, b, low)
        self.add(f"{label}_k", ElementKind.RELAY, (a, contact), bit=bit)
        self.capacitor(f"{label}_dc", contact, b, high - low)

    def port(self, label: str, node: str, number: int, z0: float) -> None:
        self.add(label, ElementKind.PORT, (node, GROUND), z0=z0, port=number)

    def build(self, n_bits: int = N_BITS) -> Netlist:
        return Netlist(elements=tuple(self._elements), node_names=tuple(self._names), n_bits=n_bits)


def _finish(builder: NetlistBuilder, word: ConfigurationWord | None, loss: LossModel | None = None) -> Netlist:
    netlist = builder.build()
    return netlist if word is None else freeze_netlist(netlist, word, loss)


def add_pi_stage(builder: NetlistBuilder, table: ComponentTable, *, input_node: str = INPUT_NODE, output_node: str = HYBRID_IN) -> None:
    """
    Four CL-sections from `input_node` to `output_node`.

    Section k has its shunt varactor at node `pi{k}` (section 1 at `input_node`, value
    C_pa; sections 2-4 C_p; bits 0-3), then L_s in series with C_s (bits 4-7).
    """
    nodes = [input_node, "pi2", "pi3", "pi4", output_node]
    for k in range(4):
        shunt_values = table.c_pa if k == 0 else table.c_p
        shunt_label = "CPA1" if k == 0 else f"CP{k + 1}"
        builder.varactor(shunt_label, nodes[k], GROUND, shunt_values, SHUNT_BITS[k])
        mid = f"pi{k + 1}_m"
        builder.inductor(f"LS{k + 1}", nodes[k], mid, table.l_s)
        builder.varactor(f"CS{k + 1}", mid, nodes[k + 1], table.c_s, SERIES_BITS[k])


def add_reflective_load(builder: NetlistBuilder, table: ComponentTable, port_node: str, suffix: str, *, decoupled: bool) -> None:
    """
    One reflective load hanging off a coupler load port.

    Series C_decoup (when `decoupled`), series L_res, then C_phase1 (bit 8) and C_phase2
    (bit 9) in parallel to ground.
    """
    node = port_node
    if decoupled:
        node = f"dec_{suffix.lower()}"
        builder.capacitor(f"CDEC{suffix}", port_node, node, table.c_decoup)
    res = f"res_{suffix.lower()}"
    builder.inductor(f"LRES{suffix}", node, res, table.l_res)
    builder.varactor(f"CPH1{suffix}", res, GROUND, table.c_phase1, PHASE1_BIT)
    builder.varactor(f"CPH2{suffix}", res, GROUND, table.c_phase2, PHASE2_BIT)


def add_lumped_coupler(builder: NetlistBuilder, table: ComponentTable) -> None:
    """
    Lumped quadrature hybrid ring.

    L_h arms join input to load port A and output to load port B; C_1 arms join input to
    output and A to B. Shunt C_2 sits at input and output, two-valued C_2var (bit 10) at A
    and B. At 620 MHz ωL_h ≈ z0/√2, ωC_1 ≈ 1/z0 and ωC_2 ≈ (√2 - 1)/z0, the values of a
    50 ohm lumped branch-line coupler.

    With ωL_h exactly z0/√2 the ring is a quadrature hybrid. The table's 8.5 nH gives
    ωL_h = 33.1 ohm, so lossless at 620 MHz |S31| = -2.56 dB and |S41| = -3.63 dB, the
    latter outside a ±0.5 dB split tolerance.
    """
    builder.inductor("LH1", HYBRID_IN, HYBRID_LOAD_A, table.l_h)
    builder.inductor("LH2", HYBRID_OUT, HYBRID_LOAD_B, table.l_h)
    builder.capacitor("C1A", HYBRID_IN, HYBRID_OUT, table.c_1)
    builder.capacitor("C1B", HYBRID_LOAD_A, HYBRID_LOAD_B, table.c_1)
    builder.capacitor("C2A", HYBRID_IN, GROUND, table.c_2)
    builder.capacitor("C2B", HYBRID_OUT, GROUND, table.c_2)
    builder.varactor("C2VA", HYBRID_LOAD_A, GROUND, table.c_2var, COUPLER_BIT)
    builder.varactor("C2VB", HYBRID_LOAD_B, GROUND, table.c_2var, COUPLER_BIT)


def add_phase_stage(builder: NetlistBuilder, table: ComponentTable, mode: CouplerMode) -> None:
    """
    Coupler plus two identical reflective loads between `HYBRID_IN` and `HYBRID_OUT`.

    Ideal mode uses the design-equation hybrid, which already stands for the coupler at
    its nominal (bit 10 low) state. Bit 10 then adds the excess C_2var capacitance as a
    relay-switched shunt capacitor at each load port, and C_decoup is treated as an
    RF-transparent DC block and omitted.
    """
    if mode is CouplerMode.IDEAL:
        builder.add("H1", ElementKind.IDEAL_HYBRID, (HYBRID_IN, HYBRID_OUT, HYBRID_LOAD_A, HYBRID_LOAD_B), z0=table.z0)
        excess = table.c_2var[1] - table.c_2var[0]
        for suffix, node in (("A", HYBRID_LOAD_A), ("B", HYBRID_LOAD_B)):
            contact = f"c2x_{suffix.lower()}"
            builder.add(f"K2V{suffix}", ElementKind.RELAY, (node, contact), bit=COUPLER_BIT)
            builder.capacitor(f"C2X{suffix}", contact, GROUND, excess)
    else:
        add_lumped_coupler(builder, table)
    decoupled = mode is CouplerMode.LUMPED
    add_reflective_load(builder, table, HYBRID_LOAD_A, "A", decoupled=decoupled)
    add_reflective_load(builder, table, HYBRID_LOAD_B, "B", decoupled=decoupled)


def build_pi_stage(table: ComponentTable, word: ConfigurationWord | None = None, *, varactor_model: VaractorModel = VaractorModel.SWITCHED) -> Netlist:
    """Π-stage fragment from `INPUT_NODE` to `HYBRID_IN`, without ports."""
    builder = NetlistBuilder(varactor_model)
    add_pi_stage(builder, table)
    return _finish(builder, word)


def build_reflective_load(
    table: ComponentTable, word: ConfigurationWord | None = None, *, varactor_model: VaractorModel = VaractorModel.SWITCHED, decoupled: bool = False
) -> Netlist:
    """Both reflective loads on `HYBRID_LOAD_A` and `HYBRID_LOAD_B`, without ports."""
    builder = NetlistBuilder(varactor_model)
    add_reflective_load(builder, table, HYBRID_LOAD_A, "A", decoupled=decoupled)
    add_reflective_load(builder, table, HYBRID_LOAD_B, "B", decoupled=decoupled)
    return _finish(builder, word)


def build_phase_stage(table: ComponentTable, mode: CouplerMode, word: ConfigurationWord | None = None, *, varactor_model: VaractorModel = VaractorModel.SWITCHED) -> Netlist:
    """Phase-stage fragment between `HYBRID_IN` and `HYBRID_OUT`, without ports."""
    builder = NetlistBuilder(varactor_model)
    add_phase_stage(builder, table, mode)
    return _finish(builder, word)


def build_phase_stage_network(table: ComponentTable, mode: CouplerMode, *, varactor_model: VaractorModel = VaractorModel.SWITCHED) -> Netlist:
    """The phase stage alone as a two-port: port 1 at `HYBRID_IN`, port 2 at `HYBRID_OUT`."""
    builder = NetlistBuilder(varactor_model)
    builder.port("P1", HYBRID_IN, 1, table.z0)
    add_phase_stage(builder, table, mode)
    builder.port("P2", HYBRID_OUT, 2, table.z0)
    return builder.build()


def build_lumped_coupler_network(table: ComponentTable) -> Netlist:
    """The lumped coupler alone as a four-port: input, output, load A, load B."""
    builder = NetlistBuilder()
    builder.port("P1", HYBRID_IN, 1, table.z0)
    builder.port("P2", HYBRID_OUT, 2, table.z0)
    builder.port("P3", HYBRID_LOAD_A, 3, table.z0)
    builder.port("P4", HYBRID_LOAD_B, 4, table.z0)
    add_lumped_coupler(builder, table)
    return builder.build()


def build_full_network(
    table: ComponentTable,
    mode: CouplerMode = CouplerMode.IDEAL,
    word: ConfigurationWord | None = None,
    *,
    varactor_model: VaractorModel = VaractorModel.SWITCHED,
    loss: LossModel | None = None,
) -> Netlist:
    """
    The complete two-port: port 1 → Π stage → phase stage → port 2.

    Args:
        table: Component values.
        mode: Coupler model of the phase stage.
        word: If given, the switched elements are frozen to their state under this word.
        varactor_model: How two-valued varactors are expanded.
        loss: Resolves switch parasitics when freezing; see `freeze_netlist`.

    Returns:
        A switched netlist with 11 control bits, or a frozen one when `word` is given.

    Examples:
        ```python
        netlist = build_full_network(ComponentTable(), CouplerMode.LUMPED)
        netlist.n_ports  # 2
        netlist.n_bits   # 11
        ```
    """
    builder = NetlistBuilder(varactor_model)
    builder.port("P1", INPUT_NODE, 1, table.z0)
    add_pi_stage(builder, table)
    add_phase_stage(builder, table, mode)
    builder.port("P2", HYBRID_OUT, 2, table.z0)
    return _finish(builder, word, loss)


def ideal_load_port_impedance(word: ConfigurationWord, f: float, table: ComponentTable, loss: LossModel) -> complex:
    """
    Termination seen at each ideal-hybrid load port: the reflective load in parallel with
    the relay-switched excess C_2var branch.
    """
    relay = Element("K2V", ElementKind.RELAY, (1, 2), bit=COUPLER_BIT)
    excess = Element("C2X", ElementKind.CAPACITOR, (2, 0), value=table.c_2var[1] - table.c_2var[0])
    y = 1.0 / reflective_load_impedance(word, f, table, loss)
    z_relay = element_impedance(relay, f, word, loss)
    if not cmath.isinf(z_relay):
        y += 1.0 / (z_relay + element_impedance(excess, f, word, loss))
    return 1.0 / y
