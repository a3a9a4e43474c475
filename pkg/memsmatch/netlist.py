"""
Netlist text format.

One element per line, `#` starts a comment:

    <label> <node>... <kind> key=value ...

Kinds and keys:

    port   (2 nodes: signal, ground)   z0=, num=
    r                                  r=   (the `r` kind token may be omitted)
    ind                                l=, q=
    cap                                c=, q=; `c=A/B bit=K [ron=]` makes it a switched capacitor
    relay                              bit=, ron=, coff=
    hyb90  (4 nodes)                   z0=

`q=inf` marks a loss-free inductor or capacitor.

Values are SI numbers with an optional engineering suffix among f p n u m k M G.
"""

import logging
import math
import re
from dataclasses import replace

import networkx as nx

from memsmatch.errors import BadValue, DuplicatePort, NetlistSyntaxError, UnknownElementKind
from memsmatch.types.configuration_word import N_BITS, ConfigurationWord
from memsmatch.types.element import Element
from memsmatch.types.element_kind import ElementKind
from memsmatch.types.loss_model import LossModel
from memsmatch.types.netlist import Netlist

logger = logging.getLogger(__name__)

# resistance written for a closed relay in a frozen netlist
SHORT_CIRCUIT_OHMS = 1e-6

GROUND_ALIASES = frozenset({"0", "gnd", "GND"})

_SUFFIXES: dict[str, float] = {
    "f": 1e-15,
    "p": 1e-12,
    "n": 1e-9,
    "u": 1e-6,
    "m": 1e-3,
    "k": 1e3,
    "M": 1e6,
    "G": 1e9,
}
_VALUE_RE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([fpnumkMG]?)$")

_KIND_TOKENS = {"port", "r", "ind", "cap", "relay", "hyb90"}
_ALLOWED_KEYS: dict[str, frozenset[str]] = {
    "port": frozenset({"z0", "num"}),
    "r": frozenset({"r"}),
    "ind": frozenset({"l", "q"}),
    "cap": frozenset({"c", "q", "bit", "ron"}),
    "relay": frozenset({"bit", "ron", "coff"}),
    "hyb90": frozenset({"z0"}),
}


def parse_value(token: str) -> float:
    """
    Parse a number with an optional engineering suffix.

    Examples:
        ```python
        parse_value("4p")    # 4e-12
        parse_value("620M")  # 620000000.0
        parse_value("1.5")   # 1.5
        ```

    Raises:
        BadValue: If the token is not a number.
    """
    match = _VALUE_RE.match(token)
    if match is None:
        raise BadValue(f"not a number: {token!r}")
    number, suffix = match.groups()
    return float(number) * _SUFFIXES.get(suffix, 1.0)


def parse_netlist(text: str) -> Netlist:
    """
    Parse netlist text.

    Node names are mapped to indices deterministically: ground aliases ("0", "gnd") map
    to 0, every other name gets the next index on first appearance.

    Args:
        text: Netlist source.

    Returns:
        The parsed netlist, elements in file order. The declared bit count is one past the
        highest control bit used.

    Raises:
        NetlistSyntaxError: Malformed line, wrong node count, unknown key or duplicate label.
        UnknownElementKind: The kind token is not recognized.
        DuplicatePort: Two ports share a port number.
        BadValue: A value is malformed or outside its physical range.

    Examples:
        ```python
        n = parse_netlist("P1 in 0 port z0=50\\nR1 in 0 r=50\\n")
        n.n_ports            # 1
        n.elements[1].value  # 50.0
        ```
    """
    names: list[str] = ["0"]
    elements: list[Element] = []
    labels: set[str] = set()
    next_port = 1

    def node(name: str) -> int:
        if name in GROUND_ALIASES:
            return 0
        if name not in names:
            names.append(name)
        return names.index(name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()

        split = len(tokens)
        while split > 1 and "=" in tokens[split - 1]:
            split -= 1
        if split < 3:
            raise NetlistSyntaxError(lineno, "expected '<label> <node>... <kind> key=value ...'")
        label, kind_token, node_tokens = tokens[0], tokens[split - 1], tokens[1 : split - 1]
        if kind_token not in _KIND_TOKENS and split < len(tokens) and tokens[split].startswith("r="):
            # "R1 a b r=50": the resistance key stands in for the kind
            kind_token, node_tokens = "r", tokens[1:split]
        if kind_token not in _KIND_TOKENS:
            raise UnknownElementKind(f"line {lineno}: unknown element kind {kind_token!r}")
        if label in labels:
            raise NetlistSyntaxError(lineno, f"duplicate label {label!r}")
        labels.add(label)

        params = _parse_params(lineno, kind_token, tokens[split:])
        nodes = tuple(node(t) for t in node_tokens)
        element = _make_element(lineno, label, kind_token, nodes, params, next_port)
        if element.kind is ElementKind.PORT:
            next_port = (element.port or 0) + 1
        elements.append(element)

    _check_ports(elements)
    bits = [e.bit for e in elements if e.bit is not None]
    return Netlist(elements=tuple(elements), node_names=tuple(names), n_bits=max(bits) + 1 if bits else 0)


def _parse_params(lineno: int, kind_token: str, tokens: list[str]) -> dict[str, str]:
    params: dict[str, str] = {}
    for token in tokens:
        key, _, value = token.partition("=")
        if key not in _ALLOWED_KEYS[kind_token]:
            raise NetlistSyntaxError(lineno, f"key {key!r} not allowed for {kind_token}")
        if key in params:
            raise NetlistSyntaxError(lineno, f"key {key!r} given twice")
        if not value:
            raise NetlistSyntaxError(lineno, f"key {key!r} has no value")
        params[key] = value
    return params


def _make_element(lineno: int, label: str, kind_token: str, nodes: tuple[int, ...], params: dict[str, str], next_port: int) -> Element:
    def number(key: str, *, allow_zero: bool = False) -> float | None:
        if key not in params:
            return None
        value = _bad_value_at(lineno, key, params[key])
        if value < 0 or (value == 0 and not allow_zero):
            raise BadValue(f"line {lineno}: {key} must be {'non-negative' if allow_zero else 'positive'}, got {params[key]}")
        return value

    def required(key: str) -> float:
        value = number(key)
        if value is None:
            raise BadValue(f"line {lineno}: missing required {key}=")
        return value

    def quality() -> float | None:
        return math.inf if params.get("q") == "inf" else number("q")

    def bit() -> int | None:
        if "bit" not in params:
            return None
        if not params["bit"].isdigit() or not 0 <= int(params["bit"]) < N_BITS:
            raise BadValue(f"line {lineno}: bit must be an integer in [0, {N_BITS - 1}], got {params['bit']}")
        return int(params["bit"])

    expected = 4 if kind_token == "hyb90" else 2
    if len(nodes) != expected:
        raise NetlistSyntaxError(lineno, f"{kind_token} takes {expected} nodes, got {len(nodes)}")

    match kind_token:
        case "port":
            if nodes[1] != 0:
                raise NetlistSyntaxError(lineno, "the second port node must be ground")
            if nodes[0] == 0:
                raise NetlistSyntaxError(lineno, "the port signal node must not be ground")
            num = params.get("num")
            if num is not None and not num.isdigit():
                raise BadValue(f"line {lineno}: num must be a positive integer, got {num}")
            port = int(num) if num is not None else next_port
            if port < 1:
                raise BadValue(f"line {lineno}: num must be a positive integer, got {num}")
            return Element(label, ElementKind.PORT, nodes, z0=number("z0") or 50.0, port=port)
        case "r":
            return Element(label, ElementKind.RESISTOR, nodes, value=required("r"))
        case "ind":
            return Element(label, ElementKind.INDUCTOR, nodes, value=required("l"), q=quality())
        case "cap":
            if "c" not in params:
                raise BadValue(f"line {lineno}: missing required c=")
            low_text, slash, high_text = params["c"].partition("/")
            if not slash:
                if "bit" in params or "ron" in params:
                    raise NetlistSyntaxError(lineno, "bit= and ron= need a two-valued c=A/B")
                return Element(label, ElementKind.CAPACITOR, nodes, value=required("c"), q=quality())
            low, high = _bad_value_at(lineno, "c", low_text), _bad_value_at(lineno, "c", high_text)
            if not 0 < low < high:
                raise BadValue(f"line {lineno}: switched capacitor needs 0 < C_low < C_high, got {params['c']}")
            control = bit()
            if control is None:
                raise BadValue(f"line {lineno}: switched capacitor needs bit=")
            return Element(label, ElementKind.SWITCHED_CAPACITOR, nodes, value=low, value_high=high, q=quality(), r_on=number("ron"), bit=control)
        case "relay":
            control = bit()
            if control is None:
                raise BadValue(f"line {lineno}: relay needs bit=")
            return Element(label, ElementKind.RELAY, nodes, r_on=number("ron", allow_zero=True), c_off=number("coff", allow_zero=True), bit=control)
        case _:
            return Element(label, ElementKind.IDEAL_HYBRID, nodes, z0=number("z0") or 50.0)


def _bad_value_at(lineno: int, key: str, text: str) -> float:
    try:
        return parse_value(text)
    except BadValue as e:
        raise BadValue(f"line {lineno}: {key}: {e}") from None


def _check_ports(elements: list[Element]) -> None:
    seen: dict[int, str] = {}
    for e in elements:
        if e.kind is not ElementKind.PORT or e.port is None:
            continue
        if e.port in seen:
            raise DuplicatePort(f"port {e.port} defined by both {seen[e.port]} and {e.label}")
        seen[e.port] = e.label
    if sorted(seen) != list(range(1, len(seen) + 1)):
        raise BadValue(f"port numbers must run contiguously from 1, got {sorted(seen)}")


def serialize_netlist(netlist: Netlist) -> str:
    """
    Canonical text form of a netlist.

    Every parameter is written explicitly with `repr` floats, so parsing the output gives
    back an equal netlist.
    """
    lines: list[str] = []
    for e in netlist.elements:
        nodes = " ".join(netlist.node_names[i] for i in e.nodes)
        lines.append(f"{e.label} {nodes} {e.kind.token}{_format_params(e)}")
    return "\n".join(lines) + "\n"


def _format_params(e: Element) -> str:
    parts: list[str] = []
    match e.kind:
        case ElementKind.PORT:
            parts += [f"z0={e.z0!r}", f"num={e.port}"]
        case ElementKind.RESISTOR:
            parts.append(f"r={e.value!r}")
        case ElementKind.INDUCTOR:
            parts.append(f"l={e.value!r}")
        case ElementKind.CAPACITOR:
            parts.append(f"c={e.value!r}")
        case ElementKind.SWITCHED_CAPACITOR:
            parts += [f"c={e.value!r}/{e.value_high!r}", f"bit={e.bit}"]
        case ElementKind.RELAY:
            parts.append(f"bit={e.bit}")
        case ElementKind.IDEAL_HYBRID:
            parts.append(f"z0={e.z0!r}")
    if e.q is not None:
        parts.append(f"q={e.q!r}")
    if e.r_on is not None:
        parts.append(f"ron={e.r_on!r}")
    if e.c_off is not None:
        parts.append(f"coff={e.c_off!r}")
    return "".join(" " + p for p in parts)


def validate(netlist: Netlist) -> list[str]:
    """
    Check the structural invariants of a netlist.

    Returns:
        Violation messages; an empty list means the netlist is valid.

    Examples:
        ```python
        validate(parse_netlist("P1 a 0 port\\nR1 a 0 r=50\\nR2 b c r=10\\n"))
        # ['floating node: b', 'floating node: c']
        ```
    """
    violations: list[str] = []
    ports = [e for e in netlist.elements if e.kind is ElementKind.PORT]
    if not ports:
        violations.append("no ports")
    numbers = [e.port for e in ports]
    for n in sorted({p for p in numbers if numbers.count(p) > 1 and p is not None}):
        violations.append(f"duplicate port number: {n}")
    if sorted(p or 0 for p in numbers) != list(range(1, len(numbers) + 1)) and len(set(numbers)) == len(numbers):
        violations.append(f"port numbers not contiguous from 1: {sorted(p or 0 for p in numbers)}")
    for p in ports:
        if p.nodes[0] == 0:
            violations.append(f"{p.label}: port signal node is ground")

    for e in netlist.elements:
        if e.kind.is_switched and (e.bit is None or not 0 <= e.bit < netlist.n_bits):
            violations.append(f"{e.label}: control bit {e.bit} outside declared range [0, {netlist.n_bits})")

    graph: nx.Graph[int] = nx.Graph()
    graph.add_nodes_from(range(netlist.n_nodes))
    for e in netlist.elements:
        if e.kind is ElementKind.PORT:
            continue  # measurement points, not circuit connections
        if e.kind is ElementKind.IDEAL_HYBRID:
            # the hybrid is a ground-referenced four-port
            graph.add_edges_from((n, 0) for n in e.nodes)
        else:
            graph.add_edge(e.nodes[0], e.nodes[1])
    grounded: set[int] = nx.node_connected_component(graph, 0)
    for index in range(1, netlist.n_nodes):
        if index not in grounded:
            violations.append(f"floating node: {netlist.node_names[index]}")

    if violations:
        logger.debug("netlist has %d violation(s): %s", len(violations), violations)
    return violations


def freeze_netlist(netlist: Netlist, word: ConfigurationWord, loss: LossModel | None = None) -> Netlist:
    """
    Fix every switched element to its state under `word`, with its switch parasitics written out.

    Switched capacitors become fixed capacitors; an actuated one keeps its contact resistance as
    a series resistor on a new node `<label>_ron`. A closed relay becomes a resistor of its
    contact resistance, `SHORT_CIRCUIT_OHMS` when that is 0. An open relay becomes a loss-free
    (`q=inf`) capacitor of its up-state capacitance, or is dropped when that is 0. Contact
    resistance and up-state capacitance come from the element or else from `loss`, so solving
    the frozen netlist under `loss` gives the switched netlist's response at `word`.

    Args:
        netlist: A switched netlist.
        word: Configuration word selecting each switch state.
        loss: Loss model resolving switch parasitics; defaults to `LossModel()`.

    Returns:
        A netlist with no control bits, its nodes indexed by first appearance.
    """
    loss = loss or LossModel()
    names = netlist.node_names
    frozen: list[tuple[Element, tuple[str, ...]]] = []
    for e in netlist.elements:
        nodes = tuple(names[i] for i in e.nodes)
        if e.kind is ElementKind.SWITCHED_CAPACITOR and e.bit is not None:
            actuated = word.bit(e.bit)
            r_on = 0.0 if loss.lossless or not actuated else (e.r_on if e.r_on is not None else loss.r_on)
            capacitor = replace(e, kind=ElementKind.CAPACITOR, value=e.value_high if actuated else e.value, value_high=None, r_on=None, bit=None)
            if r_on > 0:
                contact = f"{e.label}_ron"
                frozen.append((capacitor, (nodes[0], contact)))
                frozen.append((Element(f"{e.label}_RON", ElementKind.RESISTOR, (), value=r_on), (contact, nodes[1])))
            else:
                frozen.append((capacitor, nodes))
        elif e.kind is ElementKind.RELAY and e.bit is not None:
            if word.bit(e.bit):
                r_on = 0.0 if loss.lossless else (e.r_on if e.r_on is not None else loss.r_on)
                frozen.append((Element(e.label, ElementKind.RESISTOR, (), value=r_on or SHORT_CIRCUIT_OHMS), nodes))
            else:
                c_off = 0.0 if loss.lossless else (e.c_off if e.c_off is not None else loss.c_off)
                if c_off > 0:
                    frozen.append((Element(e.label, ElementKind.CAPACITOR, (), value=c_off, q=math.inf), nodes))
        else:
            frozen.append((e, nodes))

    # reindex so the frozen netlist parses back to itself
    order: list[str] = [names[0]]
    for _, nodes in frozen:
        for n in nodes:
            if n not in order:
                order.append(n)
    elements = tuple(replace(e, nodes=tuple(order.index(n) for n in nodes)) for e, nodes in frozen)
    return Netlist(elements=elements, node_names=tuple(order), n_bits=0)
