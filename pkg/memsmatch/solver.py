"""AC nodal analysis of a netlist at one frequency and configuration word."""

import cmath
import logging
from functools import lru_cache
from typing import Sequence

import networkx as nx
import numpy as np

from memsmatch.components import element_impedance, ideal_hybrid_smatrix
from memsmatch.errors import BadValue, SingularEmbedding, SingularMatrix, SolverError
from memsmatch.numeric import ComplexMatrix, factor, invert
from memsmatch.types.configuration_word import ConfigurationWord
from memsmatch.types.element import Element
from memsmatch.types.element_kind import ElementKind
from memsmatch.types.loss_model import LossModel
from memsmatch.types.netlist import Netlist
from memsmatch.types.sparameter_block import SParameterBlock

logger = logging.getLogger(__name__)

# series resistance added to each hybrid port when (I + S) cannot be inverted
HYBRID_REGULARIZATION_OHMS = 1e-6


def reflection(z: complex, z0: float = 50.0) -> complex:
    """
    Reflection coefficient Γ = (z - z0)/(z + z0).

    An infinite impedance (open circuit) gives Γ = 1.

    Raises:
        SolverError: If z = -z0, which only a non-passive impedance can reach.

    Examples:
        ```python
        reflection(50)   # 0j
        reflection(0)    # (-1+0j)
        reflection(complex("inf"))  # (1+0j)
        ```
    """
    if z0 <= 0:
        raise ValueError(f"z0 must be positive, got {z0}")
    if cmath.isinf(z):
        return 1 + 0j
    if z + z0 == 0:
        raise SolverError(f"reflection undefined for z = {z} (non-passive, z = -z0)")
    return (z - z0) / (z + z0)


@lru_cache(maxsize=16)
def _hybrid_admittance(z0: float) -> ComplexMatrix:
    s = ideal_hybrid_smatrix(z0).s
    eye = np.eye(4, dtype=np.complex128)
    try:
        y = (eye - s) @ invert(eye + s) / z0
    except SingularMatrix:
        logger.warning("I + S of the hybrid is singular; embedding it with %g ohm series resistors", HYBRID_REGULARIZATION_OHMS)
        try:
            z = z0 * (eye + s) @ invert(eye - s) + HYBRID_REGULARIZATION_OHMS * eye
            y = invert(z)
        except SingularMatrix as e:
            raise SingularEmbedding(f"hybrid with z0={z0} cannot be embedded: {e}") from e
    y.setflags(write=False)
    return y


def _stamp(y: ComplexMatrix, n1: int, n2: int, g: complex) -> None:
    if n1:
        y[n1 - 1, n1 - 1] += g
    if n2:
        y[n2 - 1, n2 - 1] += g
    if n1 and n2:
        y[n1 - 1, n2 - 1] -= g
        y[n2 - 1, n1 - 1] -= g


def _short_groups(shorts: nx.Graph) -> list[tuple[int, int]]:
    """(member, representative) pairs; ground represents any group it belongs to."""
    pairs: list[tuple[int, int]] = []
    for group in nx.connected_components(shorts):
        rep = 0 if 0 in group else min(group)
        pairs.extend((node, rep) for node in sorted(group) if node != rep)
    return pairs


def _fold(m: ComplexMatrix, pairs: list[tuple[int, int]]) -> None:
    for member, rep in pairs:
        if rep:
            m[rep - 1] += m[member - 1]


def _nodal_system(netlist: Netlist, f: float, word: ConfigurationWord, loss: LossModel, port_load: float = 0.0) -> tuple[ComplexMatrix, list[tuple[int, int]]]:
    size = netlist.n_nodes - 1
    y = np.zeros((size, size), dtype=np.complex128)
    shorts = nx.Graph()
    for e in netlist.elements:
        match e.kind:
            case ElementKind.PORT:
                if port_load:
                    _stamp(y, e.nodes[0], e.nodes[1], port_load)
            case ElementKind.IDEAL_HYBRID:
                y_hyb = _hybrid_admittance(e.z0 or 50.0)
                for a, node_a in enumerate(e.nodes):
                    if node_a == 0:
                        continue
                    for b, node_b in enumerate(e.nodes):
                        if node_b != 0:
                            y[node_a - 1, node_b - 1] += y_hyb[a, b]
            case _:
                z = element_impedance(e, f, word, loss)
                n1, n2 = e.nodes
                if z == 0:
                    if n1 != n2:
                        shorts.add_edge(n1, n2)
                elif not cmath.isinf(z):
                    _stamp(y, n1, n2, 1.0 / z)

    pairs = _short_groups(shorts)
    _fold(y, pairs)
    for member, rep in pairs:
        y[member - 1] = 0.0
        y[member - 1, member - 1] = 1.0
        if rep:
            y[member - 1, rep - 1] = -1.0
    return y, pairs


def _solve(y: ComplexMatrix, pairs: list[tuple[int, int]], rhs: ComplexMatrix, f: float, word: ConfigurationWord) -> ComplexMatrix:
    _fold(rhs, pairs)
    for member, _ in pairs:
        rhs[member - 1] = 0.0
    try:
        fac = factor(y)
    except SingularMatrix as e:
        raise SingularMatrix(f"at {f:.6g} Hz, word {word.value}: {e}") from e
    return fac.solve(rhs)


def assemble_admittance(netlist: Netlist, f: float, word: ConfigurationWord, loss: LossModel) -> ComplexMatrix:
    """
    Nodal admittance matrix over the non-ground nodes.

    Every two-terminal element stamps y = 1/Z; an ideal hybrid stamps
    Y = (1/z0)(I - S)(I + S)^-1 across its four nodes. Ports only mark measurement nodes and stamp nothing.

    A zero impedance (a closed lossless relay) is an ideal short. Its nodes are merged:
    each shorted node's row is added to its group's representative row (the lowest node,
    or ground) and replaced by the constraint v_node - v_rep = 0.

    Returns:
        An (N-1) x (N-1) matrix; row/column i corresponds to node i + 1.

    Raises:
        SingularEmbedding: If a hybrid cannot be embedded.

    Examples:
        ```python
        n = parse_netlist("P1 a 0 port\\nR1 a 0 r=50\\n")
        assemble_admittance(n, 1e9, ConfigurationWord(0), LossModel())  # [[0.02+0j]]
        ```
    """
    y, _ = _nodal_system(netlist, f, word, loss)
    return y


def _port_rows(ports: Sequence[Element]) -> list[int]:
    if not ports:
        raise BadValue("netlist has no ports")
    grounded = [p.label for p in ports if p.nodes[0] == 0]
    if grounded:
        raise BadValue(f"port signal node is ground: {', '.join(grounded)}")
    return [p.nodes[0] - 1 for p in ports]


def port_zmatrix(netlist: Netlist, f: float, word: ConfigurationWord, loss: LossModel) -> ComplexMatrix:
    """
    Open-circuit impedance matrix seen at the ports.

    Z[i][j] is the voltage at port i per unit current injected at port j with every other
    port open. The admittance matrix is factored once and solved once per port.

    Raises:
        BadValue: If the netlist has no ports or a port sits on ground.
        SingularMatrix: For floating nodes or a perfectly resonant degenerate state.
    """
    ports = netlist.ports
    nodes = _port_rows(ports)
    y, pairs = _nodal_system(netlist, f, word, loss)
    rhs = np.zeros((y.shape[0], len(ports)), dtype=np.complex128)
    for j, node in enumerate(nodes):
        rhs[node, j] = 1.0
    v = _solve(y, pairs, rhs, f, word)
    return v[nodes, :]


def z_to_s(z: ComplexMatrix, z0: float = 50.0, f: float = 0.0) -> SParameterBlock:
    """
    Convert an impedance matrix to S-parameters: S = (Z - z0·I)(Z + z0·I)^-1.

    Examples:
        ```python
        z_to_s(np.array([[50.0 + 0j]])).s  # [[0j]]
        z_to_s(np.array([[0j]])).s         # [[-1+0j]]
        ```

    Raises:
        SingularMatrix: If Z + z0·I is singular, which a passive circuit cannot produce.
    """
    if z0 <= 0:
        raise ValueError(f"z0 must be positive, got {z0}")
    eye = np.eye(z.shape[0], dtype=np.complex128)
    s = (z - z0 * eye) @ invert(z + z0 * eye)
    return SParameterBlock(f=f, z0=z0, s=s)


def terminated_sparameters(netlist: Netlist, f: float, word: ConfigurationWord, loss: LossModel, z0: float = 50.0) -> SParameterBlock:
    """
    S-parameters from the nodal solve with every port terminated in z0.

    Each port node gets a 1/z0 shunt and is driven in turn by the Norton equivalent of a
    matched source, giving S = (2/z0)·P·Y_t^-1·P^T - I. This works for circuits whose
    open-circuit Z-matrix does not exist, such as a lone series element between two ports.

    Raises:
        BadValue: If the netlist has no ports or a port sits on ground.
        SingularMatrix: If a node is floating even with the ports terminated.
    """
    ports = netlist.ports
    nodes = _port_rows(ports)
    y, pairs = _nodal_system(netlist, f, word, loss, port_load=1.0 / z0)
    rhs = np.zeros((y.shape[0], len(ports)), dtype=np.complex128)
    for j, node in enumerate(nodes):
        rhs[node, j] = 2.0 / z0
    v = _solve(y, pairs, rhs, f, word)
    s = v[nodes, :] - np.eye(len(ports), dtype=np.complex128)
    return SParameterBlock(f=f, z0=z0, s=s)


def solve_sparameters(netlist: Netlist, f: float, word: ConfigurationWord, loss: LossModel) -> SParameterBlock:
    """
    S-parameters of a netlist, referenced to the ports' common z0.

    The open-circuit Z-matrix route is used first; when it is singular (a port node whose
    only path to ground runs through another port) the terminated formulation is used.

    Raises:
        BadValue: If the ports do not share one reference impedance.
        SingularMatrix: If the circuit has a floating node.
    """
    z0_values = {p.z0 for p in netlist.ports}
    if len(z0_values) > 1:
        raise BadValue(f"ports use different reference impedances: {sorted(v or 0.0 for v in z0_values)}")
    z0 = next(iter(z0_values), None) or 50.0
    try:
        return z_to_s(port_zmatrix(netlist, f, word, loss), z0, f)
    except SingularMatrix as e:
        logger.debug("open-circuit Z-matrix unavailable (%s); solving with terminated ports", e)
        return terminated_sparameters(netlist, f, word, loss, z0)