import cmath
import math
from typing import Callable

import numpy as np
import pytest
from assertpy import assert_that

from memsmatch.components import ideal_hybrid_smatrix
from memsmatch.errors import BadValue, SingularMatrix, SolverError
from memsmatch.netlist import parse_netlist
from memsmatch.solver import assemble_admittance, port_zmatrix, reflection, solve_sparameters, terminated_sparameters, z_to_s
from memsmatch.types import ConfigurationWord, Element, ElementKind, LossModel, Netlist

F = 620e6
WORD0 = ConfigurationWord(0)
LOSSLESS = LossModel.ideal()


def max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a)))


class TestAssembleAdmittance:
    """Unit tests for nodal matrix stamping."""

    def test_shunt_resistor(self) -> None:
        """Test that a 50 ohm shunt stamps 0.02 S on its node."""
        # Act
        y = assemble_admittance(parse_netlist("P1 a 0 port\nR1 a 0 r=50\n"), F, WORD0, LOSSLESS)

        # Assert
        assert_that(y.shape).is_equal_to((1, 1))
        assert_that(abs(y[0, 0] - 0.02)).is_less_than(1e-15)

    def test_floating_resistor_stamp(self) -> None:
        """Test the four-entry stamp of a resistor between two non-ground nodes."""
        # Act
        y = assemble_admittance(parse_netlist("P1 a 0 port\nR1 a b r=100\nR2 b 0 r=100\n"), F, WORD0, LOSSLESS)

        # Assert
        expected = np.array([[0.01, -0.01], [-0.01, 0.02]])
        assert_that(max_abs(y - expected)).is_less_than(1e-15)

    def test_ideal_short_becomes_node_equality(self) -> None:
        """Test that a closed lossless relay folds its node into the lower-numbered one."""
        # Arrange
        netlist = parse_netlist("P1 a 0 port\nK1 a b relay bit=0\nR1 b 0 r=50\n")

        # Act
        y = assemble_admittance(netlist, F, ConfigurationWord(1), LOSSLESS)

        # Assert
        expected = np.array([[0.02, 0.0], [-1.0, 1.0]])
        assert_that(max_abs(y - expected)).is_less_than(1e-15)


class TestPortZMatrix:
    """Unit tests for the open-circuit impedance matrix."""

    def test_single_resistor(self) -> None:
        """Test that a 50 ohm shunt reads 50 ohm at its port."""
        # Act
        z = port_zmatrix(parse_netlist("P1 a 0 port\nR1 a 0 r=50\n"), F, WORD0, LOSSLESS)

        # Assert
        assert_that(abs(z[0, 0] - 50.0)).is_less_than(1e-12)

    def test_short_to_ground(self) -> None:
        """Test that a port shorted to ground by a closed relay reads zero impedance."""
        # Arrange
        netlist = parse_netlist("P1 a 0 port\nK1 a 0 relay bit=0\nR1 a 0 r=50\n")

        # Act
        z = port_zmatrix(netlist, F, ConfigurationWord(1), LOSSLESS)

        # Assert
        assert_that(abs(z[0, 0])).is_less_than(1e-15)

    def test_series_lc_resonance(self) -> None:
        """Test that a series LC to ground at its resonant frequency reads zero impedance."""
        # Arrange
        netlist = parse_netlist("P1 a 0 port\nL1 a m ind l=16n\nC1 m 0 cap c=4p\n")
        f0 = 1.0 / (2 * math.pi * math.sqrt(16e-9 * 4e-12))

        # Act
        z = port_zmatrix(netlist, f0, WORD0, LOSSLESS)

        # Assert
        assert_that(abs(z[0, 0])).is_less_than(1e-9)

    def test_no_ports(self) -> None:
        """Test that a netlist without ports raises BadValue."""
        with pytest.raises(BadValue):
            port_zmatrix(parse_netlist("R1 a 0 r=50\n"), F, WORD0, LOSSLESS)

    @pytest.mark.parametrize("solve", [port_zmatrix, terminated_sparameters])
    def test_port_on_ground_is_rejected(self, solve: Callable[[Netlist, float, ConfigurationWord, LossModel], object]) -> None:
        """Test that a port whose signal node is ground raises BadValue instead of reading another node."""
        # Arrange
        netlist = Netlist(
            elements=(
                Element("P1", ElementKind.PORT, (0, 0), z0=50.0, port=1),
                Element("R1", ElementKind.RESISTOR, (1, 0), value=50.0),
                Element("R2", ElementKind.RESISTOR, (1, 0), value=25.0),
            ),
            node_names=("0", "a"),
        )

        # Act
        with pytest.raises(BadValue) as info:
            solve(netlist, F, WORD0, LOSSLESS)

        # Assert
        assert_that(str(info.value)).contains("P1")


class TestSolveSParameters:
    """Unit tests for S-parameters of small analytic circuits."""

    def test_matched_load(self) -> None:
        """Test that a 50 ohm termination is matched."""
        # Act
        s = solve_sparameters(parse_netlist("P1 a 0 port\nR1 a 0 r=50\n"), F, WORD0, LOSSLESS)

        # Assert
        assert_that(abs(s.s11)).is_less_than(1e-12)

    def test_resistive_divider(self) -> None:
        """Test that 100 ohm to ground reflects 1/3."""
        # Act
        s = solve_sparameters(parse_netlist("P1 a 0 port\nR1 a b r=50\nR2 b 0 r=50\n"), F, WORD0, LOSSLESS)

        # Assert
        assert_that(abs(s.s11 - 1.0 / 3.0)).is_less_than(1e-12)

    def test_series_resistor_between_ports(self) -> None:
        """Test a lone series 50 ohm resistor, which has no open-circuit Z-matrix."""
        # Arrange
        netlist = parse_netlist("P1 a 0 port\nP2 b 0 port\nR1 a b r=50\n")

        # Act
        s = solve_sparameters(netlist, F, WORD0, LOSSLESS)

        # Assert
        assert_that(abs(s.s11 - 1.0 / 3.0)).is_less_than(1e-12)
        assert_that(abs(s.s21 - 2.0 / 3.0)).is_less_than(1e-12)
        assert_that(abs(s.s22 - 1.0 / 3.0)).is_less_than(1e-12)
        with pytest.raises(SingularMatrix):
            port_zmatrix(netlist, F, WORD0, LOSSLESS)

    def test_series_inductor_between_ports(self) -> None:
        """Test that a series inductor transmits 2z0/(2z0 + jωL)."""
        # Arrange
        netlist = parse_netlist("P1 a 0 port\nP2 b 0 port\nL1 a b ind l=16n\n")
        z = 1j * 2 * math.pi * F * 16e-9

        # Act
        s = solve_sparameters(netlist, F, WORD0, LOSSLESS)

        # Assert
        assert_that(abs(s.s21 - 100.0 / (100.0 + z))).is_less_than(1e-12)
        assert_that(abs(s.s11 - z / (100.0 + z))).is_less_than(1e-12)

    def test_closed_relay_between_ports_is_a_through(self) -> None:
        """Test that a closed lossless relay between two ports transmits everything."""
        # Arrange
        netlist = parse_netlist("P1 a 0 port\nP2 b 0 port\nK1 a b relay bit=0\n")

        # Act
        s = solve_sparameters(netlist, F, ConfigurationWord(1), LOSSLESS)

        # Assert
        assert_that(abs(s.s21 - 1.0)).is_less_than(1e-12)
        assert_that(abs(s.s11)).is_less_than(1e-12)

    def test_terminated_formulation_matches_z_route(self) -> None:
        """Test that both formulations agree where the Z-matrix exists."""
        # Arrange
        netlist = parse_netlist("P1 a 0 port\nP2 b 0 port\nL1 a b ind l=16n q=30\nC1 a 0 cap c=4p\nC2 b 0 cap c=7p\n")
        loss = LossModel()

        # Act
        via_z = solve_sparameters(netlist, F, WORD0, loss)
        terminated = terminated_sparameters(netlist, F, WORD0, loss)

        # Assert
        assert_that(max_abs(via_z.s - terminated.s)).is_less_than(1e-12)

    def test_floating_node(self) -> None:
        """Test that a subcircuit with no path to ground raises SingularMatrix."""
        with pytest.raises(SingularMatrix):
            solve_sparameters(parse_netlist("P1 a 0 port\nR1 a 0 r=50\nR2 b c r=10\n"), F, WORD0, LOSSLESS)

    def test_mixed_reference_impedances(self) -> None:
        """Test that ports with different z0 raise BadValue."""
        with pytest.raises(BadValue):
            solve_sparameters(parse_netlist("P1 a 0 port z0=50\nP2 b 0 port z0=75\nR1 a b r=50\nR2 b 0 r=50\n"), F, WORD0, LOSSLESS)

    def test_embedded_hybrid_reproduces_its_smatrix(self) -> None:
        """Test that a hybrid with a port on each node returns the ideal hybrid matrix."""
        # Arrange
        netlist = parse_netlist("P1 a 0 port\nP2 b 0 port\nP3 c 0 port\nP4 d 0 port\nH1 a b c d hyb90 z0=50\n")

        # Act
        s = solve_sparameters(netlist, F, WORD0, LOSSLESS)

        # Assert
        assert_that(max_abs(s.s - ideal_hybrid_smatrix().s)).is_less_than(1e-9)


class TestReflection:
    """Unit tests for the scalar reflection coefficient."""

    def test_reflective_load_phase(self) -> None:
        """Test that -j37.6 ohm reflects at about 253.9 degrees with unit magnitude."""
        # Act
        gamma = reflection(-37.6j)

        # Assert
        assert_that(abs(gamma)).is_close_to(1.0, 1e-12)
        assert_that(math.degrees(cmath.phase(gamma)) % 360.0).is_close_to(253.9, 0.2)

    def test_open_and_short(self) -> None:
        """Test the open- and short-circuit limits."""
        assert_that(reflection(complex("inf"))).is_equal_to(1 + 0j)
        assert_that(reflection(0j)).is_equal_to(-1 + 0j)

    def test_minus_z0_is_rejected(self) -> None:
        """Test that z = -z0 raises SolverError."""
        with pytest.raises(SolverError):
            reflection(-50.0)


class TestZToS:
    """Unit tests for the impedance-to-scattering conversion."""

    def test_matched_and_shorted(self) -> None:
        """Test z0 and zero impedance on a one-port."""
        assert_that(abs(z_to_s(np.array([[50.0 + 0j]])).s11)).is_less_than(1e-15)
        assert_that(abs(z_to_s(np.array([[0j]])).s11 + 1)).is_less_than(1e-15)

    def test_non_positive_reference_is_rejected(self) -> None:
        """Test that z0 <= 0 raises ValueError."""
        with pytest.raises(ValueError):
            z_to_s(np.array([[50.0 + 0j]]), 0.0)
