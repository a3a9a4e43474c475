import cmath
import math

import numpy as np
import pytest
from assertpy import assert_that

from memsmatch.components import (
    OPEN_CIRCUIT,
    capacitor_impedance,
    element_admittance,
    element_impedance,
    ideal_hybrid_smatrix,
    inductor_impedance,
    reflective_load_impedance,
    rtps_response,
)
from memsmatch.types import ComponentTable, ConfigurationWord, Element, ElementKind, LossModel

F = 620e6
LOSSLESS = LossModel.ideal()
WORD0 = ConfigurationWord(0)


def phase_deg(z: complex) -> float:
    return math.degrees(cmath.phase(z)) % 360.0


class TestReactances:
    """Unit tests for the design-value reactances at 620 MHz."""

    def test_series_inductor(self) -> None:
        """Test ωL of L_s = 16 nH."""
        # Act
        z = inductor_impedance(16e-9, F, LOSSLESS)

        # Assert
        assert_that(z.real).is_equal_to(0.0)
        assert_that(z.imag).is_close_to(62.33, 0.01)

    def test_center_capacitance_is_fifty_ohm(self) -> None:
        """Test that 5.14 pF is within 1% of a 50 ohm reactance."""
        # Act
        z = capacitor_impedance(5.14e-12, F, LOSSLESS)

        # Assert
        assert_that(z.imag).is_close_to(-49.94, 0.02)
        assert_that(abs(abs(z) - 50.0) / 50.0).is_less_than(0.01)

    @pytest.mark.parametrize("c, reactance", [(4e-12, -64.18), (7e-12, -36.67)])
    def test_varactor_states(self, c: float, reactance: float) -> None:
        """Test both states of the C_p / C_s varactors."""
        assert_that(capacitor_impedance(c, F, LOSSLESS).imag).is_close_to(reactance, 0.01)

    def test_capacitance_control_ratio(self) -> None:
        """Test that the reflective-load capacitance spans a ratio of 4."""
        # Act
        low, high = ComponentTable().load_capacitance_range

        # Assert
        assert_that(high / low).is_close_to(4.0, 4.0 * 0.005)

    def test_lossy_inductor_series_resistance(self) -> None:
        """Test R_s = ω_ref·L/Q_L."""
        # Arrange
        loss = LossModel(q_l=30.0)

        # Act
        z = inductor_impedance(16e-9, F, loss)

        # Assert
        assert_that(z.real).is_close_to(z.imag / 30.0, 1e-12)

    def test_element_q_overrides_loss_model(self) -> None:
        """Test that an element-level q replaces Q_C."""
        # Arrange
        c = Element("C1", ElementKind.CAPACITOR, (1, 0), value=5.14e-12, q=10.0)

        # Act
        z = element_impedance(c, F, WORD0, LossModel(q_c=100.0))

        # Assert
        assert_that(z.real).is_close_to(-z.imag / 10.0, 1e-12)


class TestSwitchedElements:
    """Unit tests for switched capacitors and relays."""

    def test_switched_capacitor_follows_its_bit(self) -> None:
        """Test that the control bit selects the capacitance."""
        # Arrange
        c = Element("C1", ElementKind.SWITCHED_CAPACITOR, (1, 0), value=4e-12, value_high=7e-12, bit=2)

        # Act
        low = element_impedance(c, F, ConfigurationWord(0b011), LOSSLESS)
        high = element_impedance(c, F, ConfigurationWord(0b100), LOSSLESS)

        # Assert
        assert_that(low.imag).is_close_to(-64.18, 0.01)
        assert_that(high.imag).is_close_to(-36.67, 0.01)

    def test_actuated_varactor_adds_contact_resistance(self) -> None:
        """Test that R_on is in series only in the actuated state."""
        # Arrange
        c = Element("C1", ElementKind.SWITCHED_CAPACITOR, (1, 0), value=4e-12, value_high=7e-12, bit=0)
        loss = LossModel(q_c=100.0, r_on=1.5)

        # Act
        off = element_impedance(c, F, ConfigurationWord(0), loss)
        on = element_impedance(c, F, ConfigurationWord(1), loss)

        # Assert
        assert_that(off.real).is_close_to(1.0 / (2 * math.pi * F * 4e-12 * 100.0), 1e-12)
        assert_that(on.real).is_close_to(1.5 + 1.0 / (2 * math.pi * F * 7e-12 * 100.0), 1e-12)

    def test_element_ron_overrides_loss_model(self) -> None:
        """Test that ron= on the element replaces the loss-model R_on."""
        # Arrange
        k = Element("K1", ElementKind.RELAY, (1, 0), bit=0, r_on=0.3)

        # Act
        z = element_impedance(k, F, ConfigurationWord(1), LossModel(r_on=1.5))

        # Assert
        assert_that(z).is_equal_to(complex(0.3, 0.0))

    def test_closed_lossless_relay_is_an_ideal_short(self) -> None:
        """Test that a closed lossless relay has zero impedance and infinite admittance."""
        # Arrange
        k = Element("K1", ElementKind.RELAY, (1, 0), bit=0)

        # Act
        z = element_impedance(k, F, ConfigurationWord(1), LOSSLESS)

        # Assert
        assert_that(z).is_equal_to(0j)
        assert_that(math.isinf(element_admittance(k, F, ConfigurationWord(1), LOSSLESS).real)).is_true()

    def test_open_lossless_relay_is_an_open_circuit(self) -> None:
        """Test that an open relay without coupling capacitance is open."""
        # Arrange
        k = Element("K1", ElementKind.RELAY, (1, 0), bit=0)

        # Act
        z = element_impedance(k, F, WORD0, LOSSLESS)

        # Assert
        assert_that(cmath.isinf(z)).is_true()
        assert_that(z).is_equal_to(OPEN_CIRCUIT)
        assert_that(element_admittance(k, F, WORD0, LOSSLESS)).is_equal_to(0j)

    def test_open_lossy_relay_couples_through_c_off(self) -> None:
        """Test the up-state coupling capacitance of an open relay."""
        # Arrange
        k = Element("K1", ElementKind.RELAY, (1, 0), bit=0)

        # Act
        z = element_impedance(k, F, WORD0, LossModel(c_off=50e-15))

        # Assert
        assert_that(z.imag).is_close_to(-1.0 / (2 * math.pi * F * 50e-15), 1e-6)

    def test_non_two_terminal_element_is_rejected(self) -> None:
        """Test that ports have no impedance."""
        # Arrange
        p = Element("P1", ElementKind.PORT, (1, 0), z0=50.0, port=1)

        # Act / Assert
        with pytest.raises(ValueError):
            element_impedance(p, F, WORD0, LOSSLESS)

    def test_non_positive_frequency_is_rejected(self) -> None:
        """Test that f = 0 raises ValueError."""
        # Arrange
        c = Element("C1", ElementKind.CAPACITOR, (1, 0), value=1e-12)

        # Act / Assert
        with pytest.raises(ValueError):
            element_impedance(c, 0.0, WORD0, LOSSLESS)


class TestIdealHybrid:
    """Unit tests for the ideal quadrature hybrid."""

    def test_symmetric_and_unitary(self) -> None:
        """Test reciprocity and losslessness of the hybrid matrix."""
        # Act
        h = ideal_hybrid_smatrix()

        # Assert
        assert_that(h.reciprocity_error()).is_less_than(1e-15)
        assert_that(h.unitarity_error()).is_less_than(1e-12)

    def test_equal_split_in_quadrature(self) -> None:
        """Test that port 1 splits equally to ports 3 and 4 with a 90 degree offset."""
        # Act
        h = ideal_hybrid_smatrix()

        # Assert
        assert_that(abs(h[3, 1]) ** 2).is_close_to(0.5, 1e-12)
        assert_that(abs(h[4, 1]) ** 2).is_close_to(0.5, 1e-12)
        assert_that(phase_deg(h[3, 1] / h[4, 1])).is_close_to(90.0, 1e-9)

    def test_input_and_output_are_isolated(self) -> None:
        """Test that ports 1 and 2 are matched and isolated."""
        # Act
        h = ideal_hybrid_smatrix()

        # Assert
        assert_that(h[1, 1]).is_equal_to(0j)
        assert_that(h[2, 1]).is_equal_to(0j)


class TestRtpsResponse:
    """Unit tests for the closed-form reflective phase shifter."""

    def test_full_reflection_gives_full_transmission(self) -> None:
        """Test that a reactive load gives |S21| = 1 and S11 = 0."""
        # Act
        r = rtps_response(cmath.exp(1j * 0.7))

        # Assert
        assert_that(abs(r.s21)).is_close_to(1.0, 1e-12)
        assert_that(abs(r.s11)).is_less_than(1e-15)

    def test_transmission_tracks_load_phase(self) -> None:
        """Test that S21 = j·Γ_load."""
        # Arrange
        gamma = cmath.exp(1j * math.radians(253.9))

        # Act
        r = rtps_response(gamma)

        # Assert
        assert_that(abs(r.s21 - 1j * gamma)).is_less_than(1e-12)

    def test_matched_loads_absorb(self) -> None:
        """Test that matched loads give zero transmission."""
        assert_that(abs(rtps_response(0j).s21)).is_equal_to(0.0)


class TestReflectiveLoad:
    """Unit tests for the reflective-load impedance."""

    def test_lowest_capacitance_state(self) -> None:
        """Test the load reactance with both varactors low (2.57 pF)."""
        # Act
        z = reflective_load_impedance(WORD0, F, ComponentTable(), LOSSLESS)

        # Assert
        expected = 62.329 - 1.0 / (2 * math.pi * F * 2.57e-12)
        assert_that(z.imag).is_close_to(expected, 0.01)
        assert_that(z.imag).is_close_to(-37.6, 0.1)

    def test_highest_capacitance_state(self) -> None:
        """Test the load reactance with both varactors high (10.28 pF)."""
        # Act
        z = reflective_load_impedance(ConfigurationWord.from_bits([8, 9]), F, ComponentTable(), LOSSLESS)

        # Assert
        assert_that(z.imag).is_close_to(37.36, 0.1)

    def test_load_reflection_phase(self) -> None:
        """Test that -j37.6 ohm reflects at about 253.9 degrees."""
        # Arrange
        z = reflective_load_impedance(WORD0, F, ComponentTable(), LOSSLESS)

        # Act
        gamma = (z - 50) / (z + 50)

        # Assert
        assert_that(abs(gamma)).is_close_to(1.0, 1e-12)
        assert_that(phase_deg(gamma)).is_close_to(253.9, 0.2)

    def test_admittance_parallel_sum(self) -> None:
        """Test that the two varactors add in parallel."""
        # Arrange
        table = ComponentTable()
        word = ConfigurationWord.from_bits([8])

        # Act
        z = reflective_load_impedance(word, F, table, LOSSLESS)

        # Assert
        c_total = table.c_phase1[1] + table.c_phase2[0]
        expected = 2 * math.pi * F * table.l_res - 1.0 / (2 * math.pi * F * c_total)
        assert_that(z.imag).is_close_to(expected, 1e-9)
        assert_that(float(np.real(z))).is_close_to(0.0, 1e-12)
