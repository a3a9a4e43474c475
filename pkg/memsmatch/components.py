"""Frequency-domain models of every element kind, plus the closed-form phase-shifter pieces."""

import cmath
import math

import numpy as np

from memsmatch.types.component_table import ComponentTable
from memsmatch.types.configuration_word import PHASE1_BIT, PHASE2_BIT, ConfigurationWord
from memsmatch.types.element import Element
from memsmatch.types.element_kind import ElementKind
from memsmatch.types.loss_model import LossModel
from memsmatch.types.sparameter_block import SParameterBlock

OPEN_CIRCUIT = complex(math.inf, 0.0)


def omega(f: float) -> float:
    """Angular frequency in rad/s."""
    return 2.0 * math.pi * f


def inductor_impedance(l: float, f: float, loss: LossModel, q: float | None = None) -> complex:
    """Series R_s + jωL with R_s = ω_ref·L/Q_L."""
    r_s = 0.0 if loss.lossless else omega(loss.f_ref) * l / (q or loss.q_l)
    return complex(r_s, omega(f) * l)


def capacitor_impedance(c: float, f: float, loss: LossModel, q: float | None = None) -> complex:
    """Series ESR + 1/(jωC) with ESR = 1/(ω_ref·C·Q_C)."""
    esr = 0.0 if loss.lossless else 1.0 / (omega(loss.f_ref) * c * (q or loss.q_c))
    return complex(esr, -1.0 / (omega(f) * c))


def element_impedance(e: Element, f: float, word: ConfigurationWord, loss: LossModel) -> complex:
    """
    Impedance of a two-terminal element in ohm.

    - resistor: R
    - inductor: R_s + jωL
    - capacitor: ESR + 1/(jωC)
    - switched capacitor: ESR + R_on·bit + 1/(jωC(bit)); the contact resistance is only in
      series when the device is actuated and the ohmic contact is closed
    - relay: R_on when actuated (0, an ideal short, when lossless), 1/(jω·C_off) when open,
      `OPEN_CIRCUIT` if C_off is 0

    Element-level `q`, `r_on` and `c_off` override the loss model; `lossless` zeroes every
    parasitic, including element-level ones.

    Args:
        e: A two-terminal element.
        f: Frequency in Hz, > 0.
        word: Configuration word selecting switched states.
        loss: Loss model.

    Raises:
        ValueError: For ports, hybrids, or a non-positive frequency.

    Examples:
        ```python
        L1 = Element("L1", ElementKind.INDUCTOR, (1, 0), value=16e-9)
        element_impedance(L1, 620e6, ConfigurationWord(0), LossModel.ideal())  # ≈ 62.33j
        ```
    """
    if f <= 0:
        raise ValueError(f"frequency must be positive, got {f}")
    match e.kind:
        case ElementKind.RESISTOR:
            return complex(_value(e), 0.0)
        case ElementKind.INDUCTOR:
            return inductor_impedance(_value(e), f, loss, e.q)
        case ElementKind.CAPACITOR:
            return capacitor_impedance(_value(e), f, loss, e.q)
        case ElementKind.SWITCHED_CAPACITOR:
            actuated = word.bit(_bit(e))
            c = e.value_high if actuated else e.value
            z = capacitor_impedance(float(c or 0.0), f, loss, e.q)
            if actuated and not loss.lossless:
                z += e.r_on if e.r_on is not None else loss.r_on
            return z
        case ElementKind.RELAY:
            if word.bit(_bit(e)):
                r_on = 0.0 if loss.lossless else (e.r_on if e.r_on is not None else loss.r_on)
                return complex(r_on, 0.0)
            c_off = 0.0 if loss.lossless else (e.c_off if e.c_off is not None else loss.c_off)
            return OPEN_CIRCUIT if c_off == 0.0 else complex(0.0, -1.0 / (omega(f) * c_off))
        case _:
            raise ValueError(f"{e.label}: {e.kind.name} is not a two-terminal element")


def element_admittance(e: Element, f: float, word: ConfigurationWord, loss: LossModel) -> complex:
    """Admittance in siemens; 0 for an open circuit, infinite for an ideal short."""
    z = element_impedance(e, f, word, loss)
    if z == 0:
        return complex(math.inf, 0.0)
    return 0j if cmath.isinf(z) else 1.0 / z


def _value(e: Element) -> float:
    if e.value is None:
        raise ValueError(f"{e.label}: missing value")
    return e.value


def _bit(e: Element) -> int:
    if e.bit is None:
        raise ValueError(f"{e.label}: missing control bit")
    return e.bit


def ideal_hybrid_smatrix(z0: float = 50.0) -> SParameterBlock:
    """
    S-matrix of the ideal 3-dB 90° hybrid.

    Port 1 is the input, port 2 the output (isolated from port 1), ports 3 and 4 carry the
    reflective loads. Through paths have -90° (S31, S42), coupled paths -180° (S41, S32).
    The matrix is symmetric and unitary and is frequency independent (f = 0 in the block).
    """
    if z0 <= 0:
        raise ValueError(f"z0 must be positive, got {z0}")
    t = -1j / math.sqrt(2.0)
    k = -1.0 / math.sqrt(2.0)
    s = np.array(
        [
            [0, 0, t, k],
            [0, 0, k, t],
            [t, k, 0, 0],
            [k, t, 0, 0],
        ],
        dtype=np.complex128,
    )
    return SParameterBlock(f=0.0, z0=z0, s=s)


def rtps_response(gamma_load: complex, z0: float = 50.0) -> SParameterBlock:
    """
    Two-port response of the ideal hybrid with identical reflective loads on ports 3 and 4.

    Waves leaving port 1 reach ports 3 and 4, reflect with `gamma_load`, and recombine at
    port 2 in phase and at port 1 in antiphase. With the `ideal_hybrid_smatrix` convention
    this gives S11 = S22 = 0 and S21 = S12 = +j·gamma_load.

    Examples:
        ```python
        rtps_response(1.0).s21  # 1j: full transmission
        rtps_response(0.0).s21  # 0j: matched loads absorb everything
        ```
    """
    h = ideal_hybrid_smatrix(z0)
    s21 = gamma_load * (h[2, 3] * h[3, 1] + h[2, 4] * h[4, 1])
    s11 = gamma_load * (h[1, 3] * h[3, 1] + h[1, 4] * h[4, 1])
    s = np.array([[s11, s21], [s21, s11]], dtype=np.complex128)
    return SParameterBlock(f=0.0, z0=z0, s=s)


def reflective_load_impedance(word: ConfigurationWord, f: float, table: ComponentTable, loss: LossModel) -> complex:
    """
    Impedance of one reflective load: series L_res, then C_phase1 and C_phase2 in parallel to ground.

    Bits 8 and 9 select the C_phase1 and C_phase2 values.

    Examples:
        ```python
        table = ComponentTable()
        reflective_load_impedance(ConfigurationWord(0), 620e6, table, LossModel.ideal())  # ≈ -37.6j
        ```
    """
    c1 = Element("CPH1", ElementKind.SWITCHED_CAPACITOR, (1, 0), value=table.c_phase1[0], value_high=table.c_phase1[1], bit=PHASE1_BIT)
    c2 = Element("CPH2", ElementKind.SWITCHED_CAPACITOR, (1, 0), value=table.c_phase2[0], value_high=table.c_phase2[1], bit=PHASE2_BIT)
    y_shunt = element_admittance(c1, f, word, loss) + element_admittance(c2, f, word, loss)
    return inductor_impedance(table.l_res, f, loss) + 1.0 / y_shunt
