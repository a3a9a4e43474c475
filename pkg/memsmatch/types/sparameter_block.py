from dataclasses import dataclass

import numpy as np

from memsmatch.numeric import ComplexMatrix


@dataclass(frozen=True, eq=False)
class SParameterBlock:
    """
    An n-port scattering matrix at one frequency.

    Attributes:
        f: Frequency in Hz; 0 for frequency-independent blocks such as the ideal hybrid.
        z0: Real reference impedance in ohm shared by all ports.
        s: n x n complex scattering matrix, ports in ascending order.
    """

    f: float
    z0: float
    s: ComplexMatrix

    @property
    def n_ports(self) -> int:
        return int(self.s.shape[0])

    def __getitem__(self, ij: tuple[int, int]) -> complex:
        """1-based entry access: `block[2, 1]` is S21."""
        i, j = ij
        return complex(self.s[i - 1, j - 1])

    @property
    def s11(self) -> complex:
        return self[1, 1]

    @property
    def s12(self) -> complex:
        return self[1, 2]

    @property
    def s21(self) -> complex:
        return self[2, 1]

    @property
    def s22(self) -> complex:
        return self[2, 2]

    def max_singular_value(self) -> float:
        return float(np.linalg.svd(self.s, compute_uv=False).max())

    def reciprocity_error(self) -> float:
        """Largest entry magnitude of S - S^T."""
        return float(np.max(np.abs(self.s - self.s.T)))

    def unitarity_error(self) -> float:
        """Largest entry magnitude of S^H S - I."""
        return float(np.max(np.abs(self.s.conj().T @ self.s - np.eye(self.n_ports))))
