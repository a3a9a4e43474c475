"""Dense complex LU factorization with a relative pivot threshold."""

import warnings
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve as _scipy_lu_solve

from memsmatch.errors import SingularMatrix, SolverError

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]

PIVOT_THRESHOLD = 1e-13


@dataclass(frozen=True, eq=False)
class LuFactorization:
    """
    A partially pivoted LU factorization that passed the pivot check.

    Attributes:
        lu: Combined L and U factors as returned by `scipy.linalg.lu_factor`.
        piv: Pivot indices.
    """

    lu: ComplexMatrix
    piv: npt.NDArray[np.int32]

    @property
    def n(self) -> int:
        return int(self.lu.shape[0])

    def solve(self, b: npt.ArrayLike) -> ComplexVector:
        """
        Solve A x = b for one right-hand side vector or for the columns of a matrix.

        Raises:
            ValueError: If the leading dimension of `b` does not match A.
            SolverError: If the solution is not finite.
        """
        rhs = np.asarray(b, dtype=np.complex128)
        if rhs.shape[0] != self.n:
            raise ValueError(f"right-hand side has {rhs.shape[0]} rows, matrix has {self.n}")
        x = _scipy_lu_solve((self.lu, self.piv), rhs, check_finite=False)
        if not np.all(np.isfinite(x)):
            raise SolverError("solution contains non-finite values")
        return np.asarray(x, dtype=np.complex128)


def factor(a: npt.ArrayLike) -> LuFactorization:
    """
    Factor a square complex matrix with partial pivoting.

    A pivot is rejected when its magnitude is below `PIVOT_THRESHOLD` times the largest
    entry magnitude of `a`; this separates floating subcircuits from roundoff.

    Raises:
        ValueError: If `a` is not square or is empty.
        SolverError: If `a` contains non-finite entries.
        SingularMatrix: If a pivot falls below the threshold.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise SolverError("matrix contains non-finite entries")

    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        raise SingularMatrix("matrix is identically zero")

    with warnings.catch_warnings():
        # exact-zero pivots are reported below with a proper exception
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(m, check_finite=False)

    pivots = np.abs(np.diag(lu))
    weak = np.flatnonzero(pivots < PIVOT_THRESHOLD * scale)
    if weak.size:
        i = int(weak[0])
        raise SingularMatrix(f"pivot {i} has magnitude {pivots[i]:.3e}, below {PIVOT_THRESHOLD:g} x {scale:.3e}")
    return LuFactorization(lu=np.asarray(lu, dtype=np.complex128), piv=np.asarray(piv, dtype=np.int32))


def lu_solve(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexVector:
    """
    Solve A x = b.

    Examples:
        ```python
        lu_solve([[2, 0], [0, 1j]], [2, 1])  # array([1.+0.j, 0.-1.j])
        ```

    Raises:
        SingularMatrix: If A is singular by the pivot threshold.
    """
    return factor(a).solve(b)


def invert(a: npt.ArrayLike) -> ComplexMatrix:
    """
    Inverse of a square complex matrix.

    Raises:
        SingularMatrix: If A is singular by the pivot threshold.
    """
    fac = factor(a)
    return fac.solve(np.eye(fac.n, dtype=np.complex128))
