r"""Dense complex linear algebra.

Matrices are :py:class:`numpy.ndarray` objects of dtype ``complex128``.  Joint
states of system and apparatus use the system factor first: the row index
`i \cdot d_{app} + k` corresponds to `|i\rangle_{sys}|k\rangle_{app}`.
"""

from typing import NamedTuple, Optional

import numpy as np
import numpy.typing as npt
import scipy.linalg
from scipy.stats import unitary_group

from .util import HERMITIAN_TOL, UNITARY_TOL, InvalidInputError, NotHermitianError

ComplexMatrix = npt.NDArray[np.complex128]
RealArray = npt.NDArray[np.float64]


class EigenDecomposition(NamedTuple):
    """Spectral data of a Hermitian matrix."""

    eigenvalues: RealArray
    """The real eigenvalues in descending order."""
    eigenvectors: ComplexMatrix
    """A unitary matrix whose columns are the matching unit eigenvectors."""


def as_matrix(m: npt.ArrayLike) -> ComplexMatrix:
    """Convert to a finite complex 2-D array."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise InvalidInputError(f"expected a non-empty matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix has non-finite entries")
    return a


def _check_square(m: ComplexMatrix) -> int:
    rows, cols = m.shape
    if rows != cols:
        raise InvalidInputError(f"expected a square matrix, got shape {m.shape}")
    return rows


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    """Return the conjugate transpose."""
    return m.conj().T


def max_norm(m: npt.ArrayLike) -> float:
    """Return the largest absolute entry.

    >>> max_norm([[1, -3], [2j, 0]])
    3.0
    """
    a = np.asarray(m)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def tensor_product(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """Return the Kronecker product with `a` as the system factor.

    >>> tensor_product(np.diag([1, 2]), np.diag([3, 4])).diagonal().real
    array([3., 4., 6., 8.])
    """
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace_system(
    joint: npt.ArrayLike, d_sys: int, d_app: int
) -> ComplexMatrix:
    r"""Trace out the system factor of a joint operator.

    Returns the `d_{app} \times d_{app}` matrix
    `\rho'_{kl} = \sum_i joint_{(i,k),(i,l)}`.
    """
    m = as_matrix(joint)
    if d_sys < 1 or d_app < 1 or m.shape != (d_sys * d_app, d_sys * d_app):
        raise InvalidInputError(
            f"bad joint dimension: shape {m.shape} for d_sys={d_sys}, d_app={d_app}"
        )
    return np.trace(m.reshape(d_sys, d_app, d_sys, d_app), axis1=0, axis2=2)


def hermiticity_defect(m: npt.ArrayLike) -> float:
    """Return the max-norm of `M - M^\\dagger`."""
    a = as_matrix(m)
    _check_square(a)
    return max_norm(a - dagger(a))


def hermitian_eigendecomposition(
    m: npt.ArrayLike, tol: float = HERMITIAN_TOL
) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix.

    :param m: a Hermitian matrix (within `tol` in max-norm)
    :param tol: the Hermiticity tolerance
    :return: eigenvalues sorted descending with their eigenvectors as columns
    :raises NotHermitianError: if `m` is not Hermitian within `tol`

    >>> ed = hermitian_eigendecomposition([[0, 1], [1, 0]])
    >>> ed.eigenvalues.round(12)
    array([ 1., -1.])
    """
    a = as_matrix(m)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitianError(defect)
    # eigh reads one triangle only; symmetrize so both triangles count
    values, vectors = scipy.linalg.eigh((a + dagger(a)) / 2)
    return EigenDecomposition(values[::-1].copy(), vectors[:, ::-1].copy())


def commutator(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """Return `AB - BA`."""
    x = as_matrix(a)
    y = as_matrix(b)
    if x.shape != y.shape:
        raise InvalidInputError(f"dimension mismatch: {x.shape} vs {y.shape}")
    _check_square(x)
    return x @ y - y @ x


def commutator_norm(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """Return the max-norm of the commutator `AB - BA`.

    >>> commutator_norm([[0, 1], [1, 0]], [[1, 0], [0, -1]])
    2.0
    """
    return max_norm(commutator(a, b))


def unitarity_defect(m: npt.ArrayLike) -> float:
    """Return the max-norm of `M^\\dagger M - I`."""
    a = as_matrix(m)
    n = _check_square(a)
    return max_norm(dagger(a) @ a - np.eye(n))


def is_unitary(m: npt.ArrayLike, tol: float = UNITARY_TOL) -> bool:
    """Return True if `m` is unitary within `tol`.

    >>> is_unitary(np.eye(3))
    True
    >>> is_unitary(np.diag([1, 2]))
    False
    """
    return unitarity_defect(m) <= tol


def cyclic_shift(d: int, power: int = 1) -> ComplexMatrix:
    r"""Return `S^{power}` where `S|k\rangle = |k \oplus 1\rangle` (mod `d`).

    Entry `(i, j)` of `S^k` is `\delta_{i,(j+k) \bmod d}`.

    >>> cyclic_shift(3).real.astype(int)
    array([[0, 0, 1],
           [1, 0, 0],
           [0, 1, 0]])
    """
    return np.roll(np.eye(d, dtype=np.complex128), power % d, axis=0)


def random_unitary(d: int, rng: np.random.Generator) -> ComplexMatrix:
    """Draw a Haar-random `d \\times d` unitary."""
    if d == 1:
        return np.array([[np.exp(2j * np.pi * rng.random())]])
    return np.asarray(unitary_group.rvs(d, random_state=rng), dtype=np.complex128)


def random_probabilities(
    d: int, rng: np.random.Generator, support: Optional[int] = None
) -> RealArray:
    """Draw a random probability vector of length `d`.

    If `support` is given only that many (randomly chosen) entries are nonzero.
    """
    p = np.zeros(d)
    k = d if support is None else max(1, min(d, support))
    idx = rng.choice(d, size=k, replace=False)
    p[idx] = rng.dirichlet(np.ones(k))
    return p
