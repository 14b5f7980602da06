r"""Quantum states, ensembles and POVMs.

All classes are immutable value types: their arrays are flagged read-only.

>>> from holevo_measurement.states import pure_state_from_probabilities
>>> psi = pure_state_from_probabilities([0.5, 0.5], [0.0, np.pi])
>>> psi.amplitudes.round(6)
array([ 0.707107+0.j, -0.707107+0.j])
"""

from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from .linalg import (
    ComplexMatrix,
    EigenDecomposition,
    RealArray,
    as_matrix,
    dagger,
    hermitian_eigendecomposition,
    hermiticity_defect,
    max_norm,
    random_probabilities,
    random_unitary,
    unitarity_defect,
)
from .util import (
    CLAMP_TOL,
    EIGENVALUE_CLAMP_TOL,
    HERMITIAN_TOL,
    PROBABILITY_TOL,
    UNITARY_TOL,
    InvalidInputError,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def check_probabilities(
    probs: npt.ArrayLike, tol: float = PROBABILITY_TOL, name: str = "probabilities"
) -> RealArray:
    """Validate a probability vector and return it as a float array.

    :raises InvalidInputError: on negative entries or a sum different from 1
    """
    p = np.asarray(probs, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise InvalidInputError(f"{name} must be a non-empty vector")
    if not np.all(np.isfinite(p)):
        raise InvalidInputError(f"{name} must be finite")
    if np.any(p < 0):
        raise InvalidInputError(f"negative probability in {name}: {p.min():.3g}")
    if abs(p.sum() - 1.0) > tol:
        raise InvalidInputError(f"{name} sum to {p.sum():.12g}, not 1")
    return p


class PureState:
    r"""The system state `\psi = \sum_i c_i |\psi_i\rangle`."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes: npt.ArrayLike, tol: float = PROBABILITY_TOL):
        c = np.array(amplitudes, dtype=np.complex128)
        if c.ndim != 1 or c.size == 0:
            raise InvalidInputError("amplitudes must be a non-empty vector")
        if not np.all(np.isfinite(c)):
            raise InvalidInputError("amplitudes must be finite")
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1.0) > tol:
            raise InvalidInputError(f"state is not normalized: norm^2 = {norm:.12g}")
        self.amplitudes: npt.NDArray[np.complex128] = _frozen(c)

    @property
    def dim(self) -> int:
        """The Hilbert space dimension."""
        return self.amplitudes.size

    @property
    def probabilities(self) -> RealArray:
        r"""The outcome probabilities `|c_i|^2`."""
        return np.abs(self.amplitudes) ** 2

    def projector(self) -> ComplexMatrix:
        r"""Return `|\psi\rangle\langle\psi|`."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def __repr__(self) -> str:
        return f"PureState({self.amplitudes!r})"


class DensityMatrix:
    """A Hermitian, positive semidefinite matrix of unit trace."""

    __slots__ = ("matrix", "_eigen")

    def __init__(self, matrix: npt.ArrayLike, tol: float = HERMITIAN_TOL):
        m = as_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise InvalidInputError(f"density matrix must be square, got {m.shape}")
        eigen = hermitian_eigendecomposition(m, tol)
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > tol:
            raise InvalidInputError(f"density matrix has trace {trace:.12g}, not 1")
        smallest = eigen.eigenvalues[-1]
        if smallest < -EIGENVALUE_CLAMP_TOL:
            raise InvalidInputError(
                f"density matrix is not positive: eigenvalue {smallest:.3g}"
            )
        self.matrix: ComplexMatrix = _frozen(m)
        self._eigen = EigenDecomposition(
            _frozen(eigen.eigenvalues), _frozen(eigen.eigenvectors)
        )

    @classmethod
    def from_pure(cls, state: "PureState") -> "DensityMatrix":
        """Return the projector onto a pure state."""
        return cls(state.projector())

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        """Return `I/d`."""
        return cls(np.eye(dim) / dim)

    @classmethod
    def basis_state(cls, dim: int, k: int) -> "DensityMatrix":
        r"""Return `|k\rangle\langle k|` in the computational basis."""
        m = np.zeros((dim, dim), dtype=np.complex128)
        m[k, k] = 1.0
        return cls(m)

    @property
    def dim(self) -> int:
        """The Hilbert space dimension."""
        return self.matrix.shape[0]

    def eigensystem(self) -> EigenDecomposition:
        """Return the (cached) eigendecomposition, eigenvalues descending."""
        return self._eigen

    def __repr__(self) -> str:
        return f"DensityMatrix({self.matrix!r})"


def pure_state_from_probabilities(
    probs: npt.ArrayLike, phases: npt.ArrayLike, tol: float = PROBABILITY_TOL
) -> PureState:
    r"""Build `c_i = \sqrt{p_i} e^{i \varphi_i}`.

    :raises InvalidInputError: on negative probabilities, mismatched lengths or a
        sum different from 1
    """
    p = check_probabilities(probs, tol)
    phi = np.asarray(phases, dtype=np.float64)
    if phi.shape != p.shape:
        raise InvalidInputError(
            f"length mismatch: {p.size} probabilities, {phi.size} phases"
        )
    return PureState(np.sqrt(p) * np.exp(1j * phi), tol)


def density_from_eigensystem(
    eigenvalues: npt.ArrayLike,
    basis: npt.ArrayLike,
    tol: float = UNITARY_TOL,
) -> DensityMatrix:
    r"""Build `\rho = \sum_k r_k |r_k\rangle\langle r_k|`.

    :param eigenvalues: the spectrum `r_k`, nonnegative and summing to 1
    :param basis: a unitary matrix whose columns are the `|r_k\rangle`
    """
    r = check_probabilities(eigenvalues, PROBABILITY_TOL, "eigenvalues")
    b = as_matrix(basis)
    if b.shape != (r.size, r.size):
        raise InvalidInputError(
            f"basis shape {b.shape} does not match {r.size} eigenvalues"
        )
    if unitarity_defect(b) > tol:
        raise InvalidInputError("basis not unitary")
    return DensityMatrix((b * r) @ dagger(b))


def random_density_matrix(
    dim: int, rng: np.random.Generator, rank: Optional[int] = None
) -> DensityMatrix:
    """Draw a random density matrix with a random eigenbasis."""
    return density_from_eigensystem(
        random_probabilities(dim, rng, rank), random_unitary(dim, rng)
    )


class Ensemble:
    r"""Weighted states `\{p_x, \rho_x\}`.

    Weights below ``CLAMP_TOL`` are set to 0 but their entries are kept so that
    index `x` stays aligned with the label it was created for.
    """

    __slots__ = ("probabilities", "states")

    def __init__(
        self,
        entries: Iterable[Tuple[float, DensityMatrix]],
        tol: float = PROBABILITY_TOL,
    ):
        pairs = list(entries)
        if not pairs:
            raise InvalidInputError("ensemble is empty")
        p = np.array([float(w) for w, _ in pairs])
        if np.any(p < -CLAMP_TOL):
            raise InvalidInputError(f"negative probability in ensemble: {p.min():.3g}")
        p[p < CLAMP_TOL] = 0.0
        check_probabilities(p, tol, "ensemble probabilities")
        states = tuple(s for _, s in pairs)
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise InvalidInputError(f"ensemble states differ in dimension: {dims}")
        self.probabilities: RealArray = _frozen(p)
        self.states: Tuple[DensityMatrix, ...] = states

    @classmethod
    def from_arrays(
        cls, probabilities: npt.ArrayLike, states: Sequence[npt.ArrayLike]
    ) -> "Ensemble":
        """Build an ensemble from weights and raw matrices."""
        p = np.asarray(probabilities, dtype=np.float64)
        if p.size != len(states):
            raise InvalidInputError(
                f"length mismatch: {p.size} probabilities, {len(states)} states"
            )
        return cls(
            (w, s if isinstance(s, DensityMatrix) else DensityMatrix(s))
            for w, s in zip(p, states)
        )

    @property
    def dim(self) -> int:
        """The dimension of the states."""
        return self.states[0].dim

    def average(self) -> ComplexMatrix:
        r"""Return `\sum_x p_x \rho_x`."""
        return np.einsum("x,xab->ab", self.probabilities, self.stacked())

    def stacked(self) -> npt.NDArray[np.complex128]:
        """Return the state matrices as one array of shape (n, d, d)."""
        return np.stack([s.matrix for s in self.states])

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[Tuple[float, DensityMatrix]]:
        return iter(zip(self.probabilities.tolist(), self.states))

    def __repr__(self) -> str:
        return f"Ensemble({len(self)} states, dim={self.dim})"


class POVMReport(NamedTuple):
    """Validation report for a POVM."""

    hermiticity_defects: Tuple[float, ...]
    positivity_defects: Tuple[float, ...]
    """Per element: the magnitude of the most negative eigenvalue, or 0."""
    completeness_defect: float
    """The max-norm of the sum of elements minus the identity."""

    def is_valid(self, tol: float = PROBABILITY_TOL) -> bool:
        """Return True if all defects are within `tol`."""
        return (
            max(self.hermiticity_defects) <= tol
            and max(self.positivity_defects) <= tol
            and self.completeness_defect <= tol
        )


class POVM:
    """A list of operators that are meant to be positive and sum to the identity.

    The constructor checks shapes only; use :py:func:`validate_povm` for the
    positivity and completeness defects.
    """

    __slots__ = ("elements",)

    def __init__(self, elements: Iterable[npt.ArrayLike]):
        elems = [as_matrix(e) for e in elements]
        if not elems:
            raise InvalidInputError("POVM has no elements")
        shapes = {e.shape for e in elems}
        if len(shapes) != 1:
            raise InvalidInputError(f"POVM elements differ in shape: {shapes}")
        rows, cols = elems[0].shape
        if rows != cols:
            raise InvalidInputError("POVM elements must be square")
        self.elements: Tuple[ComplexMatrix, ...] = tuple(_frozen(e) for e in elems)

    @classmethod
    def projective(cls, basis: npt.ArrayLike) -> "POVM":
        """Return the rank-1 projectors onto the columns of a unitary."""
        b = as_matrix(basis)
        return cls(np.outer(b[:, k], b[:, k].conj()) for k in range(b.shape[1]))

    @classmethod
    def computational(cls, dim: int) -> "POVM":
        """Return the computational-basis projectors."""
        return cls.projective(np.eye(dim))

    @classmethod
    def trivial(cls, dim: int) -> "POVM":
        """Return the one-outcome POVM `{I}`."""
        return cls([np.eye(dim)])

    @property
    def dim(self) -> int:
        """The dimension the elements act on."""
        return self.elements[0].shape[0]

    def stacked(self) -> npt.NDArray[np.complex128]:
        """Return the elements as one array of shape (n, d, d)."""
        return np.stack(self.elements)

    def coarse_grain(self, a: int, b: int) -> "POVM":
        """Merge outcomes `a` and `b` into one outcome."""
        if a == b:
            raise InvalidInputError("cannot merge an outcome with itself")
        merged = self.elements[a] + self.elements[b]
        rest: List[ComplexMatrix] = [
            e for i, e in enumerate(self.elements) if i not in (a, b)
        ]
        return POVM([merged] + rest)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[ComplexMatrix]:
        return iter(self.elements)

    def __getitem__(self, i: int) -> ComplexMatrix:
        return self.elements[i]

    def __repr__(self) -> str:
        return f"POVM({len(self)} outcomes, dim={self.dim})"


def validate_povm(p: POVM) -> POVMReport:
    """Report the Hermiticity, positivity and completeness defects of a POVM.

    >>> validate_povm(POVM([np.eye(2) / 2, np.eye(2) / 2])).is_valid()
    True
    """
    herm: List[float] = []
    pos: List[float] = []
    for e in p:
        herm.append(hermiticity_defect(e))
        smallest = float(np.linalg.eigvalsh((e + dagger(e)) / 2)[0])
        pos.append(max(0.0, -smallest))
    completeness = max_norm(sum(p.elements) - np.eye(p.dim))
    return POVMReport(tuple(herm), tuple(pos), completeness)


def random_povm(
    dim: int, outcomes: int, rng: np.random.Generator, rank: Optional[int] = None
) -> POVM:
    r"""Draw a random POVM with `outcomes` elements.

    Random positive operators `G_y` are normalized as
    `E_y = S^{-1/2} G_y S^{-1/2}` with `S = \sum_y G_y`.
    """
    r = dim if rank is None else rank
    gs = []
    for _ in range(outcomes):
        a = rng.normal(size=(dim, r)) + 1j * rng.normal(size=(dim, r))
        gs.append(a @ dagger(a))
    values, vectors = hermitian_eigendecomposition(sum(gs))
    inv_sqrt = (vectors / np.sqrt(values)) @ dagger(vectors)
    elems = []
    for g in gs:
        e = inv_sqrt @ g @ inv_sqrt
        elems.append((e + dagger(e)) / 2)
    return POVM(elems)
