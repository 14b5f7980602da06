r"""System-controlled measurement interactions.

An interaction has the form `U = \sum_i |i\rangle\langle i| \otimes V_i`: when the
system is in `|i\rangle` the block `V_i` acts on the apparatus, taking each
apparatus eigenvector `|r_k\rangle` to `|r_k^i\rangle = V_i |r_k\rangle`.

The interaction is a *Von Neumann interaction* if pointer states belonging to
different system levels are orthogonal:

.. math::

    \forall i \neq j, k: \quad \langle r_k^i | r_k^j \rangle = 0

>>> from holevo_measurement.interactions import shift_gate
>>> shift_gate(2).matrix().real.astype(int)
array([[1, 0, 0, 0],
       [0, 1, 0, 0],
       [0, 0, 0, 1],
       [0, 0, 1, 0]])
"""

import itertools
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg

from .linalg import (
    ComplexMatrix,
    as_matrix,
    cyclic_shift,
    dagger,
    max_norm,
    unitarity_defect,
)
from .states import DensityMatrix
from .util import UNITARY_TOL, InvalidInputError, debug
from . import util


class InteractionUnitary:
    """A block-controlled unitary on system (x) apparatus.

    The constructor checks shapes only; block unitarity is reported by
    :py:func:`check_conditions` and enforced by
    :py:func:`holevo_measurement.evolution.evolve`.
    """

    __slots__ = ("blocks", "pointer_basis")

    def __init__(
        self,
        blocks: Sequence[npt.ArrayLike],
        pointer_basis: Optional[npt.ArrayLike] = None,
    ):
        bs = [as_matrix(b) for b in blocks]
        if not bs:
            raise InvalidInputError("interaction has no blocks")
        shapes = {b.shape for b in bs}
        if len(shapes) != 1:
            raise InvalidInputError(f"interaction blocks differ in shape: {shapes}")
        rows, cols = bs[0].shape
        if rows != cols:
            raise InvalidInputError("interaction blocks must be square")
        for b in bs:
            b.setflags(write=False)
        self.blocks: Tuple[ComplexMatrix, ...] = tuple(bs)

        self.pointer_basis: Optional[ComplexMatrix] = None
        """The apparatus basis the family was constructed against, if known."""
        if pointer_basis is not None:
            pb = as_matrix(pointer_basis)
            if pb.shape != (rows, rows):
                raise InvalidInputError("pointer basis does not match the blocks")
            pb.setflags(write=False)
            self.pointer_basis = pb

    @classmethod
    def from_matrix(
        cls, full: npt.ArrayLike, d_sys: int, d_app: int, tol: float = UNITARY_TOL
    ) -> "InteractionUnitary":
        """Extract the blocks of a full joint unitary.

        :raises InvalidInputError: if the matrix is not system-controlled
        """
        m = as_matrix(full)
        if m.shape != (d_sys * d_app, d_sys * d_app):
            raise InvalidInputError(
                f"bad joint dimension: shape {m.shape} for d_sys={d_sys}, d_app={d_app}"
            )
        if not controlled_form(m, d_sys, d_app, tol):
            raise InvalidInputError("interaction is not system-controlled")
        return cls(
            [
                m[i * d_app : (i + 1) * d_app, i * d_app : (i + 1) * d_app]
                for i in range(d_sys)
            ]
        )

    @property
    def d_sys(self) -> int:
        """The system dimension (number of blocks)."""
        return len(self.blocks)

    @property
    def d_app(self) -> int:
        """The apparatus dimension (block size)."""
        return self.blocks[0].shape[0]

    def matrix(self) -> ComplexMatrix:
        """Return the full block-diagonal matrix `diag(V_0, ..., V_{d-1})`."""
        return np.asarray(scipy.linalg.block_diag(*self.blocks), dtype=np.complex128)

    def __repr__(self) -> str:
        return f"InteractionUnitary(d_sys={self.d_sys}, d_app={self.d_app})"


class ConditionReport(NamedTuple):
    """How far an interaction is from the unitarity and Von Neumann conditions."""

    unitarity_defect: float
    """The largest `max|V_i^\\dagger V_i - I|` over all blocks."""
    von_neumann_defect: float
    r"""The largest `|\langle r_k^i | r_k^j \rangle|` over `i \neq j` and `k`."""
    controlled_form: bool
    """True if the joint matrix has zero off-diagonal system blocks."""


def controlled_form(
    full: npt.ArrayLike, d_sys: int, d_app: int, tol: float = UNITARY_TOL
) -> bool:
    """Return True if all off-diagonal system blocks of `full` vanish within `tol`."""
    m = as_matrix(full).reshape(d_sys, d_app, d_sys, d_app)
    off = m.copy()
    for i in range(d_sys):
        off[i, :, i, :] = 0
    return max_norm(off) <= tol


def _check_basis(d: int, basis: Optional[npt.ArrayLike], tol: float) -> ComplexMatrix:
    if d < 2:
        raise InvalidInputError(f"d must be at least 2, got {d}")
    if basis is None:
        return np.eye(d, dtype=np.complex128)
    b = as_matrix(basis)
    if b.shape != (d, d):
        raise InvalidInputError(f"apparatus basis must be {d}x{d}, got {b.shape}")
    if unitarity_defect(b) > tol:
        raise InvalidInputError("basis not unitary")
    return b


def shift_gate(
    d: int, apparatus_basis: Optional[npt.ArrayLike] = None, tol: float = UNITARY_TOL
) -> InteractionUnitary:
    r"""Build the qudit shift gate.

    `U|i\rangle|r_k\rangle = |i\rangle|r_{k \oplus i}\rangle`.

    Block `V_i = B S^i B^\dagger` where `B` holds the apparatus eigenvectors as
    columns and `S` is the cyclic shift.  In the apparatus eigenbasis the blocks
    are the permutation matrices `D^i_{jk} = \delta_{j,(k+i) \bmod d}`.  For `d = 2`
    and the computational basis this is the CNOT gate.

    :param d: the dimension of system and apparatus, at least 2
    :param apparatus_basis: a unitary whose columns are the `|r_k\rangle`
        (default: the computational basis)
    """
    b = _check_basis(d, apparatus_basis, tol)
    return InteractionUnitary(
        [b @ cyclic_shift(d, i) @ dagger(b) for i in range(d)], pointer_basis=b
    )


def phase_shift_family(
    d: int,
    phases: npt.ArrayLike,
    apparatus_basis: Optional[npt.ArrayLike] = None,
    tol: float = UNITARY_TOL,
) -> InteractionUnitary:
    r"""Build the Von Neumann family `V_i = B \Phi_i S^i B^\dagger`.

    `\Phi_i = diag(e^{i\varphi_{i,0}}, \dots, e^{i\varphi_{i,d-1}})`.  Since
    `S^{j-i}` has an empty diagonal for `i \neq j` the family always satisfies
    the Von Neumann condition.

    :param phases: a `d \times d` array of phases in radians, row `i` for block `i`
    """
    b = _check_basis(d, apparatus_basis, tol)
    phi = np.asarray(phases, dtype=np.float64)
    if phi.shape != (d, d):
        raise InvalidInputError(f"phases must be {d}x{d}, got {phi.shape}")
    return InteractionUnitary(
        [
            b @ np.diag(np.exp(1j * phi[i])) @ cyclic_shift(d, i) @ dagger(b)
            for i in range(d)
        ],
        pointer_basis=b,
    )


def pointer_overlaps(
    blocks: Sequence[ComplexMatrix], basis: ComplexMatrix
) -> npt.NDArray[np.float64]:
    r"""Return `|\langle r_k^i | r_k^j \rangle|` as an array indexed `[i, j, k]`."""
    pointers = np.stack([v @ basis for v in blocks])  # [i, a, k]
    return np.abs(np.einsum("iak,jak->ijk", pointers.conj(), pointers))


def von_neumann_defect(
    blocks: Sequence[ComplexMatrix], basis: ComplexMatrix
) -> float:
    r"""Return `\max_{i \neq j, k} |\langle r_k^i | r_k^j \rangle|`."""
    n = len(blocks)
    if n < 2:
        return 0.0
    overlaps = pointer_overlaps(blocks, basis)
    return max(
        float(np.max(overlaps[i, j])) for i, j in itertools.combinations(range(n), 2)
    )


def check_conditions(
    u: InteractionUnitary,
    rho_apparatus: DensityMatrix,
    basis: Optional[ComplexMatrix] = None,
) -> ConditionReport:
    r"""Evaluate the unitarity and Von Neumann conditions of an interaction.

    The pointer states `|r_k^i\rangle = V_i|r_k\rangle` are computed from the
    eigenbasis of `rho_apparatus`.  Within a degenerate eigenspace the choice
    of eigenvectors is arbitrary; pass `basis` to fix it.
    """
    if rho_apparatus.dim != u.d_app:
        raise InvalidInputError(
            f"dimension mismatch: apparatus {rho_apparatus.dim}, blocks {u.d_app}"
        )
    if basis is None:
        basis = rho_apparatus.eigensystem().eigenvectors
    report = ConditionReport(
        unitarity_defect=max(unitarity_defect(v) for v in u.blocks),
        von_neumann_defect=von_neumann_defect(u.blocks, basis),
        controlled_form=controlled_form(u.matrix(), u.d_sys, u.d_app),
    )
    if __debug__ and util.DEBUG:
        debug("%s: %s", u, report)
    return report
