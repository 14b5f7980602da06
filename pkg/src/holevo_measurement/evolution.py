r"""The system-apparatus measurement pipeline.

The apparatus state `\rho` and the system state `|\psi\rangle` evolve jointly,

.. math::

    |\psi\rangle\langle\psi| \otimes \rho \to
    U \big(|\psi\rangle\langle\psi| \otimes \rho\big) U^\dagger,

and tracing out the system leaves the apparatus in

.. math::

    \rho' = \sum_i |c_i|^2 \rho_i, \qquad \rho_i = V_i \rho V_i^\dagger.

>>> from holevo_measurement.states import DensityMatrix, pure_state_from_probabilities
>>> from holevo_measurement.interactions import shift_gate
>>> psi = pure_state_from_probabilities([0.3, 0.7], [0.0, 0.0])
>>> model = evolve(psi, DensityMatrix.basis_state(2, 0), shift_gate(2))
>>> model.post_state.matrix.real.round(12)
array([[0.3, 0. ],
       [0. , 0.7]])
"""

from typing import Tuple

import numpy as np

from .interactions import InteractionUnitary
from .linalg import ComplexMatrix, RealArray, dagger, max_norm, partial_trace_system
from .linalg import tensor_product, unitarity_defect
from .states import DensityMatrix, Ensemble, PureState
from .util import (
    EVOLVE_UNITARY_TOL,
    HERMITIAN_TOL,
    PROBABILITY_TOL,
    InvalidInputError,
    NumericalError,
    debug,
)
from . import util


class MeasurementOutcomeModel:
    r"""The apparatus after the interaction.

    ``prior`` holds the `|c_i|^2`, ``conditional_states`` the `\rho_i` and
    ``post_state`` the reduced apparatus state `\rho'`.
    """

    __slots__ = ("prior", "conditional_states", "post_state", "joint")

    def __init__(
        self,
        prior: RealArray,
        conditional_states: Tuple[DensityMatrix, ...],
        post_state: DensityMatrix,
        joint: ComplexMatrix,
    ):
        self.prior = prior
        self.conditional_states = conditional_states
        self.post_state = post_state
        self.joint = joint
        """The joint system-apparatus state after the interaction."""

    def mixture(self) -> ComplexMatrix:
        r"""Return `\sum_i |c_i|^2 \rho_i`."""
        return sum(
            (p * s.matrix for p, s in zip(self.prior, self.conditional_states)),
            np.zeros_like(self.post_state.matrix),
        )

    def ensemble(self) -> Ensemble:
        r"""Return the ensemble `\{|c_i|^2, \rho_i\}` the observer discriminates."""
        return Ensemble(zip(self.prior.tolist(), self.conditional_states))

    def __repr__(self) -> str:
        return (
            f"MeasurementOutcomeModel(d_sys={len(self.prior)}, "
            f"d_app={self.post_state.dim})"
        )


def evolve(
    system: PureState,
    apparatus: DensityMatrix,
    u: InteractionUnitary,
    tol: float = EVOLVE_UNITARY_TOL,
) -> MeasurementOutcomeModel:
    """Let system and apparatus interact and trace out the system.

    :param system: the system state
    :param apparatus: the initial apparatus state
    :param u: the interaction; its blocks must be unitary within `tol`
    :raises InvalidInputError: on dimension mismatch
    :raises NumericalError: on non-unitary blocks or if the reduced state does not
        match the mixture of conditional states
    """
    if system.dim != u.d_sys or apparatus.dim != u.d_app:
        raise InvalidInputError(
            f"dimension mismatch: system {system.dim}, apparatus {apparatus.dim}, "
            f"interaction {u.d_sys}x{u.d_app}"
        )
    defect = max(unitarity_defect(v) for v in u.blocks)
    if defect > tol:
        raise NumericalError(f"non-unitary interaction blocks (defect {defect:.3g})")

    full = u.matrix()
    joint = full @ tensor_product(system.projector(), apparatus.matrix) @ dagger(full)
    reduced = partial_trace_system(joint, u.d_sys, u.d_app)

    rho = apparatus.matrix
    # blocks are only unitary within tol, so the states are only normalized within tol
    state_tol = max(tol, HERMITIAN_TOL)
    conditional = tuple(
        DensityMatrix(v @ rho @ dagger(v), state_tol) for v in u.blocks
    )
    model = MeasurementOutcomeModel(
        system.probabilities, conditional, DensityMatrix(reduced, state_tol), joint
    )

    mismatch = max_norm(model.mixture() - reduced)
    if __debug__ and util.DEBUG:
        debug("%s mixture mismatch %.3g", model, mismatch)
    if mismatch > PROBABILITY_TOL:
        raise NumericalError(
            f"reduced state differs from the conditional mixture by {mismatch:.3g}"
        )
    return model
