r"""Entropies, the Holevo quantity and measured information.

All quantities are in bits.  For an ensemble `\{p_x, \rho_x\}` measured with a
POVM `\{E_y\}` the Holevo bound reads

.. math::

    H(x:y) \leq \chi = S\Big(\sum_x p_x \rho_x\Big) - \sum_x p_x S(\rho_x)

with equality attainable if and only if all `\rho_x` commute.

>>> from holevo_measurement.states import DensityMatrix, Ensemble
>>> e = Ensemble([(0.5, DensityMatrix.basis_state(2, 0)),
...               (0.5, DensityMatrix.basis_state(2, 1))])
>>> holevo_chi(e)
1.0
"""

import itertools
import logging
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
import scipy.stats

from .linalg import (
    ComplexMatrix,
    RealArray,
    commutator_norm,
    hermitian_eigendecomposition,
)
from .states import POVM, DensityMatrix, Ensemble, check_probabilities, validate_povm
from .util import (
    BOUND_TOL,
    CLAMP_TOL,
    COMMUTATION_TOL,
    EIGENVALUE_CLAMP_TOL,
    EVOLVE_UNITARY_TOL,
    PROBABILITY_TOL,
    InvalidInputError,
    NotCommutingError,
    NumericalError,
    debug,
)
from . import util

logger = logging.getLogger(__name__)

DEGENERACY_SPLIT = 1e-7
r"""Weight step `\varepsilon` used to split accidental degeneracies."""


def _entropy_bits(p: RealArray) -> float:
    return float(scipy.stats.entropy(p, base=2)) if np.any(p > 0) else 0.0


def shannon_entropy(p: npt.ArrayLike, tol: float = PROBABILITY_TOL) -> float:
    """Return `-\\sum p \\log_2 p` with `0 \\log 0 = 0`.

    >>> shannon_entropy([0.5, 0.5])
    1.0
    >>> round(shannon_entropy([0.3, 0.7]), 4)
    0.8813
    """
    return _entropy_bits(check_probabilities(p, tol))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    r"""Return `S(\rho) = -\sum_k \lambda_k \log_2 \lambda_k`.

    Eigenvalues in `[-10^{-10}, 0)` count as 0.
    """
    values = np.array(rho.eigensystem().eigenvalues)
    if values[-1] < -EIGENVALUE_CLAMP_TOL:
        raise InvalidInputError(f"negative eigenvalue {values[-1]:.3g}")
    values[values < 0] = 0.0
    return _entropy_bits(values)


def holevo_chi(e: Ensemble) -> float:
    r"""Return `\chi = S(\sum_x p_x \rho_x) - \sum_x p_x S(\rho_x)`."""
    # states from an evolution are normalized within its unitarity tolerance
    average = von_neumann_entropy(DensityMatrix(e.average(), EVOLVE_UNITARY_TOL))
    conditional = sum(p * von_neumann_entropy(s) for p, s in e if p > 0)
    return average - conditional


def classical_mutual_information(joint: npt.ArrayLike) -> float:
    """Return the mutual information of a joint distribution `p(x, y)`.

    >>> classical_mutual_information([[0.5, 0.0], [0.0, 0.5]])
    1.0
    """
    pxy = np.asarray(joint, dtype=np.float64)
    px = pxy.sum(axis=1)
    py = pxy.sum(axis=0)
    mask = pxy > 0
    ratio = pxy[mask] / np.outer(px, py)[mask]
    return float(np.sum(pxy[mask] * np.log2(ratio)))


def outcome_distribution(e: Ensemble, m: POVM) -> RealArray:
    r"""Return the joint distribution `p(x, y) = p_x \operatorname{tr}(E_y \rho_x)`.

    Entries in `[-10^{-12}, 0)` are set to 0.
    """
    if e.dim != m.dim:
        raise InvalidInputError(f"dimension mismatch: ensemble {e.dim}, POVM {m.dim}")
    traces = np.einsum("xab,yba->xy", e.stacked(), m.stacked()).real
    pxy = e.probabilities[:, None] * traces
    if np.any(pxy < -CLAMP_TOL):
        raise NumericalError(f"negative outcome probability {pxy.min():.3g}")
    pxy[pxy < 0] = 0.0
    return pxy


def mutual_information(e: Ensemble, m: POVM, tol: float = PROBABILITY_TOL) -> float:
    """Return `H(x:y)` between the ensemble label and the POVM outcome.

    :raises InvalidInputError: on dimension mismatch or an invalid POVM
    """
    if e.dim != m.dim:
        raise InvalidInputError(f"dimension mismatch: ensemble {e.dim}, POVM {m.dim}")
    if not validate_povm(m).is_valid(tol):
        raise InvalidInputError("invalid POVM")
    return classical_mutual_information(outcome_distribution(e, m))


def information_loss(e: Ensemble, m: POVM) -> float:
    """Return `H(x) - H(x:y)`, the information the measurement fails to extract."""
    return _entropy_bits(e.probabilities) - mutual_information(e, m)


def transfer_efficiency(e: Ensemble, m: POVM) -> float:
    """Return `H(x:y) / H(x)`, or 1 for a deterministic source."""
    source = _entropy_bits(e.probabilities)
    if source <= 0:
        return 1.0
    return mutual_information(e, m) / source


def max_pairwise_commutator(e: Ensemble) -> float:
    r"""Return the largest `\max|\rho_x \rho_y - \rho_y \rho_x|` over all pairs."""
    return max(
        (
            commutator_norm(a.matrix, b.matrix)
            for a, b in itertools.combinations(e.states, 2)
        ),
        default=0.0,
    )


class BoundCertificate(NamedTuple):
    """How close a measurement comes to the Holevo bound."""

    chi_bits: float
    mutual_information_bits: float
    slack_bits: float
    r"""`\chi - H(x:y)`."""
    max_pairwise_commutator: float
    saturated: bool
    """True if the slack is within the tolerance."""


def certify_bound(e: Ensemble, m: POVM, tol: float = BOUND_TOL) -> BoundCertificate:
    """Compare the information a POVM extracts with the Holevo bound."""
    chi = holevo_chi(e)
    info = mutual_information(e, m)
    slack = chi - info
    cert = BoundCertificate(
        chi_bits=chi,
        mutual_information_bits=info,
        slack_bits=slack,
        max_pairwise_commutator=max_pairwise_commutator(e),
        saturated=slack <= tol,
    )
    if __debug__ and util.DEBUG:
        debug("%s", cert)
    return cert


def common_eigenbasis(e: Ensemble, tol: float = COMMUTATION_TOL) -> ComplexMatrix:
    r"""Return a simultaneous eigenbasis of commuting states as columns.

    The basis diagonalizes `\sum_x (p_x + x \varepsilon) \rho_x`; the small
    distinct weights `x \varepsilon` split degeneracies of the average state.

    :raises NotCommutingError: if two states fail to commute within `tol`
    """
    comm = max_pairwise_commutator(e)
    if comm > tol:
        raise NotCommutingError(comm)
    weights = e.probabilities + DEGENERACY_SPLIT * np.arange(len(e))
    combined = np.einsum("x,xab->ab", weights, e.stacked())
    logger.debug("common eigenbasis of %d states (commutator %.3g)", len(e), comm)
    return hermitian_eigendecomposition(combined).eigenvectors


def common_eigenbasis_povm(e: Ensemble, tol: float = COMMUTATION_TOL) -> POVM:
    """Return projectors onto a simultaneous eigenbasis of commuting states.

    Measuring them attains the Holevo bound.

    :raises NotCommutingError: if two states fail to commute within `tol`
    """
    return POVM.projective(common_eigenbasis(e, tol))
