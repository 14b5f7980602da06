r"""A heuristic search for the accessible information of an ensemble.

Rank-1 projective measurements are parameterized by a unitary `W` whose columns
are the measurement vectors.  Each restart starts from a Haar-random `W` and
refines it by coordinate ascent: for every pair of columns `(a, b)` the
information is maximized along a real and along an imaginary Givens rotation
`W \to W G_{ab}(\theta)` by a bounded scalar search.  Sweeps stop when a sweep
gains less than ``SWEEP_GAIN_TOL`` bits.

For commuting ensembles the projectors onto a common eigenbasis attain the
Holevo bound; they are refined as candidate 0 so the search never misses the
exact optimum.  Otherwise candidate 0 is the eigenbasis of the average state.

The result of a search depends on the seed only, not on the number of workers:
restart `r` draws from the `r`-th child of ``SeedSequence(seed)`` and ties are
broken in favour of the lower candidate index.
"""

import concurrent.futures
import itertools
import logging
from typing import Callable, List, NamedTuple, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .information import (
    classical_mutual_information,
    common_eigenbasis,
    max_pairwise_commutator,
)
from .linalg import ComplexMatrix, hermitian_eigendecomposition, random_unitary
from .states import POVM, Ensemble
from .util import COMMUTATION_TOL, InvalidInputError, debug
from . import util

logger = logging.getLogger(__name__)

MAX_SWEEPS = 200
SWEEP_GAIN_TOL = 1e-12
LINE_SEARCH_XATOL = 1e-10


class SearchResult(NamedTuple):
    """The best measurement found."""

    povm: POVM
    information_bits: float


def _objective(e: Ensemble) -> Callable[[ComplexMatrix], float]:
    """Return a fast evaluator of the information of a projective measurement."""
    states = e.stacked()
    weights = e.probabilities[:, None]

    def information(w: ComplexMatrix) -> float:
        traces = np.einsum("ay,xab,by->xy", w.conj(), states, w).real
        pxy = weights * traces
        pxy[pxy < 0] = 0.0
        return classical_mutual_information(pxy)

    return information


def givens(d: int, a: int, b: int, theta: float, imaginary: bool) -> ComplexMatrix:
    """Return a rotation by `theta` in the plane of columns `a` and `b`."""
    g = np.eye(d, dtype=np.complex128)
    c, s = np.cos(theta), np.sin(theta)
    g[a, a] = g[b, b] = c
    if imaginary:
        g[a, b] = g[b, a] = 1j * s
    else:
        g[a, b] = -s
        g[b, a] = s
    return g


def coordinate_ascent(
    w: ComplexMatrix,
    objective: Callable[[ComplexMatrix], float],
    max_sweeps: int = MAX_SWEEPS,
) -> Tuple[ComplexMatrix, float]:
    """Refine `w` by line searches along Givens rotations.

    Moves are accepted only if they increase the objective.
    """
    d = w.shape[0]
    value = objective(w)
    for sweep in range(max_sweeps):
        start = value
        for (a, b), imaginary in itertools.product(
            itertools.combinations(range(d), 2), (False, True)
        ):

            def negated(theta: float) -> float:
                # pylint: disable=cell-var-from-loop
                return -objective(w @ givens(d, a, b, theta, imaginary))

            res = minimize_scalar(
                negated,
                bounds=(-np.pi / 2, np.pi / 2),
                method="bounded",
                options={"xatol": LINE_SEARCH_XATOL},
            )
            if -res.fun > value:
                w = w @ givens(d, a, b, float(res.x), imaginary)
                value = -res.fun
        if __debug__ and util.DEBUG:
            debug("sweep %d information %.12f", sweep, value)
        if value - start <= SWEEP_GAIN_TOL:
            break
    return w, value


def _seed_basis(e: Ensemble) -> ComplexMatrix:
    if max_pairwise_commutator(e) <= COMMUTATION_TOL:
        return common_eigenbasis(e)
    return hermitian_eigendecomposition(e.average()).eigenvectors


def accessible_information_search(
    e: Ensemble,
    restarts: int = 8,
    seed: int = 0,
    max_sweeps: int = MAX_SWEEPS,
    workers: int = 1,
) -> SearchResult:
    """Search for the projective measurement extracting the most information.

    This is a heuristic: the result is a lower bound on the accessible
    information, never above the Holevo quantity, and equal to it for commuting
    ensembles.

    :param e: the ensemble
    :param restarts: the number of random restarts
    :param seed: the seed of the random restarts, nonnegative
    :param max_sweeps: the sweep cap of each coordinate ascent
    :param workers: the number of threads running restarts concurrently
    """
    if restarts < 1:
        raise InvalidInputError(f"restarts must be positive, got {restarts}")
    if seed < 0:
        raise InvalidInputError(f"seed must be nonnegative, got {seed}")
    objective = _objective(e)
    children = np.random.SeedSequence(seed).spawn(restarts)

    def candidate(index: int) -> Tuple[ComplexMatrix, float]:
        if index == 0:
            start = _seed_basis(e)
        else:
            start = random_unitary(e.dim, np.random.default_rng(children[index - 1]))
        return coordinate_ascent(start, objective, max_sweeps)

    indices = range(restarts + 1)
    results: List[Tuple[ComplexMatrix, float]]
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(candidate, indices))
    else:
        results = [candidate(i) for i in indices]

    best = 0
    for i, (_, value) in enumerate(results):
        if value > results[best][1]:
            best = i
    w, value = results[best]
    logger.info(
        "accessible information search: %.10f bits from candidate %d of %d",
        value,
        best,
        len(results),
    )
    return SearchResult(POVM.projective(w), value)

