""" Test the accessible-information search. """

# pylint: disable=missing-docstring

import numpy as np
import pytest

from holevo_measurement.evolution import evolve
from holevo_measurement.information import holevo_chi, mutual_information
from holevo_measurement.search import (
    accessible_information_search,
    coordinate_ascent,
    givens,
)
from holevo_measurement.linalg import is_unitary, random_unitary
from holevo_measurement.states import POVM, DensityMatrix, Ensemble, validate_povm

GRID = 10_000


def planar_grid_best(e):
    """The best information over real rotated bases, on a fine grid."""
    best = 0.0
    for theta in np.linspace(0.0, np.pi, GRID, endpoint=False):
        c, s = np.cos(theta), np.sin(theta)
        basis = np.array([[c, -s], [s, c]])
        best = max(best, mutual_information(e, POVM.projective(basis)))
    return best


class TestGivens:
    @pytest.mark.parametrize("imaginary", [False, True])
    def test_unitary(self, imaginary):
        g = givens(4, 1, 3, 0.7, imaginary)
        assert is_unitary(g)
        assert g[0, 0] == 1 and g[2, 2] == 1

    def test_ascent_never_decreases(self, zero_plus, rng):
        def objective(w):
            return mutual_information(zero_plus, POVM.projective(w))

        start = random_unitary(2, rng)
        w, value = coordinate_ascent(start, objective, max_sweeps=5)
        assert value >= objective(start) - 1e-12
        assert is_unitary(w, 1e-10)
        assert value == pytest.approx(objective(w), abs=1e-12)


class TestSearch:
    def test_non_commuting_gap(self, zero_plus):
        chi = holevo_chi(zero_plus)
        grid = planar_grid_best(zero_plus)
        result = accessible_information_search(zero_plus, restarts=4, seed=0)
        assert result.information_bits == pytest.approx(grid, abs=1e-4)
        assert result.information_bits <= chi + 1e-9
        assert chi - result.information_bits > 0.05

    def test_result_is_a_valid_measurement(self, zero_plus):
        result = accessible_information_search(zero_plus, restarts=2, seed=3)
        assert validate_povm(result.povm).is_valid()
        assert mutual_information(zero_plus, result.povm) == pytest.approx(
            result.information_bits, abs=1e-12
        )

    def test_cnot_reaches_chi(self, cnot, cnot_system):
        model = evolve(cnot_system, DensityMatrix.basis_state(2, 0), cnot)
        e = model.ensemble()
        chi = holevo_chi(e)
        assert chi == pytest.approx(0.8813, abs=1e-3)
        result = accessible_information_search(e, restarts=2, seed=0)
        assert result.information_bits >= chi - 1e-6

    def test_workers_do_not_change_result(self, rng):
        states = [DensityMatrix(np.eye(3) / 3)]
        for _ in range(2):
            u = random_unitary(3, rng)
            states.append(DensityMatrix(np.outer(u[:, 0], u[:, 0].conj())))
        e = Ensemble(zip([0.2, 0.3, 0.5], states))
        serial = accessible_information_search(e, restarts=3, seed=9, max_sweeps=20)
        threaded = accessible_information_search(
            e, restarts=3, seed=9, max_sweeps=20, workers=3
        )
        assert serial.information_bits == threaded.information_bits
        for a, b in zip(serial.povm, threaded.povm):
            assert np.array_equal(a, b)

    def test_seed_determinism(self, zero_plus):
        a = accessible_information_search(zero_plus, restarts=2, seed=1)
        b = accessible_information_search(zero_plus, restarts=2, seed=1)
        assert a.information_bits == b.information_bits

    def test_single_state(self):
        e = Ensemble([(1.0, DensityMatrix(np.diag([0.6, 0.4])))])
        result = accessible_information_search(e, restarts=1)
        assert result.information_bits == pytest.approx(0.0, abs=1e-12)

    def test_restarts_positive(self, zero_plus):
        with pytest.raises(ValueError, match="restarts"):
            accessible_information_search(zero_plus, restarts=0)

    def test_seed_nonnegative(self, zero_plus):
        with pytest.raises(ValueError, match="seed"):
            accessible_information_search(zero_plus, restarts=1, seed=-1)
