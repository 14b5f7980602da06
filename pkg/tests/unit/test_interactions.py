""" Test the interaction constructions and the condition check. """

# pylint: disable=missing-docstring

import numpy as np
import pytest
from numpy.testing import assert_allclose

from holevo_measurement.interactions import (
    InteractionUnitary,
    check_conditions,
    controlled_form,
    phase_shift_family,
    pointer_overlaps,
    shift_gate,
    von_neumann_defect,
)
from holevo_measurement.linalg import is_unitary, random_unitary
from holevo_measurement.states import DensityMatrix, density_from_eigensystem
from holevo_measurement.util import InvalidInputError

CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


class TestShiftGate:
    def test_cnot(self):
        assert_allclose(shift_gate(2).matrix(), CNOT)

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_permutes_pointer_basis(self, d, rng):
        b = random_unitary(d, rng)
        u = shift_gate(d, b)
        assert u.d_sys == d and u.d_app == d
        for i, v in enumerate(u.blocks):
            assert is_unitary(v)
            for k in range(d):
                assert_allclose(v @ b[:, k], b[:, (k + i) % d], atol=1e-12)
        assert von_neumann_defect(u.blocks, b) <= 1e-12
        assert u.pointer_basis is not None

    def test_full_matrix_unitary(self):
        assert is_unitary(shift_gate(4).matrix())

    def test_d_one(self):
        with pytest.raises(InvalidInputError):
            shift_gate(1)

    def test_basis_not_unitary(self):
        with pytest.raises(InvalidInputError, match="basis not unitary"):
            shift_gate(2, [[1, 1], [0, 1]])


class TestPhaseShiftFamily:
    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_von_neumann(self, d, rng):
        b = random_unitary(d, rng)
        u = phase_shift_family(d, rng.uniform(0, 2 * np.pi, (d, d)), b)
        assert von_neumann_defect(u.blocks, b) <= 1e-10
        assert all(is_unitary(v) for v in u.blocks)

    def test_zero_phases_is_shift(self):
        u = phase_shift_family(3, np.zeros((3, 3)))
        for v, w in zip(u.blocks, shift_gate(3).blocks):
            assert_allclose(v, w)

    def test_bad_shape(self):
        with pytest.raises(InvalidInputError):
            phase_shift_family(3, np.zeros((2, 3)))


class TestInteractionUnitary:
    def test_from_matrix(self):
        u = InteractionUnitary.from_matrix(CNOT, 2, 2)
        assert_allclose(u.blocks[1], [[0, 1], [1, 0]])
        assert u.pointer_basis is None

    def test_from_matrix_not_controlled(self):
        swap = np.eye(4)[[0, 2, 1, 3]]
        assert not controlled_form(swap, 2, 2)
        with pytest.raises(InvalidInputError, match="not system-controlled"):
            InteractionUnitary.from_matrix(swap, 2, 2)

    def test_from_matrix_bad_dimension(self):
        with pytest.raises(InvalidInputError, match="bad joint dimension"):
            InteractionUnitary.from_matrix(np.eye(4), 2, 3)

    def test_mismatched_blocks(self):
        with pytest.raises(InvalidInputError):
            InteractionUnitary([np.eye(2), np.eye(3)])

    def test_rectangular_system(self):
        u = InteractionUnitary([np.eye(3)] * 2)
        assert u.d_sys == 2 and u.d_app == 3
        assert u.matrix().shape == (6, 6)

    def test_blocks_read_only(self):
        u = shift_gate(2)
        with pytest.raises(ValueError):
            u.blocks[0][0, 0] = 2


class TestConditions:
    def test_identity_blocks_fail(self):
        u = InteractionUnitary([np.eye(2), np.eye(2)])
        report = check_conditions(u, DensityMatrix.basis_state(2, 0))
        assert report.unitarity_defect == 0.0
        assert report.von_neumann_defect == pytest.approx(1.0)
        assert report.controlled_form

    def test_shift_passes(self, rng):
        b = random_unitary(3, rng)
        rho = density_from_eigensystem([0.6, 0.3, 0.1], b)
        report = check_conditions(shift_gate(3, b), rho)
        assert report.unitarity_defect <= 1e-12
        assert report.von_neumann_defect <= 1e-10

    def test_degenerate_apparatus_uses_given_basis(self, rng):
        b = random_unitary(2, rng)
        rho = DensityMatrix.maximally_mixed(2)
        report = check_conditions(shift_gate(2, b), rho, b)
        assert report.von_neumann_defect <= 1e-10

    def test_non_unitary_blocks_reported(self):
        u = InteractionUnitary([np.eye(2), 2 * np.eye(2)])
        report = check_conditions(u, DensityMatrix.basis_state(2, 0))
        assert report.unitarity_defect == pytest.approx(3.0)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError, match="dimension mismatch"):
            check_conditions(shift_gate(2), DensityMatrix.maximally_mixed(3))

    def test_overlaps_diagonal(self):
        overlaps = pointer_overlaps(shift_gate(3).blocks, np.eye(3))
        assert_allclose(overlaps[0, 0], np.ones(3))
        assert_allclose(overlaps[0, 1], np.zeros(3))


class TestKnownGates:
    def test_qutrit_shift_block(self):
        v1 = shift_gate(3).blocks[1]
        expected = np.zeros((3, 3))
        expected[1, 0] = expected[2, 1] = expected[0, 2] = 1
        assert_allclose(v1, expected)
        assert_allclose(shift_gate(3).blocks[0], np.eye(3))

    def test_controlled_phase_fails(self):
        u = InteractionUnitary([np.eye(2), np.diag([1, -1])])
        report = check_conditions(u, DensityMatrix(np.diag([0.7, 0.3])))
        assert report.von_neumann_defect == pytest.approx(1.0)

    def test_signed_qubit_family(self):
        u = phase_shift_family(2, [[0, 0], [0, np.pi]])
        assert_allclose(u.blocks[1], [[0, 1], [-1, 0]], atol=1e-12)
        assert von_neumann_defect(u.blocks, np.eye(2)) <= 1e-12
