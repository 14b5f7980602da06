import argparse

import numpy as np
import pytest

from holevo_measurement import util
from holevo_measurement.interactions import shift_gate
from holevo_measurement.states import (
    DensityMatrix,
    Ensemble,
    pure_state_from_probabilities,
)


@pytest.fixture
def rng():
    """A seeded random generator."""
    return np.random.default_rng(42)


@pytest.fixture
def cnot():
    """The qubit shift gate, i.e. CNOT."""
    return shift_gate(2)


@pytest.fixture
def cnot_system():
    """The system state with outcome probabilities (0.3, 0.7)."""
    return pure_state_from_probabilities([0.3, 0.7], [0.0, 0.0])


@pytest.fixture
def zero_plus():
    """The non-commuting ensemble {(1/2, |0><0|), (1/2, |+><+|)}."""
    plus = np.full((2, 2), 0.5)
    return Ensemble([(0.5, DensityMatrix.basis_state(2, 0)), (0.5, DensityMatrix(plus))])


@pytest.fixture()
def debug_mode():
    """This fixture turns on debug mode."""
    util.DEBUG = True
    yield True
    util.DEBUG = False


class DebugAction(argparse.BooleanOptionalAction):
    """This action turns on the DEBUG flag so we get coverage of the debug code."""

    def __call__(self, parser, namespace, values, option_string=None):
        if option_string in self.option_strings:
            util.DEBUG = True


def pytest_addoption(parser):
    parser.addoption(
        "--performance", action="store_true", help="run performance tests"
    )
    parser.addoption(
        "--debug-mode", action=DebugAction, help="turn on DEBUG mode while testing"
    )
