""" Profile the accessible-information search. """

# pylint: disable=missing-docstring

import cProfile
import sys

import numpy as np

from holevo_measurement.search import accessible_information_search
from holevo_measurement.states import Ensemble, random_density_matrix

DIM = int(sys.argv[1]) if len(sys.argv) > 1 else 4

rng = np.random.default_rng(42)
ENSEMBLE = Ensemble((1 / DIM, random_density_matrix(DIM, rng)) for _ in range(DIM))


def profiler(ensemble):
    accessible_information_search(ensemble, restarts=4, seed=0)


cProfile.runctx("profiler(ENSEMBLE)", globals(), locals())
