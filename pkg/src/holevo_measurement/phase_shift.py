r"""A generator of phase-shift families.

Draws random phases `\varphi_{i,k}` and a Haar-random apparatus basis and returns
:py:func:`holevo_measurement.interactions.phase_shift_family`.  The construction
is exact, so no iteration is involved.
"""

import numpy as np

from .interactions import InteractionUnitary, phase_shift_family
from .linalg import random_unitary
from .util import debug
from . import generator, util


class Generator(generator.Generator):
    """Generates shift families dressed with random phases."""

    name = "PhaseShift"

    def generate(self, d: int, rng: np.random.Generator) -> InteractionUnitary:
        phases = rng.uniform(0.0, 2.0 * np.pi, size=(d, d))
        basis = random_unitary(d, rng)
        if __debug__ and util.DEBUG:
            debug("d=%d phases=%s", d, phases.round(3).tolist())
        return phase_shift_family(d, phases, basis)
