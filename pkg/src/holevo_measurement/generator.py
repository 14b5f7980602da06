"""The base class for all Von Neumann family generators."""

from typing import Callable, Optional

import numpy as np

from .interactions import InteractionUnitary


class Generator:
    """The base class for all generators."""

    name = "Generator"

    def __init__(self):
        self.progress: Optional[Callable[[int, float], None]] = None
        self.progress_tick = 1

    def generate(self, d: int, rng: np.random.Generator) -> InteractionUnitary:
        """Draw a Von Neumann family of `d` blocks of size `d`.

        The returned interaction carries the apparatus basis it satisfies the
        Von Neumann condition against as its ``pointer_basis``.

        :param int d: the dimension of system and apparatus
        :param numpy.random.Generator rng: the source of randomness
        """
        raise NotImplementedError()

    def set_progress_function(
        self, tick: int, callback: Optional[Callable[[int, float], None]] = None
    ):
        """Set a progress indicator callback function.

        :param int tick:          call the callback every tick sweeps
        :param Callable callback: The function is called with the index of the current
                                  sweep and the current defect as parameters.
        """
        self.progress_tick = tick
        self.progress = callback
