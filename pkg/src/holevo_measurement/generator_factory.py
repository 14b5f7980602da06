"""A generator factory."""

import logging
from typing import Optional, Type

import numpy as np

from . import generator, phase_shift, projection_search
from .interactions import InteractionUnitary
from .util import InvalidInputError

logger = logging.getLogger(__name__)

GENERATORS = ["phase_shift", "projection_search"]


def family_factory(name: Optional[str] = None) -> Type[generator.Generator]:
    """Return the specified generator (default: phase_shift)."""
    if name is None or name == "phase_shift":
        return phase_shift.Generator
    if name == "projection_search":
        return projection_search.Generator
    raise InvalidInputError(f"unknown generator method '{name}'")


def random_von_neumann_family(
    d: int, seed: int, method: str = "phase_shift"
) -> InteractionUnitary:
    """Draw a random Von Neumann family.

    Each call builds its own random generator from `seed`, so the same
    `(d, seed, method)` always yields the same family.

    :param int d: the dimension of system and apparatus, at least 2
    :param int seed: the seed
    :param str method: ``phase_shift`` or ``projection_search``
    :raises NoFamilyFoundError: if the projection search does not converge
    """
    if d < 2:
        raise InvalidInputError(f"d must be at least 2, got {d}")
    gen = family_factory(method)()
    family = gen.generate(d, np.random.default_rng(seed))
    logger.debug("drew %s family d=%d seed=%d", gen.name, d, seed)
    return family
