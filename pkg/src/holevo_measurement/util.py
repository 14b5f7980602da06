"""Utilities for holevo measurement."""

import logging
import sys

DEBUG = False
""" Print lots of debug information. """

LOGGER_NAME = "holevo_measurement"

HERMITIAN_TOL = 1e-10
""" Max-norm of `M - M^\\dagger` accepted as Hermitian. """
UNITARY_TOL = 1e-10
""" Max-norm of `U^\\dagger U - I` accepted as unitary. """
EVOLVE_UNITARY_TOL = 1e-8
""" Looser unitarity tolerance for interaction blocks entering an evolution. """
PROBABILITY_TOL = 1e-10
""" Allowed deviation of a probability vector's sum from 1. """
CLAMP_TOL = 1e-12
""" Ensemble weights and outcome probabilities below this are set to 0. """
EIGENVALUE_CLAMP_TOL = 1e-10
""" Negative eigenvalues of at most this magnitude are treated as 0. """
BOUND_TOL = 1e-9
""" Slack accepted when comparing mutual information to the Holevo quantity. """
VON_NEUMANN_TOL = 1e-8
""" A family is a Von Neumann family if its defect is below this. """
COMMUTATION_TOL = 1e-8
""" States whose commutator is below this are treated as commuting. """
FINDING_TOL = 1e-4
""" Commutators above this are reported as counterexample findings. """


class HolevoError(Exception):
    """Base class of all errors raised by this package."""


class InvalidInputError(HolevoError, ValueError):
    """An input violates the preconditions of an operation."""


class NotHermitianError(InvalidInputError):
    """A matrix that must be Hermitian is not."""

    def __init__(self, defect: float):
        super().__init__(f"not hermitian (defect {defect:.3g})")
        self.defect = defect


class NumericalError(HolevoError, ArithmeticError):
    """A numerical computation failed or produced inconsistent results."""


class NotCommutingError(NumericalError):
    """The states of an ensemble do not commute."""

    def __init__(self, commutator: float):
        super().__init__(f"ensemble does not commute (commutator {commutator:.3g})")
        self.commutator = commutator


class NoFamilyFoundError(NumericalError):
    """The projection search did not reach a Von Neumann family."""

    def __init__(self, final_defect: float, sweeps: int):
        super().__init__(
            f"no family found after {sweeps} sweeps (final defect {final_defect:.3g})"
        )
        self.final_defect = final_defect
        self.sweeps = sweeps


class PropertyViolation(HolevoError):
    """A property sweep found violations."""


min_debug_depth = -1
""" How deep we were in the stack when emitting the first debug message.

Used to print the interesting part of the stack.
"""


def debug(msg: str, *args, **kwargs) -> None:
    """Log a debug message indented by call depth."""

    if __debug__ and DEBUG:
        global min_debug_depth  # pylint: disable=global-statement

        frame = sys._getframe(1)  # pylint: disable=protected-access
        function_name = frame.f_code.co_name
        depth = 0
        while frame.f_back:
            frame = frame.f_back
            depth += 1
        if min_debug_depth == -1:
            min_debug_depth = depth
        depth = max(0, depth - min_debug_depth)
        msg = f"{'  ' * depth}{function_name}: {msg}"
        logging.getLogger(LOGGER_NAME).debug(msg, *args, **kwargs)


def is_debug() -> bool:
    """Return True if debugging is on."""

    return __debug__ and DEBUG


LOG_LEVELS = {
    "off": logging.CRITICAL + 1,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def configure_logging(level: str) -> None:
    """Configure the package logger from a level name (off, info, debug).

    >>> configure_logging("off")
    >>> configure_logging("loud")
    Traceback (most recent call last):
    ...
    holevo_measurement.util.InvalidInputError: unknown log level 'loud'
    """
    global DEBUG  # pylint: disable=global-statement

    key = level.strip().lower()
    if key not in LOG_LEVELS:
        raise InvalidInputError(f"unknown log level '{level}'")
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(LOG_LEVELS[key])
    if key != "off" and not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)
    DEBUG = key == "debug"
