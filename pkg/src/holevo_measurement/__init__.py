"""Measurement interactions that achieve the Holevo bound."""

from .evolution import MeasurementOutcomeModel, evolve
from .generator_factory import family_factory, random_von_neumann_family
from .information import (
    BoundCertificate,
    certify_bound,
    common_eigenbasis_povm,
    holevo_chi,
    mutual_information,
    shannon_entropy,
    von_neumann_entropy,
)
from .interactions import (
    ConditionReport,
    InteractionUnitary,
    check_conditions,
    phase_shift_family,
    shift_gate,
)
from .search import accessible_information_search
from .states import (
    POVM,
    DensityMatrix,
    Ensemble,
    PureState,
    density_from_eigensystem,
    pure_state_from_probabilities,
    validate_povm,
)

__title__ = "holevo-measurement"
