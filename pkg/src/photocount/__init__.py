"""Photoelectron counting distributions for single-mode light fields."""

from .counting import (
    CountDistribution,
    Method,
    bernoulli_transform,
    coherent_closed,
    continued_distribution,
    displaced_thermal_closed,
    distribution,
    squeezed_closed,
    thermal_closed,
    thermal_closed_f,
)
from .errors import (
    CapabilityError,
    DegreeLimitError,
    DivergenceError,
    ParameterError,
    PhotocountError,
    SingularParameterError,
    TruncationError,
)
from .states import (
    Coherent,
    DisplacedThermal,
    FockDistribution,
    FockMixture,
    SqueezedVacuum,
    Thermal,
    fock_distribution,
    mean_photon,
)

__version__ = "0.1.0"
