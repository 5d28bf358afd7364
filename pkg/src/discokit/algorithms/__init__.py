"""The shipped algorithms: n-gram CLM, seed GA, property window, predictor."""

from .ga import Direction, GaConfig, ScoredMolecule, ga_run
from .mutate import mutate_molecule
from .samplers import (
    NgramSampler,
    PredictorSampler,
    PropertyWindowSampler,
    SeedGaSampler,
    predictor_algorithm,
    property_window_sample,
)

__all__ = [
    "Direction",
    "GaConfig",
    "NgramSampler",
    "PredictorSampler",
    "PropertyWindowSampler",
    "ScoredMolecule",
    "SeedGaSampler",
    "ga_run",
    "mutate_molecule",
    "predictor_algorithm",
    "property_window_sample",
]
