"""Property registry, ESOL solubility model and generation metrics."""

from .esol import EsolDescriptors, esol, esol_descriptors, esol_from_descriptors
from .metrics import metric_novelty, metric_uniqueness, metric_validity
from .registry import (
    PropertyDescriptor,
    PropertyRecord,
    PropertyRegistry,
    default_property_registry,
    evaluate_batch,
    write_records_csv,
)

__all__ = [
    "EsolDescriptors",
    "PropertyDescriptor",
    "PropertyRecord",
    "PropertyRegistry",
    "default_property_registry",
    "esol",
    "esol_descriptors",
    "esol_from_descriptors",
    "evaluate_batch",
    "metric_novelty",
    "metric_uniqueness",
    "metric_validity",
    "write_records_csv",
]
