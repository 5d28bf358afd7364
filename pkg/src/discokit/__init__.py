"""discokit: a desk-scale molecular discovery toolkit.

Typical use::

    from discokit import default_registry, sample
    sampler = default_registry().instantiate(
        "conditional_generation/seed_ga/v1", {"seed_smiles": "CCO", "rng_seed": 7})
    print(sample(sampler, 5))
"""

from .chem import canonical_smiles, morgan_fingerprint, parse_smiles, tanimoto
from .errors import DiscoError
from .identifiers import AlgorithmType, ApplicationIdentifier
from .properties import default_property_registry, esol
from .registry import AlgorithmRegistry, default_registry, sample

__version__ = "0.1.0"

__all__ = [
    "AlgorithmRegistry",
    "AlgorithmType",
    "ApplicationIdentifier",
    "DiscoError",
    "canonical_smiles",
    "default_property_registry",
    "default_registry",
    "esol",
    "morgan_fingerprint",
    "parse_smiles",
    "sample",
    "tanimoto",
]
