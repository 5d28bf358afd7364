"""Registry of named molecular property evaluators.

Registration is expected to happen during start-up from a single thread;
lookups are safe to run concurrently afterwards. Evaluators must be pure
functions of the molecule.
"""

import csv
import re
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from ..chem import canonical_smiles, parse_smiles
from ..chem.descriptors import (
    aromatic_proportion,
    count_rotatable_bonds,
    crippen_logp,
    molecular_weight,
)
from ..errors import DiscoError, DuplicateName, UnknownProperty
from .esol import esol

_NAME_RE = re.compile(r"^[a-z0-9_]+$")


@dataclass(frozen=True)
class PropertyDescriptor:
    name: str
    description: str
    output_unit: str
    output_range: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise ValueError(f"property name {self.name!r} must match [a-z0-9_]+")


@dataclass(frozen=True)
class PropertyRecord:
    molecule: str
    property_name: str
    value: Optional[float]
    error: Optional[str] = None

    @property
    def ok(self):
        return self.error is None


class PropertyRegistry:
    def __init__(self):
        self._entries = {}

    def register(self, descriptor: PropertyDescriptor, evaluator: Callable) -> None:
        if descriptor.name in self._entries:
            raise DuplicateName(f"property {descriptor.name!r} already registered")
        self._entries[descriptor.name] = (descriptor, evaluator)

    def resolve(self, name) -> PropertyDescriptor:
        return self._entry(name)[0]

    def evaluator(self, name) -> Callable:
        return self._entry(name)[1]

    def _entry(self, name):
        try:
            return self._entries[name]
        except KeyError:
            raise UnknownProperty(f"unknown property {name!r}") from None

    def __contains__(self, name):
        return name in self._entries

    def list_properties(self):
        return [self._entries[k][0] for k in sorted(self._entries)]

    def evaluate(self, name, mol):
        return float(self.evaluator(name)(mol))


BUILTIN_PROPERTIES = (
    (PropertyDescriptor("esol", "Delaney estimated aqueous solubility", "log10(mol/L)"), esol),
    (PropertyDescriptor("molecular_weight", "average molecular weight", "Da"), molecular_weight),
    (PropertyDescriptor("clogp", "additive octanol/water logP estimate", "log10"), crippen_logp),
    (PropertyDescriptor("rotatable_bonds", "acyclic non-amide single bonds between non-terminal atoms", "count"),
     count_rotatable_bonds),
    (PropertyDescriptor("aromatic_proportion", "aromatic heavy atoms / heavy atoms", "fraction", (0.0, 1.0)),
     aromatic_proportion),
)


def default_property_registry():
    registry = PropertyRegistry()
    for descriptor, fn in BUILTIN_PROPERTIES:
        registry.register(descriptor, fn)
    return registry


def evaluate_batch(registry, property_name, molecules):
    """Evaluate one property over SMILES strings or molecules.

    Failures are reported per entry (``error`` set, ``value`` None); the
    batch itself only fails for an unknown property.
    """
    fn = registry.evaluator(property_name)
    records = []
    for i, item in enumerate(molecules):
        label = item if isinstance(item, str) else None
        try:
            mol = parse_smiles(item) if isinstance(item, str) else item
            label = canonical_smiles(mol)
            records.append(PropertyRecord(label, property_name, float(fn(mol))))
        except DiscoError as exc:
            records.append(PropertyRecord(label or "", property_name, None, f"{exc.code}[{i}]: {exc}"))
    return records


def write_records_csv(records, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["smiles", "property", "value", "error"])
    for r in records:
        value = "" if r.value is None else f"{r.value:.6f}"
        writer.writerow([r.molecule, r.property_name, value, r.error or ""])
