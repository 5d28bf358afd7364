"""SMILES, molecular graphs, descriptors and fingerprints."""

from .canon import canonical_smiles
from .descriptors import (
    aromatic_proportion,
    count_rotatable_bonds,
    crippen_logp,
    molecular_weight,
)
from .elements import ELEMENTS, Element
from .fingerprint import Fingerprint, morgan_fingerprint, tanimoto
from .molecule import Atom, Bond, BondOrder, Molecule, perceive_rings
from .smiles import parse_smiles, write_smiles


def try_parse(text):
    """Parse ``text``, returning None instead of raising on invalid input."""
    from ..errors import SmilesError

    try:
        return parse_smiles(text)
    except SmilesError:
        return None


def similarity(smiles_a, smiles_b, radius=2, width=2048):
    return tanimoto(
        morgan_fingerprint(parse_smiles(smiles_a), radius, width),
        morgan_fingerprint(parse_smiles(smiles_b), radius, width),
    )


__all__ = [
    "Atom",
    "Bond",
    "BondOrder",
    "ELEMENTS",
    "Element",
    "Fingerprint",
    "Molecule",
    "aromatic_proportion",
    "canonical_smiles",
    "count_rotatable_bonds",
    "crippen_logp",
    "molecular_weight",
    "morgan_fingerprint",
    "parse_smiles",
    "perceive_rings",
    "similarity",
    "tanimoto",
    "try_parse",
    "write_smiles",
]
