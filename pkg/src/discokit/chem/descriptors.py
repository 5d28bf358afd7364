"""Molecular descriptors used by the solubility model."""

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..errors import UntypedAtom
from .elements import HYDROGEN_WEIGHT
from .molecule import BondOrder

CRIPPEN_TABLE_VERSION = 1
_HETERO_DOUBLE = {"N", "O", "S"}


@dataclass(frozen=True)
class AtomType:
    type_id: str
    spec: dict
    contribution: float


def _parse_spec(text):
    spec = {}
    for part in text.split(";"):
        key, _, value = part.partition("=")
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ValueError(f"bad match-spec {text!r}")
        spec[key] = value
    return spec


def parse_crippen_table(text):
    rows = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
    reader = csv.DictReader(io.StringIO("\n".join(rows)), delimiter="\t")
    if reader.fieldnames != ["type_id", "match-spec", "contribution"]:
        raise ValueError(f"unexpected cLogP table columns: {reader.fieldnames}")
    return tuple(
        AtomType(r["type_id"], _parse_spec(r["match-spec"]), float(r["contribution"]))
        for r in reader
    )


@lru_cache(maxsize=None)
def crippen_table():
    text = resources.files("discokit.data").joinpath("crippen.tsv").read_text("utf-8")
    return parse_crippen_table(text)


def molecular_weight(mol):
    """Average molecular weight in daltons, hydrogens included."""
    # fsum is exactly rounded, so the result does not depend on atom order
    return math.fsum(
        atom.element.atomic_weight + h * HYDROGEN_WEIGHT for atom, h in zip(mol.atoms, mol.hcounts)
    )


def count_rotatable_bonds(mol):
    count = 0
    for bond in mol.bonds:
        if bond.order is not BondOrder.SINGLE or bond.in_ring:
            continue
        a, b = bond.begin, bond.end
        if _heavy_degree(mol, a) < 2 or _heavy_degree(mol, b) < 2:
            continue
        if _is_amide(mol, a, b) or _is_amide(mol, b, a):
            continue
        count += 1
    return count


def _heavy_degree(mol, idx):
    return sum(1 for n in mol.neighbors(idx) if mol.atoms[n].symbol != "H")


def _is_amide(mol, c, n):
    if mol.atoms[c].symbol != "C" or mol.atoms[n].symbol != "N":
        return False
    return any(
        b.order is BondOrder.DOUBLE and mol.atoms[b.other(c)].symbol == "O"
        for b in mol.bonds_of(c)
    )


def aromatic_proportion(mol):
    heavy = [a for a in mol.atoms if a.symbol != "H"]
    return sum(1 for a in heavy if a.aromatic) / len(heavy)


def atom_features(mol, idx):
    """Feature values the cLogP match-specs are tested against."""
    atom = mol.atoms[idx]
    bonds = mol.bonds_of(idx)
    multiple = [b for b in bonds if b.order in (BondOrder.DOUBLE, BondOrder.TRIPLE)]
    return {
        "el": atom.symbol,
        "arom": "1" if atom.aromatic else "0",
        "mult": "1" if multiple else "0",
        "dblhet": "1" if any(mol.atoms[b.other(idx)].symbol in _HETERO_DOUBLE for b in multiple) else "0",
        "het": "1" if any(mol.atoms[n].symbol not in ("C", "H") for n in mol.neighbors(idx)) else "0",
        "h": "1" if mol.hcounts[idx] else "0",
    }


def type_atom(mol, idx, table=None):
    table = crippen_table() if table is None else table
    features = atom_features(mol, idx)
    for row in table:
        if "hydrogen" in row.spec:
            continue
        if all(features.get(k) == v for k, v in row.spec.items()):
            return row
    raise UntypedAtom(idx, mol.atoms[idx].symbol)


def _hydrogen_row(table, parent_symbol):
    wanted = "C" if parent_symbol == "C" else "X"
    for row in table:
        if row.spec.get("hydrogen") == wanted:
            return row
    raise UntypedAtom(-1, "H")


def crippen_logp(mol, table=None):
    """Additive cLogP from the shipped atom-type table.

    Explicit ``[H]`` atoms in the graph are scored as hydrogens of their
    neighbour, like implicit ones.
    """
    table = crippen_table() if table is None else table
    terms = []
    for idx, atom in enumerate(mol.atoms):
        if atom.symbol == "H":
            parents = mol.neighbors(idx)
            parent = mol.atoms[parents[0]].symbol if parents else "H"
            terms.append(_hydrogen_row(table, parent).contribution)
            continue
        terms.append(type_atom(mol, idx, table).contribution)
        h = mol.hcounts[idx]
        if h:
            terms.append(h * _hydrogen_row(table, atom.symbol).contribution)
    return math.fsum(terms)
