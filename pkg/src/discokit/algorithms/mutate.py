"""Valence-preserving graph edits used by the seed-constrained GA."""

from ..chem.elements import ELEMENTS
from ..chem.molecule import Atom, Bond, BondOrder, Molecule
from ..errors import DiscoError, MutationStalled

MAX_EDIT_ATTEMPTS = 50
EDITS = ("substitute", "toggle_bond", "append", "delete")
_SP3_SWAP = ("C", "N", "O")
_HALOGENS = ("F", "Cl", "Br", "I")
_APPEND = ("C", "N", "O", "F")


def _plain(atom):
    """Atoms whose hydrogens are recomputed freely (no bracket, no charge)."""
    return atom.explicit_h is None and atom.formal_charge == 0


def _substitute(mol, rng):
    sites = []
    for i, atom in enumerate(mol.atoms):
        if not _plain(atom) or atom.aromatic:
            continue
        if atom.symbol in _SP3_SWAP and all(b.order is BondOrder.SINGLE for b in mol.bonds_of(i)):
            options = [
                e for e in _SP3_SWAP
                if e != atom.symbol and mol.degree(i) <= ELEMENTS[e].default_valences[0]
            ]
        elif atom.symbol in _HALOGENS:
            options = [e for e in _HALOGENS if e != atom.symbol]
        else:
            continue
        if options:
            sites.append((i, options))
    if not sites:
        return None
    i, options = rng.choice(sites)
    atoms = list(mol.atoms)
    atoms[i] = Atom(ELEMENTS[rng.choice(options)])
    return Molecule(atoms, mol.bonds)


def _toggle_bond(mol, rng):
    sites = []
    for bi, bond in enumerate(mol.bonds):
        a, b = mol.atoms[bond.begin], mol.atoms[bond.end]
        if not (_plain(a) and _plain(b)) or a.aromatic or b.aromatic:
            continue
        if bond.order is BondOrder.DOUBLE:
            sites.append((bi, BondOrder.SINGLE))
        elif (
            bond.order is BondOrder.SINGLE
            and mol.hcounts[bond.begin] >= 1
            and mol.hcounts[bond.end] >= 1
        ):
            sites.append((bi, BondOrder.DOUBLE))
    if not sites:
        return None
    bi, order = rng.choice(sites)
    bonds = list(mol.bonds)
    old = bonds[bi]
    bonds[bi] = Bond(old.begin, old.end, order)
    return Molecule(mol.atoms, bonds)


def _append(mol, rng):
    sites = [i for i, a in enumerate(mol.atoms) if _plain(a) and mol.hcounts[i] >= 1]
    if not sites:
        return None
    i = rng.choice(sites)
    atoms = list(mol.atoms) + [Atom(ELEMENTS[rng.choice(_APPEND)])]
    bonds = list(mol.bonds) + [Bond(i, len(atoms) - 1, BondOrder.SINGLE)]
    return Molecule(atoms, bonds)


def _delete(mol, rng):
    if mol.heavy_atom_count < 3:
        return None
    sites = [
        i for i, a in enumerate(mol.atoms)
        if mol.degree(i) == 1 and _plain(a) and _plain(mol.atoms[mol.neighbors(i)[0]])
    ]
    if not sites:
        return None
    victim = rng.choice(sites)
    remap = {old: new for new, old in enumerate(j for j in range(len(mol.atoms)) if j != victim)}
    atoms = [a for j, a in enumerate(mol.atoms) if j != victim]
    bonds = [
        Bond(remap[b.begin], remap[b.end], b.order)
        for b in mol.bonds
        if victim not in (b.begin, b.end)
    ]
    return Molecule(atoms, bonds)


_EDIT_FUNCS = {
    "substitute": _substitute,
    "toggle_bond": _toggle_bond,
    "append": _append,
    "delete": _delete,
}


def mutate_molecule(mol, rng, edits=EDITS, max_attempts=MAX_EDIT_ATTEMPTS):
    """Apply exactly one random edit from ``edits`` and return the new molecule.

    Edits that have no eligible site or break a valence rule are redrawn, up
    to ``max_attempts`` times.
    """
    for _ in range(max_attempts):
        edit = rng.choice(edits)
        try:
            child = _EDIT_FUNCS[edit](mol, rng)
        except DiscoError:
            continue
        if child is not None:
            return child
    raise MutationStalled(f"no valid edit found in {max_attempts} attempts")
