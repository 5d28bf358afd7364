"""Molecular graph model.

A :class:`Molecule` is an immutable, connected, valence-checked graph of heavy
atoms. Hydrogens are implicit unless an atom came from a bracket expression,
in which case its hydrogen count is fixed.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from ..errors import MultipleFragments, TooManyAtoms, ValenceViolation
from .elements import Element, allowed_valences, get_element

MAX_HEAVY_ATOMS = 256


class BondOrder(Enum):
    SINGLE = "-"
    DOUBLE = "="
    TRIPLE = "#"
    AROMATIC = ":"

    @property
    def valence(self):
        return _BOND_VALENCE[self]


_BOND_VALENCE = {
    BondOrder.SINGLE: 1.0,
    BondOrder.DOUBLE: 2.0,
    BondOrder.TRIPLE: 3.0,
    BondOrder.AROMATIC: 1.5,
}


@dataclass(frozen=True)
class Atom:
    element: Element
    aromatic: bool = False
    formal_charge: int = 0
    explicit_h: Optional[int] = None
    isotope: Optional[int] = None

    @property
    def symbol(self):
        return self.element.symbol

    @property
    def is_bracket(self):
        return self.explicit_h is not None

    @classmethod
    def of(cls, symbol, **kwargs):
        return cls(get_element(symbol), **kwargs)


@dataclass(frozen=True)
class Bond:
    begin: int
    end: int
    order: BondOrder
    in_ring: bool = False

    def other(self, idx):
        return self.end if idx == self.begin else self.begin

    @property
    def key(self):
        return (min(self.begin, self.end), max(self.begin, self.end))


def _valence_options(atom, bonds_at):
    """Candidate bond-order sums for an atom, best first.

    Aromatic atoms count one aromatic bond as double (the pi contribution)
    when the element can afford it, and fall back to all-single for lone-pair
    donors such as furan O and thiophene S. For two or three aromatic bonds
    the first option equals floor(1.5 * k).
    """
    n_arom = sum(1 for b in bonds_at if b.order is BondOrder.AROMATIC)
    other = sum(b.order.valence for b in bonds_at if b.order is not BondOrder.AROMATIC)
    base = int(other) + n_arom
    if atom.aromatic and n_arom:
        return (base + 1, base)
    return (base,)


def assign_hydrogens(atom, bonds_at):
    """Return the total hydrogen count of ``atom`` or None if no valence fits."""
    valences = allowed_valences(atom.element, atom.formal_charge)
    options = _valence_options(atom, bonds_at)
    if atom.explicit_h is not None:
        h = atom.explicit_h
        for v in valences:
            if any(s + h == v for s in options):
                return h
        return None
    for v in valences:
        for s in options:
            if v >= s:
                return v - s
    return None


class Molecule:
    """Immutable connected molecular graph."""

    __slots__ = ("atoms", "bonds", "adjacency", "hcounts", "_bond_index")

    def __init__(self, atoms, bonds, check_connected=True):
        atoms = tuple(atoms)
        if not atoms:
            raise ValueError("molecule needs at least one atom")
        heavy = sum(1 for a in atoms if a.symbol != "H")
        if heavy > MAX_HEAVY_ATOMS:
            raise TooManyAtoms(MAX_HEAVY_ATOMS)
        adjacency = [[] for _ in atoms]
        seen = set()
        for bi, b in enumerate(bonds):
            if b.begin == b.end:
                raise ValueError(f"self bond on atom {b.begin}")
            if b.key in seen:
                raise ValueError(f"duplicate bond {b.key}")
            seen.add(b.key)
            if b.order is BondOrder.AROMATIC and not (
                atoms[b.begin].aromatic and atoms[b.end].aromatic
            ):
                raise ValenceViolation(b.begin, "aromatic bond to non-aromatic atom")
            adjacency[b.begin].append((b.end, bi))
            adjacency[b.end].append((b.begin, bi))
        for i, a in enumerate(atoms):
            if a.aromatic and not a.element.aromatic_allowed:
                raise ValenceViolation(i, f"{a.symbol} cannot be aromatic")
        bonds = tuple(bonds)
        hcounts = []
        for i, a in enumerate(atoms):
            h = assign_hydrogens(a, [bonds[bi] for _, bi in adjacency[i]])
            if h is None:
                raise ValenceViolation(i, a.symbol)
            hcounts.append(h)
        self.atoms = atoms
        self.adjacency = tuple(tuple(sorted(nb)) for nb in adjacency)
        self.hcounts = tuple(hcounts)
        if check_connected and not _is_connected(self.adjacency):
            raise MultipleFragments()
        self.bonds = _flag_ring_bonds(bonds, self.adjacency)
        self._bond_index = {b.key: bi for bi, b in enumerate(self.bonds)}

    def __len__(self):
        return len(self.atoms)

    def __repr__(self):
        from .smiles import write_smiles

        return f"Molecule({write_smiles(self)!r})"

    def degree(self, idx):
        return len(self.adjacency[idx])

    def neighbors(self, idx):
        return [n for n, _ in self.adjacency[idx]]

    def bond_between(self, i, j):
        bi = self._bond_index.get((min(i, j), max(i, j)))
        return None if bi is None else self.bonds[bi]

    def bonds_of(self, idx):
        return [self.bonds[bi] for _, bi in self.adjacency[idx]]

    @property
    def heavy_atom_count(self):
        return sum(1 for a in self.atoms if a.symbol != "H")

    def renumbered(self, order):
        """Return an isomorphic molecule whose atom ``k`` is ``self.atoms[order[k]]``."""
        inverse = {old: new for new, old in enumerate(order)}
        atoms = [self.atoms[old] for old in order]
        bonds = [
            Bond(inverse[b.begin], inverse[b.end], b.order) for b in self.bonds
        ]
        bonds.sort(key=lambda b: b.key)
        return Molecule(atoms, bonds)


def _is_connected(adjacency):
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for n, _ in adjacency[i]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(adjacency)


def find_bridges(adjacency):
    """Bond indices that are bridges (iterative Tarjan low-link)."""
    n = len(adjacency)
    disc = [-1] * n
    low = [0] * n
    bridges = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adjacency[root]))]
        while stack:
            node, parent_bond, it = stack[-1]
            advanced = False
            for nb, bi in it:
                if bi == parent_bond:
                    continue
                if disc[nb] == -1:
                    disc[nb] = low[nb] = timer
                    timer += 1
                    stack.append((nb, bi, iter(adjacency[nb])))
                    advanced = True
                    break
                low[node] = min(low[node], disc[nb])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[node])
                if low[node] > disc[parent]:
                    bridges.add(parent_bond)
    return bridges


def _flag_ring_bonds(bonds, adjacency):
    bridges = find_bridges(adjacency)
    return tuple(
        b if b.in_ring == (bi not in bridges) else replace(b, in_ring=bi not in bridges)
        for bi, b in enumerate(bonds)
    )


def perceive_rings(mol):
    """Return ``mol`` with ``in_ring`` set on every bond lying on a cycle.

    Ring flags are already computed at construction; this recomputes them
    from scratch so callers holding hand-built bonds get a consistent view.
    """
    return Molecule(mol.atoms, [replace(b, in_ring=False) for b in mol.bonds])
