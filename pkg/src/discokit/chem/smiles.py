"""SMILES reader and writer for the supported subset.

Covered: organic-subset atoms, bracket atoms with isotope/H-count/charge,
bonds ``- = # :``, branches, ring closures ``1-9`` and ``%nn``. Stereo marks
(``/ \\ @``) are accepted and dropped; ``.`` is rejected.
"""

from ..errors import (
    EmptyInput,
    MultipleFragments,
    SmilesSyntaxError,
    UnbalancedParenthesis,
    UnclosedRing,
    UnknownElement,
)
from .elements import ELEMENTS
from .molecule import Atom, Bond, BondOrder, Molecule, assign_hydrogens

_ORGANIC = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
_AROMATIC_ORGANIC = {"b", "c", "n", "o", "p", "s"}
_BOND_SYMBOLS = {"-": BondOrder.SINGLE, "=": BondOrder.DOUBLE, "#": BondOrder.TRIPLE, ":": BondOrder.AROMATIC}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.atoms = []
        self.bonds = {}
        self.rings = {}

    def error(self, message):
        return SmilesSyntaxError(message, self.pos)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        text = self.text
        prev = None
        pending_bond = None
        branches = []
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "(":
                if prev is None:
                    raise UnbalancedParenthesis(self.pos)
                if pending_bond is not None:
                    raise self.error("bond before branch")
                branches.append(prev)
                self.pos += 1
            elif ch == ")":
                if not branches:
                    raise UnbalancedParenthesis(self.pos)
                if pending_bond is not None:
                    raise self.error("dangling bond")
                if text[self.pos - 1] == "(":
                    raise self.error("empty branch")
                prev = branches.pop()
                self.pos += 1
            elif ch in _BOND_SYMBOLS or ch in "/\\":
                if prev is None or pending_bond is not None:
                    raise self.error("unexpected bond symbol")
                pending_bond = _BOND_SYMBOLS.get(ch, "stereo")
                self.pos += 1
            elif ch == ".":
                raise MultipleFragments(self.pos)
            elif ch.isdigit() or ch == "%":
                if prev is None:
                    raise self.error("ring closure before any atom")
                digit = self.read_ring_label()
                self.ring_closure(prev, digit, pending_bond)
                pending_bond = None
            else:
                idx = self.read_atom()
                if prev is not None:
                    self.add_bond(prev, idx, pending_bond)
                elif pending_bond is not None:
                    raise self.error("bond before first atom")
                pending_bond = None
                prev = idx
        if branches:
            raise UnbalancedParenthesis(len(text))
        if pending_bond is not None:
            raise self.error("dangling bond")
        if self.rings:
            raise UnclosedRing(min(self.rings))
        bonds = [self.bonds[k] for k in sorted(self.bonds)]
        return Molecule(self.atoms, bonds)

    def read_ring_label(self):
        text = self.text
        if text[self.pos] == "%":
            label = text[self.pos + 1:self.pos + 3]
            if len(label) != 2 or not label.isdigit():
                raise self.error("bad %nn ring label")
            self.pos += 3
            return int(label)
        self.pos += 1
        return int(text[self.pos - 1])

    def ring_closure(self, idx, digit, bond):
        if digit not in self.rings:
            self.rings[digit] = (idx, bond)
            return
        other, first_bond = self.rings.pop(digit)
        if first_bond is not None and bond is not None and first_bond != bond:
            if "stereo" not in (first_bond, bond):
                raise self.error(f"conflicting bond orders on ring {digit}")
        order = bond if bond not in (None, "stereo") else first_bond
        if other == idx:
            raise self.error(f"ring {digit} closes on itself")
        self.add_bond(other, idx, order)

    def add_bond(self, a, b, order):
        key = (min(a, b), max(a, b))
        if key in self.bonds:
            raise self.error("duplicate bond")
        if order is None or order == "stereo":
            if self.atoms[a].aromatic and self.atoms[b].aromatic:
                order = BondOrder.AROMATIC
            else:
                order = BondOrder.SINGLE
        self.bonds[key] = Bond(key[0], key[1], order)

    def read_atom(self):
        text = self.text
        start = self.pos
        if text[start] == "[":
            return self.read_bracket()
        two = text[start:start + 2]
        if two in ("Cl", "Br"):
            self.pos += 2
            atom = Atom(ELEMENTS[two])
        elif text[start] in _ORGANIC:
            self.pos += 1
            atom = Atom(ELEMENTS[text[start]])
        elif text[start] in _AROMATIC_ORGANIC:
            self.pos += 1
            atom = Atom(ELEMENTS[text[start].upper()], aromatic=True)
        elif text[start].isalpha() or text[start] == "*":
            raise UnknownElement(text[start], start)
        else:
            raise self.error(f"unexpected character {text[start]!r}")
        self.atoms.append(atom)
        return len(self.atoms) - 1

    def read_bracket(self):
        text = self.text
        start = self.pos
        end = text.find("]", start)
        if end < 0:
            raise self.error("unterminated bracket atom")
        body = text[start + 1:end]
        i = 0
        isotope = None
        while i < len(body) and body[i].isdigit():
            i += 1
        if i:
            isotope = int(body[:i])
            if isotope <= 0:
                raise self.error("isotope must be positive")
        sym_start = i
        aromatic = False
        if i < len(body) and body[i].isupper():
            symbol = body[i]
            if i + 1 < len(body) and body[i + 1].islower() and body[i:i + 2] in ELEMENTS:
                symbol = body[i:i + 2]
            elif i + 1 < len(body) and body[i + 1].islower() and body[i + 1] not in "h":
                raise UnknownElement(body[i:i + 2], start + 1 + i)
            i += len(symbol)
        elif i < len(body) and body[i].islower():
            symbol = body[i]
            if i + 1 < len(body) and body[i + 1].islower():
                raise UnknownElement(body[i:i + 2], start + 1 + i)
            if symbol not in _AROMATIC_ORGANIC:
                raise UnknownElement(symbol, start + 1 + i)
            aromatic = True
            symbol = symbol.upper()
            i += 1
        else:
            raise UnknownElement(body[sym_start:sym_start + 1] or "", start + 1 + i)
        if symbol not in ELEMENTS:
            raise UnknownElement(symbol, start + 1 + sym_start)
        # chirality: @, @@, @TH1, @SP2, ... discarded
        if i < len(body) and body[i] == "@":
            while i < len(body) and body[i] == "@":
                i += 1
            if body[i:i + 2] in ("TH", "AL", "SP", "TB", "OH"):
                i += 2
                while i < len(body) and body[i].isdigit():
                    i += 1
        hcount = 0
        if i < len(body) and body[i] == "H":
            i += 1
            hcount = 1
            j = i
            while i < len(body) and body[i].isdigit():
                i += 1
            if i > j:
                hcount = int(body[j:i])
        charge = 0
        if i < len(body) and body[i] in "+-":
            sign = 1 if body[i] == "+" else -1
            i += 1
            j = i
            while i < len(body) and body[i].isdigit():
                i += 1
            if i > j:
                charge = sign * int(body[j:i])
            else:
                charge = sign
                while i < len(body) and body[i] == body[j - 1]:
                    charge += sign
                    i += 1
        if i < len(body) and body[i] == ":":
            i += 1
            while i < len(body) and body[i].isdigit():
                i += 1
        if i != len(body):
            raise self.error(f"malformed bracket atom [{body}]")
        self.pos = end + 1
        atom = Atom(ELEMENTS[symbol], aromatic=aromatic, formal_charge=charge,
                    explicit_h=hcount, isotope=isotope)
        self.atoms.append(atom)
        return len(self.atoms) - 1


def parse_smiles(text):
    """Parse a SMILES string into a :class:`Molecule`."""
    if text is None:
        raise EmptyInput()
    text = text.strip()
    if not text:
        raise EmptyInput()
    return _Parser(text).parse()


def _needs_bracket(mol, idx):
    atom = mol.atoms[idx]
    if atom.formal_charge or atom.isotope is not None:
        return True
    if not atom.element.organic_subset:
        return True
    implicit = assign_hydrogens(
        Atom(atom.element, aromatic=atom.aromatic), mol.bonds_of(idx)
    )
    return implicit != mol.hcounts[idx]


def atom_text(mol, idx):
    atom = mol.atoms[idx]
    symbol = atom.symbol.lower() if atom.aromatic else atom.symbol
    if not _needs_bracket(mol, idx):
        return symbol
    parts = ["["]
    if atom.isotope is not None:
        parts.append(str(atom.isotope))
    parts.append(symbol)
    h = mol.hcounts[idx]
    if h:
        parts.append("H" if h == 1 else f"H{h}")
    q = atom.formal_charge
    if q:
        sign = "+" if q > 0 else "-"
        parts.append(sign if abs(q) == 1 else f"{sign}{abs(q)}")
    parts.append("]")
    return "".join(parts)


def bond_text(mol, bond):
    a, b = mol.atoms[bond.begin], mol.atoms[bond.end]
    if bond.order is BondOrder.AROMATIC:
        return ""
    if bond.order is BondOrder.SINGLE:
        return "-" if a.aromatic and b.aromatic else ""
    return bond.order.value


def _ring_label(d):
    return str(d) if d < 10 else f"%{d:02d}"


def smiles_from_ranks(mol, rank):
    """Write ``mol`` by depth-first traversal, preferring low ``rank`` atoms.

    The output depends only on the graph and the rank order, which is what
    makes it usable for canonical output once the ranks are canonical.
    """
    n = len(mol.atoms)
    start = min(range(n), key=lambda i: rank[i])
    order_nb = [sorted(mol.neighbors(i), key=lambda j: rank[j]) for i in range(n)]

    # pass 1: spanning tree and ring-closure bonds
    visited = [False] * n
    children = [[] for _ in range(n)]
    ring_open = [[] for _ in range(n)]
    ring_close = [[] for _ in range(n)]
    used = set()
    visited[start] = True
    stack = [(start, -1, iter(order_nb[start]))]
    while stack:
        u, parent, it = stack[-1]
        pushed = False
        for v in it:
            key = (min(u, v), max(u, v))
            if key in used:
                continue
            used.add(key)
            if visited[v]:
                ring_open[v].append(u)
                ring_close[u].append(v)
            else:
                visited[v] = True
                children[u].append(v)
                stack.append((v, u, iter(order_nb[v])))
                pushed = True
                break
        if not pushed:
            stack.pop()

    # pass 2: emit
    out = []
    free = list(range(1, 100))
    open_labels = {}

    def emit(u, parent):
        out.append(atom_text(mol, u))
        released = []
        for v in sorted(ring_close[u], key=lambda j: rank[j]):
            label = open_labels.pop((v, u))
            out.append(_ring_label(label))
            released.append(label)
        for v in sorted(ring_open[u], key=lambda j: rank[j]):
            label = free.pop(0)
            open_labels[(u, v)] = label
            out.append(bond_text(mol, mol.bond_between(u, v)))
            out.append(_ring_label(label))
        for label in released:
            free.append(label)
        free.sort()
        kids = children[u]
        for k, v in enumerate(kids):
            branch = k < len(kids) - 1
            if branch:
                out.append("(")
            out.append(bond_text(mol, mol.bond_between(u, v)))
            emit(v, u)
            if branch:
                out.append(")")

    _emit_iterative(emit, start, n)
    return "".join(out)


def _emit_iterative(emit, start, n):
    # The emitter recurses once per chain atom; lift the limit for long chains.
    import sys

    limit = sys.getrecursionlimit()
    need = 4 * n + 200
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        emit(start, -1)
    finally:
        sys.setrecursionlimit(limit)


def write_smiles(mol):
    """Write ``mol`` in input atom order. Re-parses to an isomorphic graph."""
    return smiles_from_ranks(mol, list(range(len(mol.atoms))))
