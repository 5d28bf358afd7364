"""Canonical atom ranking and canonical SMILES.

Ranks start from atom invariants and are refined by neighbour ranks until
stable. Remaining ties are broken by trying each member of the first tied
class and keeping the lexicographically smallest output string, so the result
never depends on the input atom order.
"""

from .smiles import smiles_from_ranks

_BOND_CODE = {"-": 1, "=": 2, "#": 3, ":": 4}

# Upper bound on tie-break leaves explored; only hit by highly symmetric cages.
MAX_BRANCHES = 20000


def atom_invariant(mol, idx):
    atom = mol.atoms[idx]
    return (
        mol.degree(idx),
        atom.element.atomic_number,
        atom.aromatic,
        atom.formal_charge,
        mol.hcounts[idx],
        atom.isotope or 0,
    )


def _ranks_from_keys(keys):
    distinct = sorted(set(keys))
    index = {k: r for r, k in enumerate(distinct)}
    return [index[k] for k in keys]


def _refine(mol, ranks, neigh):
    n_classes = len(set(ranks))
    while True:
        keys = [
            (ranks[i], tuple(sorted((code, ranks[j]) for j, code in neigh[i])))
            for i in range(len(ranks))
        ]
        new = _ranks_from_keys(keys)
        n_new = len(set(new))
        if n_new == n_classes:
            return new
        ranks, n_classes = new, n_new


def _neighbour_codes(mol):
    return [
        [(j, _BOND_CODE[mol.bond_between(i, j).order.value]) for j in mol.neighbors(i)]
        for i in range(len(mol.atoms))
    ]


def initial_ranks(mol):
    neigh = _neighbour_codes(mol)
    ranks = _ranks_from_keys([atom_invariant(mol, i) for i in range(len(mol.atoms))])
    return _refine(mol, ranks, neigh), neigh


def _interchangeable_leaves(mol, candidates):
    """Keep one representative per group of tied leaves on the same parent.

    Swapping two such leaves is an automorphism, so they produce identical
    strings and only one needs exploring.
    """
    kept = []
    seen_parents = set()
    for c in candidates:
        if mol.degree(c) == 1:
            parent = mol.neighbors(c)[0]
            if parent in seen_parents:
                continue
            seen_parents.add(parent)
        kept.append(c)
    return kept


def canonical_ranks(mol):
    """Return (ranks, smiles) for the canonical total order of atoms."""
    ranks, neigh = initial_ranks(mol)
    n = len(ranks)
    best = [None, None]
    budget = [MAX_BRANCHES]

    def search(ranks):
        if len(set(ranks)) == n:
            budget[0] -= 1
            s = smiles_from_ranks(mol, ranks)
            if best[0] is None or s < best[0]:
                best[0], best[1] = s, ranks
            return
        counts = {}
        for r in ranks:
            counts[r] = counts.get(r, 0) + 1
        target = min(r for r, c in counts.items() if c > 1)
        candidates = [i for i in range(n) if ranks[i] == target]
        candidates = _interchangeable_leaves(mol, candidates)
        for c in candidates:
            if budget[0] <= 0 and best[0] is not None:
                return
            # individualise c: it keeps the class rank, the rest move behind it
            split = [2 * r + (1 if (r == target and i != c) else 0) for i, r in enumerate(ranks)]
            search(_refine(mol, _ranks_from_keys(split), neigh))

    search(ranks)
    return best[1], best[0]


def canonical_smiles(mol):
    """Deterministic spelling shared by every atom ordering of ``mol``."""
    return canonical_ranks(mol)[1]
