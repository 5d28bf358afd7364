import networkx as nx
import pytest

from discokit.chem import BondOrder, parse_smiles, perceive_rings, write_smiles
from discokit.chem.molecule import MAX_HEAVY_ATOMS
from discokit.errors import (
    EmptyInput,
    MultipleFragments,
    SmilesError,
    TooManyAtoms,
    UnbalancedParenthesis,
    UnclosedRing,
    UnknownElement,
    ValenceViolation,
)

from .conftest import isomorphic, to_networkx


def test_ethanol_hydrogens():
    m = parse_smiles("CCO")
    assert [a.symbol for a in m.atoms] == ["C", "C", "O"]
    assert len(m.bonds) == 2
    assert all(b.order is BondOrder.SINGLE for b in m.bonds)
    assert m.hcounts == (3, 2, 1)


def test_benzene_aromatic():
    m = parse_smiles("c1ccccc1")
    assert all(a.aromatic for a in m.atoms)
    assert len(m.bonds) == 6
    assert all(b.order is BondOrder.AROMATIC and b.in_ring for b in m.bonds)
    assert m.hcounts == (1,) * 6


@pytest.mark.parametrize(
    "smiles, hcounts",
    [
        ("C=O", (2, 0)),
        ("C#N", (1, 0)),
        ("CS(=O)(=O)C", (3, 0, 0, 0, 3)),  # S valence 6
        ("CP(C)C", (3, 0, 3, 3)),
        ("c1ccoc1", (1, 1, 1, 0, 1)),  # furan O donates a lone pair
        ("c1cc[nH]c1", (1, 1, 1, 1, 1)),
        ("c1ccncc1", (1, 1, 1, 0, 1, 1)),
        ("c1ccc2ccccc2c1", (1, 1, 1, 0, 1, 1, 1, 1, 0, 1)),
        ("[NH4+]", (4,)),
        ("C[N+](=O)[O-]", (3, 0, 0, 0)),
        ("[O-]C", (0, 3)),
        ("BC", (2, 3)),
    ],
)
def test_implicit_hydrogens(smiles, hcounts):
    assert parse_smiles(smiles).hcounts == hcounts


@pytest.mark.parametrize(
    "smiles, exc",
    [
        ("", EmptyInput),
        ("   ", EmptyInput),
        ("C1CC", UnclosedRing),
        ("CC(C", UnbalancedParenthesis),
        ("CC)C", UnbalancedParenthesis),
        ("CXC", UnknownElement),
        ("[Xe]", UnknownElement),
        ("C(C)(C)(C)(C)C", ValenceViolation),
        ("FF(F)", ValenceViolation),
        ("CC.O", MultipleFragments),
        ("C=1CC1=C", ValenceViolation),
        ("fC", SmilesError),
    ],
)
def test_parse_errors(smiles, exc):
    with pytest.raises(exc):
        parse_smiles(smiles)


def test_error_positions_and_digits():
    with pytest.raises(UnclosedRing) as info:
        parse_smiles("C1CC")
    assert info.value.digit == 1
    with pytest.raises(UnknownElement) as info:
        parse_smiles("CCXC")
    assert info.value.position == 2
    with pytest.raises(ValenceViolation) as info:
        parse_smiles("CC(C)(C)(C)(C)")
    assert info.value.atom_index == 1


def test_error_codes():
    with pytest.raises(SmilesError) as info:
        parse_smiles("C1CC")
    assert info.value.code == "E_PARSE"


def test_atom_cap():
    parse_smiles("C" * MAX_HEAVY_ATOMS)
    with pytest.raises(TooManyAtoms):
        parse_smiles("C" * (MAX_HEAVY_ATOMS + 1))


def test_bracket_atoms():
    m = parse_smiles("[13CH3][N+](C)(C)C")
    assert m.atoms[0].isotope == 13
    assert m.atoms[0].explicit_h == 3
    assert m.atoms[1].formal_charge == 1
    m = parse_smiles("[O--]")
    assert m.atoms[0].formal_charge == -2


def test_stereo_markers_discarded():
    a = parse_smiles("F/C=C/F")
    b = parse_smiles("FC=CF")
    assert isomorphic(a, b)
    a = parse_smiles("N[C@@H](C)C(=O)O")
    b = parse_smiles("NC(C)C(=O)O")
    assert isomorphic(a, b)


def test_percent_ring_labels():
    assert isomorphic(parse_smiles("C%10CC%10"), parse_smiles("C1CC1"))
    assert isomorphic(parse_smiles("C%12CCCCC%12"), parse_smiles("C1CCCCC1"))


def test_explicit_bond_symbols():
    m = parse_smiles("C-C=C-C#N")
    orders = [b.order for b in m.bonds]
    assert orders == [BondOrder.SINGLE, BondOrder.DOUBLE, BondOrder.SINGLE, BondOrder.TRIPLE]


def test_ring_closure_with_bond_order():
    m = parse_smiles("C=1CCC1")
    assert sorted(b.order.value for b in m.bonds) == ["-", "-", "-", "="]


@pytest.mark.parametrize(
    "smiles, ring, chain",
    [("C1CC1", 3, 0), ("CCO", 0, 2), ("C1CC1C", 3, 1), ("C1CC1C1CC1", 6, 1), ("c1ccc2ccccc2c1", 11, 0)],
)
def test_ring_perception(smiles, ring, chain):
    m = perceive_rings(parse_smiles(smiles))
    assert sum(b.in_ring for b in m.bonds) == ring
    assert sum(not b.in_ring for b in m.bonds) == chain


def test_ring_flags_match_networkx_bridges(corpus_100):
    for s in corpus_100:
        m = parse_smiles(s)
        bridges = {tuple(sorted(e)) for e in nx.bridges(to_networkx(m))}
        for b in m.bonds:
            assert b.in_ring == (b.key not in bridges), s


def test_write_single_atom():
    assert write_smiles(parse_smiles("C")) == "C"


def test_write_cyclopropane():
    again = parse_smiles(write_smiles(parse_smiles("C1CC1")))
    assert len(again.atoms) == 3 and len(again.bonds) == 3


@pytest.mark.parametrize(
    "smiles",
    ["CCO", "C[N+](=O)[O-]", "[13CH4]", "c1cc[nH]c1", "OC(=O)c1ccccc1", "C1CC2CCC1CC2", "C#Cc1ccccc1Br"],
)
def test_round_trip_isomorphic(smiles):
    m = parse_smiles(smiles)
    assert isomorphic(m, parse_smiles(write_smiles(m)))


def test_round_trip_corpus(corpus_100):
    for s in corpus_100:
        m = parse_smiles(s)
        assert isomorphic(m, parse_smiles(write_smiles(m))), s


def test_valence_conservation(corpus_100):
    from discokit.chem.elements import allowed_valences

    for s in corpus_100:
        m = parse_smiles(s)
        for i, a in enumerate(m.atoms):
            if a.aromatic:
                continue
            total = sum(b.order.valence for b in m.bonds_of(i)) + m.hcounts[i]
            assert total in allowed_valences(a.element, a.formal_charge), (s, i)
