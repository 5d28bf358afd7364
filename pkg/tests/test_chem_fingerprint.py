import pytest
from hypothesis import given, settings, strategies as st

from discokit.chem import Fingerprint, morgan_fingerprint, parse_smiles, similarity, tanimoto
from discokit.chem.fingerprint import fnv1a_64
from discokit.errors import IncomparableFingerprints

from .conftest import shuffled


def test_fnv1a_reference_vectors():
    # published FNV-1a 64-bit test vectors
    assert fnv1a_64("") == 0xCBF29CE484222325
    assert fnv1a_64("a") == 0xAF63DC4C8601EC8C
    assert fnv1a_64("foobar") == 0x85944171F73967E8


def test_methane_single_bit():
    assert morgan_fingerprint(parse_smiles("C"), radius=2).count() == 1


def test_order_invariance():
    assert morgan_fingerprint(parse_smiles("CCO")) == morgan_fingerprint(parse_smiles("OCC"))


def test_shuffle_invariance(corpus_100, rng):
    for s in corpus_100[::5]:
        m = parse_smiles(s)
        assert morgan_fingerprint(shuffled(m, rng)) == morgan_fingerprint(m), s


def test_width_must_be_power_of_two():
    with pytest.raises(ValueError):
        morgan_fingerprint(parse_smiles("CC"), width=1000)


def test_radius_grows_bit_set():
    m = parse_smiles("CC(=O)Nc1ccc(O)cc1")
    counts = [morgan_fingerprint(m, radius=r).count() for r in range(4)]
    assert counts == sorted(counts)
    assert morgan_fingerprint(m, radius=0).bits & ~morgan_fingerprint(m, radius=2).bits == 0


def test_tanimoto_examples():
    f = Fingerprint.from_indices([1, 2, 3])
    assert tanimoto(f, f) == 1.0
    assert tanimoto(f, Fingerprint.from_indices([4, 5])) == 0.0
    assert tanimoto(f, Fingerprint.from_indices([2, 3, 4])) == 0.5
    empty = Fingerprint(0)
    assert tanimoto(empty, empty) == 1.0
    assert tanimoto(empty, f) == 0.0


def test_tanimoto_incomparable():
    with pytest.raises(IncomparableFingerprints):
        tanimoto(Fingerprint(1, width=1024), Fingerprint(1, width=2048))
    with pytest.raises(IncomparableFingerprints):
        tanimoto(Fingerprint(1, radius=1), Fingerprint(1, radius=2))


def test_similarity_helper():
    assert similarity("CCO", "OCC") == 1.0
    assert 0.0 <= similarity("CCO", "c1ccccc1") < 1.0


bitsets = st.sets(st.integers(0, 2047), max_size=64)


@settings(max_examples=1000)
@given(bitsets, bitsets)
def test_tanimoto_properties(a, b):
    fa, fb = Fingerprint.from_indices(a), Fingerprint.from_indices(b)
    t = tanimoto(fa, fb)
    assert 0.0 <= t <= 1.0
    assert t == tanimoto(fb, fa)
    assert tanimoto(fa, fa) == 1.0
    if a | b:
        assert t == len(a & b) / len(a | b)
