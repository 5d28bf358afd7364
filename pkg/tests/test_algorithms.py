import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from discokit.algorithms import (
    GaConfig,
    PropertyWindowSampler,
    ga_run,
    mutate_molecule,
    predictor_algorithm,
)
from discokit.chem import canonical_smiles, morgan_fingerprint, parse_smiles, tanimoto
from discokit.chem.elements import allowed_valences
from discokit.errors import GenerationStalled, MutationStalled, UnknownProperty
from discokit.properties import PropertyDescriptor, PropertyRegistry, default_property_registry, esol
from discokit.registry import Sampler, default_registry, sample

from .conftest import isomorphic


class Constant(Sampler):
    def __init__(self, item):
        self.item = item

    def next_batch(self, n):
        return [self.item] * n


@pytest.fixture(scope="module")
def props():
    return default_property_registry()


def test_mutate_single_atom():
    rng = random.Random(0)
    for _ in range(200):
        child = mutate_molecule(parse_smiles("C"), rng, edits=("substitute", "toggle_bond", "append"))
        assert child.heavy_atom_count in (1, 2)


def test_mutate_deterministic():
    m = parse_smiles("CC(=O)Nc1ccc(O)cc1")
    a = [canonical_smiles(mutate_molecule(m, random.Random(s))) for s in range(20)]
    b = [canonical_smiles(mutate_molecule(m, random.Random(s))) for s in range(20)]
    assert a == b


def test_mutate_ethanol_validity():
    rng = random.Random(5)
    m = parse_smiles("CCO")
    for _ in range(1000):
        child = mutate_molecule(m, rng)
        again = parse_smiles(canonical_smiles(child))
        assert isomorphic(child, again)


def test_mutate_stalls():
    # a bracket atom is never edited, and a lone atom cannot be deleted
    with pytest.raises(MutationStalled):
        mutate_molecule(parse_smiles("[NH4+]"), random.Random(0))


def test_mutate_preserves_brackets():
    rng = random.Random(2)
    m = parse_smiles("C[N+](C)(C)C")
    for _ in range(100):
        child = mutate_molecule(m, rng)
        assert sum(a.formal_charge for a in child.atoms) == 1


@settings(max_examples=60)
@given(st.sampled_from(["CCO", "c1ccccc1C(=O)O", "CC#N", "FC(F)(F)c1ccncc1", "C1CCNCC1", "CS(=O)(=O)N"]),
       st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_mutation_chain_valence_conservation(smiles, seed, steps):
    rng = random.Random(seed)
    m = parse_smiles(smiles)
    for _ in range(steps):
        m = mutate_molecule(m, rng)
    for i, a in enumerate(m.atoms):
        if not a.aromatic:
            total = sum(b.order.valence for b in m.bonds_of(i)) + m.hcounts[i]
            assert total in allowed_valences(a.element, a.formal_charge)


def test_ga_config_validation():
    with pytest.raises(ValueError):
        GaConfig("CCO", similarity_threshold=1.5)
    with pytest.raises(ValueError):
        GaConfig("CCO", population_size=0)
    with pytest.raises(Exception):
        GaConfig("C1CC")


def test_ga_zero_generations(props):
    out = ga_run(GaConfig("CCO", generations=0, rng_seed=1), props)
    assert len(out) == 1
    assert out[0].molecule == "CCO"
    assert out[0].similarity_to_seed == 1.0 and out[0].feasible


def test_ga_delta_zero_all_feasible(props):
    out = ga_run(GaConfig("CCO", generations=5, similarity_threshold=0.0, rng_seed=3), props)
    assert all(s.feasible for s in out)


def test_ga_pinned(props):
    out = ga_run(GaConfig("CCO", generations=10, rng_seed=42), props)
    # pinned from a reference run
    assert out[0].molecule == "OCCO"
    assert out[0].similarity_to_seed == pytest.approx(0.625)
    assert out[0].objective_value == pytest.approx(0.4894484, abs=1e-9)
    assert len(out) == 11


def test_ga_output_consistent(props):
    config = GaConfig("CC(=O)Nc1ccc(O)cc1", generations=8, rng_seed=11)
    out = ga_run(config, props)
    seed_fp = morgan_fingerprint(parse_smiles(config.seed_smiles))
    assert len({s.molecule for s in out}) == len(out)
    for s in out:
        mol = parse_smiles(s.molecule)
        assert canonical_smiles(mol) == s.molecule
        assert s.similarity_to_seed == tanimoto(seed_fp, morgan_fingerprint(mol))
        assert s.objective_value == esol(mol)
        assert s.feasible == (s.similarity_to_seed >= config.similarity_threshold)
    keys = [(not s.feasible, -s.objective_value, -s.similarity_to_seed, s.molecule) for s in out]
    assert keys == sorted(keys)


def test_ga_minimize(props):
    out = ga_run(GaConfig("CCO", generations=10, direction="minimize", rng_seed=4), props)
    feasible = [s for s in out if s.feasible]
    assert feasible[0].objective_value == min(s.objective_value for s in feasible)


def test_ga_elitism_monotone(props):
    best = []

    def record(gen, scored):
        best.append(scored.objective_value if scored.feasible else float("-inf"))

    ga_run(GaConfig("CC(=O)Nc1ccc(O)cc1", generations=15, rng_seed=8), props, on_generation=record)
    assert len(best) == 15
    assert all(b >= a for a, b in zip(best, best[1:]))


def test_ga_scale_invariance():
    def registry(scale):
        reg = PropertyRegistry()
        reg.register(PropertyDescriptor("esol", "", ""), lambda m: scale * esol(m))
        return reg

    config = GaConfig("CC(=O)Nc1ccc(O)cc1", generations=8, rng_seed=21)
    a = [s.molecule for s in ga_run(config, registry(1.0))]
    b = [s.molecule for s in ga_run(config, registry(7.5))]
    assert a == b


def test_ga_unknown_objective(props):
    with pytest.raises(UnknownProperty):
        ga_run(GaConfig("CCO", objective="qed"), props)


def test_window_passthrough(props):
    base = Constant("CCO")
    win = PropertyWindowSampler(base, "esol", 0.0, float("inf"), props)
    assert win.next_batch(3) == ["CCO"] * 3


def test_window_point_mass(props):
    target = esol(parse_smiles("CCO"))
    win = PropertyWindowSampler(Constant("CCO"), "esol", target, 0.01, props)
    assert win.next_batch(4) == ["CCO"] * 4


def test_window_stalls(props):
    target = esol(parse_smiles("CCO")) + 10
    with pytest.raises(GenerationStalled):
        PropertyWindowSampler(Constant("CCO"), "esol", target, 0.01, props).next_batch(2)


def test_window_requires_positive_tolerance(props):
    with pytest.raises(ValueError):
        PropertyWindowSampler(Constant("CCO"), "esol", 0.0, 0.0, props)


def test_window_subset_of_base():
    reg = default_registry()
    base_params = {"seed_smiles": "CC(=O)Nc1ccc(O)cc1", "rng_seed": 5, "generations": 5}
    base = sample(reg.instantiate("conditional_generation/seed_ga/v1", base_params), 60)
    params = {"target": -1.0, "tolerance": 0.6, **{f"base.{k}": v for k, v in base_params.items()}}
    win = sample(reg.instantiate("controlled_sampling/property_window/v1", params), 5)
    assert all(abs(esol(parse_smiles(s)) + 1.0) <= 0.6 for s in win)
    assert not Counter(win) - Counter(base)


def test_window_inf_via_registry():
    reg = default_registry()
    base_params = {"seed_smiles": "CCO", "rng_seed": 9, "generations": 3}
    base = sample(reg.instantiate("conditional_generation/seed_ga/v1", base_params), 6)
    params = {"target": 0, "tolerance": "inf", **{f"base.{k}": v for k, v in base_params.items()}}
    assert sample(reg.instantiate("controlled_sampling/property_window/v1", params), 6) == base


def test_predictor(props):
    assert predictor_algorithm("esol", [], props) == []
    [rec] = predictor_algorithm("molecular_weight", ["CCO"], props)
    assert rec.value == pytest.approx(46.069, abs=1e-3)
    records = predictor_algorithm("molecular_weight", ["CCO", "C1CC", "C"], props)
    assert [r.ok for r in records] == [True, False, True]
    with pytest.raises(UnknownProperty):
        predictor_algorithm("qed", ["C"], props)


def test_predictor_inputs_file(tmp_path):
    path = tmp_path / "in.smi"
    path.write_text("CCO\n# skip\nC\n")
    s = default_registry().instantiate("prediction/property_predictor/v1",
                                       {"property": "esol", "inputs_file": str(path), "inputs": "N"})
    assert [r.molecule for r in sample(s, 10)] == ["N", "CCO", "C"]


def test_ngram_sampler_validity_filter(tmp_path):
    from discokit.algorithms import NgramSampler
    from discokit.training import train_ngram

    model = train_ngram(["CCO", "c1ccccc1", "CC(=O)O", "CCN"], order=2)
    out = NgramSampler(model, rng_seed=1).next_batch(30)
    assert len(out) == 30
    assert all(parse_smiles(s) for s in out)
    assert out == NgramSampler(model, rng_seed=1).next_batch(30)
