"""Seed-constrained genetic algorithm for local chemical-space exploration.

Fitness is lexicographic: molecules at least ``similarity_threshold``
Tanimoto-similar to the seed beat all others, then the objective decides
(in the configured direction), then similarity. Only comparisons are used,
so any positive rescaling of the objective leaves the ranking unchanged.
"""

import random
from dataclasses import dataclass
from enum import Enum

from ..chem import canonical_smiles, morgan_fingerprint, parse_smiles, tanimoto
from .mutate import mutate_molecule


class Direction(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


@dataclass(frozen=True)
class GaConfig:
    seed_smiles: str
    population_size: int = 100
    generations: int = 30
    similarity_threshold: float = 0.5
    objective: str = "esol"
    direction: Direction = Direction.MAXIMIZE
    mutation_rate: float = 0.3
    tournament_size: int = 4
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction(self.direction))
        if not 0.0 <= self.similarity_threshold <= 1.0:
            raise ValueError("similarity_threshold must lie in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if self.population_size < 1 or self.tournament_size < 1:
            raise ValueError("population_size and tournament_size must be positive")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")
        parse_smiles(self.seed_smiles)


@dataclass(frozen=True)
class ScoredMolecule:
    molecule: str
    similarity_to_seed: float
    objective_value: float
    feasible: bool


class _Evaluator:
    def __init__(self, config, properties, memo=None):
        self.config = config
        self.objective = properties.evaluator(config.objective)
        self.seed_fp = morgan_fingerprint(parse_smiles(config.seed_smiles))
        self.sign = 1.0 if config.direction is Direction.MAXIMIZE else -1.0
        self._seen = {} if memo is None else memo

    def score(self, mol):
        smiles = canonical_smiles(mol)
        hit = self._seen.get(smiles)
        if hit is None:
            sim = tanimoto(self.seed_fp, morgan_fingerprint(mol))
            value = float(self.objective(mol))
            hit = ScoredMolecule(smiles, sim, value, sim >= self.config.similarity_threshold)
            self._seen[smiles] = hit
        return hit

    def key(self, scored):
        """Larger is better."""
        return (scored.feasible, self.sign * scored.objective_value, scored.similarity_to_seed)

    def rank_key(self, scored):
        # full order: fitness descending, then canonical SMILES for ties
        feasible, obj, sim = self.key(scored)
        return (not feasible, -obj, -sim, scored.molecule)


def ga_run(config, properties, rng=None, on_generation=None, memo=None):
    """Run the GA and return the final population, deduplicated and ranked.

    ``rng`` overrides the generator seeded from ``config.rng_seed`` (used by
    the streaming sampler). ``on_generation(index, best)`` is called after
    each generation with the best individual. ``memo`` is a score cache
    keyed by canonical SMILES that may be shared between runs of one config.
    """
    evaluator = _Evaluator(config, properties, memo)
    rng = random.Random(config.rng_seed) if rng is None else rng
    seed_mol = parse_smiles(config.seed_smiles)
    seed_scored = evaluator.score(seed_mol)
    population = [(seed_mol, seed_scored)] * config.population_size

    def tournament():
        contenders = [rng.choice(population) for _ in range(config.tournament_size)]
        return max(contenders, key=lambda item: evaluator.key(item[1]))

    for generation in range(config.generations):
        elite = max(population, key=lambda item: evaluator.key(item[1]))
        nxt = [elite]
        while len(nxt) < config.population_size:
            mol, scored = tournament()
            if rng.random() < config.mutation_rate:
                mol = mutate_molecule(mol, rng)
                scored = evaluator.score(mol)
            nxt.append((mol, scored))
        population = nxt
        if on_generation is not None:
            best = max(population, key=lambda item: evaluator.key(item[1]))
            on_generation(generation, best[1])

    distinct = {}
    for _, scored in population:
        distinct.setdefault(scored.molecule, scored)
    return sorted(distinct.values(), key=evaluator.rank_key)
