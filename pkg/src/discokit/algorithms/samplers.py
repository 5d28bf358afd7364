"""Sampler implementations behind the four shipped algorithms."""

import math
import random

from ..chem import parse_smiles, try_parse
from ..errors import DiscoError, GenerationStalled
from ..properties import evaluate_batch
from ..registry import RETRY_FACTOR, Sampler
from ..training.ngram import ngram_sample
from .ga import GaConfig, ga_run


class NgramSampler(Sampler):
    """Unconditional sampling from an n-gram model, filtered to valid SMILES."""

    def __init__(self, model, rng_seed=None, max_length=120):
        self.model = model
        self.rng = random.Random(rng_seed)
        self.max_length = max_length

    def next_batch(self, n):
        out = []
        budget = RETRY_FACTOR * n
        while len(out) < n:
            if budget == 0:
                raise GenerationStalled(f"no valid SMILES within {RETRY_FACTOR * n} draws")
            budget -= 1
            candidate = ngram_sample(self.model, self.rng, self.max_length)
            if candidate and try_parse(candidate) is not None:
                out.append(candidate)
        return out


class SeedGaSampler(Sampler):
    """Stream of GA results; each round continues the same random stream."""

    def __init__(self, config, properties):
        self.config = config
        self.properties = properties
        self.rng = random.Random(config.rng_seed)
        self._queue = []
        self._memo = {}
        self.last_scored = []

    def next_batch(self, n):
        out = []
        while len(out) < n:
            if not self._queue:
                ranked = ga_run(self.config, self.properties, rng=self.rng, memo=self._memo)
                self.last_scored.extend(ranked)
                self._queue = list(ranked)
            take = self._queue[: n - len(out)]
            del self._queue[: len(take)]
            out.extend(s.molecule for s in take)
        return out


class PropertyWindowSampler(Sampler):
    """Pass through only items whose property lies in ``target +- tolerance``."""

    def __init__(self, base, property_name, target, tolerance, properties):
        if not tolerance > 0:
            raise ValueError("tolerance must be positive")
        self.base = base
        self.evaluate = properties.evaluator(property_name)
        self.lo = target - tolerance
        self.hi = target + tolerance
        self.passthrough = math.isinf(tolerance)

    @property
    def exhausted(self):
        return bool(getattr(self.base, "exhausted", False))

    def accepts(self, smiles):
        if self.passthrough:
            return True
        try:
            value = float(self.evaluate(parse_smiles(smiles)))
        except DiscoError:
            return False
        return self.lo <= value <= self.hi

    def next_batch(self, n):
        out = []
        budget = RETRY_FACTOR * n
        while len(out) < n:
            if budget == 0:
                raise GenerationStalled(
                    f"no sample inside [{self.lo:g}, {self.hi:g}] within {RETRY_FACTOR * n} draws"
                )
            items = self.base.next_batch(1)
            if not items:
                break
            budget -= 1
            if self.accepts(items[0]):
                out.append(items[0])
        return out


class PredictorSampler(Sampler):
    """Finite stream of property records over a fixed list of inputs."""

    def __init__(self, property_name, inputs, properties):
        properties.evaluator(property_name)
        self.property_name = property_name
        self.inputs = list(inputs)
        self.properties = properties
        self._pos = 0

    @property
    def exhausted(self):
        return self._pos >= len(self.inputs)

    def next_batch(self, n):
        chunk = self.inputs[self._pos:self._pos + n]
        self._pos += len(chunk)
        return evaluate_batch(self.properties, self.property_name, chunk)


def property_window_sample(base, property_name, target, tolerance, registry):
    return PropertyWindowSampler(base, property_name, target, tolerance, registry)


def predictor_algorithm(property_name, inputs, registry):
    """Evaluate ``property_name`` on each input; failures become error records."""
    return evaluate_batch(registry, property_name, list(inputs))


def ga_config_from_params(params):
    return GaConfig(
        seed_smiles=params["seed_smiles"],
        population_size=params["population_size"],
        generations=params["generations"],
        similarity_threshold=params["similarity_threshold"],
        objective=params["objective"],
        direction=params["direction"],
        mutation_rate=params["mutation_rate"],
        tournament_size=params["tournament_size"],
        rng_seed=params["rng_seed"] if params["rng_seed"] is not None else random.SystemRandom().randrange(2**32),
    )
