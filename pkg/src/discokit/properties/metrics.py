"""Validity, uniqueness and novelty of generated SMILES."""

from ..chem import canonical_smiles, try_parse
from ..errors import EmptyBatch, EmptyTrainingSet, NoValidSamples


def _canonical_valid(samples):
    out = []
    for s in samples:
        mol = try_parse(s)
        if mol is not None:
            out.append(canonical_smiles(mol))
    return out


def metric_validity(samples):
    samples = list(samples)
    if not samples:
        raise EmptyBatch("no samples")
    return len(_canonical_valid(samples)) / len(samples)


def metric_uniqueness(samples):
    samples = list(samples)
    if not samples:
        raise EmptyBatch("no samples")
    valid = _canonical_valid(samples)
    if not valid:
        raise NoValidSamples("no valid samples")
    return len(set(valid)) / len(valid)


def metric_novelty(samples, training_set):
    samples = list(samples)
    training_set = list(training_set)
    if not samples:
        raise EmptyBatch("no samples")
    if not training_set:
        raise EmptyTrainingSet("training set is empty")
    distinct = set(_canonical_valid(samples))
    if not distinct:
        raise NoValidSamples("no valid samples")
    known = set(_canonical_valid(training_set))
    return len(distinct - known) / len(distinct)
