"""Training pipelines and the character n-gram language model."""

from .ngram import (
    MODEL_FILENAME,
    NgramModel,
    ngram_sample,
    train_ngram,
    validation_perplexity,
)
from .pipeline import (
    TrainerDescriptor,
    TrainingReport,
    TrainingTriplet,
    get_trainer,
    list_trainers,
    read_corpus,
    run_training,
)

__all__ = [
    "MODEL_FILENAME",
    "NgramModel",
    "TrainerDescriptor",
    "TrainingReport",
    "TrainingTriplet",
    "get_trainer",
    "list_trainers",
    "ngram_sample",
    "read_corpus",
    "run_training",
    "train_ngram",
    "validation_perplexity",
]
