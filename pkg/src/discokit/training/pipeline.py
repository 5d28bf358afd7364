"""Training pipelines configured by a (model, training, data) triplet."""

import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path

from ..chem import try_parse
from ..errors import EmptyCorpus, IoFailure, ParameterValidation, TripletValidation, UnknownTrainer
from ..params import ParamSpec, in_range, validate_params
from .ngram import BEGIN, END, MODEL_FILENAME, train_ngram, validation_perplexity

logger = logging.getLogger(__name__)

SECTIONS = ("model", "training", "data")


@dataclass(frozen=True)
class TrainingTriplet:
    model_hparams: dict
    training_params: dict
    data_params: dict

    @classmethod
    def from_mapping(cls, config):
        """Build from a mapping with ``model``, ``training`` and ``data`` sections."""
        if not isinstance(config, dict):
            raise TripletValidation("<root>", "config must be a mapping")
        for section in SECTIONS:
            if section not in config:
                raise TripletValidation(section, "section missing")
            if not isinstance(config[section] or {}, dict):
                raise TripletValidation(section, "section must be a mapping")
        extra = set(config) - set(SECTIONS)
        if extra:
            raise TripletValidation(sorted(extra)[0], "unknown section")
        return cls(dict(config["model"] or {}), dict(config["training"] or {}), dict(config["data"] or {}))

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        try:
            text = path.read_text("utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot read config {path}: {exc}") from exc
        if path.suffix in (".yaml", ".yml"):
            import yaml

            config = yaml.safe_load(text)
        else:
            try:
                config = json.loads(text)
            except json.JSONDecodeError as exc:
                raise TripletValidation("<root>", f"invalid JSON: {exc}") from None
        return cls.from_mapping(config)

    def sections(self):
        return {"model": self.model_hparams, "training": self.training_params, "data": self.data_params}


@dataclass
class TrainingReport:
    trainer: str
    triplet: dict
    corpus_size: int
    validation_size: int
    validation_perplexity: float
    artifact_dir: Path
    rejected_lines: int = 0

    def to_dict(self):
        return {
            "trainer": self.trainer,
            "triplet": self.triplet,
            "corpus_size": self.corpus_size,
            "validation_size": self.validation_size,
            "validation_perplexity": self.validation_perplexity,
            "artifact_dir": str(self.artifact_dir),
            "rejected_lines": self.rejected_lines,
        }


@dataclass(frozen=True)
class TrainerDescriptor:
    name: str
    description: str
    schema: dict = field(default_factory=dict)
    notes: str = ""

    def required_keys(self):
        return [s.name for specs in self.schema.values() for s in specs if s.required]

    def to_dict(self):
        return {
            "name": self.name,
            "description": self.description,
            "schema": {sec: [s.to_dict() for s in specs] for sec, specs in self.schema.items()},
            "notes": self.notes,
        }


NGRAM_SCHEMA = {
    "model": (
        ParamSpec("order", "int", required=True, help="context length in characters",
                  check=in_range(1, 5)),
        ParamSpec("laplace_alpha", "real", default=0.01, help="additive smoothing pseudo-count",
                  check=in_range(0, lo_open=True)),
    ),
    "training": (
        ParamSpec("rng_seed", "int", default=0, help="seed for the train/validation split"),
        ParamSpec("max_corpus_lines", "int", default=None, help="use only the first N valid lines",
                  check=in_range(1)),
        ParamSpec("output_dir", "string", default=None, help="artifact directory"),
    ),
    "data": (
        ParamSpec("corpus_path", "string", required=True, help="one SMILES per line, # comments"),
        ParamSpec("validation_fraction", "real", default=0.1, help="held-out share of the corpus",
                  check=in_range(0, 1, hi_open=True)),
    ),
}

_TRAINERS = {
    "ngram_clm": TrainerDescriptor(
        "ngram_clm",
        "character n-gram chemical language model (generation/ngram_clm)",
        NGRAM_SCHEMA,
        notes="seed_ga, property_window and property_predictor are model-free and have no trainer",
    ),
}


def list_trainers():
    return [_TRAINERS[k] for k in sorted(_TRAINERS)]


def get_trainer(name):
    try:
        return _TRAINERS[name]
    except KeyError:
        raise UnknownTrainer(f"unknown trainer {name!r}; available: {', '.join(sorted(_TRAINERS))}") from None


def validate_triplet(descriptor, triplet):
    out = {}
    for section, values in triplet.sections().items():
        try:
            out[section] = validate_params(descriptor.schema[section], values)
        except ParameterValidation as exc:
            raise TripletValidation(f"{section}.{exc.name}", exc.reason) from None
    return out


def read_corpus(path, max_lines=None):
    """Return (valid SMILES lines, number of rejected lines)."""
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read corpus {path}: {exc}") from exc
    kept, rejected = [], 0
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if BEGIN in line or END in line or try_parse(line) is None:
            rejected += 1
            continue
        kept.append(line)
        if max_lines is not None and len(kept) >= max_lines:
            break
    if rejected:
        logger.warning("rejected %d corpus line(s) from %s", rejected, path)
    return kept, rejected


def _train_ngram_clm(config, output_dir):
    corpus, rejected = read_corpus(config["data"]["corpus_path"], config["training"]["max_corpus_lines"])
    if not corpus:
        raise EmptyCorpus(f"no valid SMILES in {config['data']['corpus_path']}")
    rng = random.Random(config["training"]["rng_seed"])
    shuffled = list(corpus)
    rng.shuffle(shuffled)
    n_val = int(len(shuffled) * config["data"]["validation_fraction"])
    n_val = min(n_val, len(shuffled) - 1)
    held_out, train = shuffled[:n_val], shuffled[n_val:]
    model = train_ngram(train, config["model"]["order"], config["model"]["laplace_alpha"])
    # with nothing held out, report the training-set perplexity
    perplexity = validation_perplexity(model, held_out or train)
    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / MODEL_FILENAME).write_text(model.to_text(), "utf-8", newline="\n")
    summary = {
        "trainer": "ngram_clm",
        "triplet": config,
        "corpus_size": len(corpus),
        "validation_size": len(held_out),
        "validation_perplexity": round(perplexity, 12),
    }
    (output_dir / "training.json").write_text(
        json.dumps(summary, sort_keys=True, indent=2) + "\n", "utf-8", newline="\n"
    )
    return TrainingReport("ngram_clm", config, len(corpus), len(held_out), perplexity, output_dir, rejected)


def run_training(trainer_name, triplet, output_dir=None):
    """Validate ``triplet`` and run the named trainer, writing its artifact directory."""
    descriptor = get_trainer(trainer_name)
    config = validate_triplet(descriptor, triplet)
    target = output_dir or config["training"]["output_dir"]
    if target is None:
        target = Path.cwd() / f"{trainer_name}-artifact"
    try:
        return _train_ngram_clm(config, Path(target))
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
