"""Contracts for the shipped algorithms, one per algorithm type."""

from pathlib import Path

from ..chem import try_parse
from ..errors import IoFailure, ParameterValidation
from ..identifiers import AlgorithmType, ApplicationIdentifier
from ..params import ParamSpec, in_range
from ..registry import AlgorithmContract
from ..training.ngram import MODEL_FILENAME, NgramModel
from .samplers import (
    NgramSampler,
    PredictorSampler,
    PropertyWindowSampler,
    SeedGaSampler,
    ga_config_from_params,
)

NGRAM_ID = ApplicationIdentifier(AlgorithmType.GENERATION, "ngram_clm", "v1")
SEED_GA_ID = ApplicationIdentifier(AlgorithmType.CONDITIONAL_GENERATION, "seed_ga", "v1")
WINDOW_ID = ApplicationIdentifier(AlgorithmType.CONTROLLED_SAMPLING, "property_window", "v1")
PREDICTOR_ID = ApplicationIdentifier(AlgorithmType.PREDICTION, "property_predictor", "v1")


def _parses(value):
    return None if try_parse(value) is not None else "not a valid SMILES"


def _one_of(*choices):
    def check(value):
        return None if value in choices else f"must be one of {', '.join(choices)}"
    return check


def _known_property(context, name, key):
    if name not in context.properties:
        raise ParameterValidation(key, f"unknown property {name!r}")


def _make_ngram(params, model_dir, context):
    path = Path(model_dir) / MODEL_FILENAME
    try:
        model = NgramModel.from_text(path.read_text("utf-8"))
    except (OSError, ValueError) as exc:
        raise IoFailure(f"cannot load n-gram model from {path}: {exc}") from exc
    return NgramSampler(model, params["rng_seed"], params["max_length"])


def _make_seed_ga(params, model_dir, context):
    _known_property(context, params["objective"], "objective")
    return SeedGaSampler(ga_config_from_params(params), context.properties)


def _make_window(params, model_dir, context):
    _known_property(context, params["property"], "property")
    base_params = {k[len("base."):]: v for k, v in params.items() if k.startswith("base.")}
    base = context.registry.instantiate(
        params["base"], base_params, cache=context.cache, remote=context.remote,
        properties=context.properties,
    )
    return PropertyWindowSampler(base, params["property"], params["target"], params["tolerance"], context.properties)


def _make_predictor(params, model_dir, context):
    _known_property(context, params["property"], "property")
    inputs = [s for s in params["inputs"].split(",") if s.strip()] if params["inputs"] else []
    if params["inputs_file"]:
        try:
            lines = Path(params["inputs_file"]).read_text("utf-8").splitlines()
        except OSError as exc:
            raise ParameterValidation("inputs_file", str(exc)) from None
        inputs += [ln.strip() for ln in lines if ln.strip() and not ln.startswith("#")]
    return PredictorSampler(params["property"], [s.strip() for s in inputs], context.properties)


def builtin_contracts():
    return [
        AlgorithmContract(
            NGRAM_ID,
            (
                ParamSpec("rng_seed", "int", help="sampling seed; omit for entropy"),
                ParamSpec("max_length", "int", default=120, check=in_range(1),
                          help="maximum characters per sample"),
            ),
            _make_ngram,
            description="unconditional character n-gram chemical language model",
            requires_model=True,
            any_version=True,
        ),
        AlgorithmContract(
            SEED_GA_ID,
            (
                ParamSpec("seed_smiles", "string", required=True, check=_parses),
                ParamSpec("population_size", "int", default=100, check=in_range(1)),
                ParamSpec("generations", "int", default=30, check=in_range(0)),
                ParamSpec("similarity_threshold", "real", default=0.5, check=in_range(0, 1)),
                ParamSpec("objective", "string", default="esol"),
                ParamSpec("direction", "string", default="maximize", check=_one_of("maximize", "minimize")),
                ParamSpec("mutation_rate", "real", default=0.3, check=in_range(0, 1)),
                ParamSpec("tournament_size", "int", default=4, check=in_range(1)),
                ParamSpec("rng_seed", "int"),
            ),
            _make_seed_ga,
            description="seed-constrained genetic algorithm (similarity first, then objective)",
        ),
        AlgorithmContract(
            WINDOW_ID,
            (
                ParamSpec("base", "string", default=str(SEED_GA_ID), help="algorithm to filter"),
                ParamSpec("property", "string", default="esol"),
                ParamSpec("target", "real", required=True),
                ParamSpec("tolerance", "real", required=True, check=in_range(0, lo_open=True),
                          help="half-width of the window; inf disables filtering"),
            ),
            _make_window,
            description="keeps base samples whose property lies in target +- tolerance; "
                        "base parameters are passed as base.<name>=value",
            passthrough_prefix="base.",
        ),
        AlgorithmContract(
            PREDICTOR_ID,
            (
                ParamSpec("property", "string", required=True),
                ParamSpec("inputs", "string", default="", help="comma-separated SMILES"),
                ParamSpec("inputs_file", "string", help="file with one SMILES per line"),
            ),
            _make_predictor,
            description="evaluates a registered property on the given molecules",
            finite=True,
        ),
    ]


def register_builtins(registry):
    for contract in builtin_contracts():
        registry.register(contract)
    return registry
