"""Command-line entry points: inference, trainer, saving, upload, casestudy.

Exit codes: 0 success, 1 domain error, 2 usage error. Every failure prints
one ``E_<NAME>: message`` line on stderr.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .errors import DiscoError, ParameterValidation, TripletValidation
from .identifiers import ApplicationIdentifier

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _identifier(text):
    try:
        return ApplicationIdentifier.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _load_mapping(path):
    path = Path(path)
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise ParameterValidation("--params-file", str(exc)) from None
    if path.suffix in (".yaml", ".yml"):
        import yaml

        data = yaml.safe_load(text)
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterValidation("--params-file", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParameterValidation("--params-file", "must contain a mapping")
    return {k: v for k, v in data.items()}


def _add_store_flags(p, remote=True):
    p.add_argument("--cache-dir", help="model cache root (default: $DISCO_CACHE_DIR or ~/.cache/discokit)")
    if remote:
        p.add_argument("--remote", help="remote hub: directory path or http(s) URL (default: $DISCO_REMOTE)")


def _cache(args):
    from .store import ModelCache

    return ModelCache(args.cache_dir)


def _remote(args):
    from .store import REMOTE_ENV, resolve_remote

    return resolve_remote(getattr(args, "remote", None) or os.environ.get(REMOTE_ENV) or None)


def _open_output(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


# inference

def _print_registry(registry, cache, out):
    rows = [("TYPE", "NAME", "VERSION", "PARAMETERS")]
    for contract in registry.contracts():
        ident = contract.identifier
        rows.append((ident.algorithm_type.value, ident.name, ident.version, contract.schema_text()))
    width = [max(len(r[i]) for r in rows) for i in range(3)]
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r[:3], width)) + "  " + r[3] + "\n")
    for contract in registry.contracts():
        if contract.requires_model:
            ident = contract.identifier
            tags = cache.list_versions(ident.algorithm_type.value, ident.name)
            out.write(f"# {ident.algorithm_type.value}/{ident.name}: cached versions "
                      f"{', '.join(tags) if tags else '(none)'}; trained with `discokit trainer`\n")


def cmd_inference(args):
    from .params import parse_key_values
    from .properties import write_records_csv
    from .registry import default_registry, sample

    registry = default_registry()
    if args.list:
        _print_registry(registry, _cache(args), sys.stdout)
        return EXIT_OK
    if args.algorithm is None:
        raise UsageError("inference: --algorithm is required unless --list is given")
    params = _load_mapping(args.params_file) if args.params_file else {}
    params.update(parse_key_values(args.params))
    sampler = registry.instantiate(args.algorithm, params, cache=_cache(args), remote=_remote(args))
    batch = sample(sampler, args.number_of_samples)
    out, close = _open_output(args.output)
    try:
        if registry.resolve(args.algorithm).finite:
            write_records_csv(batch, out)
        else:
            for item in batch:
                out.write(f"{item}\n")
    finally:
        if close:
            out.close()
    if batch.exhausted and len(batch) < args.number_of_samples:
        print(f"note: finite source exhausted after {len(batch)} item(s)", file=sys.stderr)
    return EXIT_OK


# trainer

def _print_trainers(out):
    from .training import list_trainers

    for d in list_trainers():
        out.write(f"{d.name}: {d.description}\n")
        for section, specs in d.schema.items():
            for spec in specs:
                out.write(f"  {section}.{spec.describe()}\n")
        if d.notes:
            out.write(f"  note: {d.notes}\n")


def cmd_trainer(args):
    from .params import parse_key_values
    from .training import TrainingTriplet, run_training

    if args.list:
        _print_trainers(sys.stdout)
        return EXIT_OK
    if args.trainer is None:
        raise UsageError("trainer: --trainer is required unless --list is given")
    groups = {"model": args.model, "training": args.training, "data": args.data}
    if args.config is None and not any(groups.values()):
        raise UsageError("trainer: give --config or the --model/--training/--data groups")
    # flag groups override (and, without a config file, define) the sections
    sections = TrainingTriplet.from_file(args.config).sections() if args.config else {}
    for name, items in groups.items():
        try:
            extra = parse_key_values(items)
        except ParameterValidation as exc:
            raise TripletValidation(f"{name}.{exc.name}", exc.reason) from None
        sections[name] = {**sections.get(name, {}), **extra}
    triplet = TrainingTriplet.from_mapping(sections)
    report = run_training(args.trainer, triplet, args.output_dir)
    print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    return EXIT_OK


# saving / upload

def cmd_saving(args):
    from .store import save_version

    cache = _cache(args)
    save_version(cache, args.target, args.artifact)
    print(cache.version_dir(args.target) / "manifest.json")
    return EXIT_OK


def cmd_upload(args):
    from .store import upload_version

    remote = _remote(args)
    if remote is None:
        raise UsageError("upload: --remote is required (or set DISCO_REMOTE)")
    manifest = upload_version(_cache(args), remote, args.target)
    print(f"uploaded {args.target} ({len(manifest.files)} file(s)) to {remote!r}")
    return EXIT_OK


# casestudy

def cmd_casestudy(args):
    from .casestudy import run_casestudy

    result = run_casestudy(
        args.seed_smiles, args.output, corpus=args.corpus, samples=args.samples,
        rng_seed=args.rng_seed, order=args.order, population_size=args.population_size,
        generations=args.generations,
    )
    print(json.dumps(result.summary(), sort_keys=True, indent=2))
    print(f"wrote {result.csv_path}")
    print(f"wrote {result.svg_path}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="discokit", description="Molecular discovery toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("inference", help="list or run inference algorithms")
    p.add_argument("--list", action="store_true", help="print the algorithm registry")
    p.add_argument("--algorithm", type=_identifier, help="type/name/version (version may be 'latest')")
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    p.add_argument("--params-file", help="JSON or YAML mapping of parameters")
    p.add_argument("--number-of-samples", type=_positive_int, default=10)
    p.add_argument("--output", help="output file (default: stdout)")
    _add_store_flags(p)
    p.set_defaults(func=cmd_inference)

    p = sub.add_parser("trainer", help="list or run training pipelines")
    p.add_argument("--list", action="store_true", help="print trainers and their triplet schema")
    p.add_argument("--trainer")
    p.add_argument("--config", help="triplet file with model, training and data sections")
    p.add_argument("--model", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--training", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--data", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--output-dir", help="artifact directory")
    p.set_defaults(func=cmd_trainer)

    p = sub.add_parser("saving", help="store a trained artifact in the local cache")
    p.add_argument("--artifact", required=True)
    p.add_argument("--target", required=True, type=_identifier)
    _add_store_flags(p, remote=False)
    p.set_defaults(func=cmd_saving)

    p = sub.add_parser("upload", help="push a cached version to a remote hub")
    p.add_argument("--target", required=True, type=_identifier)
    _add_store_flags(p)
    p.set_defaults(func=cmd_upload)

    p = sub.add_parser("casestudy", help="unconditional vs conditional generation around a seed")
    p.add_argument("--seed-smiles", required=True)
    p.add_argument("--corpus", help="training corpus (default: bundled 1000 molecules)")
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--rng-seed", type=int, default=42)
    p.add_argument("--order", type=_positive_int, default=3)
    p.add_argument("--population-size", type=_positive_int, default=100)
    p.add_argument("--generations", type=int, default=30)
    p.add_argument("--output", default="casestudy", help="output directory")
    p.set_defaults(func=cmd_casestudy)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verbose:
            logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"E_USAGE: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DiscoError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def _alias(command):
    def run(argv=None):
        return main([command, *(sys.argv[1:] if argv is None else argv)])
    return run


inference_main = _alias("inference")
trainer_main = _alias("trainer")
saving_main = _alias("saving")
upload_main = _alias("upload")
casestudy_main = _alias("casestudy")


if __name__ == "__main__":
    sys.exit(main())
