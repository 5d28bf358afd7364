"""The application registry: one lookup table for every algorithm.

An algorithm is addressed by ``type/name/version`` and exposes a uniform
contract: a parameter schema plus a factory that turns validated parameters
(and, for trained models, a verified model directory) into a :class:`Sampler`.

Registration happens once at start-up; concurrent lookups afterwards are safe.
Samplers are stateful and must not be shared between threads.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import DuplicateIdentifier, UnknownIdentifier
from .identifiers import AlgorithmType, ApplicationIdentifier
from .params import ParamSpec, validate_params

RETRY_FACTOR = 100


class Batch(list):
    """A list of sampled items; ``exhausted`` is set when a finite source ran dry."""

    exhausted = False


class Sampler:
    exhausted = False

    def next_batch(self, n):
        raise NotImplementedError


def sample(sampler, n):
    """Draw ``n`` items (fewer only if the sampler is exhausted)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("number of samples must be a positive integer")
    batch = Batch(sampler.next_batch(n))
    batch.exhausted = bool(getattr(sampler, "exhausted", False))
    return batch


@dataclass
class InferenceContext:
    """What a factory may need besides its parameters."""

    registry: "AlgorithmRegistry"
    properties: object
    cache: object = None
    remote: object = None


@dataclass
class AlgorithmContract:
    identifier: ApplicationIdentifier
    parameter_schema: tuple
    factory: Callable
    description: str = ""
    requires_model: bool = False
    # model-backed algorithms accept any version tag present in the store
    any_version: bool = False
    passthrough_prefix: Optional[str] = None
    finite: bool = False

    def validate(self, params):
        return validate_params(self.parameter_schema, params, self.passthrough_prefix)

    def instantiate(self, params, model_dir=None, context=None):
        """Validate ``params`` and build a sampler; validation precedes any file access."""
        clean = self.validate(params)
        return self.factory(clean, model_dir, context)

    def schema_text(self):
        return ", ".join(spec.describe() for spec in self.parameter_schema)


@dataclass
class AlgorithmRegistry:
    _contracts: dict = field(default_factory=dict)

    def register(self, contract: AlgorithmContract) -> None:
        key = contract.identifier
        if key in self._contracts:
            raise DuplicateIdentifier(f"{key} already registered")
        self._contracts[key] = contract

    def resolve(self, id_) -> AlgorithmContract:
        id_ = _parse_id(id_)
        contract = self._contracts.get(id_)
        if contract is not None:
            return contract
        for other in self._contracts.values():
            ident = other.identifier
            if (
                other.any_version
                and ident.algorithm_type == id_.algorithm_type
                and ident.name == id_.name
            ):
                return other
        raise UnknownIdentifier(f"unknown algorithm {id_}")

    def list_algorithms(self, filter_type=None):
        ids = list(self._contracts)
        if filter_type is not None:
            filter_type = AlgorithmType(filter_type)
            ids = [i for i in ids if i.algorithm_type == filter_type]
        return sorted(ids, key=ApplicationIdentifier.sort_key)

    def contracts(self):
        return [self._contracts[i] for i in self.list_algorithms()]

    def instantiate(self, id_, params=None, cache=None, remote=None, properties=None):
        """Resolve ``id_``, validate ``params`` and build a ready sampler."""
        from .properties import default_property_registry
        from .store import ensure_version, resolve_version

        id_ = _parse_id(id_)
        contract = self.resolve(id_)
        clean = contract.validate(params or {})
        context = InferenceContext(self, properties or default_property_registry(), cache, remote)
        model_dir = None
        if contract.requires_model:
            if cache is None:
                from .store import ModelCache

                cache = context.cache = ModelCache()
            id_ = resolve_version(cache, remote, id_)
            model_dir = ensure_version(cache, remote, id_)
        return contract.factory(clean, model_dir, context)


def _parse_id(id_):
    if isinstance(id_, ApplicationIdentifier):
        return id_
    try:
        return ApplicationIdentifier.parse(str(id_))
    except ValueError as exc:
        raise UnknownIdentifier(f"malformed algorithm identifier {id_!r}: {exc}") from None


def default_registry():
    """A registry holding the four shipped algorithms."""
    from .algorithms.builtins import register_builtins

    registry = AlgorithmRegistry()
    register_builtins(registry)
    return registry


__all__ = [
    "AlgorithmContract",
    "AlgorithmRegistry",
    "AlgorithmType",
    "ApplicationIdentifier",
    "Batch",
    "InferenceContext",
    "ParamSpec",
    "RETRY_FACTOR",
    "Sampler",
    "default_registry",
    "sample",
]
