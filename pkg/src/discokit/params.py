"""Typed parameter schemas shared by algorithm contracts and trainers."""

import math
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .errors import ParameterValidation

KINDS = ("string", "int", "real", "bool")
_TRUE = {"true", "1", "yes", "on"}
_FALSE = {"false", "0", "no", "off"}


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str
    required: bool = False
    default: Any = None
    help: str = ""
    check: Optional[Callable[[Any], Optional[str]]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown parameter kind {self.kind!r}")

    def describe(self):
        flag = "required" if self.required else f"default={self.default!r}"
        return f"{self.name}:{self.kind} ({flag})"

    def to_dict(self):
        return {"name": self.name, "kind": self.kind, "required": self.required,
                "default": self.default, "help": self.help}


def coerce(spec, value):
    """Convert ``value`` to the declared kind; raise ValueError with a reason."""
    if spec.kind == "string":
        if not isinstance(value, str):
            raise ValueError("expected a string")
        return value
    if spec.kind == "bool":
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.lower() in _TRUE | _FALSE:
            return value.lower() in _TRUE
        raise ValueError("expected a boolean")
    if spec.kind == "int":
        if isinstance(value, bool):
            raise ValueError("expected an integer")
        if isinstance(value, int):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
        if isinstance(value, str):
            try:
                return int(value.strip())
            except ValueError:
                pass
        raise ValueError("expected an integer")
    # real
    if isinstance(value, bool):
        raise ValueError("expected a real number")
    if isinstance(value, (int, float)):
        out = float(value)
    elif isinstance(value, str):
        try:
            out = float(value.strip())
        except ValueError:
            raise ValueError("expected a real number") from None
    else:
        raise ValueError("expected a real number")
    if math.isnan(out):
        raise ValueError("NaN is not allowed")
    return out


def validate_params(schema, params, passthrough_prefix=None):
    """Validate ``params`` against ``schema``; return the coerced mapping.

    Keys starting with ``passthrough_prefix`` are returned untouched for
    the caller to validate elsewhere.
    """
    params = dict(params or {})
    specs = {s.name: s for s in schema}
    out = {}
    for key in sorted(params):
        if passthrough_prefix and key.startswith(passthrough_prefix):
            out[key] = params[key]
            continue
        if key not in specs:
            raise ParameterValidation(key, "unknown parameter")
    for spec in schema:
        if spec.name not in params or params[spec.name] is None:
            if spec.required:
                raise ParameterValidation(spec.name, "required parameter missing")
            out[spec.name] = spec.default
            continue
        try:
            value = coerce(spec, params[spec.name])
        except ValueError as exc:
            raise ParameterValidation(spec.name, str(exc)) from None
        if spec.check is not None:
            problem = spec.check(value)
            if problem:
                raise ParameterValidation(spec.name, problem)
        out[spec.name] = value
    return out


def parse_key_values(items):
    """Turn ``["a=1", "b=x"]`` (or one comma-free string per item) into a dict."""
    out = {}
    for item in items or ():
        for part in item.split() if " " in item else [item]:
            key, sep, value = part.partition("=")
            if not sep or not key:
                raise ParameterValidation(part, "expected key=value")
            out[key.strip()] = value
    return out


def in_range(lo=None, hi=None, lo_open=False, hi_open=False):
    def check(v):
        if lo is not None and (v < lo or (lo_open and v == lo)):
            return f"must be {'>' if lo_open else '>='} {lo}"
        if hi is not None and (v > hi or (hi_open and v == hi)):
            return f"must be {'<' if hi_open else '<='} {hi}"
        return None
    return check
