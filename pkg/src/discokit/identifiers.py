"""Typed algorithm addresses: ``type/name/version``."""

import re
from dataclasses import dataclass
from enum import Enum

_NAME_RE = re.compile(r"^[a-z0-9_-]+$")
_VERSION_RE = re.compile(r"^v(\d+)$")


class AlgorithmType(str, Enum):
    GENERATION = "generation"
    CONDITIONAL_GENERATION = "conditional_generation"
    CONTROLLED_SAMPLING = "controlled_sampling"
    PREDICTION = "prediction"

    def __str__(self):
        return self.value


def is_version_tag(text):
    return bool(_VERSION_RE.match(text))


def version_key(tag):
    """Sort key for ``vN`` tags; numeric so that v10 follows v9."""
    m = _VERSION_RE.match(tag)
    return (0, int(m.group(1)), tag) if m else (1, 0, tag)


@dataclass(frozen=True, order=True)
class ApplicationIdentifier:
    algorithm_type: AlgorithmType
    name: str
    version: str

    def __post_init__(self):
        object.__setattr__(self, "algorithm_type", AlgorithmType(self.algorithm_type))
        if not _NAME_RE.match(self.name):
            raise ValueError(f"algorithm name {self.name!r} must match [a-z0-9_-]+")
        if not (is_version_tag(self.version) or self.version == "latest"):
            raise ValueError(f"version {self.version!r} must look like vN")

    @property
    def path(self):
        return f"{self.algorithm_type.value}/{self.name}/{self.version}"

    def __str__(self):
        return self.path

    def sort_key(self):
        return (self.algorithm_type.value, self.name, version_key(self.version))

    def with_version(self, version):
        return ApplicationIdentifier(self.algorithm_type, self.name, version)

    @classmethod
    def parse(cls, text):
        parts = text.strip().strip("/").split("/")
        if len(parts) != 3:
            raise ValueError(f"expected type/name/version, got {text!r}")
        return cls(AlgorithmType(parts[0]), parts[1], parts[2])
