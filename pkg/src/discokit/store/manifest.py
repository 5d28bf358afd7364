"""Model manifests: the hash-verified file inventory of one model version."""

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import PurePosixPath

from ..errors import ManifestError

MANIFEST_NAME = "manifest.json"
_SHA_RE = re.compile(r"^[0-9a-f]{64}$")
_TOP_KEYS = {"name", "algorithm_type", "version", "created_unix", "files"}
_FILE_KEYS = {"path", "sha256", "bytes"}


def compute_sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path, chunk=1 << 20):
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(chunk), b""):
            h.update(block)
    return h.hexdigest()


def check_relative_path(path):
    p = PurePosixPath(path)
    if not path or p.is_absolute() or "\\" in path:
        raise ManifestError(f"path must be relative: {path!r}")
    if any(part in ("..", ".", "") for part in path.split("/")):
        raise ManifestError(f"path has illegal components: {path!r}")
    return path


@dataclass(frozen=True)
class FileEntry:
    path: str
    sha256: str
    bytes: int

    def __post_init__(self):
        check_relative_path(self.path)
        if not isinstance(self.sha256, str) or not _SHA_RE.match(self.sha256):
            raise ManifestError(f"bad sha256 for {self.path!r}")
        if isinstance(self.bytes, bool) or not isinstance(self.bytes, int) or self.bytes < 0:
            raise ManifestError(f"bad byte count for {self.path!r}")

    def to_dict(self):
        return {"path": self.path, "sha256": self.sha256, "bytes": self.bytes}


@dataclass(frozen=True)
class ModelManifest:
    name: str
    algorithm_type: str
    version: str
    created_unix: int
    files: tuple

    def __post_init__(self):
        for key in ("name", "algorithm_type", "version"):
            if not isinstance(getattr(self, key), str) or not getattr(self, key):
                raise ManifestError(f"{key} must be a non-empty string")
        if isinstance(self.created_unix, bool) or not isinstance(self.created_unix, int):
            raise ManifestError("created_unix must be an integer")
        files = tuple(self.files)
        paths = [f.path for f in files]
        if len(set(paths)) != len(paths):
            raise ManifestError("duplicate file paths")
        if MANIFEST_NAME in paths:
            raise ManifestError(f"{MANIFEST_NAME} cannot list itself")
        object.__setattr__(self, "files", tuple(sorted(files, key=lambda f: f.path)))

    @property
    def key_prefix(self):
        return f"{self.algorithm_type}/{self.name}/{self.version}"

    def to_dict(self):
        return {
            "name": self.name,
            "algorithm_type": self.algorithm_type,
            "version": self.version,
            "created_unix": self.created_unix,
            "files": [f.to_dict() for f in self.files],
        }

    def to_bytes(self) -> bytes:
        return json.dumps(
            self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False
        ).encode("utf-8")

    @classmethod
    def from_bytes(cls, data: bytes) -> "ModelManifest":
        try:
            obj = json.loads(data.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ManifestError(f"manifest is not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or set(obj) != _TOP_KEYS:
            raise ManifestError("manifest keys must be exactly " + ",".join(sorted(_TOP_KEYS)))
        if not isinstance(obj["files"], list):
            raise ManifestError("files must be a list")
        entries = []
        for entry in obj["files"]:
            if not isinstance(entry, dict) or set(entry) != _FILE_KEYS:
                raise ManifestError("file entry keys must be exactly bytes,path,sha256")
            if not isinstance(entry["path"], str):
                raise ManifestError("file path must be a string")
            entries.append(FileEntry(entry["path"], entry["sha256"], entry["bytes"]))
        return cls(obj["name"], obj["algorithm_type"], obj["version"], obj["created_unix"], tuple(entries))
