"""Local model cache and synchronisation with a remote hub.

Layout: ``<root>/<type>/<name>/<version>/{manifest.json, files...}``. New
versions are assembled under ``<root>/.staging`` and moved into place with a
single rename, so a version directory is either absent or complete.
"""

import logging
import os
import shutil
import time
import uuid
import warnings
from pathlib import Path

from ..errors import (
    EmptyArtifact,
    HashMismatch,
    IoFailure,
    ManifestError,
    ModelVersionNotFound,
    NotInCache,
    VersionExists,
)
from ..identifiers import ApplicationIdentifier, is_version_tag, version_key
from .manifest import MANIFEST_NAME, FileEntry, ModelManifest, compute_sha256, sha256_file
from .remote import _atomic_write

logger = logging.getLogger(__name__)

CACHE_ENV = "DISCO_CACHE_DIR"
REMOTE_ENV = "DISCO_REMOTE"
DEFAULT_CACHE = Path("~/.cache/discokit")


def _as_id(id_):
    return ApplicationIdentifier.parse(id_) if isinstance(id_, str) else id_


class ModelCache:
    def __init__(self, root=None):
        if root is None:
            root = os.environ.get(CACHE_ENV) or DEFAULT_CACHE
        self.root = Path(root).expanduser()

    def __repr__(self):
        return f"ModelCache({str(self.root)!r})"

    def version_dir(self, id_):
        id_ = _as_id(id_)
        return self.root / id_.algorithm_type.value / id_.name / id_.version

    def has_version(self, id_):
        return (self.version_dir(id_) / MANIFEST_NAME).is_file()

    def read_manifest(self, id_):
        path = self.version_dir(id_) / MANIFEST_NAME
        try:
            return ModelManifest.from_bytes(path.read_bytes())
        except FileNotFoundError:
            raise NotInCache(f"{_as_id(id_)} is not in the cache at {self.root}") from None

    def list_versions(self, algorithm_type, name):
        base = self.root / str(algorithm_type) / name
        if not base.is_dir():
            return []
        found = [
            p.name for p in base.iterdir()
            if is_version_tag(p.name) and (p / MANIFEST_NAME).is_file()
        ]
        return sorted(found, key=version_key)

    def verify(self, id_):
        """Re-hash every file of a cached version; raise HashMismatch on drift."""
        manifest = self.read_manifest(id_)
        verify_directory(self.version_dir(id_), manifest)
        return manifest

    def staging_dir(self):
        path = self.root / ".staging" / uuid.uuid4().hex
        path.mkdir(parents=True)
        return path

    def publish(self, staging, id_):
        """Move a fully written staging directory into place."""
        final = self.version_dir(id_)
        final.parent.mkdir(parents=True, exist_ok=True)
        try:
            os.rename(staging, final)
        except OSError:
            if final.exists():
                raise VersionExists(f"{_as_id(id_)} already cached") from None
            raise
        return final


def verify_directory(directory, manifest):
    for entry in manifest.files:
        path = Path(directory, *entry.path.split("/"))
        if not path.is_file():
            raise HashMismatch(f"missing file {entry.path}")
        if path.stat().st_size != entry.bytes or sha256_file(path) != entry.sha256:
            raise HashMismatch(f"content of {entry.path} does not match its manifest hash")


def _artifact_files(artifact_dir):
    root = Path(artifact_dir)
    if not root.is_dir():
        raise IoFailure(f"artifact directory {root} does not exist")
    files = sorted(p for p in root.rglob("*") if p.is_file())
    return root, files


def save_version(cache, id_, artifact_dir, created_unix=None):
    """Copy ``artifact_dir`` into the cache as version ``id_``."""
    id_ = _as_id(id_)
    if cache.has_version(id_) or cache.version_dir(id_).exists():
        raise VersionExists(f"{id_} already cached")
    root, files = _artifact_files(artifact_dir)
    if not files:
        raise EmptyArtifact(f"artifact directory {root} contains no files")
    staging = cache.staging_dir()
    try:
        entries = []
        for src in files:
            rel = src.relative_to(root).as_posix()
            if rel == MANIFEST_NAME:
                raise IoFailure(f"{MANIFEST_NAME} is reserved inside artifacts")
            dst = staging / rel
            dst.parent.mkdir(parents=True, exist_ok=True)
            shutil.copyfile(src, dst)
            entries.append(FileEntry(rel, sha256_file(dst), dst.stat().st_size))
        manifest = ModelManifest(
            name=id_.name,
            algorithm_type=id_.algorithm_type.value,
            version=id_.version,
            created_unix=int(time.time()) if created_unix is None else created_unix,
            files=tuple(entries),
        )
        _atomic_write(staging / MANIFEST_NAME, manifest.to_bytes())
        cache.publish(staging, id_)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    finally:
        if staging.exists():
            shutil.rmtree(staging, ignore_errors=True)
    return manifest


def upload_version(cache, remote, id_):
    """Push a cached version to ``remote``; the manifest goes last."""
    id_ = _as_id(id_)
    if not cache.has_version(id_):
        raise NotInCache(f"{id_} is not in the cache at {cache.root}")
    manifest = cache.verify(id_)
    directory = cache.version_dir(id_)
    for entry in manifest.files:
        data = Path(directory, *entry.path.split("/")).read_bytes()
        if compute_sha256(data) != entry.sha256:
            raise HashMismatch(f"{entry.path} changed during upload")
        remote.put(f"{id_.path}/{entry.path}", data)
    remote.put(f"{id_.path}/{MANIFEST_NAME}", (directory / MANIFEST_NAME).read_bytes())
    return manifest


def _fetch_manifest(remote, id_):
    try:
        data = remote.get(f"{id_.path}/{MANIFEST_NAME}")
    except KeyError:
        raise ModelVersionNotFound(f"{id_} not found in cache or remote") from None
    return data, ModelManifest.from_bytes(data)


def ensure_version(cache, remote, id_):
    """Local directory holding a hash-verified copy of ``id_``.

    A valid cache hit never touches the remote. On a miss every file is
    downloaded into a staging directory and checked before the directory is
    renamed into place.
    """
    id_ = _as_id(id_)
    if cache.has_version(id_):
        try:
            cache.verify(id_)
            return cache.version_dir(id_)
        except (HashMismatch, ManifestError):
            if remote is None:
                raise
            logger.warning("cached %s is corrupt; re-downloading", id_)
            _discard(cache, cache.version_dir(id_))
    if remote is None:
        raise ModelVersionNotFound(f"{id_} not in cache at {cache.root} and no remote configured")
    raw, manifest = _fetch_manifest(remote, id_)
    staging = cache.staging_dir()
    try:
        for entry in manifest.files:
            try:
                data = remote.get(f"{id_.path}/{entry.path}")
            except KeyError:
                raise HashMismatch(f"remote is missing {entry.path}") from None
            if len(data) != entry.bytes or compute_sha256(data) != entry.sha256:
                raise HashMismatch(f"downloaded {entry.path} does not match its manifest hash")
            dst = staging / entry.path
            dst.parent.mkdir(parents=True, exist_ok=True)
            dst.write_bytes(data)
        _atomic_write(staging / MANIFEST_NAME, raw)
        try:
            return cache.publish(staging, id_)
        except VersionExists:
            # another process won the race; its copy is equally valid
            cache.verify(id_)
            return cache.version_dir(id_)
    finally:
        if staging.exists():
            shutil.rmtree(staging, ignore_errors=True)


def _discard(cache, directory):
    trash = cache.root / ".staging" / f"trash-{uuid.uuid4().hex}"
    trash.parent.mkdir(parents=True, exist_ok=True)
    os.rename(directory, trash)
    shutil.rmtree(trash, ignore_errors=True)


def list_remote_versions(remote, algorithm_type, name):
    """Versions under ``type/name/`` that carry a well-formed manifest."""
    prefix = f"{algorithm_type}/{name}/"
    keys = remote.list(prefix)
    versions = []
    for key in keys:
        parts = key[len(prefix):].split("/")
        if len(parts) != 2 or parts[1] != MANIFEST_NAME or not is_version_tag(parts[0]):
            continue
        try:
            manifest = ModelManifest.from_bytes(remote.get(key))
            if manifest.version != parts[0]:
                raise ManifestError("version field disagrees with key")
        except (ManifestError, KeyError) as exc:
            warnings.warn(f"skipping {prefix}{parts[0]}: malformed manifest ({exc})", stacklevel=2)
            continue
        versions.append(parts[0])
    return sorted(versions, key=version_key)


def resolve_version(cache, remote, id_):
    """Replace a ``latest`` version with the highest tag in cache or remote."""
    id_ = _as_id(id_)
    if id_.version != "latest":
        return id_
    tags = set(cache.list_versions(id_.algorithm_type.value, id_.name))
    if remote is not None:
        tags.update(list_remote_versions(remote, id_.algorithm_type.value, id_.name))
    if not tags:
        raise ModelVersionNotFound(f"no versions of {id_.algorithm_type.value}/{id_.name} available")
    return id_.with_version(max(tags, key=version_key))
