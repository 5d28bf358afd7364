"""Versioned model artifacts: cache, manifests and remote sync."""

from .cache import (
    CACHE_ENV,
    REMOTE_ENV,
    ModelCache,
    ensure_version,
    list_remote_versions,
    resolve_version,
    save_version,
    upload_version,
    verify_directory,
)
from .manifest import MANIFEST_NAME, FileEntry, ModelManifest, compute_sha256
from .remote import HttpRemote, LocalDirRemote, MemoryRemote, RemoteBackend, resolve_remote

__all__ = [
    "CACHE_ENV",
    "MANIFEST_NAME",
    "REMOTE_ENV",
    "FileEntry",
    "HttpRemote",
    "LocalDirRemote",
    "MemoryRemote",
    "ModelCache",
    "ModelManifest",
    "RemoteBackend",
    "compute_sha256",
    "ensure_version",
    "list_remote_versions",
    "resolve_remote",
    "resolve_version",
    "save_version",
    "upload_version",
    "verify_directory",
]
