"""Remote object-store backends.

Keys follow ``<algorithm_type>/<name>/<version>/<relative-path>``. Missing
keys raise ``KeyError``; transport problems raise ``RemoteFailure``.
"""

import json
import os
import tempfile
import urllib.error
import urllib.parse
import urllib.request
from abc import ABC, abstractmethod
from pathlib import Path

from ..errors import RemoteFailure

INDEX_NAME = "index.json"


class RemoteBackend(ABC):
    @abstractmethod
    def list(self, prefix=""):
        """Sorted keys starting with ``prefix``."""

    @abstractmethod
    def get(self, key) -> bytes:
        ...

    @abstractmethod
    def put(self, key, data: bytes) -> None:
        ...


class MemoryRemote(RemoteBackend):
    def __init__(self):
        self.objects = {}

    def list(self, prefix=""):
        return sorted(k for k in self.objects if k.startswith(prefix))

    def get(self, key):
        try:
            return self.objects[key]
        except KeyError:
            raise KeyError(key) from None

    def put(self, key, data):
        self.objects[key] = bytes(data)


def _atomic_write(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class LocalDirRemote(RemoteBackend):
    """A directory acting as the model hub.

    Besides the objects, it maintains ``index.json`` (a sorted key list) so
    the same directory can be served read-only over plain HTTP.
    """

    def __init__(self, root):
        self.root = Path(root)

    def __repr__(self):
        return f"LocalDirRemote({str(self.root)!r})"

    def _path(self, key):
        parts = key.split("/")
        if not key or any(p in ("", ".", "..") for p in parts):
            raise RemoteFailure(f"illegal key {key!r}")
        return self.root.joinpath(*parts)

    def list(self, prefix=""):
        if not self.root.is_dir():
            return []
        keys = []
        for dirpath, _, filenames in os.walk(self.root):
            for fn in filenames:
                if fn.startswith(".tmp-"):
                    continue
                rel = Path(dirpath, fn).relative_to(self.root).as_posix()
                if rel == INDEX_NAME:
                    continue
                if rel.startswith(prefix):
                    keys.append(rel)
        return sorted(keys)

    def get(self, key):
        path = self._path(key)
        try:
            return path.read_bytes()
        except FileNotFoundError:
            raise KeyError(key) from None
        except OSError as exc:
            raise RemoteFailure(str(exc)) from exc

    def put(self, key, data):
        try:
            _atomic_write(self._path(key), data)
            index = json.dumps(self.list(), separators=(",", ":")).encode("utf-8")
            _atomic_write(self.root / INDEX_NAME, index)
        except OSError as exc:
            raise RemoteFailure(str(exc)) from exc


class HttpRemote(RemoteBackend):
    """Read-only hub served over HTTP(S); listing comes from ``index.json``."""

    def __init__(self, base_url, timeout=30.0):
        self.base_url = base_url.rstrip("/") + "/"
        self.timeout = timeout

    def __repr__(self):
        return f"HttpRemote({self.base_url!r})"

    def _fetch(self, key):
        url = urllib.parse.urljoin(self.base_url, urllib.parse.quote(key))
        try:
            with urllib.request.urlopen(url, timeout=self.timeout) as resp:
                return resp.read()
        except urllib.error.HTTPError as exc:
            if exc.code == 404:
                raise KeyError(key) from None
            raise RemoteFailure(f"GET {url}: HTTP {exc.code}") from exc
        except (urllib.error.URLError, OSError) as exc:
            raise RemoteFailure(f"GET {url}: {exc}") from exc

    def list(self, prefix=""):
        try:
            keys = json.loads(self._fetch(INDEX_NAME).decode("utf-8"))
        except KeyError:
            return []
        except (ValueError, UnicodeDecodeError) as exc:
            raise RemoteFailure(f"malformed {INDEX_NAME}: {exc}") from exc
        return sorted(k for k in keys if isinstance(k, str) and k.startswith(prefix))

    def get(self, key):
        return self._fetch(key)

    def put(self, key, data):
        raise RemoteFailure("HTTP remote is read-only; upload to a directory remote instead")


def resolve_remote(spec):
    """Backend for a URL or directory path (``None`` passes through)."""
    if spec is None or isinstance(spec, RemoteBackend):
        return spec
    spec = str(spec)
    if spec.startswith(("http://", "https://")):
        return HttpRemote(spec)
    if spec.startswith("file://"):
        spec = urllib.parse.urlparse(spec).path
    return LocalDirRemote(spec)
