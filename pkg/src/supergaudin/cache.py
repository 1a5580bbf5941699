"""Content-addressed disk cache with atomic replacement.

Keys are hashes of the construction inputs; values are JSON documents.
Writers race safely: each store writes a temporary file in the cache
directory and os.replace()s it into place, so concurrent processes always
read complete documents.  Corrupt entries are dropped with a warning and
recomputed by the caller.
"""

import hashlib
import json
import os
import tempfile
import warnings

ENV_VAR = "SUPERGAUDIN_CACHE"


def default_cache_dir():
    root = os.environ.get(ENV_VAR)
    if root:
        return root
    return os.path.join(os.path.expanduser("~"), ".cache", "supergaudin")


def content_key(obj):
    """Stable hash of a JSON-serializable description."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


class DiskCache:
    def __init__(self, root=None):
        self.root = root or default_cache_dir()

    def _path(self, key):
        return os.path.join(self.root, key + ".json")

    def lookup(self, key):
        """The stored document, or None on a miss or a corrupt entry."""
        path = self._path(key)
        try:
            with open(path, "r") as fh:
                return json.load(fh)
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, OSError) as exc:
            warnings.warn("dropping corrupt cache entry %s: %s" % (path, exc))
            try:
                os.remove(path)
            except OSError:
                pass
            return None

    def store(self, key, value):
        os.makedirs(self.root, exist_ok=True)
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(value, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, path)
        except BaseException:
            try:
                os.remove(tmp)
            except OSError:
                pass
            raise
        return value

    def get_or_compute(self, key, compute):
        hit = self.lookup(key)
        if hit is not None:
            return hit, True
        value = compute()
        self.store(key, value)
        return value, False
