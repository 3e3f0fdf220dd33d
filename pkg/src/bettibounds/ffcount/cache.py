"""On-disk cache for counts and character sums.

Each record lives in its own JSON-lines file ``<key>.jsonl`` holding one
line ``{"key", "kind", "m", "value"}``.  Counts are stored as decimal
strings and cyclotomic values as coefficient arrays.  A running job pins
the keys it touches in ``pins/<pid>.json`` so garbage collection leaves
them alone.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..exactmath.cyclotomic import Cyclotomic
from ..laurent import LaurentPolynomial
from .fields import FieldSpec


def _poly_json(f: LaurentPolynomial | None):
    if f is None:
        return None
    return [f.n, [[list(e), c] for e, c in sorted(f.terms.items())]]


def record_key(spec: FieldSpec, domain, system: Sequence[LaurentPolynomial],
               f: LaurentPolynomial | None, a: int | None, m: int) -> str:
    payload = {
        "p": spec.p, "k": spec.k, "modulus": list(spec.modulus),
        "domain": str(domain),
        "system": [_poly_json(g) for g in system],
        "f": _poly_json(f), "a": a, "m": m,
    }
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _pid_alive(pid: int) -> bool:
    if pid == os.getpid():
        return True
    try:
        os.kill(pid, 0)
    except ProcessLookupError:
        return False
    except PermissionError:
        return True
    return True


class CountCache:
    """Read-through cache; ``None`` directory disables it."""

    def __init__(self, directory: str | os.PathLike | None):
        self.dir = Path(directory) if directory is not None else None
        self._pinned: set[str] = set()
        if self.dir is not None:
            self.dir.mkdir(parents=True, exist_ok=True)

    @property
    def enabled(self) -> bool:
        return self.dir is not None

    def _path(self, key: str) -> Path:
        assert self.dir is not None
        return self.dir / f"{key}.jsonl"

    def _pin(self, key: str) -> None:
        if self.dir is None or key in self._pinned:
            return
        self._pinned.add(key)
        pins = self.dir / "pins"
        pins.mkdir(exist_ok=True)
        tmp = pins / f"{os.getpid()}.json.tmp"
        tmp.write_text(json.dumps(sorted(self._pinned)))
        os.replace(tmp, pins / f"{os.getpid()}.json")

    def release(self) -> None:
        """Drop this process's pins."""
        if self.dir is None:
            return
        self._pinned.clear()
        try:
            (self.dir / "pins" / f"{os.getpid()}.json").unlink()
        except FileNotFoundError:
            pass

    def get(self, key: str):
        if self.dir is None:
            return None
        path = self._path(key)
        try:
            line = path.read_text().splitlines()[0]
        except (FileNotFoundError, IndexError):
            return None
        rec = json.loads(line)
        if rec.get("key") != key:
            return None
        os.utime(path)  # recency for LRU eviction
        self._pin(key)
        return _decode_value(rec)

    def put(self, key: str, kind: str, m: int, value) -> None:
        if self.dir is None:
            return
        rec = {"key": key, "kind": kind, "m": m, "value": _encode_value(value)}
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps(rec, sort_keys=True) + "\n")
        os.replace(tmp, self._path(key))
        self._pin(key)


def _encode_value(value):
    if isinstance(value, Cyclotomic):
        return {"p": value.p, "coeffs": [int(c) for c in value.coeffs]}
    return str(int(value))


def _decode_value(rec):
    v = rec["value"]
    if rec["kind"] == "charsum":
        return Cyclotomic(v["p"], v["coeffs"])
    return int(v)


@dataclass
class GcSummary:
    scanned: int = 0
    bytes_before: int = 0
    bytes_after: int = 0
    evicted: list[str] = field(default_factory=list)
    kept_pinned: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"scanned": self.scanned, "bytes_before": self.bytes_before,
                "bytes_after": self.bytes_after, "evicted": self.evicted,
                "kept_pinned": self.kept_pinned}


def live_pins(directory: Path) -> set[str]:
    keys: set[str] = set()
    pins = directory / "pins"
    if not pins.is_dir():
        return keys
    for pf in pins.glob("*.json"):
        try:
            pid = int(pf.stem)
        except ValueError:
            continue
        if not _pid_alive(pid):
            pf.unlink(missing_ok=True)
            continue
        try:
            keys.update(json.loads(pf.read_text()))
        except (OSError, json.JSONDecodeError):
            continue
    return keys


def cache_gc(directory: str | os.PathLike, max_bytes: int) -> GcSummary:
    """Evict least-recently-used records until the cache fits in ``max_bytes``."""
    d = Path(directory)
    if not d.is_dir():
        raise FileNotFoundError(f"cache directory {d} does not exist")
    if max_bytes < 0:
        raise ValueError("max_bytes must be nonnegative")
    pinned = live_pins(d)
    entries = []
    for path in d.glob("*.jsonl"):
        st = path.stat()
        entries.append((st.st_mtime_ns, path.stem, path, st.st_size))
    summary = GcSummary(scanned=len(entries))
    total = sum(e[3] for e in entries)
    summary.bytes_before = total
    for _, key, path, size in sorted(entries):
        if total <= max_bytes:
            break
        if key in pinned:
            summary.kept_pinned.append(key)
            continue
        path.unlink(missing_ok=True)
        total -= size
        summary.evicted.append(key)
    summary.bytes_after = total
    return summary
