"""File-backed keyed record stores.

Each store is one plain-text file holding one JSON entry per line, either
``{"k": key, "v": record}`` for a write or ``{"k": key, "v": null}`` for a
delete. Writes append to the log and fsync before returning; on open the
latest entry per key wins and the file is compacted back to one line per
live record. Readers only ever touch the in-memory index, so they see a
consistent point-in-time view while a writer appends.

The :class:`RepositorySet` bundles the nine stores the service needs and
keeps the student-facing ones (personal, cultural, feedback) in physically
separate files.
"""

from __future__ import annotations

import copy
import json
import os
import threading
from collections import OrderedDict
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple

from .errors import CorruptRecord, CorruptSnapshot, NonEmptyTarget, NotFound

Record = Dict[str, Any]

STORE_NAMES: Tuple[str, ...] = (
    "personal",
    "cultural",
    "feedback",
    "scores",
    "placements",
    "enrollments",
    "questions",
    "sessions",
    "cases",
)

SNAPSHOT_MAGIC = "learnplace-snapshot 1"


class KeyedStore:
    """Append-only log with an in-memory last-write-wins index."""

    def __init__(self, name: str, path: Path, fsync: bool = True) -> None:
        self.name = name
        self.path = Path(path)
        self.fsync = fsync
        self._lock = threading.RLock()
        self._records: "OrderedDict[str, Record]" = OrderedDict()
        self._load()

    def _load(self) -> None:
        self._records.clear()
        if not self.path.exists():
            self.path.touch()
            return
        lines = 0
        with self.path.open("r", encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                raw = raw.strip()
                if not raw:
                    continue
                lines += 1
                try:
                    entry = json.loads(raw)
                except json.JSONDecodeError as exc:
                    raise CorruptRecord(self.name, line_no, f"store {self.name} line {line_no}: {exc}")
                if not isinstance(entry, dict) or "k" not in entry or not isinstance(entry["k"], str):
                    raise CorruptRecord(self.name, line_no, f"store {self.name} line {line_no}: not a keyed entry")
                value = entry.get("v")
                if value is None:
                    self._records.pop(entry["k"], None)
                elif isinstance(value, dict):
                    self._records[entry["k"]] = value
                else:
                    raise CorruptRecord(self.name, line_no, f"store {self.name} line {line_no}: record is not an object")
        if lines != len(self._records):
            self._compact()

    def _compact(self) -> None:
        tmp = self.path.with_name(self.path.name + ".tmp")
        with tmp.open("w", encoding="utf-8") as fh:
            for key, value in self._records.items():
                fh.write(json.dumps({"k": key, "v": value}, ensure_ascii=False) + "\n")
            fh.flush()
            if self.fsync:
                os.fsync(fh.fileno())
        tmp.replace(self.path)

    def _append(self, entry: dict) -> None:
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, ensure_ascii=False) + "\n")
            fh.flush()
            if self.fsync:
                os.fsync(fh.fileno())

    def put(self, key: str, record: Record) -> None:
        if not isinstance(key, str) or not key:
            raise ValueError("store keys must be non-empty strings")
        record = copy.deepcopy(record)
        with self._lock:
            self._append({"k": key, "v": record})
            self._records[key] = record

    def get(self, key: str) -> Record:
        with self._lock:
            if key not in self._records:
                raise NotFound(f"no record {key!r} in store {self.name}")
            return copy.deepcopy(self._records[key])

    def delete(self, key: str) -> None:
        with self._lock:
            if key not in self._records:
                raise NotFound(f"no record {key!r} in store {self.name}")
            self._append({"k": key, "v": None})
            del self._records[key]

    def scan(self) -> List[Record]:
        """All live records, in key insertion order."""
        with self._lock:
            return [copy.deepcopy(v) for v in self._records.values()]

    def any_match(self, predicate) -> bool:
        """True if any live record satisfies the (read-only) predicate."""
        with self._lock:
            return any(predicate(v) for v in self._records.values())

    def last_match(self, predicate) -> Record | None:
        """Copy of the last record (in insertion order) the predicate accepts."""
        with self._lock:
            found = None
            for value in self._records.values():
                if predicate(value):
                    found = value
            return copy.deepcopy(found) if found is not None else None

    def items(self) -> List[Tuple[str, Record]]:
        with self._lock:
            return [(k, copy.deepcopy(v)) for k, v in self._records.items()]

    def __contains__(self, key: str) -> bool:
        with self._lock:
            return key in self._records

    def count(self) -> int:
        with self._lock:
            return len(self._records)


class RepositorySet:
    """The nine named stores, one file each, under a single data directory."""

    def __init__(self, data_dir: str | Path, fsync: bool = True) -> None:
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.stores: Dict[str, KeyedStore] = {
            name: KeyedStore(name, self.data_dir / f"{name}.db", fsync=fsync)
            for name in STORE_NAMES
        }

    def __getattr__(self, name: str) -> KeyedStore:
        stores = self.__dict__.get("stores", {})
        if name in stores:
            return stores[name]
        raise AttributeError(name)

    def store(self, name: str) -> KeyedStore:
        if name not in self.stores:
            raise NotFound(f"no store named {name!r}")
        return self.stores[name]

    def snapshot_export(self, path: str | Path) -> None:
        """Write all nine stores into one sectioned archive file."""
        out: List[str] = [SNAPSHOT_MAGIC]
        for name in STORE_NAMES:
            items = self.stores[name].items()
            out.append(f"store {name} {len(items)}")
            for key, value in items:
                out.append(json.dumps({"k": key, "v": value}, ensure_ascii=False))
        Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")

    def snapshot_import(self, path: str | Path) -> None:
        """Load an exported archive into this (empty) repository set.

        The archive is parsed and validated in full before anything is
        written, so a corrupt snapshot never leaves stores half-loaded.
        """
        for name in STORE_NAMES:
            if self.stores[name].count() > 0:
                raise NonEmptyTarget(name)
        try:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise CorruptSnapshot("header", f"cannot read snapshot: {exc}")
        if not lines or lines[0] != SNAPSHOT_MAGIC:
            raise CorruptSnapshot("header", "missing or unknown snapshot header")
        parsed: Dict[str, List[Tuple[str, Record]]] = {}
        idx = 1
        for name in STORE_NAMES:
            if idx >= len(lines):
                raise CorruptSnapshot(name, f"snapshot truncated before store {name}")
            parts = lines[idx].split()
            if len(parts) != 3 or parts[0] != "store" or parts[1] != name or not parts[2].isdigit():
                raise CorruptSnapshot(name, f"bad section header for store {name}: {lines[idx]!r}")
            count = int(parts[2])
            idx += 1
            entries: List[Tuple[str, Record]] = []
            for _ in range(count):
                if idx >= len(lines):
                    raise CorruptSnapshot(name, f"snapshot truncated inside store {name}")
                try:
                    entry = json.loads(lines[idx])
                except json.JSONDecodeError:
                    raise CorruptSnapshot(name, f"bad record in store {name}")
                if not isinstance(entry, dict) or not isinstance(entry.get("k"), str) or not isinstance(entry.get("v"), dict):
                    raise CorruptSnapshot(name, f"bad record in store {name}")
                entries.append((entry["k"], entry["v"]))
                idx += 1
            parsed[name] = entries
        if any(line.strip() for line in lines[idx:]):
            raise CorruptSnapshot("trailer", "unexpected content after last store section")
        for name in STORE_NAMES:
            store = self.stores[name]
            for key, value in parsed[name]:
                store.put(key, value)
