"""Per-dimension lists of 2-level polytopes and their on-disk format.

File format, version 1::

    2LP 1
    dim D count K
    m M n N
    <M lines of N characters from {0,1}>

    m M n N
    ...

Blocks are separated by one blank line.  A sidecar ``.idx`` file holds the
hex canonical key of each record, one per line, in the same order.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Iterator

from .canonical import CanonicalRegistry, canonical_form
from .geometry import PolytopeRecord
from .matrix import BinaryMatrix
from .verify import FacetIndex

MAGIC = "2LP 1"


def sort_key(key: bytes, rec: PolytopeRecord) -> tuple[int, int, bytes]:
    return (rec.nvertices, rec.nfacets, key)


class Database:
    """Pairwise non-isomorphic records of one dimension, with their canonical keys."""

    def __init__(self, dim: int, records: Iterable[PolytopeRecord] = (), keys: Iterable[bytes] | None = None):
        self.dim = dim
        self.records: list[PolytopeRecord] = []
        self.keys: list[bytes] = []
        self.index = CanonicalRegistry()
        self._facet_index: FacetIndex | None = None
        records = list(records)
        keys = list(keys) if keys is not None else [None] * len(records)
        if len(keys) != len(records):
            raise ValueError("one key per record is required")
        for rec, key in zip(records, keys):
            self.add(rec, key)

    def add(self, rec: PolytopeRecord, key: bytes | None = None) -> bool:
        """Append unless an isomorphic record is present; returns whether it was added."""
        if rec.dim != self.dim:
            raise ValueError(f"record of dimension {rec.dim} in a dimension-{self.dim} database")
        if key is None:
            key = canonical_form(rec.slack)
        if not self.index.insert(key, len(self.records)):
            return False
        self.records.append(rec)
        self.keys.append(key)
        self._facet_index = None
        return True

    def sorted(self) -> "Database":
        order = sorted(range(len(self.records)), key=lambda i: sort_key(self.keys[i], self.records[i]))
        return Database(self.dim, [self.records[i] for i in order], [self.keys[i] for i in order])

    def facet_index(self) -> FacetIndex:
        if self._facet_index is None:
            self._facet_index = FacetIndex(self.keys)
        return self._facet_index

    def key_set(self) -> set[bytes]:
        return set(self.keys)

    def get(self, key: bytes) -> PolytopeRecord | None:
        i = self.index.get(key)
        return None if i is None else self.records[i]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[PolytopeRecord]:
        return iter(self.records)

    def __contains__(self, key: object) -> bool:
        return key in self.index

    def __repr__(self) -> str:
        return f"Database(dim={self.dim}, count={len(self)})"


def seed_database() -> Database:
    """``L_1``: the segment, with slack matrix ``I_2``."""
    rec = PolytopeRecord(1, BinaryMatrix.identity(2))
    rec.check()
    return Database(1, [rec])


# -- files -----------------------------------------------------------------

def db_path(directory: str | os.PathLike, dim: int) -> Path:
    return Path(directory) / f"L{dim}.2lp"


def shard_path(directory: str | os.PathLike, dim: int, first: int, last: int) -> Path:
    return Path(directory) / f"L{dim}.shard-{first}-{last}.2lp"


def index_path(path: str | os.PathLike) -> Path:
    return Path(path).with_suffix(".idx")


def format_database(db: Database) -> str:
    out = [MAGIC, f"dim {db.dim} count {len(db)}"]
    for k, rec in enumerate(db.records):
        if k:
            out.append("")
        s = rec.slack
        out.append(f"m {s.nrows} n {s.ncols}")
        out.extend(s.to_strings())
    return "\n".join(out) + "\n"


def write_database(db: Database, path: str | os.PathLike) -> Path:
    """Write ``db`` and its key sidecar; the record order is kept as is."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(format_database(db))
    os.replace(tmp, path)
    index_path(path).write_text("".join(k.hex() + "\n" for k in db.keys))
    return path


def parse_database(text: str) -> tuple[list[PolytopeRecord], int]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise ValueError("not a version-1 2-level polytope database")
    head = lines[1].split()
    if len(head) != 4 or head[0] != "dim" or head[2] != "count":
        raise ValueError(f"bad header line: {lines[1]!r}")
    dim, count = int(head[1]), int(head[3])
    recs = []
    pos = 2
    for _ in range(count):
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        hdr = lines[pos].split()
        if len(hdr) != 4 or hdr[0] != "m" or hdr[2] != "n":
            raise ValueError(f"bad block header at line {pos + 1}: {lines[pos]!r}")
        m, n = int(hdr[1]), int(hdr[3])
        body = lines[pos + 1: pos + 1 + m]
        if len(body) != m or any(len(r.strip()) != n for r in body):
            raise ValueError(f"block at line {pos + 1} does not have {m} rows of {n} entries")
        recs.append(PolytopeRecord(dim, BinaryMatrix.from_strings(body)))
        pos += 1 + m
    return recs, dim


def read_database(path: str | os.PathLike, trust_index: bool = True) -> Database:
    """Load a database; keys come from the sidecar when present and ``trust_index``."""
    path = Path(path)
    recs, dim = parse_database(path.read_text())
    keys = None
    ip = index_path(path)
    if trust_index and ip.exists():
        keys = [bytes.fromhex(line) for line in ip.read_text().split()]
        if len(keys) != len(recs):
            keys = None
    db = Database(dim)
    if keys is None:
        keys = [canonical_form(r.slack) for r in recs]
    for rec, key in zip(recs, keys):
        if not db.add(rec, key):
            raise ValueError(f"{path}: duplicate record")
    return db


def merge_databases(parts: Iterable[Database]) -> Database:
    """Concatenate in the given order keeping the first record of each class, then sort."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to merge")
    out = Database(parts[0].dim)
    for p in parts:
        for rec, key in zip(p.records, p.keys):
            out.add(rec, key)
    return out.sorted()
