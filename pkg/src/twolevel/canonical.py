"""Canonical forms of 0/1 matrices under independent row and column permutations.

A matrix is treated as a 2-coloured bipartite graph (rows on one side,
columns on the other; the colours are never exchanged).  The canonical
labelling is found by individualisation-refinement:

* colour refinement splits row and column cells by how many neighbours each
  vertex has in every cell of the other side, until the partition is stable;
* the search individualises the vertices of a target cell one at a time and
  recurses until every cell is a singleton;
* each leaf gives a relabelled matrix, and the leaf with the smallest
  (refinement trace, matrix) pair wins.

Leaves that produce identical matrices reveal automorphisms, which are used
to skip equivalent siblings and to jump back up the tree.  Correctness never
depends on that pruning.
"""

from __future__ import annotations

import struct
import threading
from functools import lru_cache
from typing import Any, Hashable, Iterator

from .matrix import BinaryMatrix

KEY_FORMAT_VERSION = 1


def _mask(cell: list[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _split(cells, adj, other_masks):
    """One refinement pass over ``cells``; returns (new_cells, changed)."""
    out = []
    changed = False
    for cell in cells:
        if len(cell) == 1:
            out.append(cell)
            continue
        groups: dict[tuple, list[int]] = {}
        for v in cell:
            a = adj[v]
            sig = tuple([(a & m).bit_count() for m in other_masks])
            g = groups.get(sig)
            if g is None:
                groups[sig] = [v]
            else:
                g.append(v)
        if len(groups) == 1:
            out.append(cell)
        else:
            changed = True
            for sig in sorted(groups):
                out.append(groups[sig])
    return out, changed


def _refine(rows, cols, rcells, ccells):
    """Refine to an equitable partition; returns (rcells, ccells, invariant)."""
    while True:
        rmasks = [_mask(c) for c in rcells]
        cmasks = [_mask(c) for c in ccells]
        new_r, ch_r = _split(rcells, rows, cmasks)
        new_c, ch_c = _split(ccells, cols, rmasks)
        rcells, ccells = new_r, new_c
        if not (ch_r or ch_c):
            break
    # stable: every member of a cell has the same counts, so the first one
    # stands for the cell
    inv = (
        tuple((len(c), tuple([(rows[c[0]] & m).bit_count() for m in cmasks])) for c in rcells),
        tuple((len(c), tuple([(cols[c[0]] & m).bit_count() for m in rmasks])) for c in ccells),
    )
    return rcells, ccells, inv


class _Search:
    def __init__(self, rows: tuple[int, ...], ncols: int):
        self.rows = rows
        self.R = len(rows)
        self.C = ncols
        cols = [0] * ncols
        for i, r in enumerate(rows):
            for j in range(ncols):
                if (r >> j) & 1:
                    cols[j] |= 1 << i
        self.cols = cols
        self.best = None
        self.first = None
        self.gens: list[list[int]] = []

    def run(self):
        rc, cc, inv = _refine(self.rows, self.cols, [list(range(self.R))], [list(range(self.C))])
        self._dfs(rc, cc, [inv], [])
        return self.best

    def _leaf(self, rc, cc, trace, path):
        rorder = [c[0] for c in rc]
        corder = [c[0] for c in cc]
        C = self.C
        pos = [0] * C
        for j, c in enumerate(corder):
            pos[c] = C - 1 - j
        cert = []
        for r in rorder:
            x = self.rows[r]
            y = 0
            while x:
                low = x & -x
                y |= 1 << pos[low.bit_length() - 1]
                x ^= low
            cert.append(y)
        cert = tuple(cert)
        leaf = (trace, cert, rorder, corder, path)
        if self.first is None:
            self.first = self.best = leaf
            return None
        for ref in (self.first, self.best):
            if ref[1] == cert and ref[0] == trace:
                self._add_automorphism(ref, leaf)
                return _common_prefix(ref[4], path)
        if (trace, cert) < (self.best[0], self.best[1]):
            self.best = leaf
        return None

    def _add_automorphism(self, a, b):
        R = self.R
        g = list(range(R + self.C))
        for x, y in zip(a[2], b[2]):
            g[x] = y
        for x, y in zip(a[3], b[3]):
            g[R + x] = R + y
        self.gens.append(g)

    def _dfs(self, rc, cc, trace, path):
        if self.best is not None:
            bt = self.best[0]
            k = len(trace)
            if trace > bt[:k]:
                return None
        # target: smallest non-singleton cell, rows before columns
        target = None
        for side, cells in ((0, rc), (1, cc)):
            for idx, cell in enumerate(cells):
                if len(cell) > 1 and (target is None or len(cell) < target[2]):
                    target = (side, idx, len(cell))
        if target is None:
            return self._leaf(rc, cc, trace, path)
        side, idx, _ = target
        cells = rc if side == 0 else cc
        members = sorted(cells[idx])
        offset = 0 if side == 0 else self.R
        depth = len(path)
        explored: list[int] = []
        ngens_seen = -1
        orbit_root: dict[int, int] = {}
        for v in members:
            vid = v + offset
            if explored:
                if len(self.gens) != ngens_seen:
                    ngens_seen = len(self.gens)
                    orbit_root = self._orbits([m + offset for m in members], path)
                rv = orbit_root[vid]
                if any(orbit_root[e] == rv for e in explored):
                    continue
            cell = cells[idx]
            rest = [u for u in cell if u != v]
            new_cells = cells[:idx] + [[v], rest] + cells[idx + 1:]
            if side == 0:
                nrc, ncc, inv = _refine(self.rows, self.cols, new_cells, cc)
            else:
                nrc, ncc, inv = _refine(self.rows, self.cols, rc, new_cells)
            explored.append(vid)
            jump = self._dfs(nrc, ncc, trace + [inv], path + [vid])
            if jump is not None and jump < depth:
                return jump
        return None

    def _orbits(self, members, path):
        parent = {m: m for m in members}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.gens:
            if any(g[p] != p for p in path):
                continue
            for m in members:
                a, b = find(m), find(g[m])
                if a != b:
                    if a < b:
                        parent[b] = a
                    else:
                        parent[a] = b
        return {m: find(m) for m in members}


def _common_prefix(p, q):
    n = 0
    for a, b in zip(p, q):
        if a != b:
            break
        n += 1
    return n


@lru_cache(maxsize=250_000)
def _canonical(rows: tuple[int, ...], ncols: int) -> tuple[bytes, tuple[int, ...], tuple[int, ...]]:
    best = _Search(rows, ncols).run()
    _, cert, rorder, corder, _ = best
    nbytes = (ncols + 7) // 8
    key = struct.pack(">HH", len(rows), ncols) + b"".join(x.to_bytes(nbytes, "big") for x in cert)
    return key, tuple(rorder), tuple(corder)


def canonical_labeling(m: BinaryMatrix) -> tuple[bytes, tuple[int, ...], tuple[int, ...]]:
    """Canonical key plus the row and column orders that realise it."""
    if m.nrows < 1 or m.ncols < 1:
        raise ValueError("canonical form needs at least one row and one column")
    return _canonical(m.rows, m.ncols)


def canonical_form(m: BinaryMatrix) -> bytes:
    """Byte key equal for two matrices iff they differ by row/column permutations."""
    return canonical_labeling(m)[0]


def canonical_matrix(m: BinaryMatrix) -> BinaryMatrix:
    return key_to_matrix(canonical_form(m))


def key_to_matrix(key: bytes) -> BinaryMatrix:
    nrows, ncols = struct.unpack(">HH", key[:4])
    nbytes = (ncols + 7) // 8
    rows = []
    for i in range(nrows):
        chunk = key[4 + i * nbytes: 4 + (i + 1) * nbytes]
        x = int.from_bytes(chunk, "big")
        # serialised with column j at bit ncols-1-j
        y = 0
        for j in range(ncols):
            if (x >> (ncols - 1 - j)) & 1:
                y |= 1 << j
        rows.append(y)
    return BinaryMatrix(nrows, ncols, tuple(rows))


def refinement_invariant(m: BinaryMatrix) -> Hashable:
    """Cheap isomorphism invariant: the stable colour-refinement partition of ``m``.

    Equal for isomorphic matrices; unequal values prove non-isomorphism.
    """
    return _refinement_invariant(m.rows, m.ncols)


@lru_cache(maxsize=250_000)
def _refinement_invariant(rows: tuple[int, ...], ncols: int):
    s = _Search(rows, ncols)
    _, _, inv = _refine(s.rows, s.cols, [list(range(s.R))], [list(range(s.C))])
    return inv


def are_isomorphic(m1: BinaryMatrix, m2: BinaryMatrix) -> bool:
    if (m1.nrows, m1.ncols) != (m2.nrows, m2.ncols):
        return False
    if m1.nrows == 0 or m1.ncols == 0:
        return True
    return canonical_form(m1) == canonical_form(m2)


def clear_cache() -> None:
    _canonical.cache_clear()
    _refinement_invariant.cache_clear()


class CanonicalRegistry:
    """Set of canonical keys with one payload each; insert-if-absent is atomic."""

    def __init__(self) -> None:
        self._payloads: dict[bytes, Any] = {}
        self._lock = threading.Lock()

    def insert(self, key: bytes, payload: Any = None) -> bool:
        """Store ``payload`` under ``key``; False (and no change) if already present."""
        with self._lock:
            if key in self._payloads:
                return False
            self._payloads[key] = payload
            return True

    def __contains__(self, key: object) -> bool:
        return key in self._payloads

    def __len__(self) -> int:
        return len(self._payloads)

    def __iter__(self) -> Iterator[bytes]:
        return iter(list(self._payloads))

    def get(self, key: bytes, default: Any = None) -> Any:
        return self._payloads.get(key, default)

    def keys(self) -> set[bytes]:
        return set(self._payloads)
