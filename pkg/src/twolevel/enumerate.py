"""Dimension-by-dimension enumeration of 2-level polytopes.

Each ``(d-1)``-dimensional 2-level polytope ``P0`` is placed as a facet in
``x_1 = 0``.  Every proper closed set ``A`` of the slab closure over its
ground set gives a candidate ``conv(vert(P0) ∪ A)``, which is tested for
2-levelness and, when new, stored with a simplicial core extending that of
``P0``.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .canonical import CanonicalRegistry, canonical_form
from .closure import ClosureContext
from .database import Database
from .geometry import PolytopeRecord, h_embedding, with_core
from .matrix import BinaryMatrix
from .verify import FacetIndex, ReducedSlack, is_two_level_slack, reduced_slack

log = logging.getLogger(__name__)


@dataclass
class EnumStats:
    closed_sets: int = 0
    tests: int = 0
    accepted: int = 0
    seconds: float = 0.0
    per_base: list[tuple[int, int, int, int]] = field(default_factory=list)

    def absorb(self, other: "EnumStats") -> None:
        self.closed_sets += other.closed_sets
        self.tests += other.tests
        self.accepted += other.accepted
        self.seconds += other.seconds
        self.per_base.extend(other.per_base)


def extend_core(base: PolytopeRecord, rs: ReducedSlack) -> PolytopeRecord:
    """Reorder an accepted reduced slack matrix so its core extends the base core.

    ``F_1`` is the base facet itself and ``v_1`` is ``e_1``; each base core
    facet ``F'_i`` extends to the unique other facet containing it.
    """
    m = rs.matrix
    n0 = rs.n_base
    d = base.dim + 1
    zeros = m.zero_sets()
    base_cols = (1 << n0) - 1
    f1 = [i for i, z in enumerate(zeros) if z == base_cols]
    if len(f1) != 1:
        raise ValueError(f"expected one row with zero set equal to the base, found {len(f1)}")
    f1 = f1[0]
    if rs.col_points[n0][0] != 1 or any(rs.col_points[n0][1:]):
        raise ValueError("first non-base column is not e_1")
    row_order = [f1]
    base_zeros = base.slack.zero_sets()
    for r in range(d):
        zb = base_zeros[r]
        hits = [i for i, z in enumerate(zeros) if i != f1 and zb & ~(z & base_cols) == 0]
        if len(hits) != 1:
            raise ValueError(f"base core facet {r + 1} extends to {len(hits)} facets, expected exactly one")
        row_order.append(hits[0])
    row_order += [i for i in range(m.nrows) if i not in row_order]
    col_order = [n0] + list(range(n0)) + list(range(n0 + 1, m.ncols))
    rec = PolytopeRecord(d, m.permuted(row_order, col_order))
    for i in range(d + 1):
        if rec.slack[i, i] != 1 or any(rec.slack[i, j] for j in range(i + 1, d + 1)):
            raise ValueError("extended core is not lower-triangular with unit diagonal")
    return rec


@dataclass
class _Shared:
    """State shared by the bases of one run: the registry and known rejects."""

    registry: CanonicalRegistry
    rejected: set[bytes]


def _run_base(
    base: PolytopeRecord,
    index: FacetIndex,
    shared: _Shared,
    max_vertex_filter: bool,
) -> tuple[list[bytes], list[PolytopeRecord], EnumStats]:
    t0 = time.perf_counter()
    d = base.dim + 1
    n0 = base.nvertices
    emb = h_embedding(base)
    ctx = ClosureContext.from_embedding(emb)
    stats = EnumStats()
    keys: list[bytes] = []
    recs: list[PolytopeRecord] = []
    a = ctx.next_closure(None)
    while a is not None:
        stats.closed_sets += 1
        rs = reduced_slack(ctx, a)
        m = rs.matrix
        if (max_vertex_filter and max(m.row_zero_counts()) > n0) or m.nrows < d + 1:
            a = ctx.next_closure(a)
            continue
        key = canonical_form(m)
        if key not in shared.registry and key not in shared.rejected:
            stats.tests += 1
            if is_two_level_slack(m, d, index, n0 if max_vertex_filter else None):
                rec = extend_core(base, rs)
                shared.registry.insert(key, rec)
                keys.append(key)
                recs.append(rec)
            else:
                shared.rejected.add(key)
        a = ctx.next_closure(a)
    stats.accepted = len(recs)
    stats.seconds = time.perf_counter() - t0
    stats.per_base.append((base.nvertices, stats.closed_sets, stats.tests, stats.accepted))
    return keys, recs, stats


def enumerate_from_base(
    base: PolytopeRecord,
    db_prev: Database,
    registry: CanonicalRegistry | None = None,
    *,
    max_vertex_filter: bool = True,
    stats: EnumStats | None = None,
) -> list[PolytopeRecord]:
    """New 2-level polytopes having ``base`` as a facet, inserted into ``registry``."""
    shared = _Shared(registry if registry is not None else CanonicalRegistry(), set())
    _, recs, st = _run_base(base, db_prev.facet_index(), shared, max_vertex_filter)
    if stats is not None:
        stats.absorb(st)
    return recs


# -- simplex shortcut ----------------------------------------------------------

def free_sum_of_simplices(d: int, k: int) -> BinaryMatrix:
    """Slack matrix of the free sum of ``d/k`` copies of the ``k``-simplex."""
    if d % k:
        raise ValueError("k must divide d")
    r = d // k
    nv = r * (k + 1)
    rows = []
    # a facet picks one facet of each summand, i.e. one missing vertex per copy
    for miss in itertools.product(range(k + 1), repeat=r):
        rows.append(sum(1 << (c * (k + 1) + miss[c]) for c in range(r)))
    return BinaryMatrix.from_rows(rows, nv)


def _simplex_shortcut(base: PolytopeRecord, shared: _Shared) -> tuple[list[bytes], list[PolytopeRecord], EnumStats]:
    d = base.dim + 1
    keys, recs = [], []
    for k in range(1, d + 1):
        if d % k:
            continue
        m = free_sum_of_simplices(d, k)
        key = canonical_form(m)
        if shared.registry.insert(key, None):
            keys.append(key)
            recs.append(with_core(m, d))
    st = EnumStats(accepted=len(recs))
    st.per_base.append((base.nvertices, 0, 0, len(recs)))
    return keys, recs, st


# -- whole dimension -----------------------------------------------------------

_worker_index: FacetIndex | None = None


def _worker_init(keys: list[bytes]) -> None:
    global _worker_index
    _worker_index = FacetIndex(keys)


def _worker_task(args):
    base, max_vertex_filter, shortcut = args
    shared = _Shared(CanonicalRegistry(), set())
    if shortcut:
        return _simplex_shortcut(base, shared)
    return _run_base(base, _worker_index, shared, max_vertex_filter)


def _is_simplex(rec: PolytopeRecord) -> bool:
    return rec.nvertices == rec.dim + 1


def enumerate_bases(
    d: int,
    db_prev: Database,
    bases: Sequence[int] | None = None,
    *,
    workers: int = 1,
    max_vertex_filter: bool = True,
    simplex_shortcut: bool = False,
    stats: EnumStats | None = None,
) -> Database:
    """Run the selected bases (indices into ``db_prev``) in order; unsorted result.

    Records appear in discovery order, so concatenating the outputs of
    consecutive base ranges and keeping first occurrences reproduces a
    single run over the union.
    """
    if db_prev.dim != d - 1:
        raise ValueError(f"need the dimension-{d - 1} database, got dimension {db_prev.dim}")
    if bases is None:
        bases = range(len(db_prev))
    bases = list(bases)
    out = Database(d)
    st_total = stats if stats is not None else EnumStats()
    t0 = time.perf_counter()
    if workers <= 1:
        shared = _Shared(CanonicalRegistry(), set())
        index = db_prev.facet_index()
        for b in bases:
            base = db_prev.records[b]
            if simplex_shortcut and _is_simplex(base):
                keys, recs, st = _simplex_shortcut(base, shared)
            else:
                keys, recs, st = _run_base(base, index, shared, max_vertex_filter)
            for k, r in zip(keys, recs):
                out.add(r, k)
            st_total.absorb(st)
            log.info("d=%d base %d (%d vertices): %d closed sets, %d tests, %d new, %.2fs",
                     d, b, base.nvertices, st.closed_sets, st.tests, st.accepted, st.seconds)
    else:
        tasks = [(db_prev.records[b], max_vertex_filter, simplex_shortcut and _is_simplex(db_prev.records[b]))
                 for b in bases]
        with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init,
                                 initargs=(list(db_prev.keys),)) as ex:
            for b, (keys, recs, st) in zip(bases, ex.map(_worker_task, tasks)):
                new = sum(out.add(r, k) for k, r in zip(keys, recs))
                st.accepted = new
                st_total.absorb(st)
                log.info("d=%d base %d: %d closed sets, %d tests, %d new", d, b, st.closed_sets, st.tests, new)
    st_total.seconds = time.perf_counter() - t0
    return out


def enumerate_dimension(d: int, db_prev: Database, **kwargs) -> Database:
    """Complete, sorted list of ``d``-dimensional 2-level polytopes."""
    return enumerate_bases(d, db_prev, None, **kwargs).sorted()


def enumerate_up_to(d: int, **kwargs) -> dict[int, Database]:
    from .database import seed_database

    dbs = {1: seed_database()}
    for k in range(2, d + 1):
        dbs[k] = enumerate_dimension(k, dbs[k - 1], **kwargs)
    return dbs


def simplicial_outputs(d: int, db_prev: Database, **kwargs) -> list[PolytopeRecord]:
    """Accepted polytopes from the ``(d-1)``-simplex base alone (fresh registry)."""
    simplex = next(r for r in db_prev.records if _is_simplex(r))
    return enumerate_from_base(simplex, db_prev, CanonicalRegistry(), **kwargs)

