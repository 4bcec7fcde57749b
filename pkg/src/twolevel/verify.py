"""Reduced slack matrices of candidate sets and the combinatorial 2-levelness test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .canonical import canonical_form, key_to_matrix, refinement_invariant
from .closure import ClosureContext
from .geometry import Point, adjacent_rows, facet_matrix
from .matrix import BinaryMatrix, bits_to_indices, compress_bits, remove_dominated_rows


@dataclass(frozen=True)
class ReducedSlack:
    """Slack matrix of ``conv(vert(P0) ∪ A)`` against the slabs of ``E(vert(P0) ∪ A)``.

    ``row_edges[i]`` is ``(E, lower)``: row ``i`` is the slack of ``x(E) >= 0``
    when ``lower`` holds, else of ``x(E) <= 1``.  Columns hold the base
    vertices first (``n_base`` of them), then the points of ``A``.
    """

    matrix: BinaryMatrix
    row_edges: tuple[tuple[int, bool], ...]
    col_points: tuple[Point, ...]
    n_base: int


def reduced_slack(ctx: ClosureContext, a: int) -> ReducedSlack:
    edges = ctx.hyperedges(a)
    n0 = len(ctx.base_vertices)
    aidx = bits_to_indices(a)
    ncols = n0 + len(aidx)
    full = (1 << ncols) - 1
    rows: list[int] = []
    prov: list[tuple[int, bool]] = []
    for E in bits_to_indices(edges):
        r1 = ctx.base_val1[E] | (compress_bits(ctx.val1[E], aidx) << n0)
        rows.append(r1)
        prov.append((E, True))
        rows.append(full & ~r1)
        prov.append((E, False))
    m, kept = remove_dominated_rows(BinaryMatrix.from_rows(rows, ncols))
    cols = ctx.base_vertices + tuple(ctx.points[i] for i in aidx)
    return ReducedSlack(m, tuple(prov[k] for k in kept), cols, n0)


def facets_adjacent(m: BinaryMatrix, i: int, j: int) -> bool:
    """True iff ``zeros(i) ∩ zeros(j)`` lies in no other row's zero set."""
    if i == j:
        raise ValueError("adjacency needs two distinct rows")
    z = m.zero_sets()
    inter = z[i] & z[j]
    return all(inter & ~z[k] for k in range(m.nrows) if k != i and k != j)


class FacetIndex:
    """Membership test of facet matrices against a set of canonical keys.

    Cheap invariants (shape, colour refinement) reject most non-members
    before a canonical form is computed; answers are memoised.
    """

    def __init__(self, keys: Iterable[bytes]):
        self.keys = frozenset(keys)
        mats = [key_to_matrix(k) for k in self.keys]
        self.shapes = {(m.nrows, m.ncols) for m in mats}
        self.invariants = {refinement_invariant(m) for m in mats}
        self._cache: dict[tuple, bool] = {}

    def __contains__(self, m: BinaryMatrix) -> bool:
        if (m.nrows, m.ncols) not in self.shapes:
            return False
        ck = (m.ncols, tuple(sorted(m.rows)))
        hit = self._cache.get(ck)
        if hit is None:
            hit = refinement_invariant(m) in self.invariants and canonical_form(m) in self.keys
            self._cache[ck] = hit
        return hit


def as_facet_index(db_prev) -> FacetIndex:
    if isinstance(db_prev, FacetIndex):
        return db_prev
    if hasattr(db_prev, "facet_index"):
        return db_prev.facet_index()
    return FacetIndex(db_prev)


def is_two_level_slack(
    m: BinaryMatrix | ReducedSlack,
    d: int,
    db_prev,
    base_vertex_count: int | None = None,
) -> bool:
    """Decide whether a reduced 0/1 matrix is the slack matrix of a 2-level ``d``-polytope.

    Args:
        m: candidate matrix (rows = facets, columns = points).
        d: claimed dimension.
        db_prev: complete list of ``(d-1)``-dimensional 2-level polytopes, as a
            database, a :class:`FacetIndex` or an iterable of canonical keys.
        base_vertex_count: if given, reject rows with more zeros than this.
    """
    if isinstance(m, ReducedSlack):
        m = m.matrix
    if d == 1:
        return m.nrows == 2 and m.ncols == 2 and sorted(m.row_zero_counts()) == [1, 1] and m.rows[0] != m.rows[1]
    zeros = m.zero_sets()
    if base_vertex_count is not None and max((z.bit_count() for z in zeros), default=0) > base_vertex_count:
        return False
    if m.nrows < d + 1:
        return False
    index = as_facet_index(db_prev)
    for i in range(m.nrows):
        if zeros[i].bit_count() < d:
            return False
        adj = adjacent_rows(zeros, i)
        if len(adj) < d:
            return False
        fm, _, _ = facet_matrix(zeros, i, adj)
        if fm not in index:
            return False
    return True


def facet_keys(m: BinaryMatrix) -> list[bytes]:
    """Canonical key of every facet matrix of a slack matrix."""
    zeros = m.zero_sets()
    return [canonical_form(facet_matrix(zeros, i)[0]) for i in range(m.nrows)]

