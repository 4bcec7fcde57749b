"""Simplicial cores, H-embeddings and the reduced ground set of candidate points.

Conventions
-----------
A :class:`PolytopeRecord` of dimension ``d`` stores its slack matrix with the
simplicial core in the top-left ``(d+1) x (d+1)`` block, which is then
lower-triangular with unit diagonal.  The top-left ``d x d`` block is the
embedding transformation matrix.

When a ``k``-dimensional base is lifted into ``R^(k+1)`` it sits in the
hyperplane ``x_1 = 0``; its own coordinates become ambient indices
``2..k+1``.  Hyperedges are stored as bitmasks over ambient indices, bit
``i - 1`` standing for index ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .matrix import BinaryMatrix, bits_to_indices, compress_bits, remove_dominated_rows

Point = tuple[int, ...]


@dataclass(frozen=True)
class PolytopeRecord:
    """A 2-level polytope: its dimension and core-ordered slack matrix."""

    dim: int
    slack: BinaryMatrix

    @property
    def nvertices(self) -> int:
        return self.slack.ncols

    @property
    def nfacets(self) -> int:
        return self.slack.nrows

    def transform(self) -> list[list[int]]:
        """Embedding transformation matrix (top-left ``dim x dim`` block)."""
        k = self.dim
        return [[self.slack[i, j] for j in range(k)] for i in range(k)]

    def check(self) -> None:
        """Raise ``ValueError`` if a record invariant is violated."""
        d, s = self.dim, self.slack
        if s.nrows < d + 1 or s.ncols < d + 1:
            raise ValueError("fewer than d+1 facets or vertices")
        for i in range(d + 1):
            if s[i, i] != 1:
                raise ValueError(f"core diagonal entry ({i},{i}) is not 1")
            for j in range(i + 1, d + 1):
                if s[i, j] != 0:
                    raise ValueError(f"core entry ({i},{j}) above the diagonal is not 0")
        z = s.zero_sets()
        for a in range(len(z)):
            for b in range(len(z)):
                if a != b and z[a] & ~z[b] == 0:
                    raise ValueError(f"facets {a} and {b} have comparable vertex sets")
        cols = s.columns()
        if len(set(cols)) != len(cols):
            raise ValueError("two vertices have identical columns")
        if min(s.row_zero_counts()) < d or min(s.col_zero_counts()) < d:
            raise ValueError("a facet has fewer than d vertices or a vertex lies on fewer than d facets")


@dataclass(frozen=True)
class HEmbedding:
    """Base polytope with integer vertices and facets ``x(E) >= 0`` / ``x(E) <= 1``.

    ``facets`` holds ``(E, lower)`` pairs, ``E`` a frozenset of 1-based base
    coordinate indices and ``lower`` true for ``x(E) >= 0``.
    """

    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[tuple[frozenset[int], bool], ...]
    transform: tuple[tuple[int, ...], ...]

    def lifted_vertices(self) -> list[Point]:
        return [(0,) + v for v in self.vertices]

    def lifted_edge_masks(self) -> list[int]:
        """Facet hyperedges shifted to ambient indices ``2..d``, as bitmasks."""
        out = []
        for E, _ in self.facets:
            m = 0
            for i in E:
                m |= 1 << i  # base index i -> ambient index i+1 -> bit i
            out.append(m)
        return out


@dataclass(frozen=True)
class GroundSet:
    """Reduced ground set: points of ``{1} x Z^(d-1)`` in ascending ``lex_leq_dot`` order."""

    points: tuple[Point, ...]
    M_d0: tuple[tuple[int, ...], ...]
    full: tuple[Point, ...]
    inc: tuple[Point, ...]

    def __len__(self) -> int:
        return len(self.points)

    def index(self, p: Sequence[int]) -> int:
        return self.points.index(tuple(p))


def _check_unit_lower(M: Sequence[Sequence[int]]) -> None:
    n = len(M)
    for i in range(n):
        if len(M[i]) != n or M[i][i] != 1 or any(M[i][j] != 0 for j in range(i + 1, n)):
            raise ValueError("matrix is not lower-triangular with unit diagonal")


def solve_unimodular_lower(M: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    """Integer solution of ``M x = v`` for unit lower-triangular ``M`` (forward substitution)."""
    _check_unit_lower(M)
    x: list[int] = []
    for i, row in enumerate(M):
        s = v[i]
        for j in range(i):
            if row[j]:
                s -= row[j] * x[j]
        x.append(int(s))
    return tuple(x)


def _solve_many(M: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Row-wise forward substitution for a stack of right-hand sides ``V`` (shape (N, n))."""
    X = np.zeros_like(V)
    for i in range(M.shape[0]):
        X[:, i] = V[:, i] - X[:, :i] @ M[i, :i]
    return X


def mat_vec(M: Sequence[Sequence[int]], x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in M)


def lifted_transform(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """``M_d(0)``: the block matrix ``diag(1, M)``."""
    k = len(M)
    out = [[1] + [0] * k]
    for i in range(k):
        out.append([0] + list(M[i]))
    return tuple(tuple(r) for r in out)


def h_embedding(p0: PolytopeRecord) -> HEmbedding:
    """Integer H-embedding of a record with respect to its stored core."""
    k, s = p0.dim, p0.slack
    M = p0.transform()
    verts = tuple(
        solve_unimodular_lower(M, [s[i, j] for i in range(k)]) for j in range(s.ncols)
    )
    facets = []
    for i in range(s.nrows):
        if s[i, k] == 0:
            E = frozenset(j + 1 for j in range(k) if s[i, j] == 1)
            lower = True
        else:
            E = frozenset(j + 1 for j in range(k) if s[i, j] == 0)
            lower = False
        for j, x in enumerate(verts):
            val = sum(x[e - 1] for e in E)
            if not lower:
                val = 1 - val
            if val != s[i, j]:
                raise ValueError(
                    f"facet {i} decoded as x({sorted(E)}) {'>= 0' if lower else '<= 1'} "
                    f"gives slack {val} on vertex {j}, matrix says {s[i, j]}"
                )
        facets.append((E, lower))
    return HEmbedding(k, verts, tuple(facets), tuple(tuple(r) for r in M))


def lex_leq_dot(a: Sequence[int], b: Sequence[int], M_d0: Sequence[Sequence[int]]) -> bool:
    """``a`` precedes or equals ``b`` once both are mapped through ``M_d0``."""
    return mat_vec(M_d0, a) <= mat_vec(M_d0, b)


def ground_set(emb: HEmbedding) -> GroundSet:
    """Candidate points for the far face of polytopes having ``emb`` as a facet."""
    k = emb.dim
    M = np.array(emb.transform, dtype=np.int64).reshape(k, k)
    T = np.array(list(itertools.product((-1, 0, 1), repeat=k)), dtype=np.int64).reshape(-1, k)
    U = _solve_many(M, T)
    full = [(1,) + tuple(int(v) for v in u) for u in U]
    masks = emb.lifted_edge_masks()

    def in_inc(p: Point) -> bool:
        for m in masks:
            if sum(p[i] for i in bits_to_indices(m)) not in (-1, 0, 1):
                return False
        return True

    inc = [p for p, t in zip(full, T.tolist()) if in_inc(p)]
    # M_d0 . u = (1, t), so the order on points is the lexicographic order on t
    keyed = [(tuple(t), p) for p, t in zip(full, T.tolist()) if in_inc(p) and tuple(t) >= (0,) * k]
    keyed.sort()
    points = tuple(p for _, p in keyed)
    return GroundSet(points, lifted_transform(emb.transform), tuple(full), tuple(inc))


def tiles(M_d0: Sequence[Sequence[int]], c: Sequence[int]) -> list[Point]:
    """The tile ``T(c)``: preimage under ``M_d0`` of ``{1} x prod {-c_i, 1-c_i}``."""
    if any(ci not in (0, 1) for ci in c):
        raise ValueError("c must be a 0/1 vector")
    out = []
    for t in itertools.product(*[(-ci, 1 - ci) for ci in c]):
        out.append(solve_unimodular_lower(M_d0, (1,) + t))
    return out


# -- facet matrices and cores of arbitrary slack matrices --------------------

def adjacent_rows(zeros: Sequence[int], i: int) -> list[int]:
    """Rows ``j`` whose zero-set intersection with row ``i`` lies in no third row."""
    zi = zeros[i]
    q = len(zeros)
    out = []
    for j in range(q):
        if j == i:
            continue
        inter = zi & zeros[j]
        ok = True
        for k in range(q):
            if k != i and k != j and inter & ~zeros[k] == 0:
                ok = False
                break
        if ok:
            out.append(j)
    return out


def facet_matrix(zeros: Sequence[int], i: int, adj: Sequence[int] | None = None) -> tuple[BinaryMatrix, list[int], list[int]]:
    """Non-incidence matrix of the ridges ``F_i ∩ F_j`` (``j`` adjacent to ``i``) on ``F_i``.

    Returns the matrix (duplicate and dominated rows removed), the source row
    index of each kept row, and the column indices making up ``F_i``.
    """
    if adj is None:
        adj = adjacent_rows(zeros, i)
    zi = zeros[i]
    cols = bits_to_indices(zi)
    raw = BinaryMatrix.from_rows([compress_bits(zi & ~zeros[j], cols) for j in adj], len(cols))
    red, kept = remove_dominated_rows(raw)
    return red, [adj[t] for t in kept], cols


def find_simplicial_core(slack: BinaryMatrix, dim: int, first_row: int = 0) -> tuple[list[int], list[int]]:
    """Row and column orders putting a simplicial core with ``F_1 = first_row`` top-left.

    Follows the inductive construction: take a core of the facet ``F_1`` and
    extend each of its facets to the unique other facet containing it.
    """
    zeros = slack.zero_sets()
    if dim == 1:
        if slack.nrows != 2:
            raise ValueError("a 1-polytope has exactly two facets")
        r0, r1 = first_row, 1 - first_row
        v2 = bits_to_indices(zeros[r0])
        v1 = bits_to_indices(zeros[r1])
        if len(v1) != 1 or len(v2) != 1:
            raise ValueError("not a segment")
        rows = [r0, r1]
        cols = [v1[0], v2[0]] + [j for j in range(slack.ncols) if j not in (v1[0], v2[0])]
        return rows, cols
    fm, src_rows, fcols = facet_matrix(zeros, first_row)
    frows, fcol_order = find_simplicial_core(fm, dim - 1, 0)
    core_rows = [first_row] + [src_rows[t] for t in frows[:dim]]
    core_cols_tail = [fcols[t] for t in fcol_order[:dim]]
    off = [j for j in range(slack.ncols) if not (zeros[first_row] >> j) & 1]
    v1 = off[0]
    core_cols = [v1] + core_cols_tail
    rows = core_rows + [r for r in range(slack.nrows) if r not in core_rows]
    cols = core_cols + [c for c in range(slack.ncols) if c not in core_cols]
    return rows, cols


def with_core(slack: BinaryMatrix, dim: int, first_row: int = 0) -> PolytopeRecord:
    rows, cols = find_simplicial_core(slack, dim, first_row)
    rec = PolytopeRecord(dim, slack.permuted(rows, cols))
    rec.check()
    return rec
