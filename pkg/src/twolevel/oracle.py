"""Brute-force reference: 2-level 0/1 polytopes found by exact convex hulls.

Nothing here uses closures, ground sets or the combinatorial 2-levelness
test.  Facets come from scanning hyperplanes spanned by ``d`` affinely
independent points with integer arithmetic, and 2-levelness is checked from
the definition.  Only meant for ``d <= 4``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .canonical import canonical_form
from .matrix import BinaryMatrix

Point = tuple[int, ...]


class DegenerateConfiguration(ValueError):
    """The points do not affinely span the ambient space."""


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int  # facet is normal . x <= offset

    def slack(self, p: Sequence[int]) -> int:
        return self.offset - sum(a * x for a, x in zip(self.normal, p))


@dataclass(frozen=True)
class HullDescription:
    facets: tuple[Facet, ...]
    vertices: tuple[Point, ...]

    def slack_matrix(self) -> list[list[int]]:
        return [[f.slack(v) for v in self.vertices] for f in self.facets]


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det(minor)
    return total


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull plus one (0 for no points)."""
    if not points:
        return 0
    p0 = points[0]
    rows = [[Fraction(a - b) for a, b in zip(p, p0)] for p in points[1:]]
    rank = 0
    ncols = len(p0)
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank + 1


def hyperplane_through(points: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int] | None:
    """Primitive integer ``(normal, offset)`` of the hyperplane through ``d`` points, if unique."""
    d = len(points[0])
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    normal = []
    for i in range(d):
        minor = [row[:i] + row[i + 1:] for row in diffs]
        normal.append((-1) ** i * _det(minor))
    g = 0
    for a in normal:
        g = math.gcd(g, a)
    if g == 0:
        return None
    normal = [a // g for a in normal]
    # sign: first nonzero coefficient positive
    if next(a for a in normal if a) < 0:
        normal = [-a for a in normal]
    return tuple(normal), sum(a * x for a, x in zip(normal, p0))


def facet_description(points: Sequence[Sequence[int]], d: int | None = None) -> HullDescription:
    """Facets and vertices of ``conv(points)`` by exhaustive hyperplane scan."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise DegenerateConfiguration("empty point set")
    if d is None:
        d = len(pts[0])
    if affine_rank(pts) != d + 1:
        raise DegenerateConfiguration(f"points span dimension {affine_rank(pts) - 1} < {d}")
    seen: dict[tuple[tuple[int, ...], int], Facet] = {}
    for sub in itertools.combinations(pts, d):
        h = hyperplane_through(sub)
        if h is None or h in seen:
            continue
        normal, off = h
        vals = [sum(a * x for a, x in zip(normal, p)) for p in pts]
        if all(v <= off for v in vals):
            f = Facet(normal, off)
        elif all(v >= off for v in vals):
            f = Facet(tuple(-a for a in normal), -off)
        else:
            continue
        on = [p for p, v in zip(pts, vals) if v == off]
        if affine_rank(on) == d:
            seen[h] = f
    facets = tuple(sorted(seen.values(), key=lambda f: (f.normal, f.offset)))
    verts = []
    for p in pts:
        normals = [list(f.normal) for f in facets if f.slack(p) == 0]
        # p is a vertex iff the normals of the facets through it have rank d
        if normals and affine_rank([[0] * d] + normals) == d + 1:
            verts.append(p)
    return HullDescription(facets, tuple(verts))


def is_two_level_hull(h: HullDescription) -> bool:
    """Every facet has exactly one other level containing all off-facet vertices."""
    for f in h.facets:
        if len({f.slack(v) for v in h.vertices}) != 2:
            return False
    return True


def nonincidence_matrix(h: HullDescription) -> BinaryMatrix:
    return BinaryMatrix.from_lists([[1 if f.slack(v) else 0 for v in h.vertices] for f in h.facets])


# -- exhaustive search over subsets of the cube -----------------------------------

def cube_points(d: int) -> list[Point]:
    return list(itertools.product((0, 1), repeat=d))


@lru_cache(maxsize=None)
def _cube_symmetries(d: int) -> np.ndarray:
    """Each row maps point index -> image index under one symmetry of ``[0,1]^d``."""
    pts = cube_points(d)
    index = {p: i for i, p in enumerate(pts)}
    out = []
    for perm in itertools.permutations(range(d)):
        for flip in itertools.product((0, 1), repeat=d):
            out.append([index[tuple(p[perm[k]] ^ flip[k] for k in range(d))] for p in pts])
    return np.array(out, dtype=np.int64)


def orbit_representatives(d: int) -> list[int]:
    """One subset (as a point bitmask) per orbit under the cube symmetry group."""
    n = 1 << d
    masks = np.arange(1 << n, dtype=np.int64)
    best = masks.copy()
    for g in _cube_symmetries(d):
        img = np.zeros_like(masks)
        for i in range(n):
            img |= ((masks >> i) & 1) << int(g[i])
        np.minimum(best, img, out=best)
    return sorted(int(x) for x in np.unique(best))


def brute_force_two_level(d: int, max_dim: int = 4) -> set[bytes]:
    """Canonical keys of all combinatorial types of 2-level ``d``-polytopes with 0/1 vertices."""
    if d < 1 or d > max_dim:
        raise ValueError(f"brute force supports 1 <= d <= {max_dim}")
    pts = cube_points(d)
    keys: set[bytes] = set()
    for mask in orbit_representatives(d):
        sub = [pts[i] for i in range(len(pts)) if (mask >> i) & 1]
        if len(sub) < d + 1 or affine_rank(sub) != d + 1:
            continue
        h = facet_description(sub, d)
        if is_two_level_hull(h):
            keys.add(canonical_form(nonincidence_matrix(h)))
    return keys
