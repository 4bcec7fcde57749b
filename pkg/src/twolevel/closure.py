"""Slab closure operators over a reduced ground set and Next-Closure enumeration.

Candidate sets are bitsets over ground-set indices (bit ``i`` = point ``i``).
Hyperedges ``E`` are bitmasks over ambient coordinates, and a family of
hyperedges is itself a bitset indexed by those masks.
"""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .geometry import GroundSet, HEmbedding, Point, ground_set
from .matrix import bits_to_indices


class _Top:
    """Closure result standing for the full ground set ``X_full``."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "TOP"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()


def _edge_values(p: Sequence[int], d: int) -> list[int]:
    """``p(E)`` for every mask ``E`` in ``0..2^d-1``."""
    vals = [0] * (1 << d)
    for E in range(1, 1 << d):
        low = E & -E
        vals[E] = vals[E ^ low] + p[low.bit_length() - 1]
    return vals


def _slab_mask(p: Sequence[int], d: int) -> int:
    """Bitset over masks ``E != 0`` with ``0 <= p(E) <= 1``."""
    out = 0
    for E, v in enumerate(_edge_values(p, d)):
        if E and 0 <= v <= 1:
            out |= 1 << E
    return out


def valid_hyperedges(points: Sequence[Sequence[int]], d: int) -> list[int]:
    """Nonempty ``E ⊆ [d]`` (as masks) with ``0 <= x(E) <= 1`` for every given point."""
    allowed = ((1 << (1 << d)) - 1) & ~1
    for p in points:
        allowed &= _slab_mask(p, d)
    return bits_to_indices(allowed)


def edge_mask(E: Sequence[int]) -> int:
    """Mask of a 1-based coordinate subset."""
    m = 0
    for i in E:
        m |= 1 << (i - 1)
    return m


class ClosureContext:
    """Immutable data for evaluating ``cl`` relative to one base polytope.

    Args:
        base_vertices: vertices of the base, lifted into ``{0} x Z^(d-1)``.
        points: the ground set; index 0 must be ``e_1``.
        facet_edges: hyperedge masks of the base facets (ambient indices).
    """

    def __init__(self, base_vertices: Sequence[Point], points: Sequence[Point], facet_edges: Sequence[int]):
        self.points = tuple(tuple(p) for p in points)
        self.base_vertices = tuple(tuple(v) for v in base_vertices)
        self.d = d = len(self.points[0]) if self.points else len(self.base_vertices[0])
        self.n = n = len(self.points)
        self.all = (1 << n) - 1
        self.facet_edges = tuple(facet_edges)
        nE = 1 << d

        values = [_edge_values(p, d) for p in self.points]
        self._values = values
        self.ok = [_slab_mask(p, d) for p in self.points]
        base_ok = ((1 << nE) - 1) & ~1
        for v in self.base_vertices:
            base_ok &= _slab_mask(v, d)
        self.base_ok = base_ok

        pts_ok = [0] * nE
        val1 = [0] * nE
        for i, vals in enumerate(values):
            bit = 1 << i
            for E in range(1, nE):
                v = vals[E]
                if 0 <= v <= 1:
                    pts_ok[E] |= bit
                if v == 1:
                    val1[E] |= bit
        self.pts_ok = pts_ok
        self.val1 = val1
        base_values = [_edge_values(v, d) for v in self.base_vertices]
        self.base_val1 = [
            sum(1 << j for j, vals in enumerate(base_values) if vals[E] == 1) for E in range(nE)
        ]

        # cl_inc data: points with u(E) = -1 / +1 per base facet hyperedge
        self._sign_pairs = []
        outside = 0
        for E in self.facet_edges:
            neg = pos = 0
            for i, vals in enumerate(values):
                if vals[E] == -1:
                    neg |= 1 << i
                elif vals[E] == 1:
                    pos |= 1 << i
                elif vals[E] != 0:
                    outside |= 1 << i
            self._sign_pairs.append((neg, pos))
        self._outside_inc = outside

    @classmethod
    def from_embedding(cls, emb: HEmbedding, ground: GroundSet | None = None) -> "ClosureContext":
        if ground is None:
            ground = ground_set(emb)
        return cls(emb.lifted_vertices(), ground.points, emb.lifted_edge_masks())

    # operators --------------------------------------------------------------

    def hyperedges(self, a: int) -> int:
        """Family ``E(vert(P0) ∪ A)`` as a bitset over masks."""
        e = self.base_ok
        ok = self.ok
        while a:
            low = a & -a
            e &= ok[low.bit_length() - 1]
            a ^= low
        return e

    def cl_dch(self, a: int) -> int:
        e = self.hyperedges(a)
        res = self.all
        pts_ok = self.pts_ok
        while e and res:
            low = e & -e
            res &= pts_ok[low.bit_length() - 1]
            e ^= low
        return res

    def cl_inc(self, a: int):
        if a & self._outside_inc:
            return TOP
        for neg, pos in self._sign_pairs:
            if a & neg and a & pos:
                return TOP
        return a

    def cl(self, a: int):
        return self.cl_inc(self.cl_dch(a))

    # enumeration --------------------------------------------------------------

    def next_closure(self, current: int | None = None) -> int | None:
        """Lectically next proper closed set after ``current`` (``None`` = first); ``None`` when done."""
        if current is None:
            first = self.cl(0)
            return None if first is TOP else first
        a = current
        for i in range(self.n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                a ^= bit
                continue
            b = self.cl(a | bit)
            if b is TOP:
                if self.all & (bit - 1) == a:
                    # everything after this is above Top in lectic order
                    return None
                continue
            if b & (bit - 1) == a:
                return b
        return None

    def closed_sets(self) -> Iterator[int]:
        a = self.next_closure(None)
        while a is not None:
            yield a
            a = self.next_closure(a)

    def to_points(self, a: int) -> list[Point]:
        return [self.points[i] for i in bits_to_indices(a)]

    def from_points(self, pts: Sequence[Sequence[int]]) -> int:
        index = {p: i for i, p in enumerate(self.points)}
        return sum(1 << index[tuple(p)] for p in pts)


def lectic_key(a: int, n: int) -> int:
    """Integer whose order is the lectic order (index 0 most significant)."""
    return int(format(a, f"0{n}b")[::-1], 2) if n else 0


def next_closure(current: int | None, n: int, closure: Callable[[int], int]) -> int | None:
    """Generic Next-Closure for any closure operator on bitsets over ``range(n)``."""
    if current is None:
        return closure(0)
    a = current
    for i in range(n - 1, -1, -1):
        bit = 1 << i
        if a & bit:
            a ^= bit
            continue
        b = closure(a | bit)
        if b & (bit - 1) == a:
            return b
    return None


def all_closed_sets(n: int, closure: Callable[[int], int]) -> list[int]:
    out = []
    a = next_closure(None, n, closure)
    while a is not None:
        out.append(a)
        a = next_closure(a, n, closure)
    return out


def brute_force_closed_sets(ctx: ClosureContext, limit: int = 20) -> list[int]:
    """Every proper closed set, by closing all ``2^|X|`` subsets; lectic order."""
    if ctx.n > limit:
        raise ValueError(f"ground set of size {ctx.n} is too large for brute force")
    found = set()
    for s in range(1 << ctx.n):
        c = ctx.cl(s)
        if c is not TOP:
            found.add(c)
    return sorted(found, key=lambda a: lectic_key(a, ctx.n))


def full_scope_context(emb: HEmbedding) -> ClosureContext:
    """Context over ``X_full`` instead of the reduced ground set (index 0 is still ``e_1``)."""
    g = ground_set(emb)
    e1 = g.points[0]
    pts = [e1] + [p for p in g.full if p != e1]
    return ClosureContext(emb.lifted_vertices(), pts, emb.lifted_edge_masks())
