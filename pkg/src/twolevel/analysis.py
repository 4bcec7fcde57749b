"""Face counts, subclass classifiers and summary tables for polytope databases."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

from .canonical import canonical_form
from .closure import all_closed_sets
from .database import Database
from .geometry import PolytopeRecord
from .matrix import BinaryMatrix


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.counts)

    def euler_ok(self) -> bool:
        d = self.dim
        return sum((-1) ** i * f for i, f in enumerate(self.counts)) == 1 - (-1) ** d

    def total_faces(self) -> int:
        """Number of faces including the empty face and the polytope itself."""
        return sum(self.counts) + 2

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]


@dataclass(frozen=True)
class ClassFlags:
    centrally_symmetric: bool
    polar_two_level: bool
    has_simple_vertex: bool
    has_simplicial_facet: bool
    is_suspension: bool


def _vertex_closure(slack: BinaryMatrix):
    zeros = slack.zero_sets()
    full = slack.full_row

    def close(v: int) -> int:
        out = full
        for z in zeros:
            if v & ~z == 0:
                out &= z
        return out

    return close


def faces(slack: BinaryMatrix) -> dict[int, int]:
    """Map from each face (vertex bitset, including empty and full) to its dimension."""
    close = _vertex_closure(slack)
    closed = all_closed_sets(slack.ncols, close)
    zeros = slack.zero_sets()
    dims: dict[int, int] = {}
    for f in sorted(closed, key=int.bit_count):
        if f == 0:
            dims[f] = -1
            continue
        best = -1
        for z in zeros:
            g = f & z
            if g != f:
                best = max(best, dims[g])
        # the facets of a face are among its intersections with facets of P
        dims[f] = best + 1
    return dims


def f_vector(rec: PolytopeRecord) -> FVector:
    """Face counts ``(f_0, ..., f_{d-1})`` from the vertex-facet incidences."""
    d = rec.dim
    counts = [0] * d
    for f, k in faces(rec.slack).items():
        if 0 <= k < d:
            counts[k] += 1
    return FVector(tuple(counts))


def is_centrally_symmetric(rec: PolytopeRecord) -> bool:
    """Every vertex column has a complementary column (the antipodal vertex)."""
    s = rec.slack
    cols = s.columns()
    full = (1 << s.nrows) - 1
    where = {c: j for j, c in enumerate(cols)}
    for j, c in enumerate(cols):
        w = where.get(full & ~c)
        if w is None or w == j:
            return False
    return True


def is_polar_two_level(rec: PolytopeRecord, db_same: Database) -> bool:
    return canonical_form(rec.slack.transpose()) in db_same


def has_simple_vertex(rec: PolytopeRecord) -> bool:
    return rec.dim in rec.slack.col_zero_counts()


def has_simplicial_facet(rec: PolytopeRecord) -> bool:
    return rec.dim in rec.slack.row_zero_counts()


def is_suspension(rec: PolytopeRecord) -> bool:
    """Whether some facet ``F`` and a translate of a face of ``F`` span the polytope.

    Works on slack columns, which are an affine image of the vertices: a
    translation becomes adding a fixed vector, so every off-facet column must
    map to an on-facet column by the same shift, and the image must be a face.
    """
    s = rec.slack
    cols = s.columns()
    close = _vertex_closure(s)
    zeros = s.zero_sets()
    for i in range(s.nrows):
        on = [j for j in range(s.ncols) if (zeros[i] >> j) & 1]
        off = [j for j in range(s.ncols) if not (zeros[i] >> j) & 1]
        on_cols = {cols[j]: j for j in on}
        a0 = cols[off[0]]
        for g0 in on:
            plus = a0 & ~cols[g0]
            minus = cols[g0] & ~a0
            image = 0
            for a in off:
                c = cols[a]
                if c & plus != plus or c & minus:
                    break
                j = on_cols.get((c & ~plus) | minus)
                if j is None:
                    break
                image |= 1 << j
            else:
                if close(image) == image:
                    return True
    return False


def classify(rec: PolytopeRecord, db_same: Database) -> ClassFlags:
    return ClassFlags(
        is_centrally_symmetric(rec),
        is_polar_two_level(rec, db_same),
        has_simple_vertex(rec),
        has_simplicial_facet(rec),
        is_suspension(rec),
    )


def subclass_counts(db: Database) -> dict[str, int]:
    """Counts of the subclasses over a complete database."""
    out = {"total": len(db), "polar": 0, "cs": 0, "stab": 0, "delta_f": 0, "suspension": 0}
    for rec in db:
        fl = classify(rec, db)
        out["polar"] += fl.polar_two_level
        out["cs"] += fl.centrally_symmetric
        out["stab"] += fl.has_simple_vertex
        out["delta_f"] += fl.has_simplicial_facet
        out["suspension"] += fl.is_suspension
    return out


@dataclass
class ConjectureReport:
    dim: int
    bound: int
    max_product: int
    witnesses: list[int]
    product_violations: list[int]
    cs_faces: list[tuple[int, int]] = field(default_factory=list)
    cs_violations: list[int] = field(default_factory=list)

    def lines(self) -> list[str]:
        d = self.dim
        out = [
            f"dim {d}: max f0*f{d - 1} = {self.max_product}, bound d*2^(d+1) = {self.bound}, "
            f"attained by records {self.witnesses}",
            f"dim {d}: records above the f0*f{d - 1} bound: {self.product_violations or 'none'}",
        ]
        for idx, total in self.cs_faces:
            out.append(f"dim {d}: centrally symmetric record {idx} has {total} faces (3^d = {3 ** d})")
        out.append(f"dim {d}: centrally symmetric records below 3^d faces: {self.cs_violations or 'none'}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def conjecture_report(db: Database, fvecs: Sequence[FVector] | None = None) -> ConjectureReport:
    d = db.dim
    if fvecs is None:
        fvecs = [f_vector(r) for r in db]
    prods = [f[0] * f[d - 1] for f in fvecs]
    best = max(prods)
    bound = d * 2 ** (d + 1)
    rep = ConjectureReport(
        d, bound, best,
        [i for i, p in enumerate(prods) if p == best],
        [i for i, p in enumerate(prods) if p > bound],
    )
    for i, rec in enumerate(db):
        if is_centrally_symmetric(rec):
            total = fvecs[i].total_faces()
            rep.cs_faces.append((i, total))
            if total < 3 ** d:
                rep.cs_violations.append(i)
    return rep


EXPORT_KINDS = ("vertices-histogram", "facets-vs-vertices", "suspension-table")


def export_stats(dbs: Database | Sequence[Database], kind: str) -> str:
    """CSV text (header row first) for one of :data:`EXPORT_KINDS`."""
    if kind not in EXPORT_KINDS:
        raise ValueError(f"unknown export kind {kind!r}; expected one of {', '.join(EXPORT_KINDS)}")
    if isinstance(dbs, Database):
        dbs = [dbs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if kind == "vertices-histogram":
        w.writerow(["dim", "vertices", "count"])
        for db in dbs:
            hist: dict[int, int] = {}
            for r in db:
                hist[r.nvertices] = hist.get(r.nvertices, 0) + 1
            for v in sorted(hist):
                w.writerow([db.dim, v, hist[v]])
    elif kind == "facets-vs-vertices":
        w.writerow(["dim", "index", "vertices", "facets"])
        for db in dbs:
            for i, r in enumerate(db):
                w.writerow([db.dim, i, r.nvertices, r.nfacets])
    else:
        w.writerow(["dim", "count", "suspensions", "ratio"])
        for db in dbs:
            s = sum(is_suspension(r) for r in db)
            w.writerow([db.dim, len(db), s, f"{s / len(db):.3f}"])
    return buf.getvalue()
