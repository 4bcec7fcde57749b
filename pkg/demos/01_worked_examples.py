"""
Worked examples in dimension three
==================================

Place the triangle and the square as the bottom facet of a 3-polytope,
list the candidate points above them and walk through the closed sets.
"""

from twolevel import BinaryMatrix, PolytopeRecord
from twolevel.closure import ClosureContext
from twolevel.enumerate import enumerate_dimension
from twolevel.database import seed_database
from twolevel.geometry import ground_set, h_embedding
from twolevel.verify import is_two_level_slack, reduced_slack

# slack matrices of the bases: rows are facets, columns vertices, 1 = vertex off facet
triangle = PolytopeRecord(2, BinaryMatrix.identity(3))
square = PolytopeRecord(2, BinaryMatrix.from_lists([[1, 0, 0, 1], [0, 1, 0, 1], [0, 1, 1, 0], [1, 0, 1, 0]]))

db2 = enumerate_dimension(2, seed_database())

for name, base in (("triangle", triangle), ("square", square)):
    emb = h_embedding(base)
    print(f"{name}: facets {[(sorted(E), 'x(E) <= 1' if up else 'x(E) >= 0') for E, up in emb.facets]}")
    print(f"  ground set {ground_set(emb).points}")

    # every closed set is a candidate top; the 2-levelness test decides
    ctx = ClosureContext.from_embedding(emb)
    for a in ctx.closed_sets():
        rs = reduced_slack(ctx, a)
        ok = is_two_level_slack(rs, 3, db2, base.nvertices)
        print(f"  top {ctx.to_points(a)}: {rs.matrix.nrows} x {rs.matrix.ncols} -> {'2-level' if ok else 'rejected'}")
