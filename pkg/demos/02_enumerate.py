"""
Enumerating dimension by dimension
==================================

Each dimension is built from the previous one.  Runtimes are for a single
process; dimension 6 takes a minute or two, so it is off by default.
"""

import sys
import time

from twolevel.database import seed_database
from twolevel.enumerate import EnumStats, enumerate_dimension

top = int(sys.argv[1]) if len(sys.argv) > 1 else 5

db = seed_database()
print(f"d=1: {len(db)} polytope")
for d in range(2, top + 1):
    stats = EnumStats()
    t0 = time.perf_counter()
    db = enumerate_dimension(d, db, stats=stats)
    print(f"d={d}: {len(db):5d} polytopes  {stats.closed_sets:7d} closed sets  "
          f"{stats.tests:5d} tests  {time.perf_counter() - t0:6.2f}s")

# the largest ones by vertex count
for rec in db.records[-3:]:
    print(f"  {rec.nvertices} vertices, {rec.nfacets} facets")
