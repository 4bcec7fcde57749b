"""
Cross-check against exact convex hulls
======================================

Brute force: every subset of the 0/1 cube up to symmetry, hull by
hyperplane scan, 2-levelness straight from the definition.
"""

import time

from twolevel.enumerate import enumerate_up_to
from twolevel.oracle import brute_force_two_level, cube_points, facet_description, is_two_level_hull

# a single hull: the cube with one corner cut off
h = facet_description(cube_points(3)[:-1])
print(f"cube minus a vertex: {len(h.facets)} facets, {len(h.vertices)} vertices, 2-level: {is_two_level_hull(h)}")

dbs = enumerate_up_to(4)
for d in range(1, 5):
    t0 = time.perf_counter()
    keys = brute_force_two_level(d)
    same = keys == dbs[d].key_set()
    print(f"d={d}: oracle {len(keys)}, engine {len(dbs[d])}, equal: {same} ({time.perf_counter() - t0:.1f}s)")
