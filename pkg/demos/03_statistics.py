"""
Subclasses, suspensions and face counts
=======================================
"""

from collections import Counter

from twolevel.analysis import conjecture_report, f_vector, is_centrally_symmetric, subclass_counts
from twolevel.enumerate import enumerate_up_to

dbs = enumerate_up_to(5)

print("dim  total  polar  cs  stab  delta_f  suspension  ratio")
for d in (3, 4, 5):
    c = subclass_counts(dbs[d])
    print(f"{d:3d}  {c['total']:5d}  {c['polar']:5d}  {c['cs']:2d}  {c['stab']:4d}  "
          f"{c['delta_f']:7d}  {c['suspension']:10d}  {c['suspension'] / c['total']:.3f}")

# vertex counts in dimension 5
hist = Counter(r.nvertices for r in dbs[5])
print("vertices:", dict(sorted(hist.items())))

# centrally symmetric examples and their f-vectors
for rec in dbs[5]:
    if is_centrally_symmetric(rec):
        print("cs", f_vector(rec).counts)

print(conjecture_report(dbs[5]))
