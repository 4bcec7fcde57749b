import math

import numpy as np
import pytest

from twolevel.analysis import (
    EXPORT_KINDS,
    conjecture_report,
    export_stats,
    f_vector,
    faces,
    has_simple_vertex,
    has_simplicial_facet,
    is_centrally_symmetric,
    is_polar_two_level,
    is_suspension,
    subclass_counts,
)
from twolevel.canonical import canonical_form
from twolevel.database import seed_database
from twolevel.enumerate import free_sum_of_simplices
from twolevel.geometry import PolytopeRecord, with_core
from twolevel.matrix import BinaryMatrix


def test_classical_f_vectors(solids):
    assert f_vector(solids["octahedron"]).counts == (6, 12, 8)
    assert f_vector(solids["cube"]).counts == (8, 12, 6)
    for d in range(1, 7):
        simplex = PolytopeRecord(d, BinaryMatrix.identity(d + 1))
        assert f_vector(simplex).counts == tuple(math.comb(d + 1, i + 1) for i in range(d))


def test_face_lattice_ends(solids):
    fs = faces(solids["pyramid"].slack)
    assert fs[0] == -1 and fs[(1 << 5) - 1] == 3


def test_euler_and_bounds(dbs):
    for d in range(1, 6):
        for rec in dbs[d]:
            f = f_vector(rec)
            assert f.euler_ok()
            assert f[0] == rec.nvertices and f[d - 1] == rec.nfacets


def test_centrally_symmetric(solids):
    assert is_centrally_symmetric(solids["cube"])
    assert is_centrally_symmetric(solids["octahedron"])
    assert not is_centrally_symmetric(solids["simplex"])
    assert is_centrally_symmetric(seed_database().records[0])
    for d in range(2, 6):
        cross = with_core(free_sum_of_simplices(d, 1), d)
        assert is_centrally_symmetric(cross)
        assert not is_centrally_symmetric(PolytopeRecord(d, BinaryMatrix.identity(d + 1)))


def test_polar(dbs, solids):
    assert is_polar_two_level(solids["simplex"], dbs[3])
    assert not is_polar_two_level(solids["prism"], dbs[3])
    assert canonical_form(solids["cube"].slack.transpose()) == canonical_form(solids["octahedron"].slack)


def test_polar_f_vector_reversed(dbs):
    for d in range(2, 6):
        for rec in dbs[d]:
            if is_polar_two_level(rec, dbs[d]):
                dual = dbs[d].get(canonical_form(rec.slack.transpose()))
                assert f_vector(dual).counts == f_vector(rec).counts[::-1]


def _polar_centre_exists(rec) -> bool:
    """LP: some interior point makes the polar 2-level (facet slacks constant where needed)."""
    linprog = pytest.importorskip("scipy.optimize").linprog
    S = rec.slack.to_array().astype(float)
    m, n = S.shape
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for j in range(n):
        rows = [i for i in range(m) if S[i, j]]
        for i in rows[1:]:
            parent[find(i)] = find(rows[0])
    roots = sorted({find(i) for i in range(m)})
    B = np.zeros((m, len(roots)))
    for i in range(m):
        B[i, roots.index(find(i))] = 1
    r = len(roots)
    res = linprog(np.zeros(n + r), A_eq=np.hstack([S, -B]), b_eq=np.zeros(m),
                  bounds=[(None, None)] * n + [(1, None)] * r, method="highs")
    return res.status == 0


def test_polar_lookup_agrees_with_geometric_polar(dbs):
    for d in (3, 4, 5):
        for rec in dbs[d]:
            assert is_polar_two_level(rec, dbs[d]) == _polar_centre_exists(rec)


def test_simple_vertex_and_simplicial_facet(solids):
    cross = solids["octahedron"]
    assert has_simplicial_facet(cross) and not has_simple_vertex(cross)
    assert set(cross.slack.col_zero_counts()) == {4}
    cube = solids["cube"]
    assert has_simple_vertex(cube) and not has_simplicial_facet(cube)


def test_suspensions(solids):
    assert is_suspension(solids["pyramid"])
    assert is_suspension(solids["simplex"])
    assert is_suspension(solids["prism"])
    assert is_suspension(solids["cube"])
    # the far triangle is the reflection, not a translate, of the near one
    assert not is_suspension(solids["octahedron"])


def test_pyramids_are_suspensions(dbs):
    for d in range(3, 6):
        for rec in dbs[d]:
            if any(c == rec.nfacets - 1 for c in rec.slack.col_zero_counts()):
                assert is_suspension(rec)


def test_subclass_counts_three(dbs):
    assert subclass_counts(dbs[3]) == {"total": 5, "polar": 4, "cs": 2, "stab": 4, "delta_f": 4, "suspension": 4}


def test_conjecture_report(dbs):
    for d in (3, 4, 5):
        rep = conjecture_report(dbs[d])
        assert rep.max_product == d * 2 ** (d + 1) and rep.product_violations == []
        assert rep.cs_violations == []
        cube = with_core(free_sum_of_simplices(d, 1).transpose(), d)
        cross = with_core(free_sum_of_simplices(d, 1), d)
        w = {dbs[d].keys[i] for i in rep.witnesses}
        assert canonical_form(cube.slack) in w and canonical_form(cross.slack) in w
        assert all("dim" in line for line in rep.lines())


def test_export_stats(dbs):
    hist = export_stats(dbs[5], "vertices-histogram").splitlines()
    assert hist[0] == "dim,vertices,count"
    assert sum(int(r.split(",")[2]) for r in hist[1:]) == 106
    fv = export_stats(dbs[5], "facets-vs-vertices").splitlines()
    assert fv[0] == "dim,index,vertices,facets" and len(fv) == 107
    table = export_stats([dbs[3], dbs[4], dbs[5]], "suspension-table").splitlines()
    assert table == ["dim,count,suspensions,ratio", "3,5,4,0.800", "4,19,15,0.789", "5,106,88,0.830"]
    assert set(EXPORT_KINDS) == {"vertices-histogram", "facets-vs-vertices", "suspension-table"}
    with pytest.raises(ValueError):
        export_stats(dbs[3], "pie-chart")
