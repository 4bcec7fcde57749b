import pytest

from conftest import SEGMENT, SQUARE, TRIANGLE
from twolevel.canonical import CanonicalRegistry, canonical_form
from twolevel.closure import ClosureContext
from twolevel.database import Database, seed_database
from twolevel.enumerate import (
    EnumStats,
    enumerate_bases,
    enumerate_dimension,
    enumerate_from_base,
    extend_core,
    free_sum_of_simplices,
    simplicial_outputs,
)
from twolevel.geometry import h_embedding
from twolevel.matrix import BinaryMatrix
from twolevel.verify import facet_keys, is_two_level_slack, reduced_slack


def test_seed():
    db = seed_database()
    assert len(db) == 1 and db.dim == 1
    rec = db.records[0]
    assert rec.slack == BinaryMatrix.identity(2)
    rec.check()
    assert len(enumerate_dimension(2, db)) == 2


def test_square_slack_in_l2(dbs):
    assert canonical_form(SQUARE.slack) in dbs[2]
    assert canonical_form(TRIANGLE.slack) in dbs[2]


def test_extend_core_simplex_and_pyramid(dbs):
    ctx = ClosureContext.from_embedding(h_embedding(TRIANGLE))
    rs = reduced_slack(ctx, ctx.from_points([(1, 0, 0)]))
    rec = extend_core(TRIANGLE, rs)
    assert rec.slack == BinaryMatrix.identity(4)
    rs = reduced_slack(ctx, ctx.from_points([(1, 0, 0), (1, 1, 0)]))
    assert is_two_level_slack(rs, 3, dbs[2])
    rec = extend_core(TRIANGLE, rs)
    rec.check()
    # the first column is e_1, then the base vertices in order
    assert rec.slack.submatrix(range(1, 4), range(1, 4)) == BinaryMatrix.identity(3)


def test_extend_core_rejects_inconsistent_input():
    ctx = ClosureContext.from_embedding(h_embedding(TRIANGLE))
    rs = reduced_slack(ctx, ctx.from_points([(1, 0, 0)]))
    with pytest.raises(ValueError):
        extend_core(SQUARE, rs)


def test_simplex_base_with_and_without_filter(dbs):
    registry = CanonicalRegistry()
    stats = EnumStats()
    out = enumerate_from_base(TRIANGLE, dbs[2], registry, max_vertex_filter=False, stats=stats)
    assert stats.closed_sets == 6 and len(out) == 4
    names = sorted((r.nvertices, r.nfacets) for r in out)
    assert names == [(4, 4), (5, 5), (6, 5), (6, 8)]
    filtered = enumerate_from_base(TRIANGLE, dbs[2], CanonicalRegistry())
    # pyramid and prism have a square facet, larger than the base
    assert sorted((r.nvertices, r.nfacets) for r in filtered) == [(4, 4), (6, 8)]


def test_square_base(dbs):
    stats = EnumStats()
    out = enumerate_from_base(SQUARE, dbs[2], CanonicalRegistry(), stats=stats)
    assert stats.closed_sets == 5
    # pyramid, prism (reached twice) and cube; the cube minus a vertex fails
    ctx = ClosureContext.from_embedding(h_embedding(SQUARE))
    accepted = [is_two_level_slack(reduced_slack(ctx, a), 3, dbs[2], 4) for a in ctx.closed_sets()]
    assert sum(accepted) == 4
    assert sorted((r.nvertices, r.nfacets) for r in out) == [(5, 5), (6, 5), (8, 6)]


def test_registry_is_shared(dbs):
    reg = CanonicalRegistry()
    first = enumerate_from_base(TRIANGLE, dbs[2], reg, max_vertex_filter=False)
    again = enumerate_from_base(TRIANGLE, dbs[2], reg, max_vertex_filter=False)
    assert len(first) == 4 and again == []


@pytest.mark.parametrize("d, expected", [(3, 2), (4, 3), (5, 2)])
def test_simplicial_outputs_count_divisors(dbs, d, expected):
    out = simplicial_outputs(d, dbs[d - 1])
    assert len(out) == expected
    keys = {canonical_form(r.slack) for r in out}
    assert keys == {canonical_form(free_sum_of_simplices(d, k)) for k in range(1, d + 1) if d % k == 0}


def test_records_satisfy_invariants(dbs):
    for d in range(2, 6):
        for rec in dbs[d]:
            rec.check()
            assert rec.nvertices <= 2 ** d and rec.nfacets <= 2 ** d
            assert set(facet_keys(rec.slack)) <= dbs[d - 1].key_set()


def test_output_independent_of_base_order_and_workers(dbs):
    fwd = enumerate_dimension(5, dbs[4])
    bases = list(range(len(dbs[4])))[::-1]
    rev = enumerate_bases(5, dbs[4], bases).sorted()
    assert fwd.keys == rev.keys
    par = enumerate_dimension(5, dbs[4], workers=2)
    assert par.keys == fwd.keys
    assert [r.slack for r in par] == [r.slack for r in fwd]


def test_filter_and_shortcut_do_not_change_the_list(dbs):
    for d in (4, 5):
        base = dbs[d].keys
        assert enumerate_dimension(d, dbs[d - 1], max_vertex_filter=False).keys == base
        assert enumerate_dimension(d, dbs[d - 1], simplex_shortcut=True).keys == base


def test_wrong_previous_dimension(dbs):
    with pytest.raises(ValueError):
        enumerate_dimension(4, dbs[2])


def test_free_sums():
    assert free_sum_of_simplices(3, 3) == BinaryMatrix.identity(4)
    octa = free_sum_of_simplices(3, 1)
    assert (octa.nrows, octa.ncols) == (8, 6)
    with pytest.raises(ValueError):
        free_sum_of_simplices(4, 3)
