import logging
import subprocess
import sys

import pytest

from twolevel.cli import build_parser, main, parse_range
from twolevel.database import db_path, read_database


def run(tmp_path, *argv):
    return main(["--db", str(tmp_path), *argv])


@pytest.fixture()
def built(tmp_path):
    assert run(tmp_path, "seed") == 0
    for d in (2, 3, 4):
        assert run(tmp_path, "enumerate", "--dim", str(d)) == 0
    return tmp_path


def test_written_databases_match_library(built, dbs):
    for d in (1, 2, 3, 4):
        assert read_database(db_path(built, d)).keys == dbs[d].keys


def test_missing_prerequisite(tmp_path, caplog):
    with caplog.at_level(logging.ERROR, logger="twolevel"):
        assert run(tmp_path, "enumerate", "--dim", "3") == 2
    assert "L2.2lp" in caplog.text


def test_bad_arguments(built, capsys):
    assert run(built, "enumerate", "--dim", "4", "--bases", "0..9") == 2
    assert run(built, "enumerate", "--dim", "1") == 2
    assert run(built, "oracle", "--dim", "5") == 2
    with pytest.raises(SystemExit) as e:
        run(built, "enumerate", "--dim", "4", "--bases", "3..1")
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        build_parser().parse_args(["frobnicate"])
    assert parse_range(" 2 .. 5") == (2, 5)


def test_shards_and_merge(built):
    single = db_path(built, 4).read_bytes()
    db_path(built, 4).unlink()
    assert run(built, "enumerate", "--dim", "4", "--bases", "0..2") == 0
    assert run(built, "enumerate", "--dim", "4", "--bases", "3..4") == 0
    assert (built / "L4.shard-0-2.2lp").exists()
    assert run(built, "merge", "--dim", "4") == 0
    assert db_path(built, 4).read_bytes() == single


def test_merge_gaps_rejected(built):
    assert run(built, "merge", "--dim", "4") == 2  # no shards yet
    assert run(built, "enumerate", "--dim", "4", "--bases", "0..1") == 0
    assert run(built, "merge", "--dim", "4") == 2  # bases 2..4 missing
    assert run(built, "enumerate", "--dim", "4", "--bases", "3..4") == 0
    assert run(built, "merge", "--dim", "4") == 2  # gap at base 2


def test_verify_and_oracle(built):
    assert run(built, "verify", "--dim", "4") == 0
    assert run(built, "oracle", "--dim", "3") == 0
    # swap in the wrong dimension's records: oracle and verify must notice
    text = db_path(built, 3).read_text()
    lines = text.split("\n\n")
    db_path(built, 3).write_text("\n\n".join(lines[:-1]).replace("count 5", "count 4") + "\n")
    db_path(built, 3).with_suffix(".idx").unlink()
    assert run(built, "oracle", "--dim", "3") == 1


def test_verify_detects_corruption(built):
    p = db_path(built, 3)
    text = p.read_text()
    # the pyramid's apex row becomes all ones: no longer a slack matrix of a 3-polytope
    blocks = text.split("\n\n")
    head, rows = blocks[2].split("\n", 1)
    bad_rows = rows.split("\n")
    bad_rows[-1] = "1" * len(bad_rows[-1])
    blocks[2] = head + "\n" + "\n".join(bad_rows)
    p.write_text("\n\n".join(blocks))
    p.with_suffix(".idx").unlink()
    assert run(built, "verify", "--dim", "3") == 1


def test_stats(built):
    assert run(built, "stats", "--dim", "4") == 0
    out = built / "stats"
    assert (out / "L4-summary.csv").read_text() == "dim,total,polar,cs,stab,delta_f,suspension\n4,19,12,4,11,12,15\n"
    table = (out / "L4-suspension-table.csv").read_text().splitlines()
    assert table[-2:] == ["3,5,4,0.800", "4,19,15,0.789"]
    assert "bound" in (out / "L4-conjectures.txt").read_text()
    assert len((out / "L4-fvectors.csv").read_text().splitlines()) == 20


def test_workers_match_single(built, tmp_path_factory):
    other = tmp_path_factory.mktemp("workers")
    assert run(other, "seed") == 0
    for d in (2, 3):
        assert run(other, "enumerate", "--dim", str(d)) == 0
    assert run(other, "enumerate", "--dim", "4", "--workers", "2") == 0
    assert db_path(other, 4).read_bytes() == db_path(built, 4).read_bytes()


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "twolevel", "--db", str(tmp_path), "seed"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "wrote" in r.stderr
