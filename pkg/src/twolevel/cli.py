"""Command-line front end: ``python -m twolevel <command> ...``.

Databases live in one directory as ``L1.2lp``, ``L2.2lp``, ...; statistics
go to its ``stats/`` subdirectory.  Log lines go to stderr.

Exit codes: 0 success, 1 verification or oracle mismatch, 2 usage error or
missing prerequisite.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
import time
from pathlib import Path
from typing import Sequence

from . import analysis
from .canonical import canonical_form
from .database import (
    Database,
    db_path,
    merge_databases,
    read_database,
    seed_database,
    shard_path,
    write_database,
)
from .enumerate import EnumStats, enumerate_bases
from .verify import is_two_level_slack

log = logging.getLogger("twolevel")


class UsageError(Exception):
    """Bad arguments or a missing input file (exit code 2)."""


def parse_range(text: str) -> tuple[int, int]:
    """``"i..j"`` (inclusive) -> ``(i, j)``."""
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a range like 0..4, got {text!r}")
    i, j = int(m.group(1)), int(m.group(2))
    if j < i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return i, j


def _load(directory: Path, dim: int) -> Database:
    p = db_path(directory, dim)
    if not p.exists():
        raise UsageError(f"missing database file {p} (run the earlier dimensions first)")
    return read_database(p)


def cmd_seed(args) -> int:
    p = write_database(seed_database(), db_path(args.db, 1))
    log.info("wrote %s", p)
    return 0


def cmd_enumerate(args) -> int:
    d = args.dim
    if d < 2:
        raise UsageError("enumerate needs --dim >= 2 (use 'seed' for dimension 1)")
    prev = _load(args.db, d - 1)
    if args.bases is not None:
        first, last = args.bases
        if last >= len(prev):
            raise UsageError(f"base range {first}..{last} exceeds the {len(prev)} bases of L{d - 1}")
        bases = range(first, last + 1)
    else:
        bases = None
    stats = EnumStats()
    t0 = time.perf_counter()
    out = enumerate_bases(
        d, prev, bases,
        workers=args.workers,
        max_vertex_filter=not args.no_max_vertex_filter,
        simplex_shortcut=args.simplex_shortcut,
        stats=stats,
    )
    if args.bases is None:
        path = write_database(out.sorted(), db_path(args.db, d))
    else:
        path = write_database(out, shard_path(args.db, d, *args.bases))
    log.info("dimension %d: %d polytopes, %d closed sets, %d 2-level tests, %.2fs -> %s",
             d, len(out), stats.closed_sets, stats.tests, time.perf_counter() - t0, path)
    return 0


_SHARD_RE = re.compile(r"L(\d+)\.shard-(\d+)-(\d+)\.2lp$")


def cmd_merge(args) -> int:
    d = args.dim
    shards = []
    for p in Path(args.db).glob(f"L{d}.shard-*.2lp"):
        m = _SHARD_RE.search(p.name)
        if m and int(m.group(1)) == d:
            shards.append((int(m.group(2)), int(m.group(3)), p))
    if not shards:
        raise UsageError(f"no shard files L{d}.shard-*.2lp in {args.db}")
    shards.sort()
    prev_path = db_path(args.db, d - 1)
    expect = 0
    for first, last, p in shards:
        if first != expect:
            raise UsageError(f"shards do not tile the base range: {p.name} starts at {first}, expected {expect}")
        expect = last + 1
    if prev_path.exists():
        nb = len(read_database(prev_path))
        if expect != nb:
            raise UsageError(f"shards cover bases 0..{expect - 1} but L{d - 1} has {nb} bases")
    merged = merge_databases(read_database(p) for _, _, p in shards)
    path = write_database(merged, db_path(args.db, d))
    log.info("merged %d shards into %s (%d polytopes)", len(shards), path, len(merged))
    return 0


def cmd_stats(args) -> int:
    d = args.dim
    db = _load(args.db, d)
    outdir = Path(args.db) / "stats"
    outdir.mkdir(parents=True, exist_ok=True)
    counts = analysis.subclass_counts(db)
    fvecs = [analysis.f_vector(r) for r in db]
    summary = outdir / f"L{d}-summary.csv"
    summary.write_text(
        "dim,total,polar,cs,stab,delta_f,suspension\n"
        + f"{d},{counts['total']},{counts['polar']},{counts['cs']},{counts['stab']},"
        f"{counts['delta_f']},{counts['suspension']}\n"
    )
    for kind in ("vertices-histogram", "facets-vs-vertices"):
        (outdir / f"L{d}-{kind}.csv").write_text(analysis.export_stats(db, kind))
    dbs = [db if k == d else read_database(db_path(args.db, k))
           for k in range(1, d + 1) if k == d or db_path(args.db, k).exists()]
    (outdir / f"L{d}-suspension-table.csv").write_text(analysis.export_stats(dbs, "suspension-table"))
    with open(outdir / f"L{d}-fvectors.csv", "w") as fh:
        fh.write("index," + ",".join(f"f{i}" for i in range(d)) + "\n")
        for i, f in enumerate(fvecs):
            fh.write(f"{i}," + ",".join(map(str, f.counts)) + "\n")
    report = analysis.conjecture_report(db, fvecs)
    (outdir / f"L{d}-conjectures.txt").write_text(str(report) + "\n")
    bad_euler = [i for i, f in enumerate(fvecs) if not f.euler_ok()]
    log.info("dimension %d: %s", d, ", ".join(f"{k} {v}" for k, v in counts.items()))
    if bad_euler:
        log.error("Euler relation fails for records %s", bad_euler)
        return 1
    log.info("wrote statistics to %s", outdir)
    return 0


def cmd_verify(args) -> int:
    d = args.dim
    db = _load(args.db, d)
    prev = _load(args.db, d - 1) if d > 1 else None
    bad = 0
    for i, rec in enumerate(db):
        problems = []
        try:
            rec.check()
        except ValueError as e:
            problems.append(str(e))
        if canonical_form(rec.slack) != db.keys[i]:
            problems.append("stored key does not match the matrix")
        if not is_two_level_slack(rec.slack, d, prev.facet_index() if prev else ()):
            problems.append("rejected by the 2-levelness test")
        if problems:
            bad += 1
            log.error("record %d: %s", i, "; ".join(problems))
    log.info("verified %d records of dimension %d: %d failures", len(db), d, bad)
    return 1 if bad else 0


def cmd_oracle(args) -> int:
    from .oracle import brute_force_two_level

    d = args.dim
    if not 1 <= d <= 4:
        raise UsageError("the brute-force oracle only runs for 1 <= dim <= 4")
    db = _load(args.db, d)
    keys = brute_force_two_level(d)
    mine = db.key_set()
    only_oracle, only_db = keys - mine, mine - keys
    log.info("oracle: %d classes, database: %d, only in oracle: %d, only in database: %d",
             len(keys), len(mine), len(only_oracle), len(only_db))
    return 1 if only_oracle or only_db else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twolevel", description="Enumerate and analyse 2-level polytopes.")
    p.add_argument("--db", type=Path, default=Path("db"), help="database directory (default: ./db)")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("seed", help="write L1 (the segment)")

    e = sub.add_parser("enumerate", help="compute L_D from L_(D-1)")
    e.add_argument("--dim", type=int, required=True)
    e.add_argument("--bases", type=parse_range, help="inclusive base index range i..j; writes a shard")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--no-max-vertex-filter", action="store_true",
                   help="keep candidates with a facet larger than the base")
    e.add_argument("--simplex-shortcut", action="store_true",
                   help="use the known simplicial classification for the simplex base")

    for name, text in (("merge", "combine shards into L_D"),
                       ("stats", "write CSV statistics and the conjecture report"),
                       ("verify", "re-test every stored record"),
                       ("oracle", "compare L_D with brute force over 0/1 points")):
        s = sub.add_parser(name, help=text)
        s.add_argument("--dim", type=int, required=True)
    return p


COMMANDS = {
    "seed": cmd_seed,
    "enumerate": cmd_enumerate,
    "merge": cmd_merge,
    "stats": cmd_stats,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be at least 1")
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        log.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
