"""Enumeration of 2-level polytopes by slack matrices and slab closures.

Typical use::

    from twolevel import enumerate_up_to, subclass_counts
    dbs = enumerate_up_to(5)
    len(dbs[5])            # 106
"""

from .analysis import (
    FVector,
    conjecture_report,
    export_stats,
    f_vector,
    has_simple_vertex,
    has_simplicial_facet,
    is_centrally_symmetric,
    is_polar_two_level,
    is_suspension,
    subclass_counts,
)
from .canonical import CanonicalRegistry, are_isomorphic, canonical_form, canonical_labeling
from .closure import TOP, ClosureContext, brute_force_closed_sets, valid_hyperedges
from .database import Database, read_database, seed_database, write_database
from .enumerate import (
    enumerate_bases,
    enumerate_dimension,
    enumerate_from_base,
    enumerate_up_to,
    extend_core,
)
from .geometry import GroundSet, HEmbedding, PolytopeRecord, ground_set, h_embedding, lex_leq_dot, tiles
from .matrix import BinaryMatrix, remove_dominated_rows
from .verify import ReducedSlack, facets_adjacent, is_two_level_slack, reduced_slack

__version__ = "0.1.0"
