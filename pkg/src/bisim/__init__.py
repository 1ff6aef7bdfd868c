"""Coarsest-bisimulation partition refinement for labelled transition
systems, with a concurrent mark/split/copy engine, slow reference oracles,
and Aldebaran (.aut) I/O."""

from .engine import (EngineConfig, EngineError, RunStats, bisimilar,
                     copy_phase, init_phase, marking, run, splitting)
from .lts import (AutFormatError, Lts, Signature, disjoint_union, gen_chain,
                  gen_random, parse_aut, write_aut)
from .oracle import (QuotientLts, check_transfer, oracle_partition, quotient,
                     verify_quotient)
from .partition import (Block, Partition, a_predecessors, canonical_form,
                        is_stable, refines)
from .tuple_index import tuple_index, tuple_index_nested

__all__ = [
    "AutFormatError", "Block", "EngineConfig", "EngineError", "Lts",
    "Partition", "QuotientLts", "RunStats", "Signature", "a_predecessors",
    "bisimilar", "canonical_form", "check_transfer", "copy_phase",
    "disjoint_union", "gen_chain", "gen_random", "init_phase", "is_stable",
    "marking", "oracle_partition", "parse_aut", "quotient", "refines", "run",
    "splitting", "tuple_index", "tuple_index_nested", "verify_quotient",
    "write_aut",
]

__version__ = "0.1.0"
