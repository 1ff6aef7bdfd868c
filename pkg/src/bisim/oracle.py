"""Independent slow references used as ground truth for the engine.

Nothing here shares code with the refinement engine beyond the Lts and
Partition types: the point of an oracle is independence.  Everything is
single-threaded and meant for small instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lts import Lts, disjoint_union
from .partition import Partition, is_stable

__all__ = ["QuotientLts", "oracle_partition", "check_transfer", "quotient",
           "verify_quotient"]


def oracle_partition(lts) -> Partition:
    """Naive fixpoint partition refinement.

    Starting from one class, every state is repeatedly re-keyed by its
    current class together with the full set of (label, successor class)
    pairs, until no class splits.  Iteration order is fixed (ascending state
    id) so runs are reproducible.  At most ``|S|`` passes, each a full
    rescan.
    """
    n = lts.n_states
    out_adj = lts.out_adj
    cls = [0] * n
    n_classes = 1
    while True:
        key_ids: dict = {}
        new = [0] * n
        for s in range(n):
            key = (cls[s], frozenset((lab, cls[dst]) for lab, dst in out_adj[s]))
            kid = key_ids.get(key)
            if kid is None:
                kid = key_ids[key] = len(key_ids)
            new[s] = kid
        # re-keying never merges classes, so class-count stagnation means
        # a fixpoint
        if len(key_ids) == n_classes:
            break
        cls = new
        n_classes = len(key_ids)
    groups: dict[int, list[int]] = {}
    for s, c in enumerate(cls):
        groups.setdefault(c, []).append(s)
    return Partition.from_blocks(n, groups.values())


def check_transfer(lts, partition: Partition):
    """Verify both transfer clauses one step deep against the partition.

    For every block and every two members u, v: every move ``(u, a, u')``
    must be answered by some ``(v, a, v')`` with u', v' in the same block,
    and symmetrically.  Returns ``(True, None)`` or ``(False, witness)``
    where the witness ``(u, a, u_target, v)`` is a move of ``u`` that ``v``
    cannot match.
    """
    stb = partition.state_to_block
    out_adj = lts.out_adj

    def step_profile(s):
        return frozenset((lab, stb[dst]) for lab, dst in out_adj[s])

    for block in partition.blocks.values():
        members = sorted(block.members)
        reference = members[0]
        ref_profile = step_profile(reference)
        for v in members[1:]:
            profile = step_profile(v)
            if profile == ref_profile:
                continue
            if ref_profile - profile:
                u, other = reference, v
                missing = ref_profile - profile
            else:
                u, other = v, reference
                missing = profile - ref_profile
            lab, target_block = min(missing)
            u_target = next(dst for l, dst in out_adj[u]
                            if l == lab and stb[dst] == target_block)
            return False, (u, lab, u_target, other)
    return True, None


@dataclass
class QuotientLts:
    """Minimized system: one state per block, plus the projection map."""

    lts: Lts
    block_of: list[int]


def quotient(lts, partition: Partition) -> QuotientLts:
    """Collapse each block to one state.

    Quotient states are blocks ordered by smallest member; a transition
    ``(B, a, C)`` exists iff some member of B has an ``a``-move into C.
    Rejects unstable partitions.
    """
    stable, witness = is_stable(lts, partition)
    if not stable:
        raise ValueError(f"partition is not stable (witness {witness})")
    order = sorted(partition.blocks.values(), key=lambda b: min(b.members))
    q_of_block = {block.id: q for q, block in enumerate(order)}
    block_of = [q_of_block[bid] for bid in partition.state_to_block]
    triples = sorted({(block_of[src], lab, block_of[dst])
                      for src, lab, dst in lts.transitions})
    q_lts = Lts(len(order), list(lts.labels), triples,
                initial=block_of[lts.initial])
    return QuotientLts(q_lts, block_of)


def verify_quotient(lts, quot: QuotientLts) -> bool:
    """Check that every original state is bisimilar to its quotient image,
    by running the fixpoint oracle on the disjoint union of both systems."""
    union, offset = disjoint_union(lts, quot.lts)
    part = oracle_partition(union)
    stb = part.state_to_block
    return all(stb[s] == stb[offset + quot.block_of[s]]
               for s in range(lts.n_states))
