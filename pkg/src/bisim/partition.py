"""Partition state over an LTS: blocks, membership maps, work queues, and the
stability predicates used both by tests and by the refinement engine."""

from __future__ import annotations

import itertools
import json

__all__ = [
    "Block",
    "Partition",
    "a_predecessors",
    "is_stable",
    "canonical_form",
    "refines",
]


class Block:
    """One equivalence class: its member states plus the marked subset that
    the next splitting step will regroup."""

    __slots__ = ("id", "members", "marked")

    def __init__(self, block_id: int, members=()):
        self.id = block_id
        self.members = set(members)
        self.marked: set[int] = set()

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"Block(id={self.id}, size={len(self.members)})"


class Partition:
    """Disjoint blocks covering ``0..n_states-1``.

    ``state_to_block`` is the assignment the current round reads;
    ``next_state_to_block`` collects reassignments until the copy step
    publishes them.  ``splitters`` and ``marked_blocks`` are the engine's
    work sets; both deduplicate block ids (a block can be marked by several
    splitters in one round but must be split once).
    """

    def __init__(self, n_states: int):
        if n_states < 1:
            raise ValueError("partition needs a non-empty state set")
        self.n_states = n_states
        self.blocks: dict[int, Block] = {}
        self.state_to_block: list[int] = [-1] * n_states
        self.next_state_to_block: dict[int, int] = {}
        self.splitters: set[int] = set()
        self.marked_blocks: set[int] = set()
        self._ids = itertools.count()

    @classmethod
    def from_blocks(cls, n_states: int, member_groups) -> "Partition":
        """Build a partition directly from member sets (test helper)."""
        part = cls(n_states)
        for members in member_groups:
            block = part.new_block(members)
            for s in block.members:
                part.state_to_block[s] = block.id
        part.check_invariants()
        return part

    def new_block(self, members=()) -> Block:
        """Allocate a block with a fresh, never-reused id and register it.

        Does not touch the state assignment maps; the caller decides whether
        membership goes to the current or the next assignment.
        """
        block = Block(next(self._ids), members)
        self.blocks[block.id] = block
        return block

    def block_of(self, state: int) -> Block:
        return self.blocks[self.state_to_block[state]]

    def check_invariants(self):
        """Full-scan consistency check: blocks disjoint and non-empty, their
        union is the state set, and ``state_to_block`` matches membership."""
        seen: set[int] = set()
        for bid, block in self.blocks.items():
            if bid != block.id:
                raise AssertionError(f"block table key {bid} != id {block.id}")
            if not block.members:
                raise AssertionError(f"empty block {bid} present in partition")
            if not block.marked <= block.members:
                raise AssertionError(f"marked set of block {bid} leaks outside")
            if block.members & seen:
                raise AssertionError(f"block {bid} overlaps another block")
            seen |= block.members
            for s in block.members:
                if self.state_to_block[s] != bid:
                    raise AssertionError(
                        f"state {s} maps to {self.state_to_block[s]}, "
                        f"member of {bid}")
        if len(seen) != self.n_states:
            raise AssertionError("blocks do not cover the state set")

    def to_text(self) -> str:
        """One line per block: sorted state ids, blocks by smallest member."""
        return "\n".join(" ".join(map(str, row))
                         for row in canonical_form(self)) + "\n"

    def to_json(self) -> str:
        return json.dumps(canonical_form(self))

    def __repr__(self):
        return f"Partition(n_states={self.n_states}, n_blocks={len(self.blocks)})"


def canonical_form(partition) -> list[list[int]]:
    """Id-free representation: sorted member lists, sorted by first element.

    Two partitions induce the same equivalence relation iff their canonical
    forms are equal.  Accepts a :class:`Partition` or any iterable of member
    collections.
    """
    if isinstance(partition, Partition):
        groups = (b.members for b in partition.blocks.values())
    else:
        groups = partition
    return sorted(sorted(g) for g in groups)


def a_predecessors(lts, partition: Partition, p_id: int, label: int,
                   s_id: int) -> set[int]:
    """States of block ``p_id`` with a ``label``-transition into block
    ``s_id``.  Deliberately slow reference used as the test oracle."""
    if p_id not in partition.blocks or s_id not in partition.blocks:
        raise ValueError("unknown block id")
    target = partition.blocks[s_id].members
    out_adj = lts.out_adj
    return {u for u in partition.blocks[p_id].members
            if any(lab == label and dst in target for lab, dst in out_adj[u])}


def is_stable(lts, partition: Partition):
    """Whether every block's predecessor set w.r.t. every (label, block) pair
    is all-or-nothing.

    Returns ``(True, None)`` or ``(False, (p_id, label, s_id))`` with the
    first violation found.  Single scan over the transitions; agreement with
    :func:`a_predecessors` is asserted by the test suite.
    """
    stb = partition.state_to_block
    out_adj = lts.out_adj
    for p_id, block in partition.blocks.items():
        preds: dict[tuple[int, int], set[int]] = {}
        for u in block.members:
            for lab, dst in out_adj[u]:
                preds.setdefault((lab, stb[dst]), set()).add(u)
        size = len(block.members)
        for (lab, s_id), group in preds.items():
            if len(group) != size:
                return False, (p_id, lab, s_id)
    return True, None


def refines(finer: Partition, coarser: Partition) -> bool:
    """True iff every block of ``finer`` sits inside one block of ``coarser``."""
    if finer.n_states != coarser.n_states:
        raise ValueError("partitions cover different state sets")
    coarse = coarser.state_to_block
    for block in finer.blocks.values():
        targets = {coarse[s] for s in block.members}
        if len(targets) != 1:
            return False
    return True
