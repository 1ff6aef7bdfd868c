"""Labelled transition systems with dense state/label ids and dual adjacency.

An :class:`Lts` is immutable after construction and safe to share across
threads without synchronization.  Labels are interned to dense integers so
that signatures and marker keys reduce to integer sorting.
"""

from __future__ import annotations

import random
import re

__all__ = [
    "AutFormatError",
    "Signature",
    "Lts",
    "parse_aut",
    "write_aut",
    "gen_chain",
    "gen_random",
    "disjoint_union",
]


class AutFormatError(ValueError):
    """Malformed Aldebaran (``.aut``) input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Signature:
    """The set of labels on a state's outgoing transitions.

    Stored strictly sorted and duplicate-free; the hash is computed once at
    construction so repeated map lookups cost O(1).
    """

    __slots__ = ("labels", "_hash")

    def __init__(self, labels):
        object.__setattr__(self, "labels", tuple(sorted(set(labels))))
        object.__setattr__(self, "_hash", hash(self.labels))

    def __setattr__(self, name, value):
        raise AttributeError("Signature is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Signature):
            return self.labels == other.labels
        return NotImplemented

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"Signature({list(self.labels)!r})"


class Lts:
    """Immutable labelled transition system.

    States are the integers ``0..n_states-1``; ``labels[i]`` is the text of
    label id ``i``.  ``out_adj[s]`` and ``in_adj[s]`` hold ``(label, other)``
    pairs for the transitions leaving and entering ``s``.  Exact duplicate
    ``(src, label, dst)`` triples are collapsed, so ``len(transitions)`` is
    the number of distinct transitions.
    """

    __slots__ = ("n_states", "labels", "label_index", "transitions",
                 "out_adj", "in_adj", "initial")

    def __init__(self, n_states, labels, transitions, initial=0):
        if n_states < 1:
            raise ValueError("an LTS needs at least one state")
        if not 0 <= initial < n_states:
            raise ValueError(f"initial state {initial} out of range")
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate label text in alphabet table")
        seen = set()
        triples = []
        for src, lab, dst in transitions:
            if not (0 <= src < n_states and 0 <= dst < n_states):
                raise ValueError(f"transition ({src},{lab},{dst}) out of range")
            if not 0 <= lab < len(labels):
                raise ValueError(f"unknown label id {lab}")
            t = (src, lab, dst)
            if t not in seen:
                seen.add(t)
                triples.append(t)
        out_adj = [[] for _ in range(n_states)]
        in_adj = [[] for _ in range(n_states)]
        for src, lab, dst in triples:
            out_adj[src].append((lab, dst))
            in_adj[dst].append((lab, src))
        self.n_states = n_states
        self.labels = labels
        self.label_index = {text: i for i, text in enumerate(labels)}
        self.transitions = triples
        self.out_adj = out_adj
        self.in_adj = in_adj
        self.initial = initial

    @property
    def n_transitions(self):
        return len(self.transitions)

    def signature_of(self, state: int) -> Signature:
        """Set of outgoing labels of ``state``; empty for sink states."""
        if not 0 <= state < self.n_states:
            raise ValueError(f"state {state} out of range")
        return Signature(lab for lab, _ in self.out_adj[state])

    def triple_set(self):
        """Content view used for structural comparison in tests."""
        return frozenset((src, self.labels[lab], dst)
                         for src, lab, dst in self.transitions)

    def __repr__(self):
        return (f"Lts(n_states={self.n_states}, n_transitions="
                f"{self.n_transitions}, n_labels={len(self.labels)})")


_HEADER_RE = re.compile(r"^\s*des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_QUOTED_RE = re.compile(r'^\s*\(\s*(\d+)\s*,\s*"([^"]*)"\s*,\s*(\d+)\s*\)\s*$')
_BARE_RE = re.compile(r"^\s*\(\s*(\d+)\s*,\s*([^,\"]+?)\s*,\s*(\d+)\s*\)\s*$")


def parse_aut(text: str) -> Lts:
    """Parse Aldebaran text into an :class:`Lts`.

    Accepts LF or CRLF line endings and whitespace around commas; labels may
    be double-quoted.  Errors carry the offending line number.
    """
    lines = text.splitlines()
    header_no = None
    for i, raw in enumerate(lines, start=1):
        if raw.strip():
            header_no = i
            break
    if header_no is None:
        raise AutFormatError("missing 'des' header")
    m = _HEADER_RE.match(lines[header_no - 1])
    if m is None:
        raise AutFormatError("malformed 'des' header", header_no)
    initial, n_trans, n_states = (int(g) for g in m.groups())
    if n_states < 1:
        raise AutFormatError("state count must be positive", header_no)
    if initial >= n_states:
        raise AutFormatError("initial state out of declared range", header_no)

    labels: list[str] = []
    label_ids: dict[str, int] = {}
    triples: list[tuple[int, int, int]] = []
    found = 0
    for line_no in range(header_no + 1, len(lines) + 1):
        raw = lines[line_no - 1]
        if not raw.strip():
            continue
        m = _QUOTED_RE.match(raw)
        if m is None:
            stripped = raw.strip()
            if '"' in stripped:
                raise AutFormatError("unterminated quoted label", line_no)
            m = _BARE_RE.match(raw)
            if m is None:
                raise AutFormatError("malformed transition line", line_no)
        src, text_label, dst = int(m.group(1)), m.group(2), int(m.group(3))
        if src >= n_states or dst >= n_states:
            raise AutFormatError("state index out of range", line_no)
        lab = label_ids.get(text_label)
        if lab is None:
            lab = label_ids[text_label] = len(labels)
            labels.append(text_label)
        triples.append((src, lab, dst))
        found += 1
    if found != n_trans:
        raise AutFormatError(
            f"transition count mismatch: header declares {n_trans}, found {found}")
    return Lts(n_states, labels, triples, initial=initial)


def write_aut(lts: Lts) -> str:
    """Serialize to Aldebaran text: LF endings, labels always quoted."""
    for text in lts.labels:
        if '"' in text:
            raise ValueError(f"label {text!r} contains a double quote")
    out = [f"des ({lts.initial},{lts.n_transitions},{lts.n_states})"]
    labels = lts.labels
    for src, lab, dst in lts.transitions:
        out.append(f'({src},"{labels[lab]}",{dst})')
    return "\n".join(out) + "\n"


def gen_chain(n: int) -> Lts:
    """Two disjoint ``a``-labelled chains of ``n`` states each.

    States ``0..n-1`` form the first chain and ``n..2n-1`` the second, so
    state ``0`` and state ``n`` are the two chain heads.  ``|S| = 2n`` and
    ``|T| = 2(n-1)``.
    """
    if n < 1:
        raise ValueError("chain length must be >= 1")
    triples = [(i, 0, i + 1) for i in range(n - 1)]
    triples += [(i, 0, i + 1) for i in range(n, 2 * n - 1)]
    return Lts(2 * n, ["a"], triples)


def gen_random(n_states: int, n_labels: int, n_transitions: int, seed: int) -> Lts:
    """Seed-deterministic random LTS with exactly ``n_transitions`` distinct
    transitions."""
    if n_states < 1:
        raise ValueError("need at least one state")
    if n_labels < 1:
        raise ValueError("need at least one label")
    space = n_states * n_states * n_labels
    if n_transitions > space:
        raise ValueError(
            f"{n_transitions} transitions infeasible for {n_states} states "
            f"and {n_labels} labels")
    rng = random.Random(seed)
    per_src = n_labels * n_states
    triples = []
    for code in sorted(rng.sample(range(space), n_transitions)):
        src, rem = divmod(code, per_src)
        lab, dst = divmod(rem, n_states)
        triples.append((src, lab, dst))
    return Lts(n_states, [f"a{i}" for i in range(n_labels)], triples)


def disjoint_union(first: Lts, second: Lts) -> tuple[Lts, int]:
    """Place two systems side by side in one state space.

    Returns the combined LTS and the offset added to ``second``'s state ids.
    Labels are merged by text.
    """
    labels = list(first.labels)
    label_ids = dict(first.label_index)
    remap = []
    for text in second.labels:
        lab = label_ids.get(text)
        if lab is None:
            lab = label_ids[text] = len(labels)
            labels.append(text)
        remap.append(lab)
    offset = first.n_states
    triples = list(first.transitions)
    triples += [(src + offset, remap[lab], dst + offset)
                for src, lab, dst in second.transitions]
    return Lts(first.n_states + second.n_states, labels, triples,
               initial=first.initial), offset
