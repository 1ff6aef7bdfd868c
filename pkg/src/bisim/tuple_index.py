"""Perfect indexing of unordered integer sets.

Maps a k-element multiset of bounded integers to a single integer that is
insensitive to element order and multiplicity and injective over distinct
sets within one domain.  The construction is a chain of parallel-friendly
primitives (sort, neighbour compare, compaction, weighted sum, reduction);
this implementation runs them sequentially.
"""

from __future__ import annotations

__all__ = ["tuple_index", "tuple_index_nested"]

_MASK64 = (1 << 64) - 1


def tuple_index(tbl, domain_size: int) -> int:
    """Index of the unordered set formed by ``tbl`` within ``[0, domain_size)``.

    With ``t_0 < t_1 < ... < t_m`` the sorted distinct elements, the index is
    ``sum(t_i * domain_size**i)``, which is injective for sorted distinct
    sequences under a uniform bound and always below ``domain_size**(m+1)``.
    """
    if domain_size < 1:
        raise ValueError("domain size must be >= 1")
    values = list(tbl)
    if not values:
        raise ValueError("empty input has no index")
    # step 1: sort
    values.sort()
    # step 2: neighbour compare, replacing repeats with a sentinel above the
    # domain (None here), then step 3/4: re-pack so distinct values form a
    # prefix -- sort + truncate collapses to a single dedup pass sequentially
    distinct = []
    prev = None
    for v in values:
        if not 0 <= v < domain_size:
            raise ValueError(f"element {v} outside [0, {domain_size})")
        if v != prev:
            distinct.append(v)
            prev = v
    # step 5: position-weighted products; step 6: reduction to one integer
    index = 0
    weight = 1
    for v in distinct:
        index += v * weight
        weight *= domain_size
    return index


def _pair(a: int, b: int) -> int:
    # Cantor pairing: a bijection N x N -> N, so folds built from it peel
    # back uniquely
    s = a + b
    return s * (s + 1) // 2 + b


def tuple_index_nested(pairs, label_domain: int, block_domain: int,
                       exact: bool = True) -> int:
    """Digest of a canonical (label, sorted block-id set) entry list.

    Entries must be sorted by strictly increasing label with sorted,
    duplicate-free block-id sets.  In exact mode the digest is an
    arbitrary-precision integer and injective (pairing-function fold over
    ``tuple_index`` of each block set); otherwise it is folded to 64 bits and
    callers must fall back to structural comparison on collisions.
    """
    if label_domain < 1:
        raise ValueError("label domain must be >= 1")
    digest = 0  # designated digest of the empty entry list
    prev_label = -1
    for label, block_ids in pairs:
        if not 0 <= label < label_domain:
            raise ValueError(f"label {label} outside [0, {label_domain})")
        if label <= prev_label:
            raise ValueError("entries must be sorted by strictly "
                             "increasing label")
        prev_label = label
        ids = list(block_ids)
        if ids != sorted(set(ids)):
            raise ValueError("block-id sets must be sorted and duplicate-free")
        inner = tuple_index(ids, block_domain)
        digest = _pair(digest + 1, _pair(label, inner))
    if not exact:
        digest &= _MASK64
    return digest
