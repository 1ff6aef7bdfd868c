"""Order-free perfect indexing of integer sets.

During splitting, states are regrouped by the set of target classes behind
each label; that calls for a map key that ignores element order and repeats.
``tuple_index`` packs a bounded integer set into one integer injectively,
and ``tuple_index_nested`` extends this to whole (label, target set) entry
lists.

Run with:  python3 demos/set_indexing.py
"""

from itertools import combinations

from bisim import tuple_index, tuple_index_nested

print("order and multiplicity do not matter:")
for tbl in ([3, 7], [7, 3], [3, 7, 7, 3]):
    print(f"  tuple_index({tbl}, 10) = {tuple_index(tbl, 10)}")

domain = 12
indices = {tuple_index(subset, domain)
           for size in range(1, domain + 1)
           for subset in combinations(range(domain), size)}
print(f"\nall {2 ** domain - 1} non-empty subsets of a {domain}-element "
      f"domain map to {len(indices)} distinct indices")

print("\nnested digests of outgoing-edge summaries:")
profiles = [
    [(0, [0, 1])],          # one label into two classes
    [(0, [0]), (1, [1])],   # two labels into one class each
    [(0, [0])],
    [],
]
for entries in profiles:
    exact = tuple_index_nested(entries, label_domain=2, block_domain=2)
    short = tuple_index_nested(entries, 2, 2, exact=False)
    print(f"  {entries!r:28} exact={exact:6d} 64-bit={short}")
