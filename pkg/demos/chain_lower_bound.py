"""The paired-chain family: a worst case for round count, a best case for
per-state work.

Two disjoint chains of n states each can only be told apart one link at a
time from the sinks backwards, so refinement needs close to n rounds; yet
every state is regrouped only a constant number of times, far below the
log2 ceiling.

Run with:  python3 demos/chain_lower_bound.py
"""

import math
import time

from bisim import EngineConfig, bisimilar, gen_chain, run

for n in (10, 100, 1000):
    lts = gen_chain(n)
    t0 = time.perf_counter()
    part, stats = run(lts, EngineConfig(instrument=True))
    elapsed = time.perf_counter() - t0
    sizes = {len(b.members) for b in part.blocks.values()}
    bound = math.floor(math.log2(lts.n_states)) + 1
    print(f"n={n:5d}  blocks={len(part.blocks):5d}  sizes={sizes}  "
          f"rounds={stats.rounds:4d}  "
          f"max split count={stats.max_per_state_split_count} "
          f"(ceiling {bound})  {elapsed * 1000:7.1f} ms")

# the two chain heads are bisimilar, head and second state are not
lts = gen_chain(1000)
print("head of chain 1 ~ head of chain 2:", bisimilar(lts, 0, 1000))
print("head ~ its own successor:", bisimilar(lts, 0, 1))
