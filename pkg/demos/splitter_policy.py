"""Effect of withholding the largest piece after each split.

After a block splits, all resulting pieces except one largest piece go back
on the splitter queue; processing the withheld piece would be redundant
almost always, and a closing full pass covers the rare case where it is not.
The final partition must be identical either way; only the amount of work
differs.

Run with:  python3 demos/splitter_policy.py
"""

from bisim import EngineConfig, canonical_form, gen_random, run

for seed in (7, 42, 2024):
    lts = gen_random(n_states=2000, n_labels=2, n_transitions=5000, seed=seed)
    keep, s_keep = run(lts, EngineConfig(omit_largest=True, instrument=True))
    full, s_full = run(lts, EngineConfig(omit_largest=False, instrument=True))
    same = canonical_form(keep) == canonical_form(full)
    print(f"seed {seed}: identical result: {same}; "
          f"splits {s_keep.splits} (withholding) vs {s_full.splits} (all), "
          f"blocks {len(keep.blocks)}")
