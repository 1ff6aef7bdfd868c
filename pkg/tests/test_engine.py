"""Refinement engine: phases in isolation, then whole runs."""

import pytest

from bisim import (EngineConfig, EngineError, Lts, Partition, bisimilar,
                   canonical_form, check_transfer, copy_phase, gen_chain,
                   gen_random, init_phase, is_stable, marking,
                   oracle_partition, run, splitting)


def test_init_phase_groups_by_outgoing_label_set():
    # 0 and 1 move on a, 2 on b, 3 is a sink
    lts = Lts(4, ["a", "b"], [(0, 0, 3), (1, 0, 0), (2, 1, 0)])
    part = init_phase(lts)
    assert canonical_form(part) == [[0, 1], [2], [3]]
    assert part.splitters == set(part.blocks)
    part.check_invariants()


def test_marking_flags_partial_predecessor_groups():
    # P = {0,1,2}: 0 and 1 step into the splitter, 2 steps elsewhere,
    # so exactly {0,1} must be marked
    lts = Lts(5, ["a"], [(0, 0, 3), (1, 0, 3), (2, 0, 4)])
    part = Partition.from_blocks(5, [[0, 1, 2], [3], [4]])
    p_id = part.state_to_block[0]
    splits, marked_ids = marking(lts, part, part.state_to_block[3])
    assert marked_ids == [p_id]
    assert part.marked_blocks == {p_id}
    assert part.blocks[p_id].marked == {0, 1}
    assert splits[(0, p_id)] == {0, 1}


def test_marking_skips_all_or_nothing_groups():
    lts = Lts(3, ["a"], [(0, 0, 2), (1, 0, 2)])
    part = Partition.from_blocks(3, [[0, 1], [2]])
    _, marked_ids = marking(lts, part, part.state_to_block[2])
    assert marked_ids == [] and not part.marked_blocks


def test_marking_skips_singleton_blocks():
    lts = Lts(2, ["a"], [(0, 0, 1)])
    part = Partition.from_blocks(2, [[0], [1]])
    _, marked_ids = marking(lts, part, part.state_to_block[1])
    assert marked_ids == []


def test_splitting_groups_marked_states_by_marker():
    # marked states 2, 3, 4 step into three different target blocks and so
    # land in three new singleton blocks; the remainder {0,1} is the largest
    # piece and is withheld from the splitter queue
    lts = Lts(9, ["a"], [(2, 0, 5), (2, 0, 6), (3, 0, 7), (4, 0, 8)])
    part = Partition.from_blocks(9, [[0, 1, 2, 3, 4], [5], [6, 7], [8]])
    p_id = part.state_to_block[0]
    part.blocks[p_id].marked = {2, 3, 4}
    new_ids, enqueued = splitting(lts, part, p_id, round_no=2)
    assert len(new_ids) == 3
    assert sorted(enqueued) == sorted(new_ids)
    assert part.blocks[p_id].members == {0, 1}
    copy_phase(part)
    part.check_invariants()
    assert canonical_form(part)[:4] == [[0, 1], [2], [3], [4]]


def test_splitting_first_round_enqueues_every_piece():
    lts = Lts(9, ["a"], [(2, 0, 5), (2, 0, 6), (3, 0, 7), (4, 0, 8)])
    part = Partition.from_blocks(9, [[0, 1, 2, 3, 4], [5], [6, 7], [8]])
    p_id = part.state_to_block[0]
    part.blocks[p_id].marked = {2, 3, 4}
    new_ids, enqueued = splitting(lts, part, p_id, round_no=1)
    assert sorted(enqueued) == sorted(new_ids + [p_id])


def test_splitting_drops_fully_marked_block():
    lts = Lts(3, ["a"], [(0, 0, 2), (1, 0, 1)])
    part = Partition.from_blocks(3, [[0, 1], [2]])
    p_id = part.state_to_block[0]
    part.blocks[p_id].marked = {0, 1}
    splitting(lts, part, p_id, round_no=1)
    assert p_id not in part.blocks
    copy_phase(part)
    part.check_invariants()


def test_splitting_requires_marked_states():
    part = Partition.from_blocks(2, [[0, 1]])
    lts = Lts(2, ["a"], [])
    with pytest.raises(EngineError):
        splitting(lts, part, part.state_to_block[0], round_no=1)


def test_copy_phase_publishes_and_clears():
    part = Partition.from_blocks(2, [[0, 1]])
    block = part.new_block([1])
    part.blocks[part.state_to_block[0]].members.discard(1)
    part.next_state_to_block[1] = block.id
    copy_phase(part)
    assert part.state_to_block[1] == block.id
    assert not part.next_state_to_block
    part.check_invariants()


def test_run_on_paired_chains():
    part, stats = run(gen_chain(3))
    assert canonical_form(part) == [[0, 3], [1, 4], [2, 5]]
    assert stats.rounds >= 1


def test_run_short_circuits_single_signature():
    # every state has signature {a}: one block, nothing to refine
    lts = Lts(3, ["a"], [(0, 0, 1), (1, 0, 2), (2, 0, 0)])
    part, stats = run(lts)
    assert canonical_form(part) == [[0, 1, 2]]
    assert stats.rounds == 0


def test_run_result_is_stable_and_matches_oracle():
    for seed in range(12):
        lts = gen_random(24, 2, 60, seed=seed)
        part, _ = run(lts)
        assert is_stable(lts, part)[0]
        assert check_transfer(lts, part)[0]
        assert canonical_form(part) == canonical_form(oracle_partition(lts))


def test_withheld_piece_blindness_regression():
    # dense one-label system where a block is all-or-nothing stable against
    # every queued splitter yet still mixes states that differ on edges into
    # a withheld piece; the closing full pass must separate them
    lts = gen_random(31, 1, 172, seed=1114)
    part, _ = run(lts)
    assert is_stable(lts, part)[0]
    assert canonical_form(part) == canonical_form(oracle_partition(lts))


def test_splitter_policy_toggle_changes_nothing():
    for seed in (1, 2, 3, 1114):
        lts = gen_random(31, 1, 172, seed=seed)
        keep, _ = run(lts, EngineConfig(omit_largest=True))
        full, _ = run(lts, EngineConfig(omit_largest=False))
        assert canonical_form(keep) == canonical_form(full)


def test_thread_count_does_not_change_result():
    lts = gen_random(60, 3, 200, seed=77)
    reference = canonical_form(run(lts, EngineConfig(threads=1))[0])
    for threads in (2, 4):
        assert canonical_form(run(lts, EngineConfig(threads=threads))[0]) \
            == reference


def test_instrumentation_counters():
    _, stats = run(gen_chain(8), EngineConfig(instrument=True))
    assert stats.splits > 0
    assert stats.max_per_state_split_count >= 1
    payload = stats.to_json()
    assert payload["rounds"] == stats.rounds
    assert set(payload["phase_times_ms"]) == {"init", "mark", "split", "copy"}


def test_bisimilar_helper():
    lts = gen_chain(4)
    assert bisimilar(lts, 0, 4)
    assert not bisimilar(lts, 0, 1)
    with pytest.raises(ValueError):
        bisimilar(lts, 0, 99)


def test_config_validation():
    with pytest.raises(ValueError):
        EngineConfig(threads=0)
