"""Model construction, Aldebaran I/O, and the generators."""

import pytest

from bisim import (AutFormatError, Lts, Signature, disjoint_union, gen_chain,
                   gen_random, parse_aut, write_aut)

SAMPLE = 'des (0,3,3)\n(0,"a",1)\n(1,"b",2)\n(2,"a",0)\n'


def test_parse_basic():
    lts = parse_aut(SAMPLE)
    assert lts.n_states == 3
    assert lts.n_transitions == 3
    assert lts.initial == 0
    assert lts.labels == ["a", "b"]
    assert lts.triple_set() == {(0, "a", 1), (1, "b", 2), (2, "a", 0)}


def test_parse_accepts_bare_labels_crlf_and_spacing():
    text = 'des ( 1 , 2 , 3 )\r\n( 0 , tau , 1 )\r\n(2,"a b",0)\r\n'
    lts = parse_aut(text)
    assert lts.initial == 1
    assert lts.triple_set() == {(0, "tau", 1), (2, "a b", 0)}


def test_write_quotes_all_labels():
    lts = parse_aut('des (0,1,2)\n(0,tau,1)\n')
    assert write_aut(lts) == 'des (0,1,2)\n(0,"tau",1)\n'


def test_round_trip_is_a_fixpoint():
    text = write_aut(parse_aut(SAMPLE))
    again = write_aut(parse_aut(text))
    assert again == text


@pytest.mark.parametrize("text,line", [
    ("des (0,1)\n(0,\"a\",0)\n", 1),
    ("not a header\n", 1),
    ('des (0,1,2)\n(0,"a,1)\n', 2),
    ('des (0,1,2)\nrubbish\n', 2),
    ('des (0,1,2)\n(0,"a",5)\n', 2),
    ('des (9,1,2)\n(0,"a",1)\n', 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(AutFormatError) as exc:
        parse_aut(text)
    assert exc.value.line == line


def test_parse_rejects_transition_count_mismatch():
    with pytest.raises(AutFormatError, match="mismatch"):
        parse_aut('des (0,2,2)\n(0,"a",1)\n')


def test_empty_input_rejected():
    with pytest.raises(AutFormatError, match="header"):
        parse_aut("\n\n")


def test_duplicate_triples_collapse():
    lts = Lts(2, ["a"], [(0, 0, 1), (0, 0, 1), (1, 0, 0)])
    assert lts.n_transitions == 2


def test_constructor_validation():
    with pytest.raises(ValueError):
        Lts(0, [], [])
    with pytest.raises(ValueError):
        Lts(2, ["a"], [(0, 0, 5)])
    with pytest.raises(ValueError):
        Lts(2, ["a"], [(0, 3, 1)])
    with pytest.raises(ValueError):
        Lts(2, ["a", "a"], [])
    with pytest.raises(ValueError):
        Lts(2, ["a"], [], initial=7)


def test_adjacency_is_dual():
    lts = parse_aut(SAMPLE)
    for src, lab, dst in lts.transitions:
        assert (lab, dst) in lts.out_adj[src]
        assert (lab, src) in lts.in_adj[dst]


def test_signature_value_semantics():
    s1 = Signature([2, 0, 2, 1])
    s2 = Signature([0, 1, 2])
    assert s1 == s2 and hash(s1) == hash(s2)
    assert list(s1) == [0, 1, 2]
    with pytest.raises(AttributeError):
        s1.labels = ()


def test_signature_of_state():
    lts = parse_aut(SAMPLE)
    assert lts.signature_of(0) == Signature([lts.label_index["a"]])
    assert len(lts.signature_of(1)) == 1
    with pytest.raises(ValueError):
        lts.signature_of(99)


def test_chain_generator_shape():
    lts = gen_chain(4)
    assert lts.n_states == 8
    assert lts.n_transitions == 6
    # two disjoint runs with one sink each
    assert lts.out_adj[3] == [] and lts.out_adj[7] == []
    assert (0, "a", 1) in lts.triple_set()
    assert (4, "a", 5) in lts.triple_set()
    with pytest.raises(ValueError):
        gen_chain(0)


def test_random_generator_deterministic_and_exact():
    a = gen_random(20, 3, 55, seed=5)
    b = gen_random(20, 3, 55, seed=5)
    c = gen_random(20, 3, 55, seed=6)
    assert a.triple_set() == b.triple_set()
    assert a.triple_set() != c.triple_set()
    assert a.n_transitions == 55
    with pytest.raises(ValueError):
        gen_random(2, 1, 100, seed=0)


def test_disjoint_union_merges_labels_by_text():
    first = parse_aut('des (0,1,2)\n(0,"a",1)\n')
    second = parse_aut('des (0,2,2)\n(0,"a",1)\n(1,"b",0)\n')
    union, offset = disjoint_union(first, second)
    assert offset == 2
    assert union.n_states == 4
    assert union.labels == ["a", "b"]
    assert union.triple_set() == {(0, "a", 1), (2, "a", 3), (3, "b", 2)}
