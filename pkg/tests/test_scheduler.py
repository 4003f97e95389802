import pytest
from hypothesis import given
from hypothesis import strategies as st

from possreason.dsl import builtin, parse_kb
from possreason.errors import ScheduleError
from possreason.scheduler import build_schedule, layer_rules, specialization_edges, temporal_edges

PROPS = """
universe Bool = { true, false }
var p : Bool
var r : Bool
var s : Bool
var x : Bool
var q@1 : Bool
var q@2 : Bool
"""


def test_yale_edges():
    rules = builtin("yale").defaults
    assert specialization_edges(rules) == {("D3", "D2"), ("D4", "D2")}
    assert temporal_edges(rules) == {("D1", "D2"), ("D1", "D3"), ("D1", "D4")}


def test_yale_schedule():
    sched = build_schedule(builtin("yale"))
    assert sched.layers == (("F1", "F2", "F3"), ("D1",), ("D3", "D4"), ("D2",))
    assert sched.describe()[2] == "layer 2: {D3, D4}"
    assert not sched.warnings


def test_nixon_is_one_simultaneous_layer():
    for name in ("nixon", "nixon-both"):
        sched = build_schedule(builtin(name))
        assert sched.layers[1:] == (("P1", "P2"),)


def test_facts_only():
    kb = parse_kb(PROPS + "fact F1: p is {true}\n")
    assert build_schedule(kb).layers == (("F1",),)


def test_no_edge_cases():
    kb = parse_kb(PROPS + """
default A: if p is {true} then x is {true}
default B: if r is {true} then x is {false}
default C: if p is {true} then q@1 is {true}
""")
    assert specialization_edges(kb.defaults) == set()  # A, C share an antecedent: not strict
    untimed = [kb.rule("A"), kb.rule("B")]
    assert temporal_edges(untimed) == set()


def test_equal_times_no_edge():
    kb = parse_kb(PROPS + """
default A: if p is {true} then q@2 is {true}
default B: if r is {true} then q@2 is {false}
""")
    assert temporal_edges(kb.defaults) == set()


def test_negation_normalized_for_containment():
    kb = parse_kb(PROPS + """
default A: if p is not {true} then x is {true}
default B: if p is {false} and r is {true} then x is {false}
""")
    assert specialization_edges(kb.defaults) == {("B", "A")}


def test_conflict_prefers_temporal():
    kb = parse_kb(PROPS + """
default A: if p is {true} then q@1 is {true}
default B: if p is {true} and r is {true} then q@2 is {true}
""")
    sched = build_schedule(kb)
    assert sched.layers[1:] == (("A",), ("B",))
    assert sched.specialization == frozenset()
    assert len(sched.warnings) == 1 and "B -> A" in sched.warnings[0]


CYCLIC = PROPS + """
default R1: if p is {true} then q@1 is {true}
default R2: if p is {true} and r is {true} and s is {true} then q@2 is {true}
default R3: if p is {true} and r is {true} then x is {true}
"""


def test_cycle_is_named():
    with pytest.raises(ScheduleError) as exc:
        build_schedule(parse_kb(CYCLIC))
    assert set(exc.value.cycle) == {"R1", "R2", "R3"}
    assert "R1" in str(exc.value) and "->" in str(exc.value)


def test_no_edges_gives_single_rule_layer():
    assert layer_rules(["b", "a", "c"], []) == [("a", "b", "c")]


@st.composite
def dags(draw):
    n = draw(st.integers(1, 7))
    ids = [f"R{i}" for i in range(n)]
    edges = {
        (ids[i], ids[j])
        for i in range(n) for j in range(i + 1, n)
        if draw(st.booleans())
    }
    perm = draw(st.permutations(ids))
    return perm, edges


@given(dags())
def test_layering_respects_edges_and_is_canonical(dag):
    ids, edges = dag
    layers = layer_rules(ids, edges)
    where = {rid: k for k, layer in enumerate(layers) for rid in layer}
    assert sorted(where) == sorted(ids)
    assert all(where[a] < where[b] for a, b in edges)
    assert all(list(layer) == sorted(layer) for layer in layers)
    assert layers == layer_rules(sorted(ids), edges)
    # longest path: every node above layer 0 has a predecessor one layer up
    for rid, k in where.items():
        if k:
            assert any(where[a] == k - 1 for a, b in edges if b == rid)
