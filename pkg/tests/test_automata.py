import random

import pytest

from oracles import shortest_walk, walk_sums
from semirec.automata import (
    Edge,
    WeightedAutomaton,
    automaton_to_system,
    enumerate_paths,
    ones_vector,
    path_weight,
    path_weight_sum,
    system_to_automaton,
)
from semirec.errors import BoundExceededError, InputError, KindMismatchError, StructureError
from semirec.files import automaton_from_json, composition_from_json, system_from_json
from semirec.linalg import Mat, mat_pow, zero_vec
from semirec.randsys import POOLS, random_system
from semirec.recurrence import RecurrenceSystem, iterate
from semirec.semiring import INF, builtin_semiring
from semirec.sequences import constant_seq, parse_seq_spec, seq_from_spec

WORKED = {
    "format": 1, "semiring": "natural", "k": 1,
    "outer": {"variable": [["n+1"]]},
    "inner": {"variable": [["n"]]},
    "input_h": ["n+1"],
}


def w(text, s):
    return seq_from_spec(parse_seq_spec(text), s)


def homogeneous(A, s):
    """Automaton over output states p_0.. with constant weights from A."""
    k = len(A)
    names = tuple(f"p_{i}" for i in range(k))
    edges = tuple(Edge(names[i], names[j], w({"constant": s.render(A[i][j])}, s))
                  for i in range(k) for j in range(k) if A[i][j] != s.zero)
    return WeightedAutomaton(names, edges, s)


def rand_matrix(rng, s, k):
    pool = [s.parse_literal(t) for t in POOLS[s.name]]
    return [[rng.choice(pool) for _ in range(k)] for _ in range(k)]


# -- system -> automaton ---------------------------------------------------------


def test_doubling_is_single_self_loop(nat):
    sys = system_from_json({"semiring": "natural", "k": 1, "coefficients": {"constant": [["2"]]},
                            "input": [{"constant": "0"}]})
    aut = system_to_automaton(sys)
    assert aut.states == ("f_1",) and aut.inputs == ()
    assert len(aut.edges) == 1
    e = aut.edges[0]
    assert (e.src, e.dst, e.weight(0), e.weight(7)) == ("f_1", "f_1", 2, 2)
    assert aut.kind == "homogeneous"


def test_worked_outer_automaton():
    comp = composition_from_json(WORKED)
    aut = system_to_automaton(comp.outer)
    assert aut.states == ("f_1",) and aut.inputs == ("g_1",)
    loop = [e for e in aut.edges if e.src == "f_1"]
    assert len(loop) == 1 and [loop[0].weight(n) for n in range(4)] == [1, 2, 3, 4]
    feed = aut.input_edge("g_1")
    assert feed.dst == "f_1" and feed.weight(5) == 1
    assert [aut.signals["g_1"](n) for n in range(5)] == [0, 1, 3, 9, 31]
    assert aut.kind == "nonhomogeneous"


def test_zero_system_has_isolated_states(semiring):
    s = semiring
    z = constant_seq(zero_vec(3, s), s)
    sys = RecurrenceSystem(Mat.from_rows([[s.zero] * 3] * 3, s), z, zero_vec(3, s))
    aut = system_to_automaton(sys)
    assert aut.states == ("f_1", "f_2", "f_3") and aut.edges == ()


def test_coefficient_orientation(nat):
    sys = system_from_json({"semiring": "natural", "k": 2,
                            "coefficients": {"constant": [["0", "5"], ["0", "0"]]},
                            "input": ["0", "0"]})
    (e,) = system_to_automaton(sys).edges
    # a_12 is read as the edge f_1 -> f_2
    assert (e.src, e.dst, e.weight(0)) == ("f_1", "f_2", 5)


@pytest.mark.parametrize("variable", [False, True])
def test_round_trip_pointwise(semiring, variable):
    rng = random.Random(40 + variable)
    for _ in range(50):
        sys = random_system(rng, semiring.name, variable=variable)
        back = automaton_to_system(system_to_automaton(sys))
        assert back.dim == sys.dim
        for n in range(13):
            assert back.A(n) == sys.A(n)
            assert back.input(n) == sys.input(n)
        assert iterate(back, 12) == iterate(sys, 12)


def test_homogeneous_automaton_gives_zero_input(semiring):
    aut = homogeneous([[semiring.one, semiring.zero], [semiring.one, semiring.one]], semiring)
    sys = automaton_to_system(aut)
    assert all(sys.input(n) == zero_vec(2, semiring) for n in range(8))
    assert sys.has_zero_initial


def test_parallel_edges_add(nat):
    aut = WeightedAutomaton(("a",), (Edge("a", "a", w({"constant": "2"}, nat)),
                                     Edge("a", "a", w({"constant": "3"}, nat))), nat)
    assert automaton_to_system(aut).coefficients.entries == (5,)


# -- structural validation ----------------------------------------------------------


def _nonhomog(weight, nat, extra=()):
    edges = (Edge("f", "f", w("n+1", nat)), Edge("g", "f", weight)) + tuple(extra)
    return WeightedAutomaton(("f",), edges, nat, ("g",), {"g": w("1", nat)})


def test_input_edge_weight_must_be_one(nat):
    _nonhomog(w({"constant": "1"}, nat), nat)
    with pytest.raises(StructureError) as exc:
        _nonhomog(w({"constant": "2"}, nat), nat)
    assert exc.value.state == "g"
    with pytest.raises(StructureError):
        _nonhomog(w("n+1", nat), nat)


def test_input_state_single_outgoing_edge(nat):
    one = w({"constant": "1"}, nat)
    with pytest.raises(StructureError) as exc:
        WeightedAutomaton(("f", "h"), (Edge("g", "f", one), Edge("g", "h", one)), nat,
                          ("g",), {"g": one})
    assert exc.value.state == "g"


def test_input_state_without_incoming_edges(nat):
    one = w({"constant": "1"}, nat)
    with pytest.raises(StructureError):
        _nonhomog(one, nat, extra=(Edge("f", "g", one),))


def test_unknown_endpoint_and_missing_signal(nat):
    one = w({"constant": "1"}, nat)
    with pytest.raises(StructureError):
        WeightedAutomaton(("f",), (Edge("f", "x", one),), nat)
    with pytest.raises(StructureError):
        WeightedAutomaton(("f",), (Edge("g", "f", one),), nat, ("g",), {})


# -- paths ------------------------------------------------------------------------------


def test_length_zero_has_one_empty_path(semiring):
    aut = homogeneous([[semiring.one]], semiring)
    paths = enumerate_paths(aut, "p_0", 0)
    assert len(paths) == 1 and paths[0].edges == ()
    assert path_weight(aut, paths[0]) == semiring.one
    assert path_weight_sum(aut, "p_0", 0) == semiring.one


def test_self_loop_single_path_per_length(nat):
    aut = homogeneous([[2]], nat)
    for n in range(6):
        paths = enumerate_paths(aut, "p_0", n)
        assert len(paths) == 1 and paths[0].states == ["p_0"] * (n + 1)
        assert path_weight_sum(aut, "p_0", n) == 2 ** n


def test_complete_graph_path_count(nat):
    aut = homogeneous([[1, 1], [1, 1]], nat)
    assert len(enumerate_paths(aut, "p_0", 3)) == 2 ** 3
    assert path_weight_sum(aut, "p_0", 3) == 8


def test_path_sum_is_row_of_power(semiring):
    rng = random.Random(77)
    s = semiring
    for _ in range(10):
        k = rng.randint(1, 3)
        A = rand_matrix(rng, s, k)
        aut = homogeneous(A, s)
        for n in range(8):
            P = mat_pow(Mat.from_rows(A, s), n)
            ones = ones_vector(k, s)
            for i in range(k):
                expected = walk_sums(s, A, i, n)
                assert path_weight_sum(aut, f"p_{i}", n) == expected
                assert s.sum(s.mul(P[i, j], ones[j]) for j in range(k)) == expected


def test_min_plus_path_sum_is_shortest_walk():
    s = builtin_semiring("tropical_min_plus")
    rng = random.Random(13)
    for _ in range(10):
        A = rand_matrix(rng, s, 3)
        aut = homogeneous(A, s)
        for n in range(6):
            for i in range(3):
                assert path_weight_sum(aut, f"p_{i}", n) == shortest_walk(A, i, n, INF)


def test_variable_weights_follow_iteration(semiring):
    rng = random.Random(21)
    s = semiring
    for _ in range(10):
        sys = random_system(rng, s.name, variable=True)
        k = sys.dim
        homog = RecurrenceSystem(sys.coefficients, constant_seq(zero_vec(k, s), s),
                                 ones_vector(k, s))
        aut = system_to_automaton(homog)
        f = iterate(homog, 6)
        for n in range(7):
            for i in range(k):
                assert path_weight_sum(aut, f"f_{i + 1}", n) == f[n][i]


def test_bound_exceeded(nat):
    aut = homogeneous([[1]], nat)
    with pytest.raises(BoundExceededError):
        enumerate_paths(aut, "p_0", 11)
    assert len(enumerate_paths(aut, "p_0", 11, bound=11)) == 1


def test_path_sum_refuses_nonhomogeneous(nat):
    aut = _nonhomog(w({"constant": "1"}, nat), nat)
    with pytest.raises(KindMismatchError):
        path_weight_sum(aut, "f", 2)


def test_unknown_and_input_start_states(nat):
    aut = _nonhomog(w({"constant": "1"}, nat), nat)
    with pytest.raises(InputError):
        enumerate_paths(aut, "g", 1)
    with pytest.raises(InputError):
        enumerate_paths(aut, "nope", 1)


def test_shipped_boolean_cycle(examples_dir):
    aut = automaton_from_json(__import__("json").loads((examples_dir / "automaton_boolean.json").read_text()))
    s = aut.semiring
    sys = automaton_to_system(aut)
    A = sys.coefficients.tolist()
    for n in range(7):
        for i, name in enumerate(aut.states):
            assert path_weight_sum(aut, name, n) == walk_sums(s, A, i, n)
