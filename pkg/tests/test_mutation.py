"""Seed mutation: rank-2 chains, Laurentness, finite-type detection."""

import pytest

from clusterfan.cartan import b_matrix, cartan_for_type, dynkin_name
from clusterfan.laurent import LaurentPoly, parse_laurent
from clusterfan.mutation import (
    ExchangeMatrix,
    MutationBudgetExceeded,
    NotAlmostPositive,
    alternating_chain,
    canonical_key,
    denominator_root,
    detect_finite_type,
    explore,
    graph_to_dict,
    graph_to_dot,
    initial_seed,
    matrix_mutate,
    observe_positivity,
    seed_from_dict,
    seed_mutate,
    seed_to_dict,
)
from clusterfan.roots import root_system


def test_matrix_mutation_is_involutive():
    rows = ((0, 1, 0), (-1, 0, 1), (0, -1, 0))
    for k in range(3):
        assert matrix_mutate(matrix_mutate(rows, k), k) == rows


def test_exchange_matrix_rejects_non_skew_symmetrizable():
    with pytest.raises(ValueError):
        ExchangeMatrix(((0, 1), (1, 0)), 2)
    with pytest.raises(ValueError):
        ExchangeMatrix(((1, 0), (0, 1)), 2)


def test_seed_mutation_is_involutive():
    seed = initial_seed(b_matrix(cartan_for_type("A3")), ("x1", "x2", "x3"))
    for k in range(3):
        back = seed_mutate(seed_mutate(seed, k), k)
        assert canonical_key(back) == canonical_key(seed)


@pytest.mark.parametrize("name,period", [("A2", 5), ("B2", 6), ("G2", 8)])
def test_rank2_chain_periods(name, period):
    seeds, variables = alternating_chain(b_matrix(cartan_for_type(name)))
    assert len(seeds) == period
    assert len(variables) == period


def test_a2_chain_exact_variables():
    seeds, variables = alternating_chain(b_matrix(cartan_for_type("A2")))
    assert len(seeds) == 5
    texts = [v.fraction_text() for v in variables]
    assert texts == ["x", "y", "(y+1)/x", "(x+y+1)/(xy)", "(x+1)/y"]


def test_b2_exchange_recurrence_chain():
    # z_{m+1} z_{m-1} = z_m^c + 1 with c alternating 1, 2 closes with period 6
    x, y = LaurentPoly.ring(("x", "y"))
    one = LaurentPoly.one(("x", "y"))
    chain = [x, y]
    for m in range(1, 7):
        c = 1 if m % 2 else 2
        chain.append((chain[-1] ** c + one).exact_div(chain[-2]))
    assert chain[6] == chain[0]
    assert chain[7] == chain[1]
    expected = [
        (x, one),
        (y, one),
        (y + one, x),
        (x**2 + (y + one) ** 2, x**2 * y),
        (x**2 + y + one, x * y),
        (x**2 + one, y),
    ]
    for value, (numerator, denominator) in zip(chain[:6], expected):
        assert value * denominator == numerator


def test_chain_positivity():
    for name in ("A2", "B2", "G2"):
        _, variables = alternating_chain(b_matrix(cartan_for_type(name)))
        report = observe_positivity(variables)
        assert report["all_positive"]
        assert report["negative_examples"] == []


def test_explore_a3_exchange_graph():
    seed = initial_seed(b_matrix(cartan_for_type("A3")), ("x1", "x2", "x3"))
    graph = explore(seed)
    assert graph.closed
    assert len(graph.seeds) == 14
    assert len(graph.edges) == 21
    assert len(graph.cluster_variables()) == 9


def test_explore_b2():
    seed = initial_seed(b_matrix(cartan_for_type("B2")), ("x", "y"))
    graph = explore(seed)
    assert len(graph.seeds) == 6
    assert len(graph.cluster_variables()) == 6


def test_explore_budget():
    seed = initial_seed(b_matrix(cartan_for_type("A3")), ("x1", "x2", "x3"))
    with pytest.raises(MutationBudgetExceeded) as info:
        explore(seed, budget=3)
    assert info.value.partial is not None
    assert not info.value.partial.closed


def test_mutation_preserves_principal_rank():
    matrix = ExchangeMatrix(((0, 1), (-1, 0), (1, 0), (0, 1)), 2)
    current = matrix
    for k in (0, 1, 0, 1, 0):
        current = current.mutate(k)
        top = current.principal()
        assert len(top) == 2


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "G2"])
def test_denominator_vectors_biject_with_almost_positive_roots(name):
    rs = root_system(name)
    names = tuple(f"x{i + 1}" for i in range(rs.n))
    seed = initial_seed(b_matrix(rs.cartan), names)
    graph = explore(seed)
    roots = sorted(denominator_root(v, rs) for v in graph.cluster_variables())
    # every almost-positive root appears exactly once: the n negated simples
    # followed by all positive roots
    expected = sorted([rs.negate(rs.simple_index[i]) for i in range(rs.n)]
                      + list(range(rs.num_positive)))
    assert roots == expected


def test_denominator_root_rejects_garbage():
    rs = root_system("A2")
    x, y = LaurentPoly.ring(("x", "y"))
    one = LaurentPoly.one(("x", "y"))
    with pytest.raises(NotAlmostPositive):
        denominator_root((one + y).exact_div(x * x), rs)


@pytest.mark.parametrize(
    "name", ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]
)
def test_detect_finite_type_from_b_matrix(name):
    rows = b_matrix(cartan_for_type(name))
    dtype = detect_finite_type(rows)
    assert dtype is not None
    assert dynkin_name(dtype) == name


def test_detect_infinite_type_returns_none():
    # the Markov quiver mutates forever
    markov = ((0, 2, -2), (-2, 0, 2), (2, -2, 0))
    assert detect_finite_type(markov, budget=400) is None


def test_seed_roundtrip_through_dict():
    seed = initial_seed(((0, 1), (-1, 0), (1, 0)), ("x", "y"), ("c",))
    moved = seed_mutate(seed, 0)
    data = seed_to_dict(moved)
    back = seed_from_dict(data)
    assert canonical_key(back) == canonical_key(moved)
    assert back.cluster == moved.cluster
    assert back.frozen == moved.frozen


def test_graph_serialization():
    seed = initial_seed(b_matrix(cartan_for_type("A2")), ("x", "y"))
    graph = explore(seed)
    dot = graph_to_dot(graph)
    assert dot.startswith("graph")
    assert dot.count("--") == len(graph.edges)
    data = graph_to_dict(graph)
    assert data["closed"] is True
    assert len(data["seeds"]) == 5


def test_frozen_row_changes_variables():
    # one frozen coefficient row: mutation produces variables involving c
    btilde = ((0, 1), (-1, 0), (1, 0))
    seed = initial_seed(btilde, ("x", "y"), ("c",))
    moved = seed_mutate(seed, 0)
    new = moved.cluster[0]
    ambient = ("x", "y", "c")
    assert new == parse_laurent(ambient, "y*x^-1 + c*x^-1")
