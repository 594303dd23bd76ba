import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import floyd_warshall, graph_with_subset

from pathcof.cofib import (
    EDGE_OUT, METRIC_VIOLATION, NO_UNIQUE_CLOSEST, NOT_INDUCED, ProjectionError, RetractDiagram,
    check_cofibration, check_pi_edges, codiagonal_factorization, compose_cofibrations,
    find_edge_out, projecting_decomposition, verify_retract,
)
from pathcof.digraph import (
    DiGraph, GraphError, GraphMap, box_product, gen_alt_cycle, gen_cycle, gen_J, gen_line,
    gen_mn_cycle,
)
from pathcof.harness import InstanceSpec, random_cofibration


def test_j_with_endpoints():
    v = check_cofibration(gen_J(), [-2, 2])
    assert v
    pi = v.decomposition.projection
    assert pi[-1] == -2 and pi[1] == 2 and pi[-2] == -2 and pi[2] == 2
    assert 0 not in pi


def test_c31_metric_violation():
    v = check_cofibration(gen_mn_cycle(3, 1), [2, 3])
    assert not v and v.failure.kind == METRIC_VIOLATION
    assert v.failure.witness["x"] == 0 and v.failure.witness["a"] == 2


def test_c31_edge_out():
    v = check_cofibration(gen_mn_cycle(3, 1), [0, 1])
    assert not v and v.failure.kind == EDGE_OUT
    assert (v.failure.witness["a"], v.failure.witness["x"]) in {(0, 3), (1, 2)}


def test_no_unique_closest():
    # the source of the alternating square sees both sinks at distance 1
    v = check_cofibration(gen_alt_cycle(4), [1, 3])
    assert not v and v.failure.kind == NO_UNIQUE_CLOSEST


def test_not_induced_and_coercion():
    X = gen_line(2)
    A = DiGraph([0, 1, 2], [(0, 1)])
    v = check_cofibration(X, A)
    assert not v and v.failure.kind == NOT_INDUCED
    assert check_cofibration(X, A, coerce_induced=True)


def test_projection_error_is_raised():
    with pytest.raises(ProjectionError) as e:
        projecting_decomposition(gen_mn_cycle(3, 1), [2, 3])
    assert e.value.failure.kind == METRIC_VIOLATION


def test_to_dict_is_json_ready():
    d = check_cofibration(gen_J(), [-2, 2]).to_dict()
    assert d["decomposition"]["projection"]["-1"] == "-2"
    assert d["decomposition"]["heights"]["0"] is None


def oracle_projections(X, A):
    """Every map π: X^A -> A satisfying the defining distance identities."""
    d = floyd_warshall(X)
    reach = [x for x in X if any((x, a) in d for a in A)]
    h = {x: min(d[x, a] for a in A if (x, a) in d) for x in reach}
    found = []
    for images in itertools.product(sorted(A), repeat=len(reach)):
        pi = dict(zip(reach, images))
        if all(d.get((x, pi[x])) == h[x] for x in reach) and all(
                d[x, a] == h[x] + d.get((pi[x], a), -10 ** 9)
                for x in reach for a in A if (x, a) in d):
            found.append(pi)
    return found


@settings(max_examples=150, deadline=None)
@given(graph_with_subset(max_vertices=8))
def test_projection_matches_exhaustive_search(data):
    X, A = data
    if not A or find_edge_out(X, A) is not None or len(A) ** len(X) > 200_000:
        return
    found = oracle_projections(X, A)
    assert len(found) <= 1
    v = check_cofibration(X, A)
    assert bool(v) == bool(found)
    if v:
        assert v.decomposition.projection == found[0]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_cofibrations_satisfy_pi_edges(seed):
    inst = random_cofibration(InstanceSpec(seed=seed, vertex_budget=8))
    v = check_cofibration(inst.X, inst.A)
    assert v
    check_pi_edges(v.decomposition)


def test_identity_and_empty():
    X = gen_cycle(4)
    assert check_cofibration(X, X.vertices)
    assert check_cofibration(X, [])


def test_composition():
    J = gen_J()
    assert compose_cofibrations(J, [-2, -1, 0], [-2])
    with pytest.raises(GraphError):
        compose_cofibrations(J, [-2, 2], [-2, -1])


def test_retract_of_box_with_point():
    X, A = gen_J(), frozenset([-2, 2])
    X2 = box_product(X, gen_line(1))
    A2 = frozenset((a, i) for a in A for i in (0, 1))
    s = GraphMap(X, X2, {x: (x, 0) for x in X.vertices})
    r = GraphMap(X2, X, {(x, i): x for x, i in X2.vertices})
    assert verify_retract(RetractDiagram(X, A, X2, A2, s, r))
    bad = GraphMap(X2, X, {(x, i): -2 for x, i in X2.vertices})
    with pytest.raises(GraphError):
        RetractDiagram(X, A, X2, A2, s, bad).validate()


@pytest.mark.parametrize("X", [DiGraph([0]), gen_line(1), gen_cycle(3), gen_mn_cycle(2, 2)])
def test_codiagonal(X):
    fac = codiagonal_factorization(X)
    assert len(fac.cylinder) == 5 * len(X)
    assert check_cofibration(fac.cylinder, fac.ends.vertices)
    fold = fac.fold()
    assert all(fold(v) == v[0] for v in fac.ends.vertices)
