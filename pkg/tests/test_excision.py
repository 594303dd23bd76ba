import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathcof.cofib import projecting_decomposition
from pathcof.digraph import DiGraph, GraphError, GraphMap, gen_J, gen_mn_cycle, gen_suspension_alt4, induced_subgraph, pushout
from pathcof.excision import (
    E_map, L, MappingCone, complement_paths, omega_pushout_dims, pi_linear, verify_E,
    verify_excision, verify_L_boundary, verify_L_injective, verify_left_properness, verify_les,
)
from pathcof.harness import InstanceSpec, random_cofibration, random_pushout_square
from pathcof.linalg import GF, rank
from pathcof.pathhom import Chain

# x0 -> x1 over a0 -> a1, each x_i projecting to a_i
SQUARE = DiGraph(["x0", "x1", "a0", "a1"], [("x0", "x1"), ("x0", "a0"), ("x1", "a1"), ("a0", "a1")])
SQUARE_A = ["a0", "a1"]

FIXTURES = [(gen_J(), [-2, 2]), (gen_suspension_alt4(), [1]), (SQUARE, SQUARE_A),
            (gen_mn_cycle(2, 2), [2])]


def test_L_on_an_edge():
    dec = projecting_decomposition(SQUARE, SQUARE_A)
    p = Chain({("x0", "x1"): 1})
    assert L(dec, 0, p) == Chain({("x0", "a0", "a1"): 1, ("x0", "x1", "a1"): -1})
    assert L(dec, 1, p) == Chain({("x0", "x1", "a1"): -1})


def test_L_domain_checked():
    dec = projecting_decomposition(SQUARE, SQUARE_A)
    with pytest.raises(ValueError):
        L(dec, 0, Chain({("x0", "a0"): 1}))
    with pytest.raises(ValueError):
        L(dec, 2, Chain({("x0", "x1"): 1}))


def test_pi_collapses_height_drop():
    X = DiGraph(["y", "x", "a"], [("y", "x"), ("x", "a")])
    dec = projecting_decomposition(X, ["a"])
    assert pi_linear(dec, Chain({("y", "x"): 1})) == Chain()


@pytest.mark.parametrize("X,A", FIXTURES)
def test_fixture_identities(X, A):
    assert MappingCone(X, A).check_d_squared(4)
    assert verify_E(X, A, 4).ok
    rep = verify_L_boundary(X, A, 4)
    assert rep.ok and rep.checked > 0
    assert verify_les(X, A, 4).ok


def test_E_matrices_are_square_and_invertible():
    for M in E_map(gen_suspension_alt4(), [1], 3):
        assert M.shape[0] == M.shape[1] == rank(M)


def test_E_over_finite_field():
    assert verify_E(gen_J(), [-2, 2], 3, GF(2)).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_L_truncation(seed):
    inst = random_cofibration(InstanceSpec(seed=seed, vertex_budget=7))
    dec = projecting_decomposition(inst.X, inst.A)
    for n in range(1, 4):
        for path in complement_paths(dec, n):
            a = [dec(v) for v in path]
            c = Chain({path: 1})
            for j in range(1, n + 1):
                if len(set(a[:j + 1])) == 1:
                    assert L(dec, j, c) == L(dec, 0, c)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_L_injective_on_random(seed):
    inst = random_cofibration(InstanceSpec(seed=seed, vertex_budget=7))
    dec = projecting_decomposition(inst.X, inst.A)
    assert verify_L_injective(dec, 2, 0)
    assert verify_L_injective(dec, 3, 0)


def collapse_square():
    X = gen_J()
    A = induced_subgraph(X, [-2, 2])
    return pushout(X, A, GraphMap(A, DiGraph(["p"]), {-2: "p", 2: "p"}))


def test_excision_on_collapse():
    rep = verify_excision(collapse_square(), 3)
    assert rep.ok
    assert rep.source_betti == rep.target_betti == [0, 1, 0]
    assert omega_pushout_dims(collapse_square(), 3)["ok"]


def test_excision_rejects_non_cofibration():
    X = gen_mn_cycle(3, 1)
    A = induced_subgraph(X, [2, 3])
    sq = pushout(X, A, GraphMap(A, DiGraph(["p"]), {2: "p", 3: "p"}))
    with pytest.raises(GraphError):
        verify_excision(sq, 3)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_squares(seed):
    sq = random_pushout_square(InstanceSpec(seed=seed, vertex_budget=7))
    assert verify_excision(sq, 3).ok
    assert omega_pushout_dims(sq, 3)["ok"]


def test_left_properness_premise():
    rep = verify_left_properness(collapse_square(), 3)
    # two points collapsed to one changes H_0, so the premise fails
    assert not rep.premise and rep.ok
