from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from pathcof.cofib import check_cofibration
from pathcof.digraph import undirected_components
from pathcof.harness import (
    InstanceSpec, axiom_suite, random_cofibration, random_digraph, random_pushout_square,
    random_retract, random_tree, verify_random_cofibrations,
)
from pathcof.cofib import verify_retract


def test_seeded_determinism():
    s = InstanceSpec(seed=42, vertex_budget=7)
    assert random_digraph(s) == random_digraph(s)
    a, b = random_cofibration(s), random_cofibration(s)
    assert a.X == b.X and a.A == b.A
    assert random_digraph(s.child(0)) == random_digraph(InstanceSpec(seed=42, vertex_budget=7).child(0))
    assert s.child(0).seed != s.child(1).seed


@given(st.integers(0, 10 ** 9))
def test_trees(seed):
    T = random_tree(InstanceSpec(seed=seed, vertex_budget=10))
    assert 1 <= len(T) <= 10
    assert len(T.edges) == len(T) - 1
    assert len(undirected_components(T)) == 1


def test_density_extremes():
    full = random_digraph(InstanceSpec(seed=1, vertex_budget=5, edge_density=Fraction(1)), n=5)
    assert len(full.edges) == 20
    empty = random_digraph(InstanceSpec(seed=1, vertex_budget=5, edge_density=Fraction(0)), n=5)
    assert not empty.edges


def test_random_cofibrations_pass():
    assert verify_random_cofibrations(InstanceSpec(seed=3, vertex_budget=9), 30) == (30, 30)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_squares_have_cofibration_legs(seed):
    sq = random_pushout_square(InstanceSpec(seed=seed, vertex_budget=7))
    assert check_cofibration(sq.X, sq.A.vertices)
    assert check_cofibration(sq.Y, sq.B_to_Y.image(sq.B.vertices))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_retracts(seed):
    assert verify_retract(random_retract(InstanceSpec(seed=seed, vertex_budget=5)))


def test_axiom_suite_and_negative_control():
    spec = InstanceSpec(seed=11, vertex_budget=6, edge_density=Fraction(1, 4))
    rep = axiom_suite(spec, instances=6)
    assert rep.ok, rep.counterexamples
    assert set(rep.skipped) == {"C2", "C6", "C7"}
    bad = axiom_suite(spec, instances=6, corrupt=True)
    assert not bad.ok
    assert bad.failed["C4-cofibration"] > 0
    assert all(e["axiom"] == "C4-cofibration" for e in bad.counterexamples)
    assert axiom_suite(spec, instances=6).to_dict() == rep.to_dict()
