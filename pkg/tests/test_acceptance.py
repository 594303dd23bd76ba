"""Acceptance criteria 1-12, each at its stated instance count and tolerance.

Every criterion prints one ``CRITERION k: PASS|FAIL`` line (also collected
into the pytest terminal summary).  Run directly with ``python3
tests/test_acceptance.py`` for just those lines.
"""

import itertools
import time
from fractions import Fraction

import sympy

from pathcof.cofib import check_cofibration, codiagonal_factorization
from pathcof.digraph import (
    DiGraph, gen_alt_cycle, gen_cycle, gen_J, gen_line, gen_mn_cycle, gen_punctured_cube,
    gen_suspension_alt4, is_isomorphic, pushout,
)
from pathcof.excision import (
    omega_pushout_dims, verify_E, verify_excision, verify_L_boundary, verify_left_properness, verify_les,
)
from pathcof.harness import (
    InstanceSpec, homology_iso_attaching, random_cofibration, random_digraph, random_pushout_square,
    random_tree,
)
from pathcof.linalg import rank
from pathcof.pathhom import PathComplex, RelativeComplex, homology, is_homology_iso, omega_boundary_matrix

RESULTS: dict = {}
DENSITY = Fraction(1, 4)
K = 4


def report(k: int, ok: bool, detail: str, started: float) -> None:
    line = f"CRITERION {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}  ({time.perf_counter() - started:.1f}s)"
    RESULTS[k] = line
    print(line)


# 1 --------------------------------------------------------------------------

def test_criterion_01_golden_tables():
    t0 = time.perf_counter()
    bad = []

    def expect(name, X, cutoff, betti, dims=None, check=None):
        t = homology(X, cutoff)
        if t.betti != betti or (dims is not None and t.omega_dims[:len(dims)] != dims):
            bad.append(f"{name}: betti={t.betti} dims={t.omega_dims}")
        if check is not None and not check(t):
            bad.append(f"{name}: extra check failed, dims={t.omega_dims}")

    expect("I2", gen_line(2), 4, [1, 0, 0, 0])
    expect("C3", gen_cycle(3), 4, [1, 1, 0, 0],
           check=lambda t: all(d == 0 for d in t.omega_dims[2:]))
    expect("C21", gen_mn_cycle(2, 1), 3, [1, 0, 0], check=lambda t: t.omega_dims[2] == 1)
    expect("C22", gen_mn_cycle(2, 2), 3, [1, 0, 0], check=lambda t: t.omega_dims[2] == 1)
    expect("C31", gen_mn_cycle(3, 1), 4, [1, 1, 0, 0], check=lambda t: all(d == 0 for d in t.omega_dims[2:]))
    SC4 = gen_suspension_alt4()
    expect("SC4", SC4, 4, [1, 0, 1, 0], check=lambda t: t.omega_dims[2] == 8)
    if rank(omega_boundary_matrix(SC4, 2)) != 7:
        bad.append("SC4: rank d2 != 7")
    expect("cube", gen_punctured_cube(), 5, [1, 0, 1, 0, 0], dims=[26, 48, 24, 0, 0])
    report(1, not bad, "7 golden tables" + ("; " + "; ".join(bad) if bad else ""), t0)
    assert not bad


# 2 --------------------------------------------------------------------------

def orientations(n):
    for bits in itertools.product((0, 1), repeat=n):
        yield DiGraph(range(n), [((i, (i + 1) % n) if b else ((i + 1) % n, i)) for i, b in enumerate(bits)])


def test_criterion_02_cycle_classification():
    t0 = time.perf_counter()
    special = [gen_mn_cycle(2, 1), gen_mn_cycle(2, 2)]
    total, bad = 0, []
    for n in range(3, 8):
        for X in orientations(n):
            total += 1
            want = [1, 0, 0] if any(len(S) == n and is_isomorphic(X, S) for S in special) else [1, 1, 0]
            got = homology(X, 3).betti
            if got != want:
                bad.append((sorted(X.edges), got))
    report(2, not bad, f"{total} oriented cycles on 3..7 vertices, {len(bad)} mismatches", t0)
    assert not bad, bad[:3]


# 3 --------------------------------------------------------------------------

def test_criterion_03_trees():
    t0 = time.perf_counter()
    spec = InstanceSpec(seed=3, vertex_budget=10)
    bad = []
    for i in range(200):
        T = random_tree(spec.child(i, "tree"))
        P = PathComplex(T)
        if any(P.dim(l) for l in range(2, 6)):
            bad.append(i)
    report(3, not bad, f"200 random trees, dim Ω_l = 0 for 2 <= l <= 5 failed on {len(bad)}", t0)
    assert not bad


# 4, 5, 6 -----------------------------------------------------------------------

def cofibrations_200():
    spec = InstanceSpec(seed=5, vertex_budget=10, edge_density=DENSITY, max_degree=K)
    return [random_cofibration(spec.child(i, "acceptance")) for i in range(200)]


def test_criterion_04_cofibration_fixtures():
    t0 = time.perf_counter()
    j = check_cofibration(gen_J(), [-2, 2])
    pi = j.decomposition.projection if j else {}
    c1 = check_cofibration(gen_mn_cycle(3, 1), [2, 3])
    c2 = check_cofibration(gen_mn_cycle(3, 1), [0, 1])
    ok = (bool(j) and pi.get(-1) == -2 and pi.get(1) == 2
          and not c1 and c1.failure.kind == "metric-violation"
          and not c2 and c2.failure.kind == "edge-out")
    report(4, ok, f"J: pi(-1)={pi.get(-1)}, pi(1)={pi.get(1)}; C31{{2,3}}: "
                  f"{c1.failure.kind if c1.failure else None}; C31{{0,1}}: {c2.failure.kind if c2.failure else None}", t0)
    assert ok


def test_criterion_05_direct_sum():
    t0 = time.perf_counter()
    bad, nontrivial = [], 0
    for i, inst in enumerate(cofibrations_200()):
        PX = PathComplex(inst.X)
        PA = PathComplex(inst.A_graph)
        R = RelativeComplex(inst.X, inst.A)
        nontrivial += 0 < len(inst.A) < len(inst.X)
        for n in range(K + 1):
            if PX.dim(n) != PA.dim(n) + R.dim(n):
                bad.append((i, n))
    report(5, not bad, f"200 cofibrations ({nontrivial} with proper nonempty A), n <= 4, {len(bad)} mismatches", t0)
    assert not bad


def test_criterion_06_L_boundary_and_E():
    t0 = time.perf_counter()
    bad, checked = [], 0
    for i, inst in enumerate(cofibrations_200()):
        lb = verify_L_boundary(inst.X, inst.A, K)
        checked += lb.checked
        if not lb.ok or not verify_E(inst.X, inst.A, K).ok:
            bad.append(i)
    report(6, not bad, f"200 cofibrations, {checked} L-boundary generators, E iso in degrees <= 4; "
                       f"{len(bad)} failures", t0)
    assert not bad


# 7, 11 ----------------------------------------------------------------------

def squares_100():
    spec = InstanceSpec(seed=7, vertex_budget=8, edge_density=DENSITY, max_degree=K)
    return [random_pushout_square(spec.child(i, "square"), target_size=6) for i in range(100)]


def test_criterion_07_excision():
    t0 = time.perf_counter()
    bad = []
    for i, sq in enumerate(squares_100()):
        assert len(sq.B) <= 6
        if not verify_excision(sq, K).ok:
            bad.append(i)
    report(7, not bad, f"100 pushout squares, targets <= 6 vertices, {len(bad)} failures", t0)
    assert not bad


def test_criterion_11_omega_pushout():
    t0 = time.perf_counter()
    bad = [i for i, sq in enumerate(squares_100()) if not omega_pushout_dims(sq, K)["ok"]]
    report(11, not bad, f"100 squares, dim Ω_n(Y) = X + B - A for n <= 4, {len(bad)} failures", t0)
    assert not bad


# 8 --------------------------------------------------------------------------

def test_criterion_08_left_properness():
    t0 = time.perf_counter()
    spec = InstanceSpec(seed=8, vertex_budget=8, edge_density=DENSITY, max_degree=K)
    bad, kinds = [], {}
    for i in range(100):
        s = spec.child(i, "left-proper")
        inst = random_cofibration(s)
        f, how = homology_iso_attaching(s, inst.A_graph, s.rng("attach"), K)
        kinds[how] = kinds.get(how, 0) + 1
        rep = verify_left_properness(pushout(inst.X, inst.A_graph, f), K)
        if not (rep.premise and rep.conclusion):
            bad.append(i)
    report(8, not bad, f"100 squares (attaching maps: {dict(sorted(kinds.items()))}), K=4, {len(bad)} failures", t0)
    assert not bad


# 9 --------------------------------------------------------------------------

def test_criterion_09_codiagonal():
    t0 = time.perf_counter()
    graphs = {"I0": gen_line(0), "I1": gen_line(1), "I2": gen_line(2), "C3": gen_cycle(3),
              "C22": gen_mn_cycle(2, 2), "alt C4": gen_alt_cycle(4)}
    bad = []
    for name, X in graphs.items():
        fac = codiagonal_factorization(X)
        if not (check_cofibration(fac.cylinder, fac.ends.vertices) and is_homology_iso(fac.projection, K)):
            bad.append(name)
    report(9, not bad, f"{len(graphs)} graphs, failures: {bad}", t0)
    assert not bad


# 10 -------------------------------------------------------------------------

def test_criterion_10_les():
    t0 = time.perf_counter()
    square = DiGraph(["x0", "x1", "a0", "a1"], [("x0", "x1"), ("x0", "a0"), ("x1", "a1"), ("a0", "a1")])
    cases = [(gen_J(), [-2, 2]), (gen_suspension_alt4(), [1]), (gen_mn_cycle(2, 2), [2]), (square, ["a0", "a1"])]
    spec = InstanceSpec(seed=10, vertex_budget=8, edge_density=DENSITY, max_degree=K)
    cases += [(inst.X, inst.A) for inst in (random_cofibration(spec.child(i, "les")) for i in range(50))]
    bad = [i for i, (X, A) in enumerate(cases) if not verify_les(X, A, K).ok]
    report(10, not bad, f"{len(cases)} cofibrations (4 fixtures + 50 seeded), degrees 0..3, {len(bad)} failures", t0)
    assert not bad


# 12 -------------------------------------------------------------------------

def brute_omega_dim(X: DiGraph, n: int) -> int:
    """dim Ω_n from scratch: span of allowed n-paths whose boundary is allowed."""
    V = list(X.vertices)
    regular = lambda p: all(p[i] != p[i + 1] for i in range(len(p) - 1))  # noqa: E731
    allowed = lambda p: all(X.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))  # noqa: E731
    A_n = [p for p in itertools.product(V, repeat=n + 1) if regular(p) and allowed(p)]
    if n == 0 or not A_n:
        return len(A_n)
    faces_bad = [p for p in itertools.product(V, repeat=n) if regular(p) and not allowed(p)]
    pos = {p: i for i, p in enumerate(faces_bad)}
    M = sympy.zeros(max(len(faces_bad), 1), len(A_n))
    for j, p in enumerate(A_n):
        for i in range(n + 1):
            q = p[:i] + p[i + 1:]
            if q in pos:
                M[pos[q], j] += (-1) ** i
    return len(A_n) - M.rank()


def test_criterion_12_oracle():
    t0 = time.perf_counter()
    spec = InstanceSpec(seed=12, vertex_budget=6, edge_density=Fraction(1, 3))
    bad = []
    for i in range(100):
        s = spec.child(i, "oracle")
        X = random_digraph(s, s.rng("size"), n=s.rng("n").randint(1, 6))
        P = PathComplex(X)
        for n in range(4):
            if P.dim(n) != brute_omega_dim(X, n):
                bad.append((i, n))
    report(12, not bad, f"100 graphs <= 6 vertices, degrees 0..3 vs brute force, {len(bad)} mismatches", t0)
    assert not bad


if __name__ == "__main__":
    import sys
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
