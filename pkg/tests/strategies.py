"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from pathcof.digraph import DiGraph


@st.composite
def digraphs(draw, min_vertices=1, max_vertices=6):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return DiGraph(range(n), edges, quiet=True)


@st.composite
def graph_with_subset(draw, min_vertices=1, max_vertices=6):
    X = draw(digraphs(min_vertices, max_vertices))
    A = draw(st.sets(st.sampled_from(X.vertices)))
    return X, frozenset(A)


def floyd_warshall(X: DiGraph) -> dict:
    """All-pairs directed distances; absent keys mean unreachable."""
    INF = float("inf")
    d = {(u, v): (0 if u == v else 1 if X.has_edge(u, v) else INF) for u in X for v in X}
    for k in X:
        for i in X:
            for j in X:
                if d[i, k] + d[k, j] < d[i, j]:
                    d[i, j] = d[i, k] + d[k, j]
    return {k: v for k, v in d.items() if v < INF}
