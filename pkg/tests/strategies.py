"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from dagreduce.graph import WeightedDag


@st.composite
def dags(draw, max_vertices=8, weights=st.integers(-5, 5)):
    """Random DAG on a random vertex permutation with random distinct endpoints."""
    n = draw(st.integers(2, max_vertices))
    perm = draw(st.permutations(range(n)))
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                arcs.append((perm[i], perm[j], draw(weights)))
    s, t = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    return WeightedDag(n, arcs, s, t)
