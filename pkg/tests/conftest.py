"""Shared strategies and deliberately naive reference implementations."""

from itertools import combinations, product

from hypothesis import settings, strategies as st

from mpart.graphs import SimpleGraph
from mpart.matrix import PartitionMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

EQ3 = PartitionMatrix.parse("001*01111*")


@st.composite
def matrices(draw, min_size=1, max_size=4):
    n = draw(st.integers(min_size, max_size))
    word = draw(st.text(alphabet="01*", min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    return PartitionMatrix.from_word(word)


@st.composite
def graphs(draw, max_n=4):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(n))))


def naive_counts(m: PartitionMatrix, g: SimpleGraph) -> dict[int, int]:
    """Plain nested-loop count of M-partitions, tallied by image."""
    out = {}
    for sigma in product(range(m.size), repeat=g.n):
        ok = True
        for u, v in combinations(range(g.n), 2):
            sym = m.entries[sigma[u]][sigma[v]].char
            if g.has_edge(u, v) and sym == "0":
                ok = False
                break
            if not g.has_edge(u, v) and sym == "1":
                ok = False
                break
        if ok:
            img = 0
            for p in sigma:
                img |= 1 << p
            out[img] = out.get(img, 0) + 1
    return out
