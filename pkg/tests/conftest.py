from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from leftorth.lattice import build_configuration, Divisor
from leftorth.models import SweepBounds, enumerate_catalog, prufer_decode


def brute_connected_subvectors(config, k):
    """Independent enumeration: product, networkx connectivity, explicit sort."""
    g = nx.Graph()
    g.add_nodes_from(range(len(k)))
    g.add_edges_from(config.incidences)
    out = []
    for v in itertools.product(*(range(a + 1) for a in k)):
        supp = [i for i, a in enumerate(v) if a]
        if supp and nx.is_connected(g.subgraph(supp)):
            out.append(v)
    out.sort(key=lambda v: (sum(v), v))
    return out


def brute_genus(config, v):
    n = len(v)
    dd = sum(v[i] * v[j] * config.gram[i][j] for i in range(n) for j in range(n))
    dk = sum(v[i] * (2 * config.genera[i] - 2 - config.self_intersections[i]) for i in range(n))
    assert (dd + dk) % 2 == 0
    return 1 + (dd + dk) // 2


def brute_verdict(config, k):
    """(lo, slo) straight from the definitions, via networkx and brute force."""
    supp = [i for i, a in enumerate(k) if a]
    mg = nx.MultiGraph()
    mg.add_nodes_from(supp)
    mg.add_edges_from((i, j) for i, j in config.incidences if k[i] and k[j])
    simple = nx.Graph(mg)
    tree = (
        all(config.genera[i] == 0 for i in supp)
        and mg.number_of_edges() == simple.number_of_edges()
        and nx.is_tree(simple)
    )
    if not tree or brute_genus(config, k) != 0:
        return False, False
    subs = brute_connected_subvectors(config, k)
    lo = all(brute_genus(config, v) <= 0 for v in subs)
    n = len(k)
    slo = lo and all(
        brute_genus(config, v)
        <= 1 + sum(k[i] * v[j] * config.gram[i][j] for i in range(n) for j in range(n))
        for v in subs
    )
    return lo, slo


@st.composite
def simple_trees(draw, max_n=6, k_max=3, r_min=-5, r_max=5):
    """A simple tree of rational curves and a divisor with full support."""
    n = draw(st.integers(1, max_n))
    if n == 1:
        edges = []
    elif n == 2:
        edges = [(0, 1)]
    else:
        edges = prufer_decode(draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2)), n)
    r = draw(st.lists(st.integers(r_min, r_max), min_size=n, max_size=n))
    k = draw(st.lists(st.integers(1, k_max), min_size=n, max_size=n))
    ids = [f"E{i + 1}" for i in range(n)]
    config = build_configuration(
        [(c, x) for c, x in zip(ids, r)], [(ids[i], ids[j]) for i, j in edges]
    )
    return config, Divisor(config, k)


@st.composite
def any_configurations(draw, max_n=5, k_max=3):
    """Arbitrary multigraph configurations, positive genera allowed, k may be 0."""
    n = draw(st.integers(1, max_n))
    ids = [f"C{i}" for i in range(n)]
    r = draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
    g = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mult = draw(st.lists(st.integers(0, 2), min_size=len(pairs), max_size=len(pairs)))
    inc = [(ids[i], ids[j]) for (i, j), m in zip(pairs, mult) for _ in range(m)]
    config = build_configuration([(c, x, y) for c, x, y in zip(ids, r, g)], inc)
    k = draw(st.lists(st.integers(0, k_max), min_size=n, max_size=n).filter(any))
    return config, Divisor(config, k)


@pytest.fixture(scope="session")
def sweep_catalog():
    """Exhaustive catalog n <= 4, k <= 3, r in [-3, 2] shared by property suites."""
    return list(enumerate_catalog(SweepBounds(4, 3, -3, 2)))
