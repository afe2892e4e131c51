"""Sources of configurations: blow-up lattices, chains, random trees, sweeps.

Classes built from a lattice only have the right numerics.  Whether such a
class is represented by an irreducible curve depends on the surface and is
never checked here; these are candidates, not guarantees.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .criteria import DEFAULT_CAP, SloVerdict, LoVerdict, is_strongly_left_orthogonal
from .errors import (
    EnumerationCapExceeded,
    NegativeGenus,
    NegativePairwisePairing,
    NonIntegralGenus,
)
from .hodge import StructureReport, hodge_admissible, positive_structure_check
from .lattice import ComponentId, CurveConfiguration, Divisor, build_configuration
from .serialize import record_json


@dataclass(frozen=True)
class PicardLattice:
    """``Z H + Z E_1 + ... + Z E_n`` with form ``diag(1, -1, ..., -1)``."""

    rank: int
    form: tuple[int, ...]
    canonical: tuple[int, ...]

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        if len(u) != self.rank or len(v) != self.rank:
            raise ValueError(f"vectors must have length {self.rank}")
        return sum(f * a * b for f, a, b in zip(self.form, u, v))

    def hyperplane(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.rank - 1)

    def exceptional(self, i: int) -> tuple[int, ...]:
        """Class of the ``i``-th exceptional curve, ``1 <= i <= n``."""
        if not 1 <= i < self.rank:
            raise IndexError(i)
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)


def blowup_lattice(n: int) -> PicardLattice:
    """Picard lattice of the plane blown up in ``n`` points; ``K = -3H + sum E_i``."""
    if n < 0:
        raise ValueError("number of blown-up points must be non-negative")
    return PicardLattice(n + 1, (1,) + (-1,) * n, (-3,) + (1,) * n)


def configuration_from_classes(
    lattice: PicardLattice,
    classes: Sequence[Sequence[int]],
    ids: Optional[Sequence[ComponentId]] = None,
) -> CurveConfiguration:
    ids = list(ids) if ids is not None else [f"C{i + 1}" for i in range(len(classes))]
    if len(ids) != len(classes):
        raise ValueError("one id per class is required")
    comps = []
    for cid, c in zip(ids, classes):
        sq = lattice.pairing(c, c)
        ck = lattice.pairing(c, lattice.canonical)
        if (sq + ck) % 2:
            raise NonIntegralGenus(f"class {cid!r}: C^2 + C.K = {sq + ck} is odd")
        g = 1 + (sq + ck) // 2
        if g < 0:
            raise NegativeGenus(f"class {cid!r} has adjunction genus {g}")
        comps.append({"id": cid, "self_intersection": sq, "genus": g})
    incidences = []
    for (i, a), (j, b) in itertools.combinations(enumerate(classes), 2):
        m = lattice.pairing(a, b)
        if m < 0:
            raise NegativePairwisePairing(f"{ids[i]!r}.{ids[j]!r} = {m} < 0")
        incidences.extend([(ids[i], ids[j])] * m)
    return build_configuration(comps, incidences)


def _chain_ids(n: int) -> list[str]:
    return [f"E{i + 1}" for i in range(n)]


def standard_chain(r_values: Sequence[int]) -> tuple[CurveConfiguration, Divisor]:
    """Path of rational curves ``E1 - E2 - ... - En`` with the given self-intersections."""
    if not r_values:
        raise ValueError("chain needs at least one component")
    ids = _chain_ids(len(r_values))
    config = build_configuration(
        [{"id": c, "self_intersection": r} for c, r in zip(ids, r_values)],
        list(zip(ids, ids[1:])),
    )
    return config, config.reduced_divisor()


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = next(u for u in range(n) if degree[u] == 1)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return sorted(edges)


def _tree_config(
    edges: Sequence[tuple[int, int]],
    r: Sequence[int],
    edge_mult: Optional[Sequence[int]] = None,
) -> CurveConfiguration:
    ids = _chain_ids(len(r))
    inc = []
    for e, (i, j) in enumerate(edges):
        inc.extend([(ids[i], ids[j])] * (edge_mult[e] if edge_mult else 1))
    return build_configuration(
        [{"id": c, "self_intersection": x} for c, x in zip(ids, r)], inc
    )


def random_tree(
    seed: int,
    n: int,
    r_range: tuple[int, int],
    k_range: tuple[int, int],
) -> tuple[CurveConfiguration, Divisor]:
    """Uniform labelled tree on ``n`` vertices (via Pruefer code) with uniform ``r`` and ``k``.

    Ranges are inclusive ``(low, high)`` pairs.
    """
    if n < 1:
        raise ValueError("tree needs at least one vertex")
    rng = random.Random(seed)
    if n == 1:
        edges: list[tuple[int, int]] = []
    elif n == 2:
        edges = [(0, 1)]
    else:
        edges = prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)
    r = [rng.randint(*r_range) for _ in range(n)]
    k = [rng.randint(*k_range) for _ in range(n)]
    config = _tree_config(edges, r)
    return config, Divisor(config, k)


# ---------------------------------------------------------------------------
# trees up to isomorphism


def _adjacency(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    return adj


def tree_centers(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    adj = _adjacency(n, edges)
    degree = [len(a) for a in adj]
    layer = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _encode(v: int, parent: int, adj: list[list[int]]) -> str:
    return "(" + "".join(sorted(_encode(w, v, adj) for w in adj[v] if w != parent)) + ")"


def tree_canonical_form(n: int, edges: Sequence[tuple[int, int]]) -> str:
    """AHU parenthesis code of the tree rooted at its centre (minimum over two centres)."""
    adj = _adjacency(n, edges)
    return min(_encode(c, -1, adj) for c in tree_centers(n, edges))


def _canonical_labelling(n: int, edges: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    adj = _adjacency(n, edges)
    root = min(tree_centers(n, edges), key=lambda c: _encode(c, -1, adj))
    label = {root: 0}
    queue = [(root, -1)]
    out = []
    while queue:
        v, parent = queue.pop(0)
        kids = sorted((w for w in adj[v] if w != parent), key=lambda w: _encode(w, v, adj))
        for w in kids:
            label[w] = len(label)
            out.append((label[v], label[w]))
            queue.append((w, v))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def nonisomorphic_trees(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """One canonically labelled representative per isomorphism class of trees on ``n`` vertices."""
    if n < 1:
        raise ValueError("trees need at least one vertex")
    if n == 1:
        return ((),)
    found: dict[str, tuple[tuple[int, int], ...]] = {}
    for edges in nonisomorphic_trees(n - 1):
        for v in range(n - 1):
            grown = list(edges) + [(v, n - 1)]
            form = tree_canonical_form(n, grown)
            if form not in found:
                found[form] = _canonical_labelling(n, grown)
    return tuple(found[f] for f in sorted(found))


# ---------------------------------------------------------------------------
# exhaustive catalog


@dataclass(frozen=True)
class SweepBounds:
    max_components: int
    multiplicity_max: int
    r_min: int
    r_max: int
    include_multiedges: bool = False

    def __post_init__(self) -> None:
        if self.max_components < 1:
            raise ValueError("max_components must be at least 1")
        if self.multiplicity_max < 1:
            raise ValueError("multiplicity_max must be at least 1")
        if self.r_min > self.r_max:
            raise ValueError("r_min must not exceed r_max")


@dataclass(frozen=True)
class CatalogRecord:
    config: CurveConfiguration
    divisor: Divisor
    lo: LoVerdict
    slo: SloVerdict
    hodge: bool
    structure: StructureReport

    def to_json(self) -> dict:
        return record_json(self)


def catalog_size(bounds: SweepBounds) -> int:
    per_vertex = (bounds.r_max - bounds.r_min + 1) * bounds.multiplicity_max
    total = 0
    for n in range(1, bounds.max_components + 1):
        variants = 2 ** (n - 1) if bounds.include_multiedges else 1
        total += len(nonisomorphic_trees(n)) * variants * per_vertex**n
    return total


def enumerate_catalog(bounds: SweepBounds, cap: int = DEFAULT_CAP) -> Iterator[CatalogRecord]:
    """Classify every tree shape with every ``r`` and ``k`` assignment in range.

    Order: component count, tree canonical form, edge multiplicities,
    ``r`` vector, ``k`` vector (the last three lexicographically).
    """
    size = catalog_size(bounds)
    if size > cap:
        raise EnumerationCapExceeded(size, cap)
    return _catalog(bounds, cap)


def _catalog(bounds: SweepBounds, cap: int) -> Iterator[CatalogRecord]:
    r_vals = range(bounds.r_min, bounds.r_max + 1)
    k_vals = range(1, bounds.multiplicity_max + 1)
    for n in range(1, bounds.max_components + 1):
        k_vectors = list(itertools.product(k_vals, repeat=n))
        edge_variants = (
            list(itertools.product((1, 2), repeat=n - 1)) if bounds.include_multiedges else [None]
        )
        for edges in nonisomorphic_trees(n):
            for mult in edge_variants:
                for r in itertools.product(r_vals, repeat=n):
                    config = _tree_config(edges, r, mult)
                    hodge = hodge_admissible(config)
                    for k in k_vectors:
                        d = Divisor(config, k)
                        slo = is_strongly_left_orthogonal(config, d, cap)
                        yield CatalogRecord(
                            config, d, slo.lo, slo, hodge, positive_structure_check(config, d)
                        )
