"""Decision procedures for (strong) left-orthogonality of effective divisors.

An effective divisor ``D`` is left-orthogonal (LO) iff

1. ``D`` is a tree of projective lines, and
2. ``p_a(D) = 0`` and ``p_a(D') <= 0`` for every connected ``0 < D' <= D``.

It is strongly left-orthogonal (SLO) iff additionally

3. ``p_a(D') <= 1 + D.D'`` for every connected ``0 < D' <= D``.

Components with multiplicity zero are absent from ``D``: connectivity and
the tree test only look at the subgraph induced on the support.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from .errors import EnumerationCapExceeded, NotReduced, NotTreeOfLines, ZeroDivisor
from .lattice import (
    ComponentId,
    CurveConfiguration,
    Divisor,
    _require_same,
    genus_vec,
    pairing_vec,
)

DEFAULT_CAP = 10**7

# ---------------------------------------------------------------------------
# verdict types


@dataclass(frozen=True)
class NonRationalComponent:
    component: ComponentId
    genus: int


@dataclass(frozen=True)
class MultiIncidence:
    pair: tuple[ComponentId, ComponentId]
    count: int


@dataclass(frozen=True)
class Cycle:
    components: tuple[ComponentId, ...]


@dataclass(frozen=True)
class Disconnected:
    parts: tuple[tuple[ComponentId, ...], ...]


TreeFailure = Union[NonRationalComponent, MultiIncidence, Cycle, Disconnected]


@dataclass(frozen=True)
class TreeVerdict:
    is_tree_of_lines: bool
    failure_reason: Optional[TreeFailure] = None

    def __bool__(self) -> bool:
        return self.is_tree_of_lines


@dataclass(frozen=True)
class NotTree:
    tree: TreeVerdict


@dataclass(frozen=True)
class GenusNonzero:
    p_a: int


@dataclass(frozen=True)
class SubdivisorGenusPositive:
    subdivisor: Divisor
    p_a: int


LoWitness = Union[NotTree, GenusNonzero, SubdivisorGenusPositive]


@dataclass(frozen=True)
class LoVerdict:
    is_lo: bool
    witness: Optional[LoWitness] = None

    def __bool__(self) -> bool:
        return self.is_lo


@dataclass(frozen=True)
class SloInequalityFails:
    subdivisor: Divisor
    p_a: int
    dd: int


@dataclass(frozen=True)
class SloVerdict:
    is_slo: bool
    lo: LoVerdict
    witness: Optional[SloInequalityFails] = None

    def __bool__(self) -> bool:
        return self.is_slo


# ---------------------------------------------------------------------------
# tree of lines


def _support_positions(k: Sequence[int]) -> list[int]:
    return [i for i, a in enumerate(k) if a]


def _components(adj: dict[int, set[int]], nodes: Sequence[int]) -> list[list[int]]:
    seen: set[int] = set()
    parts = []
    for s in nodes:
        if s in seen:
            continue
        stack, part = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            part.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        parts.append(sorted(part))
    return parts


def _find_cycle(adj: dict[int, set[int]], nodes: Sequence[int]) -> list[int]:
    parent: dict[int, int] = {}
    for root in nodes:
        if root in parent:
            continue
        parent[root] = -1
        stack = [root]
        while stack:
            v = stack.pop()
            for w in sorted(adj[v]):
                if w == parent[v]:
                    continue
                if w in parent:
                    # walk both ends up to the common ancestor
                    path_v, path_w = [v], [w]
                    anc_v = set(path_v)
                    x = v
                    while parent[x] != -1:
                        x = parent[x]
                        path_v.append(x)
                        anc_v.add(x)
                    y = w
                    while y not in anc_v:
                        y = parent[y]
                        path_w.append(y)
                    cut = path_v.index(y)
                    return path_v[: cut + 1] + path_w[-2::-1]
                parent[w] = v
                stack.append(w)
    return []


def tree_of_lines_vec(config: CurveConfiguration, k: Sequence[int]) -> TreeVerdict:
    nodes = _support_positions(k)
    ids = config.ids
    for i in nodes:
        if config.genera[i]:
            return TreeVerdict(False, NonRationalComponent(ids[i], config.genera[i]))
    support = set(nodes)
    adj: dict[int, set[int]] = {i: set() for i in nodes}
    n_edges = 0
    for i in nodes:
        for j in config.neighbors[i]:
            if j > i and j in support:
                mult = config.gram[i][j]
                if mult > 1:
                    return TreeVerdict(False, MultiIncidence((ids[i], ids[j]), mult))
                adj[i].add(j)
                adj[j].add(i)
                n_edges += 1
    parts = _components(adj, nodes)
    if len(parts) > 1:
        return TreeVerdict(False, Disconnected(tuple(tuple(ids[i] for i in p) for p in parts)))
    if n_edges != len(nodes) - 1:
        return TreeVerdict(False, Cycle(tuple(ids[i] for i in _find_cycle(adj, nodes))))
    return TreeVerdict(True)


def tree_of_lines_verdict(config: CurveConfiguration, d: Divisor) -> TreeVerdict:
    """Check that the support of ``D`` is a tree of rational curves meeting transversally."""
    _require_same(config, d)
    if d.is_zero:
        raise ZeroDivisor("tree test needs an effective nonzero divisor")
    return tree_of_lines_vec(config, d.multiplicities)


# ---------------------------------------------------------------------------
# connected subdivisors


def _adjacency_masks(config: CurveConfiguration) -> tuple[int, ...]:
    return tuple(sum(1 << j for j in nb) for nb in config.neighbors)


def _is_connected_mask(mask: int, adj: tuple[int, ...]) -> bool:
    start = mask & -mask
    reached = start
    frontier = start
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj[low.bit_length() - 1]
            f ^= low
        grow &= mask & ~reached
        reached |= grow
        frontier = grow
    return reached == mask


def _vectors_of_degree(bounds: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """All ``0 <= v <= bounds`` with ``sum(v) == total`` in ascending lex order."""
    n = len(bounds)
    tail = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        tail[i] = tail[i + 1] + bounds[i]
    v = [0] * n

    def rec(i: int, rest: int) -> Iterator[tuple[int, ...]]:
        if i == n - 1:
            v[i] = rest
            yield tuple(v)
            return
        lo = max(0, rest - tail[i + 1])
        for a in range(lo, min(bounds[i], rest) + 1):
            v[i] = a
            yield from rec(i + 1, rest - a)

    if n == 0 or total > tail[0]:
        return
    yield from rec(0, total)


def _generate(k: tuple[int, ...], adj: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    connected: dict[int, bool] = {}
    for t in range(1, sum(k) + 1):
        for v in _vectors_of_degree(k, t):
            mask = 0
            for i, a in enumerate(v):
                if a:
                    mask |= 1 << i
            ok = connected.get(mask)
            if ok is None:
                ok = connected[mask] = _is_connected_mask(mask, adj)
            if ok:
                yield v


@lru_cache(maxsize=4096)
def _generate_cached(k: tuple[int, ...], adj: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(_generate(k, adj))


_MEMO_LIMIT = 4096


def candidate_count(k: Sequence[int]) -> int:
    total = 1
    for a in k:
        total *= a + 1
    return total


def connected_subvectors(
    config: CurveConfiguration, k: Sequence[int], cap: int = DEFAULT_CAP
) -> Iterator[tuple[int, ...]]:
    k = tuple(k)
    needed = candidate_count(k)
    if needed > cap:
        raise EnumerationCapExceeded(needed, cap)
    adj = _adjacency_masks(config)
    if needed <= _MEMO_LIMIT:
        return iter(_generate_cached(k, adj))
    return _generate(k, adj)


def connected_subdivisors(
    config: CurveConfiguration, d: Divisor, cap: int = DEFAULT_CAP
) -> Iterator[Divisor]:
    """Stream every connected ``0 < D' <= D``.

    Order is by total multiplicity, ties broken by ascending lexicographic
    order of the multiplicity vector (components in natural id order).
    Raises :class:`EnumerationCapExceeded` before yielding anything when
    ``prod(k_i + 1)`` exceeds ``cap``.
    """
    _require_same(config, d)
    if d.is_zero:
        raise ZeroDivisor("subdivisor enumeration needs an effective nonzero divisor")
    vectors = connected_subvectors(config, d.multiplicities, cap)
    return (Divisor(config, v) for v in vectors)


# ---------------------------------------------------------------------------
# LO / SLO


def _scan(
    config: CurveConfiguration, k: tuple[int, ...], want_slo: bool, cap: int
) -> tuple[Optional[tuple], Optional[tuple]]:
    """Single pass over the subdivisor stream.

    Returns ``(lo_offender, slo_offender)`` as ``(vector, p_a, dd)`` tuples.
    Stops at the first LO offender, since SLO then fails regardless.
    """
    b = None
    if want_slo:
        unit = [0] * len(k)
        b = []
        for i in range(len(k)):
            unit[i] = 1
            b.append(pairing_vec(config, k, unit))
            unit[i] = 0
    slo_bad = None
    for v in connected_subvectors(config, k, cap):
        pa = genus_vec(config, v)
        if pa > 0:
            return (v, pa, None), slo_bad
        if want_slo and slo_bad is None:
            dd = sum(x * y for x, y in zip(b, v) if x and y)
            if pa > 1 + dd:
                slo_bad = (v, pa, dd)
    return None, slo_bad


def _lo_prefix(config: CurveConfiguration, d: Divisor) -> Optional[LoVerdict]:
    tree = tree_of_lines_vec(config, d.multiplicities)
    if not tree:
        return LoVerdict(False, NotTree(tree))
    pa = genus_vec(config, d.multiplicities)
    if pa != 0:
        return LoVerdict(False, GenusNonzero(pa))
    return None


def _check_input(config: CurveConfiguration, d: Divisor) -> None:
    _require_same(config, d)
    if d.is_zero:
        raise ZeroDivisor("left-orthogonality is only decided for effective nonzero divisors")


def is_left_orthogonal(config: CurveConfiguration, d: Divisor, cap: int = DEFAULT_CAP) -> LoVerdict:
    """LO verdict with the first offender in canonical order as witness."""
    _check_input(config, d)
    early = _lo_prefix(config, d)
    if early is not None:
        return early
    lo_bad, _ = _scan(config, d.multiplicities, False, cap)
    if lo_bad is not None:
        return LoVerdict(False, SubdivisorGenusPositive(Divisor(config, lo_bad[0]), lo_bad[1]))
    return LoVerdict(True)


def is_strongly_left_orthogonal(
    config: CurveConfiguration, d: Divisor, cap: int = DEFAULT_CAP
) -> SloVerdict:
    """SLO verdict; LO is decided in the same pass and reported in ``.lo``.

    When LO fails the SLO witness is left empty; the reason is ``lo.witness``.
    """
    _check_input(config, d)
    early = _lo_prefix(config, d)
    if early is not None:
        return SloVerdict(False, early)
    lo_bad, slo_bad = _scan(config, d.multiplicities, True, cap)
    if lo_bad is not None:
        lo = LoVerdict(False, SubdivisorGenusPositive(Divisor(config, lo_bad[0]), lo_bad[1]))
        return SloVerdict(False, lo)
    lo = LoVerdict(True)
    if slo_bad is not None:
        v, pa, dd = slo_bad
        return SloVerdict(False, lo, SloInequalityFails(Divisor(config, v), pa, dd))
    return SloVerdict(True, lo)


def multiple_line_verdict(r: int, k: int) -> tuple[bool, bool]:
    """Closed-form (LO, SLO) for ``D = kE`` with ``E`` a rational curve, ``E^2 = r``."""
    if k < 1:
        raise ValueError("multiplicity must be positive")
    lo = k == 1 or (k == 2 and r == 1)
    slo = (k == 1 and r >= -1) or (k == 2 and r == 1)
    return lo, slo


def reduced_slo_threshold(
    config: CurveConfiguration, d: Divisor, cap: int = DEFAULT_CAP
) -> tuple[int, Divisor]:
    """Minimum of ``D.D'`` over connected ``0 < D' <= D`` for a reduced tree of lines.

    Such a ``D`` is always LO, and it is SLO iff the minimum is at least -1.
    """
    _check_input(config, d)
    if not d.is_reduced:
        raise NotReduced("threshold is defined for reduced divisors only")
    tree = tree_of_lines_vec(config, d.multiplicities)
    if not tree:
        raise NotTreeOfLines(f"support is not a tree of lines: {tree.failure_reason}")
    k = d.multiplicities
    best, arg = None, None
    for v in connected_subvectors(config, k, cap):
        dd = pairing_vec(config, k, v)
        if best is None or dd < best:
            best, arg = dd, v
    return best, Divisor(config, arg)
