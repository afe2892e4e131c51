"""Curve configurations, divisors and exact intersection arithmetic.

A configuration is the combinatorial shadow of a collection of curves on a
smooth projective surface: every component carries its self-intersection
and genus, and every incidence is one transversal intersection point.
Everything here is integer arithmetic; nothing is ever rounded.

Standing hypothesis (not checkable from this data): the ambient surface has
``h^1(O_X) = h^2(O_X) = 0``, e.g. any rational surface.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    DuplicateId,
    EmptyConfiguration,
    InvalidDivisor,
    MismatchedConfiguration,
    NotSimpleConfiguration,
    SelfLoop,
    UnknownIdInIncidence,
    ZeroDivisor,
)

ComponentId = Union[str, int]


def id_sort_key(cid: ComponentId) -> tuple:
    """Natural ordering of component ids: integers first, then ``E2 < E10``."""
    if isinstance(cid, int):
        return (0, cid, (), "")
    parts = tuple(
        (0, int(p), "") if p.isdigit() else (1, 0, p)
        for p in re.split(r"(\d+)", cid)
        if p
    )
    return (1, 0, parts, cid)


def _check_id(cid: object) -> ComponentId:
    if isinstance(cid, bool) or not isinstance(cid, (str, int)):
        raise ValueError(f"component id must be a string or an integer, got {cid!r}")
    if isinstance(cid, str) and not cid:
        raise ValueError("component id must be non-empty")
    return cid


@dataclass(frozen=True)
class CurveConfiguration:
    """Validated components and incidences, stored in natural id order.

    ``incidences`` holds index pairs ``(i, j)`` with ``i < j``; a pair occurs
    once per intersection point.  Use :func:`build_configuration` rather than
    the constructor.
    """

    ids: tuple[ComponentId, ...]
    self_intersections: tuple[int, ...]
    genera: tuple[int, ...]
    incidences: tuple[tuple[int, int], ...]
    gram: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    canonical: tuple[int, ...] = field(init=False, repr=False, compare=False)
    neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.ids)
        gram = [[0] * n for _ in range(n)]
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for i, r in enumerate(self.self_intersections):
            gram[i][i] = r
        for i, j in self.incidences:
            gram[i][j] += 1
            gram[j][i] += 1
            nbrs[i].append(j)
            nbrs[j].append(i)
        object.__setattr__(self, "gram", tuple(tuple(row) for row in gram))
        object.__setattr__(
            self,
            "canonical",
            tuple(2 * g - 2 - r for g, r in zip(self.genera, self.self_intersections)),
        )
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(set(x))) for x in nbrs))
        object.__setattr__(self, "_index", {cid: i for i, cid in enumerate(self.ids)})

    def __len__(self) -> int:
        return len(self.ids)

    def index(self, cid: ComponentId) -> int:
        try:
            return self._index[cid]
        except KeyError:
            raise InvalidDivisor(f"unknown component {cid!r}") from None

    def self_intersection(self, cid: ComponentId) -> int:
        return self.self_intersections[self.index(cid)]

    def genus(self, cid: ComponentId) -> int:
        return self.genera[self.index(cid)]

    def incidence_count(self, a: ComponentId, b: ComponentId) -> int:
        i, j = self.index(a), self.index(b)
        return 0 if i == j else self.gram[i][j]

    @property
    def is_simple(self) -> bool:
        """All genera zero and no pair of components meets twice."""
        return all(g == 0 for g in self.genera) and len(set(self.incidences)) == len(
            self.incidences
        )

    def divisor(self, multiplicities: Mapping[ComponentId, int] | None = None, /, **kw: int) -> "Divisor":
        """Divisor from a partial ``{id: k}`` mapping; missing ids get 0."""
        mult = dict(multiplicities or {})
        mult.update(kw)
        return Divisor.from_mapping(self, mult)

    def reduced_divisor(self) -> "Divisor":
        return Divisor(self, (1,) * len(self.ids))

    def prime(self, cid: ComponentId, k: int = 1) -> "Divisor":
        return self.divisor({cid: k})

    def zero(self) -> "Divisor":
        return Divisor(self, (0,) * len(self.ids))

    def relabel(self, mapping: Mapping[ComponentId, ComponentId]) -> "CurveConfiguration":
        comps = [
            {"id": mapping[c], "self_intersection": r, "genus": g}
            for c, r, g in zip(self.ids, self.self_intersections, self.genera)
        ]
        inc = [(mapping[self.ids[i]], mapping[self.ids[j]]) for i, j in self.incidences]
        return build_configuration(comps, inc)

    def component_records(self) -> list[dict]:
        return [
            {"id": c, "self_intersection": r, "genus": g}
            for c, r, g in zip(self.ids, self.self_intersections, self.genera)
        ]

    def incidence_pairs(self) -> list[tuple[ComponentId, ComponentId]]:
        return [(self.ids[i], self.ids[j]) for i, j in self.incidences]


def build_configuration(
    components: Iterable[Mapping | Sequence],
    incidences: Iterable[Sequence[ComponentId]] = (),
) -> CurveConfiguration:
    """Validate raw component and incidence lists.

    A component is a mapping with ``id``, ``self_intersection`` and optional
    ``genus`` (default 0), or a tuple ``(id, r)`` / ``(id, r, g)``.
    Each incidence pair is one intersection point; repeat a pair to encode
    a multi-incidence.
    """
    rows = []
    for comp in components:
        if isinstance(comp, Mapping):
            cid, r, g = comp["id"], comp["self_intersection"], comp.get("genus", 0)
        else:
            cid, r, *rest = comp
            g = rest[0] if rest else 0
        cid = _check_id(cid)
        if isinstance(r, bool) or not isinstance(r, int):
            raise ValueError(f"self_intersection of {cid!r} must be an integer")
        if isinstance(g, bool) or not isinstance(g, int) or g < 0:
            raise ValueError(f"genus of {cid!r} must be a non-negative integer")
        rows.append((cid, r, g))
    if not rows:
        raise EmptyConfiguration("a configuration needs at least one component")
    seen = Counter(cid for cid, _, _ in rows)
    dups = [c for c, n in seen.items() if n > 1]
    if dups:
        raise DuplicateId(f"duplicate component id(s): {dups!r}")
    rows.sort(key=lambda row: id_sort_key(row[0]))
    index = {cid: i for i, (cid, _, _) in enumerate(rows)}
    pairs = []
    for pair in incidences:
        a, b = pair
        for c in (a, b):
            if c not in index:
                raise UnknownIdInIncidence(f"incidence {[a, b]!r} names unknown component {c!r}")
        if a == b:
            raise SelfLoop(f"incidence {[a, b]!r} pairs a component with itself")
        i, j = sorted((index[a], index[b]))
        pairs.append((i, j))
    pairs.sort()
    return CurveConfiguration(
        ids=tuple(r[0] for r in rows),
        self_intersections=tuple(r[1] for r in rows),
        genera=tuple(r[2] for r in rows),
        incidences=tuple(pairs),
    )


class Divisor(Mapping):
    """Effective divisor ``sum k_i E_i`` over a fixed configuration.

    Behaves as a read-only mapping ``id -> k`` covering every component of the
    configuration.  ``<=`` is the componentwise partial order.
    """

    __slots__ = ("config", "multiplicities")

    def __init__(self, config: CurveConfiguration, multiplicities: Sequence[int]) -> None:
        mult = tuple(multiplicities)
        if len(mult) != len(config.ids):
            raise InvalidDivisor("multiplicity vector length does not match configuration")
        for k in mult:
            if isinstance(k, bool) or not isinstance(k, int) or k < 0:
                raise InvalidDivisor(f"multiplicities must be non-negative integers, got {k!r}")
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "multiplicities", mult)

    @classmethod
    def from_mapping(cls, config: CurveConfiguration, mult: Mapping[ComponentId, int]) -> "Divisor":
        vec = [0] * len(config.ids)
        for cid, k in mult.items():
            vec[config.index(cid)] = k
        return cls(config, vec)

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    def __getitem__(self, cid: ComponentId) -> int:
        return self.multiplicities[self.config.index(cid)]

    def __iter__(self) -> Iterator[ComponentId]:
        return iter(self.config.ids)

    def __len__(self) -> int:
        return len(self.multiplicities)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.multiplicities == other.multiplicities and _same_config(
            self.config, other.config
        )

    def __hash__(self) -> int:
        return hash((self.config, self.multiplicities))

    def __le__(self, other: "Divisor") -> bool:
        _require_same(self.config, other)
        return all(a <= b for a, b in zip(self.multiplicities, other.multiplicities))

    def __add__(self, other: "Divisor") -> "Divisor":
        _require_same(self.config, other)
        return Divisor(self.config, [a + b for a, b in zip(self.multiplicities, other.multiplicities)])

    def __sub__(self, other: "Divisor") -> "Divisor":
        _require_same(self.config, other)
        return Divisor(self.config, [a - b for a, b in zip(self.multiplicities, other.multiplicities)])

    def __rmul__(self, c: int) -> "Divisor":
        return Divisor(self.config, [c * a for a in self.multiplicities])

    def __repr__(self) -> str:
        terms = [
            (f"{k}*{cid}" if k != 1 else f"{cid}")
            for cid, k in zip(self.config.ids, self.multiplicities)
            if k
        ]
        return "Divisor(" + (" + ".join(terms) or "0") + ")"

    @property
    def support(self) -> tuple[ComponentId, ...]:
        return tuple(c for c, k in zip(self.config.ids, self.multiplicities) if k)

    @property
    def degree(self) -> int:
        """Total multiplicity ``sum k_i``."""
        return sum(self.multiplicities)

    @property
    def is_zero(self) -> bool:
        return not any(self.multiplicities)

    @property
    def is_reduced(self) -> bool:
        return all(k <= 1 for k in self.multiplicities)

    def nonzero_items(self) -> dict[ComponentId, int]:
        return {c: k for c, k in zip(self.config.ids, self.multiplicities) if k}

    def relabel(self, mapping: Mapping[ComponentId, ComponentId], config: CurveConfiguration) -> "Divisor":
        return Divisor.from_mapping(config, {mapping[c]: k for c, k in self.items()})


def _same_config(a: CurveConfiguration, b: CurveConfiguration) -> bool:
    return a is b or a == b


def _require_same(config: CurveConfiguration, *divisors: Divisor) -> None:
    for d in divisors:
        if not _same_config(config, d.config):
            raise MismatchedConfiguration("divisor lives on a different configuration")


def _require_nonzero(d: Divisor) -> None:
    if d.is_zero:
        raise ZeroDivisor("operation needs an effective nonzero divisor")


@dataclass(frozen=True)
class CanonicalClassView:
    """Pairings ``E_i . K`` obtained from adjunction, ``2g_i - 2 - r_i``."""

    ids: tuple[ComponentId, ...]
    pairings: tuple[int, ...]

    def __getitem__(self, cid: ComponentId) -> int:
        return self.pairings[self.ids.index(cid)]


def canonical_class_view(config: CurveConfiguration) -> CanonicalClassView:
    return CanonicalClassView(config.ids, config.canonical)


# Tuple-level kernels.  The public functions validate and then call these;
# the sweep code calls them directly on multiplicity tuples.

def self_pairing_vec(config: CurveConfiguration, k: Sequence[int]) -> int:
    total = 0
    for i, r in enumerate(config.self_intersections):
        if k[i]:
            total += r * k[i] * k[i]
    for i, j in config.incidences:
        total += 2 * k[i] * k[j]
    return total


def pairing_vec(config: CurveConfiguration, k: Sequence[int], l: Sequence[int]) -> int:
    total = 0
    for i, r in enumerate(config.self_intersections):
        total += r * k[i] * l[i]
    for i, j in config.incidences:
        total += k[i] * l[j] + k[j] * l[i]
    return total


def canonical_vec(config: CurveConfiguration, k: Sequence[int]) -> int:
    return sum(c * a for c, a in zip(config.canonical, k))


def genus_vec(config: CurveConfiguration, k: Sequence[int]) -> int:
    twice = self_pairing_vec(config, k) + canonical_vec(config, k)
    if twice % 2:
        raise ArithmeticError("D.(D+K) is odd; adjunction data is inconsistent")
    return 1 + twice // 2


def pairing(config: CurveConfiguration, d1: Divisor, d2: Divisor) -> int:
    """Intersection number ``D1 . D2`` from the Gram matrix."""
    _require_same(config, d1, d2)
    return pairing_vec(config, d1.multiplicities, d2.multiplicities)


def canonical_pairing(config: CurveConfiguration, d: Divisor) -> int:
    """``D . K`` via adjunction on every component."""
    _require_same(config, d)
    return canonical_vec(config, d.multiplicities)


def arithmetic_genus(config: CurveConfiguration, d: Divisor) -> int:
    """``p_a(D) = 1 + D.(D + K) / 2`` for an effective nonzero divisor."""
    _require_same(config, d)
    _require_nonzero(d)
    return genus_vec(config, d.multiplicities)


def genus_closed_form(config: CurveConfiguration, d: Divisor) -> int:
    """Arithmetic genus expanded termwise for rational, simply meeting components.

    ``1 + sum_i (r_i k_i (k_i - 1) / 2 - k_i) + sum_{incidences} k_i k_j``
    """
    _require_same(config, d)
    _require_nonzero(d)
    if not config.is_simple:
        raise NotSimpleConfiguration("closed form needs genus-0 components and simple incidences")
    k = d.multiplicities
    total = 1
    for i, r in enumerate(config.self_intersections):
        total += r * (k[i] * (k[i] - 1) // 2) - k[i]
    for i, j in config.incidences:
        total += k[i] * k[j]
    return total


def magic_formula_holds(config: CurveConfiguration, d: Divisor) -> bool:
    """Integer form ``2 + D^2 == sum_i k_i (2 + r_i)`` of the vanishing-genus identity."""
    _require_same(config, d)
    _require_nonzero(d)
    if any(config.genera):
        raise NotSimpleConfiguration("identity only applies to genus-0 components")
    k = d.multiplicities
    rhs = sum(a * (2 + r) for a, r in zip(k, config.self_intersections))
    return 2 + self_pairing_vec(config, k) == rhs
