"""Elimination certificates for the cohomology vanishings behind LO and SLO.

A certificate peels one copy of a component at a time until the divisor is
used up.  Peeling ``E_a`` is justified when the restriction map from
polynomials of degree ``<= d`` on ``E_a`` to jets of order ``k_j`` at the
points where the remaining neighbours meet ``E_a`` is onto.  By Hermite
interpolation that holds iff ``d + 1 >= sum_j k_j``.

* LO mode (vanishing of ``h^1(O_D)``): ``d = -r_a (k_a - 1)``.
* SLO mode (vanishing of ``h^1(O_D(D))``):
  ``d = b_a - r_a (k_a - 1)`` with ``b_a = D.E_a`` against the *original* ``D``.

The greedy rule always peels the peelable component with the smallest id.
When the remainder falls apart, its connected pieces never interact, so the
global rule is the same as peeling each piece on its own and interleaving by id.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .criteria import tree_of_lines_vec
from .errors import DuplicatePoints, NegativeDegree, NotTreeOfLines, ZeroDivisor
from .lattice import ComponentId, CurveConfiguration, Divisor, _require_same, pairing_vec


class Mode(str, enum.Enum):
    LO = "lo"
    SLO = "slo"


@dataclass(frozen=True)
class PeelStep:
    component: ComponentId
    degree_bound: int
    point_multiplicities: tuple[int, ...]
    inequality_lhs: int
    inequality_rhs: int

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "d": self.degree_bound,
            "multiplicities": list(self.point_multiplicities),
            "lhs": self.inequality_lhs,
            "rhs": self.inequality_rhs,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PeelStep":
        return cls(
            obj["component"],
            obj["d"],
            tuple(obj["multiplicities"]),
            obj["lhs"],
            obj["rhs"],
        )


@dataclass(frozen=True)
class EliminationCertificate:
    mode: Mode
    steps: tuple[PeelStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, mode: Mode | str, steps: Sequence[dict]) -> "EliminationCertificate":
        return cls(Mode(mode), tuple(PeelStep.from_json(s) for s in steps))


@dataclass(frozen=True)
class Verification:
    """Outcome of :func:`verify_certificate`; truthy iff the certificate checks out."""

    ok: bool
    failed_step: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def h1_multiple_line_vanishes(b: int, r: int, k: int) -> bool:
    """Sufficient test for ``H^1(O_{kE}(b)) = 0`` on a rational curve ``E``, ``E^2 = r``.

    ``False`` only means none of the known sufficient conditions applies.
    """
    if k < 1:
        raise ValueError("multiplicity must be positive")
    return (b >= -1 and r <= 0) or (b >= -1 and k == 1) or (b >= 0 and r == 1 and k == 2)


def hermite_feasible(d: int, multiplicities: Sequence[int]) -> bool:
    """Counting criterion for surjectivity of the jet evaluation map."""
    if not multiplicities:
        raise ValueError("need at least one interpolation point")
    if d < 0:
        return False
    return d + 1 >= sum(multiplicities)


def _falling(s: int, t: int) -> int:
    return factorial(s) // factorial(s - t)


def exact_rank(rows: list[list[Fraction]]) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    n_cols = len(m[0])
    rank = 0
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            if f:
                f = f / p
                row, prow = m[i], m[rank]
                for c in range(col, n_cols):
                    row[c] -= f * prow[c]
        rank += 1
        if rank == len(m):
            break
    return rank


def hermite_matrix(d: int, points: Sequence, multiplicities: Sequence[int]) -> list[list[Fraction]]:
    """Confluent Vandermonde matrix: row ``(P, t)``, column ``x^s`` holds ``s!/(s-t)! P^(s-t)``."""
    rows = []
    for p, m in zip(points, multiplicities):
        p = Fraction(p)
        for t in range(m):
            rows.append(
                [Fraction(_falling(s, t)) * p ** (s - t) if s >= t else Fraction(0) for s in range(d + 1)]
            )
    return rows


def hermite_rank(d: int, points: Sequence, multiplicities: Sequence[int]) -> int:
    """Exact rank of the map from degree-``<= d`` polynomials to jets at ``points``."""
    if len(points) != len(multiplicities):
        raise ValueError("points and multiplicities differ in length")
    if d < 0:
        raise NegativeDegree(f"degree bound must be non-negative, got {d}")
    pts = [Fraction(p) for p in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("interpolation points must be distinct")
    if any(m < 1 for m in multiplicities):
        raise ValueError("multiplicities must be positive")
    return exact_rank(hermite_matrix(d, pts, multiplicities))


# ---------------------------------------------------------------------------
# certificate construction


def _require_tree(config: CurveConfiguration, d: Divisor) -> None:
    _require_same(config, d)
    if d.is_zero:
        raise ZeroDivisor("certificates need an effective nonzero divisor")
    tree = tree_of_lines_vec(config, d.multiplicities)
    if not tree:
        raise NotTreeOfLines(f"support is not a tree of lines: {tree.failure_reason}")


def _ambient_degrees(config: CurveConfiguration, k: Sequence[int]) -> list[int]:
    n = len(k)
    out = []
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        out.append(pairing_vec(config, k, unit))
    return out


def _step_for(
    config: CurveConfiguration, cur: Sequence[int], a: int, b: Optional[Sequence[int]]
) -> PeelStep:
    r = config.self_intersections[a]
    d = -r * (cur[a] - 1)
    if b is not None:
        d += b[a]
    mults = tuple(cur[j] for j in config.neighbors[a] if cur[j])
    return PeelStep(config.ids[a], d, mults, d + 1, sum(mults))


def _peel(config: CurveConfiguration, d: Divisor, mode: Mode) -> Optional[EliminationCertificate]:
    cur = list(d.multiplicities)
    b = _ambient_degrees(config, d.multiplicities) if mode is Mode.SLO else None
    steps = []
    remaining = sum(cur)
    while remaining:
        for a in range(len(cur)):
            if not cur[a]:
                continue
            step = _step_for(config, cur, a, b)
            if step.inequality_lhs >= step.inequality_rhs:
                break
        else:
            return None
        steps.append(step)
        cur[a] -= 1
        remaining -= 1
    return EliminationCertificate(mode, tuple(steps))


def lo_certificate(config: CurveConfiguration, d: Divisor) -> Optional[EliminationCertificate]:
    """Greedy peeling certificate for ``h^1(O_D) = 0``; ``None`` if the greedy rule gets stuck."""
    _require_tree(config, d)
    return _peel(config, d, Mode.LO)


def slo_certificate(config: CurveConfiguration, d: Divisor) -> Optional[EliminationCertificate]:
    """Greedy peeling certificate for ``h^1(O_D(D)) = 0``, with ``b_a = D.E_a`` held fixed."""
    _require_tree(config, d)
    return _peel(config, d, Mode.SLO)


def verify_certificate(
    config: CurveConfiguration, d: Divisor, cert: EliminationCertificate
) -> Verification:
    """Replay ``cert`` against ``D`` from scratch.

    Each step is recomputed (multiplicity bookkeeping, degree bound,
    neighbour jets, both sides of the inequality) and its surjectivity is
    confirmed by the exact rank of the confluent Vandermonde matrix at the
    points ``0, 1, 2, ...``.
    """
    try:
        _require_tree(config, d)
    except (NotTreeOfLines, ZeroDivisor) as exc:
        return Verification(False, None, str(exc))
    mode = Mode(cert.mode)
    cur = list(d.multiplicities)
    b = _ambient_degrees(config, d.multiplicities) if mode is Mode.SLO else None
    for n, step in enumerate(cert.steps):
        try:
            a = config.index(step.component)
        except ValueError:
            return Verification(False, n, f"unknown component {step.component!r}")
        if cur[a] == 0:
            return Verification(False, n, f"{step.component!r} already exhausted")
        expect = _step_for(config, cur, a, b)
        if expect != step:
            return Verification(False, n, f"recorded step {step} differs from replay {expect}")
        if step.inequality_lhs < step.inequality_rhs:
            return Verification(False, n, "interpolation inequality fails")
        m = step.point_multiplicities
        if m:
            if step.degree_bound < 0:
                return Verification(False, n, "no polynomials of negative degree")
            rank = hermite_rank(step.degree_bound, range(len(m)), m)
            if rank != sum(m):
                return Verification(False, n, f"jet map has rank {rank} < {sum(m)}")
        elif step.degree_bound < -1:
            return Verification(False, n, "restricted line bundle has nonzero H^1")
        cur[a] -= 1
    if any(cur):
        return Verification(False, len(cert.steps), "divisor not exhausted")
    return Verification(True)
