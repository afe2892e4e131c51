"""Hodge-index realizability filter and positivity-structure validators.

The intersection form on a surface has exactly one positive direction, so
any Gram matrix of curves on it has at most one positive eigenvalue.  This
is a necessary condition only: passing it never proves that a configuration
lives on an actual surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NonSymmetric
from .lattice import CurveConfiguration, Divisor, _require_same


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_neg: int
    n_zero: int

    def __iter__(self):
        return iter((self.n_pos, self.n_neg, self.n_zero))


def inertia(gram: Sequence[Sequence]) -> Inertia:
    """Signature of a symmetric matrix by exact congruence diagonalization.

    Pivots on a nonzero diagonal entry when one exists.  Otherwise a nonzero
    off-diagonal ``a_ij`` (with ``a_ii = a_jj = 0``) is turned into the pivot
    ``2 a_ij`` by adding row/column ``j`` to row/column ``i``.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for row in a:
        if len(row) != n:
            raise NonSymmetric("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise NonSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and a[i][j] != 0), None
            )
            if pair is None:
                break
            i, j = pair
            for c in active:
                a[i][c] += a[j][c]
            for c in active:
                a[c][i] += a[c][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        col = [a[x][piv] for x in active]
        for xi, x in enumerate(active):
            if col[xi] == 0:
                continue
            f = col[xi] / p
            row = a[x]
            prow = a[piv]
            for y in active:
                row[y] -= f * prow[y]
    return Inertia(pos, neg, n - pos - neg)


def hodge_admissible(config: CurveConfiguration) -> bool:
    """``True`` iff the Gram matrix has at most one positive direction."""
    return inertia(config.gram).n_pos <= 1


@dataclass(frozen=True)
class StructureReport:
    """Violations of the known structure results for positive components of LO divisors.

    ``two_positive``: two support components with ``r > 0`` but ``D`` is not
    ``E1 + E2`` with ``E1^2 = E2^2 = 1``.
    ``multiple_positive``: a component with ``k > 1`` and ``r > 0`` but ``D``
    is not ``2E`` with ``E^2 = 1``.
    """

    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def positive_structure_check(config: CurveConfiguration, d: Divisor) -> StructureReport:
    _require_same(config, d)
    k = d.multiplicities
    r = config.self_intersections
    support = [i for i, a in enumerate(k) if a]
    positive = [i for i in support if r[i] > 0]
    out = []
    if len(positive) >= 2:
        exact_pair = len(support) == 2 and all(k[i] == 1 and r[i] == 1 for i in support)
        if not exact_pair:
            out.append("two_positive")
    if any(k[i] > 1 for i in positive):
        single = len(support) == 1 and k[support[0]] == 2 and r[support[0]] == 1
        if not single:
            out.append("multiple_positive")
    return StructureReport(tuple(out))
