"""Defects of linear systems of hypersurfaces through projective point sets.

For k points in P^n and a degree q, the evaluation matrix E has one row
per point and one column per degree-q monomial in n+1 variables.  The
defect of the system is k - rank(E): the number of conditions the points
fail to impose independently on degree-q hypersurfaces.

For a hypersurface at infinity whose only singularities are k ordinary
nodes at the given points, the single possibly nonzero equivariant defect
is such a linear-system defect with q = d*n/2 - n - 1 (at s = 0 when n is
even, at s = d/2 when n is odd and d is even; every beta vanishes when
n and d are both odd).

The tool does not and cannot verify that the points really are the nodes
of the zero set of an actual degree-d form; that geometric responsibility
stays with the caller.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence


@dataclass(frozen=True)
class ProjectivePointSet:
    """Distinct points of P^dim with exact rational coordinates.

    Coordinates are normalized on construction so the first nonzero
    coordinate of each point equals 1; equality of normalized tuples is
    then exactly projective equality.
    """

    dim: int
    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"projective dimension must be >= 1, got {self.dim}")
        normalized = []
        for point in self.points:
            coords = tuple(Fraction(c) for c in point)
            if len(coords) != self.dim + 1:
                raise ValueError(
                    f"point {point!r} needs {self.dim + 1} coordinates")
            scale = next((c for c in coords if c), None)
            if scale is None:
                raise ValueError("projective point must have a nonzero coordinate")
            normalized.append(tuple(c / scale for c in coords))
        seen = set()
        for coords in normalized:
            if coords in seen:
                raise ValueError(
                    f"duplicate projective points: {tuple(map(str, coords))}")
            seen.add(coords)
        object.__setattr__(self, "points", tuple(normalized))

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def from_json(cls, data: object, dim: int | None = None) -> ProjectivePointSet:
        if not isinstance(data, list):
            raise ValueError("points must be a list of coordinate lists")
        rows = []
        for entry in data:
            if not isinstance(entry, list) or not entry:
                raise ValueError("each point must be a nonempty coordinate list")
            coords = []
            for c in entry:
                if isinstance(c, bool) or not isinstance(c, (str, int)):
                    raise ValueError(f"invalid rational coordinate {c!r}")
                try:
                    coords.append(Fraction(c))
                except (ValueError, ZeroDivisionError) as exc:
                    raise ValueError(f"invalid rational coordinate {c!r}") from exc
            rows.append(tuple(coords))
        if dim is None:
            if not rows:
                raise ValueError("cannot infer dimension from an empty point list")
            dim = len(rows[0]) - 1
        return cls(dim, tuple(rows))

    def to_json(self) -> list[list[str]]:
        return [[str(c) for c in point] for point in self.points]


def monomial_exponents(n: int, q: int) -> list[tuple[int, ...]]:
    """Exponent tuples of degree-q monomials in n+1 variables, lex decreasing."""
    if n < 1 or q < 0:
        raise ValueError("need n >= 1 and q >= 0")
    out = [
        exps
        for exps in itertools.product(range(q + 1), repeat=n + 1)
        if sum(exps) == q
    ]
    out.sort(reverse=True)
    return out


def _integer_rank(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination, with row content stripped."""
    rows = [row[:] for row in rows if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        piv_row = rows[rank]
        piv_val = piv_row[col]
        for i in range(rank + 1, len(rows)):
            row = rows[i]
            c = row[col]
            if not c:
                continue
            new = [piv_val * x - c * y for x, y in zip(row, piv_row)]
            g = reduce(math.gcd, new)
            rows[i] = [x // g for x in new] if g > 1 else new
        rank += 1
        if rank == len(rows):
            break
    return rank


def defect_of_system(pts: ProjectivePointSet, q: int) -> int:
    """k - rank of the k x C(n+q, n) degree-q monomial evaluation matrix."""
    if q < 0:
        raise ValueError(f"system degree must be >= 0, got {q}")
    exps = monomial_exponents(pts.dim, q)
    rows = []
    for point in pts.points:
        values = []
        for exp in exps:
            value = Fraction(1)
            for coord, e in zip(point, exp):
                if e:
                    value *= coord ** e
            values.append(value)
        denom = reduce(math.lcm, (v.denominator for v in values), 1)
        rows.append([int(v * denom) for v in values])
    return len(pts) - _integer_rank(rows)


def nodal_beta(pts: ProjectivePointSet, n: int, d: int) -> list[int]:
    """Equivariant defect vector for a hypersurface with only nodes at pts.

    Returns a length-d vector: all zeros when n and d are both odd; the
    defect of the degree q = d*n/2 - n - 1 system at position d/2 when n
    is odd and d even, and at position 0 when n is even.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if pts.dim != n:
        raise ValueError(
            f"points live in P^{pts.dim} but the hypersurface data needs P^{n}")
    beta = [0] * d
    if n % 2 and d % 2:
        return beta
    q = d * n // 2 - n - 1
    if q < 0:
        raise ValueError(
            f"nodal defect degree q = {q} is negative for n={n}, d={d}; "
            "this degenerate low-degree case is rejected")
    slot = d // 2 if n % 2 else 0
    beta[slot] = defect_of_system(pts, q)
    return beta
