"""Reduced rational homology of face families, used as an oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Union

from .complex import FaceFamily
from .config import DEFAULT_LIMITS
from .errors import InvalidParameter, ResourceLimit
from .morse import CriticalCells
from .tournament import members, popcount


def _check_complex(F: FaceFamily, cap: int) -> None:
    if len(F) > cap:
        raise ResourceLimit(f"{len(F)} faces exceed the homology cap {cap}",
                            len(F), cap, "--max-faces")
    fam = F.members
    if fam and 0 not in fam:
        raise InvalidParameter("family is not a complex: the empty face is missing")
    for f in fam:
        rest = f
        while rest:
            b = rest & -rest
            rest ^= b
            if f ^ b not in fam:
                raise InvalidParameter(f"family is not downward closed at {list(members(f))}")


def boundary(face: int) -> list[tuple[int, int]]:
    """(facet, sign) pairs; vertices ascending, signs alternate by position."""
    out = []
    rest = face
    i = 0
    while rest:
        b = rest & -rest
        rest ^= b
        out.append((face ^ b, -1 if i % 2 else 1))
        i += 1
    return out


def _normalise(v: dict) -> dict:
    g = 0
    for x in v.values():
        g = gcd(g, x)
    if g > 1:
        v = {k: x // g for k, x in v.items()}
    return v


def rank_of_columns(columns: list[dict]) -> int:
    """Rank over Q of sparse integer columns, by fraction-free elimination.

    Each column is reduced against stored pivots keyed by their largest
    row; the update v <- u[p] v - v[p] u keeps entries integral and the
    content is divided out after every step.
    """
    pivots: dict[int, dict] = {}
    for col in columns:
        v = {k: x for k, x in col.items() if x}
        while v:
            p = max(v)
            u = pivots.get(p)
            if u is None:
                pivots[p] = _normalise(v)
                break
            a, b = u[p], v[p]
            w = {k: a * x for k, x in v.items()}
            for k, x in u.items():
                y = w.get(k, 0) - b * x
                if y:
                    w[k] = y
                else:
                    w.pop(k, None)
            v = _normalise(w)
    return len(pivots)


@dataclass(frozen=True)
class ChainComplexSummary:
    """Face counts and boundary ranks of the augmented chain complex.

    Keys are dimensions; dimension -1 holds the empty face.  ``ranks[d]`` is
    the rank of the map from dimension d to d-1.
    """

    ground: int
    total_faces: int
    face_counts: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)
    reduced_betti: dict = field(default_factory=dict)

    @property
    def betti(self) -> list[int]:
        """Reduced Betti numbers b̃_0, b̃_1, ..., up to the top dimension."""
        top = max(self.face_counts, default=-1)
        return [self.reduced_betti.get(d, 0) for d in range(0, top + 1)]

    def euler_consistent(self) -> bool:
        faces = sum((-1) ** d * c for d, c in self.face_counts.items() if d >= 0)
        betti = sum((-1) ** d * b for d, b in self.reduced_betti.items() if d >= 0)
        empty = self.reduced_betti.get(-1, 0)
        return faces == betti + 1 - empty

    def to_json(self) -> dict:
        return {"ground": self.ground, "faces": self.total_faces,
                "face_counts": {str(k): v for k, v in self.face_counts.items()},
                "ranks": {str(k): v for k, v in self.ranks.items()},
                "betti": self.betti}


def chain_summary(F: FaceFamily, max_faces: Optional[int] = None) -> ChainComplexSummary:
    cap = DEFAULT_LIMITS.betti_faces if max_faces is None else max_faces
    _check_complex(F, cap)
    by_dim: dict[int, list[int]] = {}
    for f in F.members:
        by_dim.setdefault(popcount(f) - 1, []).append(f)
    counts = {d: len(v) for d, v in sorted(by_dim.items())}
    ranks = {}
    for d in sorted(by_dim):
        if d < 0:
            continue
        cols = [{g: s for g, s in boundary(f)} for f in by_dim[d]]
        ranks[d] = rank_of_columns(cols)
    betti = {}
    for d, c in counts.items():
        b = c - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if b:
            betti[d] = b
    return ChainComplexSummary(F.ground, len(F), counts, ranks, betti)


def betti_numbers(F: FaceFamily, max_faces: Optional[int] = None) -> list[int]:
    return chain_summary(F, max_faces).betti


def boundary_squared_zero(F: FaceFamily) -> bool:
    for f in F.members:
        acc: dict[int, int] = {}
        for g, s in boundary(f):
            for h, t in boundary(g):
                acc[h] = acc.get(h, 0) + s * t
        if any(acc.values()):
            return False
    return True


@dataclass(frozen=True)
class MorseReport:
    histogram: dict
    betti: dict
    inequalities: bool
    alternating: bool
    non_adjacent: bool
    exact: Optional[bool]  # None when the non-adjacency hypothesis fails

    @property
    def passed(self) -> bool:
        return self.inequalities and self.alternating and self.exact is not False

    def to_json(self) -> dict:
        return {"histogram": {str(k): v for k, v in self.histogram.items()},
                "betti": {str(k): v for k, v in self.betti.items()},
                "inequalities": self.inequalities, "alternating": self.alternating,
                "non_adjacent": self.non_adjacent, "exact": self.exact,
                "pass": self.passed}


def morse_consistency(cells: Union[CriticalCells, dict],
                      homology: Union[ChainComplexSummary, list]) -> MorseReport:
    """Weak Morse inequalities, Euler characteristic and the wedge case.

    Counts and Betti numbers are both reduced: the matched empty face plays
    the role of the extra 0-cell.  A critical empty face counts in
    dimension -1.
    """
    if isinstance(cells, CriticalCells) and isinstance(homology, ChainComplexSummary):
        if (cells.cells.ground, cells.source_size) != (homology.ground, homology.total_faces):
            raise InvalidParameter("critical cells and homology describe different complexes")
    hist = cells.histogram if isinstance(cells, CriticalCells) else dict(cells)
    if isinstance(homology, ChainComplexSummary):
        betti = dict(homology.reduced_betti)
    else:
        betti = {d: b for d, b in enumerate(homology) if b}
    dims = set(hist) | set(betti)
    ineq = all(hist.get(d, 0) >= betti.get(d, 0) for d in dims)
    alt = (sum((-1) ** (d % 2) * c for d, c in hist.items())
           == sum((-1) ** (d % 2) * b for d, b in betti.items()))
    crit = sorted(d for d, c in hist.items() if c)
    sparse = all(b - a > 1 for a, b in zip(crit, crit[1:]))
    exact = all(hist.get(d, 0) == betti.get(d, 0) for d in dims) if sparse else None
    return MorseReport(dict(sorted(hist.items())), dict(sorted(betti.items())),
                       ineq, alt, sparse, exact)
