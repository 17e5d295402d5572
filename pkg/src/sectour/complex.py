"""Explicit face families: acyclic complexes, Σ(A:B) families, contraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .config import DEFAULT_LIMITS
from .errors import InvalidParameter, ResourceLimit
from .tournament import Tournament, acyclic_mask, mask_of, members, popcount

EMPTY_DIMENSION = float("-inf")  # dimension of the family with no members

VertexSet = Union[int, Iterable[int]]


def face_key(mask: int) -> tuple:
    """Canonical order: by size, then lexicographically on sorted labels."""
    return (popcount(mask), members(mask))


@dataclass(frozen=True)
class FaceFamily:
    """A finite family of vertex subsets of 1..ground, stored as bitmasks."""

    ground: int
    members: frozenset
    is_complex: bool = False

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        full = (1 << self.ground) - 1
        for f in self.members:
            if f < 0 or f & ~full:
                raise InvalidParameter(f"face {members(f)} not inside 1..{self.ground}")

    @classmethod
    def from_sets(cls, ground: int, sets: Iterable[Iterable[int]], is_complex: bool = False):
        return cls(ground, frozenset(mask_of(s) for s in sets), is_complex)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members, key=face_key))

    def __contains__(self, face) -> bool:
        return (face if isinstance(face, int) else mask_of(face)) in self.members

    def sets(self) -> list[tuple[int, ...]]:
        return [members(f) for f in self]

    def dump(self) -> str:
        return "".join("[" + ",".join(map(str, members(f))) + "]\n" for f in self)

    def histogram(self) -> dict[int, int]:
        """Number of members per dimension (|face| - 1)."""
        h: dict[int, int] = {}
        for f in self.members:
            d = popcount(f) - 1
            h[d] = h.get(d, 0) + 1
        return dict(sorted(h.items()))

    def with_members(self, faces, is_complex: bool = False) -> "FaceFamily":
        return FaceFamily(self.ground, frozenset(faces), is_complex)


def acyclic_complex(T: Tournament, max_n: Optional[int] = None) -> FaceFamily:
    """All acyclic vertex sets of T, including the empty set."""
    cap = DEFAULT_LIMITS.max_n if max_n is None else max_n
    if T.n > cap:
        raise ResourceLimit(
            f"enumeration of {T.n} vertices exceeds cap {cap}", T.n, cap, "--max-n")
    out = T.out
    faces = [0]
    frontier = [0]
    while frontier:
        grown = []
        for f in frontier:
            for v in range(f.bit_length(), T.n):
                beaten = f & out[v]
                beating = f & ~out[v]
                ok = True
                while beaten:
                    a = beaten & -beaten
                    beaten ^= a
                    # v -> a -> b -> v closes a triangle
                    if out[a.bit_length() - 1] & beating:
                        ok = False
                        break
                if ok:
                    grown.append(f | (1 << v))
        faces.extend(grown)
        frontier = grown
    return FaceFamily(T.n, frozenset(faces), True)


def dimension(F: FaceFamily) -> Union[int, float]:
    """max |face| - 1; -1 for {∅}; EMPTY_DIMENSION for the empty family."""
    if not F.members:
        return EMPTY_DIMENSION
    return max(popcount(f) for f in F.members) - 1


def facets(F: FaceFamily) -> FaceFamily:
    """Inclusion-maximal members."""
    fam = F.members
    if F.is_complex:
        full = (1 << F.ground) - 1
        keep = []
        for f in fam:
            free = full & ~f
            while free:
                b = free & -free
                free ^= b
                if f | b in fam:
                    break
            else:
                keep.append(f)
        return F.with_members(keep)
    by_size = sorted(fam, key=popcount, reverse=True)
    keep = []
    for f in by_size:
        if not any(g != f and g & f == f for g in keep):
            keep.append(f)
    return F.with_members(keep)


def circuits(T: Tournament) -> FaceFamily:
    """Minimal non-faces of Acy(T): the directed triangles."""
    tri = set()
    for a in range(T.n):
        for b in members(T.out[a]):
            into_a = ~T.out[a] & ~(1 << a)
            for c in members(T.out[b - 1] & into_a):
                tri.add((1 << a) | (1 << (b - 1)) | (1 << (c - 1)))
    return FaceFamily(T.n, frozenset(tri))


def _exclusions(T: Tournament, B) -> list[int]:
    out = []
    for beta in B:
        if isinstance(beta, int):
            beta = (beta,)
        out.append(T.as_mask(beta))
    return out


def sigma(T: Tournament, A: VertexSet, B=(), complex: Optional[FaceFamily] = None) -> FaceFamily:
    """Σ(A:B): faces containing A and containing no member of B.

    Members of ``B`` are vertex sets; a bare int stands for a single vertex.
    A member of B may overlap A (the exclusion then only bites on the rest
    of it); one contained in A empties the family.  ``complex`` may pass a
    precomputed Acy(T).
    """
    a = T.as_mask(A)
    if not acyclic_mask(T, a):
        raise InvalidParameter(f"{members(a)} is not acyclic")
    betas = _exclusions(T, B)
    faces = acyclic_complex(T) if complex is None else complex
    keep = [f for f in faces.members
            if f & a == a and not any(f & b == b for b in betas)]
    return FaceFamily(T.n, frozenset(keep))


def generated_family(T: Tournament, p: int, generators, complex: Optional[FaceFamily] = None) -> FaceFamily:
    """⟨β1,...,βk⟩ relative to p: ∪_i Σ(βi : p, β1, ..., β(i-1))."""
    gens = [T.as_mask((g,) if isinstance(g, int) else g) for g in generators]
    pbit = T.as_mask((p,))
    for g in gens:
        if g & pbit:
            raise InvalidParameter(f"generator {members(g)} contains the pivot {p}")
    faces = acyclic_complex(T) if complex is None else complex
    out = set()
    for i, g in enumerate(gens):
        excl = [pbit] + gens[:i]
        out.update(f for f in faces.members
                   if f & g == g and not any(f & b == b for b in excl))
    return FaceFamily(T.n, frozenset(out))


def contract_edge(F: FaceFamily, x: int, y: int) -> FaceFamily:
    """Image of F under x, y ↦ u.

    u takes the smaller label; the larger label is removed and the labels
    above it shift down by one, so the result lives on 1..ground-1.
    """
    if not F.is_complex:
        raise InvalidParameter("contraction needs a complex")
    if x == y or mask_of((x, y)) not in F.members:
        raise InvalidParameter(f"{{{x},{y}}} is not an edge of the complex")
    lo, hi = sorted((x, y))
    hb = 1 << (hi - 1)
    below = hb - 1

    def image(f: int) -> int:
        if f & hb:
            f = (f & ~hb) | (1 << (lo - 1))
        return (f & below) | ((f >> 1) & ~below)

    return FaceFamily(F.ground - 1, frozenset(image(f) for f in F.members), True)
