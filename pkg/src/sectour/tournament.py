"""Tournaments, sectionable spec trees and acyclicity tests.

Vertices are labelled 1..n.  Vertex sets are handled internally as int
bitmasks with bit ``v - 1`` standing for vertex ``v``; the public helpers
accept any iterable of labels as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import InvalidParameter

BlockSequence = tuple[int, ...]


# ---------------------------------------------------------------------------
# bitmask helpers


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def members(mask: int) -> tuple[int, ...]:
    """Sorted labels of the vertices in ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# tournaments


@dataclass(frozen=True)
class Tournament:
    """Complete orientation on vertices 1..n.

    ``out[v - 1]`` is the bitmask of out-neighbours of ``v``.
    """

    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.out) != self.n:
            raise InvalidParameter("out-neighbour table does not match n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.out):
            bit = 1 << i
            if row & bit or row & ~full:
                raise InvalidParameter(f"vertex {i + 1} has an invalid out-row")
            inn = full & ~row & ~bit
            for j in members(inn):
                if not self.out[j - 1] & bit:
                    raise InvalidParameter(f"pair {{{i + 1},{j}}} has no arc")
            for j in members(row):
                if self.out[j - 1] & bit:
                    raise InvalidParameter(f"pair {{{i + 1},{j}}} has both arcs")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tournament":
        rows = [0] * n
        seen = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise InvalidParameter(f"bad edge {u} {v} for n={n}")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidParameter(f"duplicate pair {{{u},{v}}}")
            seen.add(key)
            rows[u - 1] |= 1 << (v - 1)
        if len(seen) != n * (n - 1) // 2:
            raise InvalidParameter(
                f"expected {n * (n - 1) // 2} arcs, found {len(seen)}")
        return cls(n, tuple(rows))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def beats(self, u: int, v: int) -> bool:
        return bool(self.out[u - 1] >> (v - 1) & 1)

    def out_degree(self, v: int) -> int:
        return popcount(self.out[v - 1])

    def in_degree(self, v: int) -> int:
        return self.n - 1 - self.out_degree(v)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in members(self.out[u - 1])]

    def _check(self, mask: int) -> None:
        if mask < 0 or mask & ~self.full_mask:
            raise InvalidParameter(f"vertex set outside 1..{self.n}")

    def as_mask(self, S: Union[int, Iterable[int]]) -> int:
        m = S if isinstance(S, int) else mask_of(S)
        self._check(m)
        return m


def parse_edge_list(text: str) -> Tournament:
    """Read ``n`` on the first line, then one ``u v`` line per arc u→v."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InvalidParameter("empty edge list")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise InvalidParameter(f"malformed edge list: {exc}") from None
    return Tournament.from_edges(n, edges)


def format_edge_list(T: Tournament) -> str:
    return "\n".join([str(T.n)] + [f"{u} {v}" for u, v in T.edges()]) + "\n"


def highly_regular(m: int) -> Tournament:
    """R_m: vertex i beats i+1, ..., i+(m-1)/2 modulo m."""
    if m < 1 or m % 2 == 0:
        raise InvalidParameter(f"highly regular order must be odd and positive, got {m}")
    r = (m - 1) // 2
    rows = []
    for i in range(m):
        row = 0
        for step in range(1, r + 1):
            row |= 1 << ((i + step) % m)
        rows.append(row)
    return Tournament(m, tuple(rows))


def transitive_tournament(k: int) -> Tournament:
    if k < 1:
        raise InvalidParameter(f"transitive size must be positive, got {k}")
    full = (1 << k) - 1
    return Tournament(k, tuple(full & ~((1 << (i + 1)) - 1) for i in range(k)))


def compose(quotient: Tournament, blocks: list[Tournament]) -> Tournament:
    """Blow up each quotient vertex into a block, labelled block by block."""
    if len(blocks) != quotient.n:
        raise InvalidParameter(
            f"quotient has {quotient.n} vertices but {len(blocks)} blocks given")
    offsets = [0]
    for b in blocks:
        offsets.append(offsets[-1] + b.n)
    spans = [((1 << b.n) - 1) << offsets[i] for i, b in enumerate(blocks)]
    rows = []
    for i, b in enumerate(blocks):
        between = 0
        for j in members(quotient.out[i]):
            between |= spans[j - 1]
        for row in b.out:
            rows.append((row << offsets[i]) | between)
    return Tournament(offsets[-1], tuple(rows))


# ---------------------------------------------------------------------------
# acyclicity


def acyclic_mask(T: Tournament, mask: int) -> bool:
    """Score-sequence test: T[S] is transitive iff its scores are 0..k-1."""
    scores = {popcount(T.out[v - 1] & mask) for v in members(mask)}
    return len(scores) == popcount(mask)


def extends_acyclic(T: Tournament, mask: int, v: int) -> bool:
    """Whether adding v to the acyclic set ``mask`` keeps it acyclic."""
    row = T.out[v - 1]
    beaten = mask & row
    beating = mask & ~row
    while beaten:
        a = beaten & -beaten
        beaten ^= a
        if T.out[a.bit_length() - 1] & beating:
            return False
    return True


def is_acyclic_set(T: Tournament, S: Union[int, Iterable[int]]) -> bool:
    return acyclic_mask(T, T.as_mask(S))


def find_dicycle(T: Tournament, S: Union[int, Iterable[int]]) -> Optional[tuple[int, int, int]]:
    """A directed triangle a→b→c→a inside S, or None."""
    mask = T.as_mask(S)
    for a in members(mask):
        into_a = mask & ~T.out[a - 1] & ~(1 << (a - 1))
        for b in members(T.out[a - 1] & mask):
            hit = T.out[b - 1] & into_a
            if hit:
                return (a, b, members(hit)[0])
    return None


def is_equivalent_set(T: Tournament, S: Union[int, Iterable[int]]) -> bool:
    """Every outside vertex beats all of S or loses to all of S."""
    mask = T.as_mask(S)
    for q in members(T.full_mask & ~mask):
        beaten = T.out[q - 1] & mask
        if beaten and beaten != mask:
            return False
    return True


# ---------------------------------------------------------------------------
# spec trees


@dataclass(frozen=True)
class Transitive:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParameter(f"TT{self.k}: size must be positive")

    @property
    def n(self) -> int:
        return self.k

    def __str__(self):
        from .dsl import format_spec
        return format_spec(self)


@dataclass(frozen=True)
class HighlyRegular:
    m: int

    def __new__(cls, m: int):
        # R1 is the one-point tournament; it shares the node with TT1.
        if m == 1:
            return Transitive(1)
        return super().__new__(cls)

    def __post_init__(self):
        if self.m < 3 or self.m % 2 == 0:
            raise InvalidParameter(f"R{self.m}: order must be odd and at least 3")

    @property
    def n(self) -> int:
        return self.m

    @property
    def r(self) -> int:
        return (self.m - 1) // 2

    def __str__(self):
        from .dsl import format_spec
        return format_spec(self)


@dataclass(frozen=True)
class Compose:
    m: int
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if self.m < 3 or self.m % 2 == 0:
            raise InvalidParameter(f"R{self.m}: quotient order must be odd and at least 3")
        if len(self.children) != self.m:
            raise InvalidParameter(
                f"R{self.m} expects {self.m} blocks, found {len(self.children)}")
        for c in self.children:
            if not isinstance(c, (Transitive, HighlyRegular, Compose)):
                raise InvalidParameter(f"not a spec node: {c!r}")

    @property
    def r(self) -> int:
        return (self.m - 1) // 2

    @property
    def n(self) -> int:
        return sum(c.n for c in self.children)

    def offsets(self) -> list[int]:
        """Number of vertices before each block (plus the total at the end)."""
        out = [0]
        for c in self.children:
            out.append(out[-1] + c.n)
        return out

    def __str__(self):
        from .dsl import format_spec
        return format_spec(self)


SectionableSpec = Union[Transitive, HighlyRegular, Compose]


@lru_cache(maxsize=512)
def realize(spec: SectionableSpec) -> Tournament:
    """Canonical labelling: depth-first, left to right."""
    if isinstance(spec, Transitive):
        return transitive_tournament(spec.k)
    if isinstance(spec, HighlyRegular):
        return highly_regular(spec.m)
    return compose(highly_regular(spec.m), [realize(c) for c in spec.children])


def _walk(spec: SectionableSpec, I: BlockSequence):
    offset = 0
    for depth, i in enumerate(I):
        if not isinstance(spec, Compose):
            raise InvalidParameter(f"block sequence {I} descends into a leaf at level {depth + 1}")
        if not 1 <= i <= spec.m:
            raise InvalidParameter(f"block index {i} out of range 1..{spec.m} at level {depth + 1}")
        offset += spec.offsets()[i - 1]
        spec = spec.children[i - 1]
    return spec, offset


def resolve_block(spec: SectionableSpec, I: BlockSequence) -> tuple[SectionableSpec, tuple[int, ...]]:
    """The subtree at ``I`` and the vertex labels it occupies."""
    sub, offset = _walk(spec, tuple(I))
    return sub, tuple(range(offset + 1, offset + sub.n + 1))


def replace_block(spec: SectionableSpec, I: BlockSequence, Q: SectionableSpec) -> SectionableSpec:
    I = tuple(I)
    _walk(spec, I)
    if not I:
        return Q
    kids = list(spec.children)
    kids[I[0] - 1] = replace_block(kids[I[0] - 1], I[1:], Q)
    return Compose(spec.m, tuple(kids))


def block_intervals(spec: Compose) -> list[int]:
    """Bitmask of each top-level block in realize(spec)."""
    offs = spec.offsets()
    return [((1 << c.n) - 1) << offs[i] for i, c in enumerate(spec.children)]
