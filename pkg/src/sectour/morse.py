"""Pivot matchings, critical cells and the recursive critical-cell calculus.

Histograms map a dimension (|face| - 1, so -1 for the empty face) to a count.
Internally the calculus works with size polynomials (size -> count), where
the dot-join of two families becomes a convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .complex import FaceFamily, acyclic_complex, face_key, sigma
from .errors import InvalidParameter
from .tournament import (BlockSequence, Compose, HighlyRegular, SectionableSpec,
                         Transitive, members, popcount, realize,
                         replace_block, resolve_block)

Histogram = dict


def format_face(mask: int) -> str:
    return "[" + ",".join(map(str, members(mask))) + "]"


@dataclass(frozen=True)
class MorseMatching:
    """Matched pairs ``(lower, upper, pivot)`` with upper = lower ∪ {pivot}."""

    pairs: tuple
    pivot_sequence: tuple

    def faces(self) -> set[int]:
        return {f for lo, up, _ in self.pairs for f in (lo, up)}

    def dump(self) -> str:
        rows = sorted(self.pairs, key=lambda t: face_key(t[0]))
        return "".join(f"{format_face(lo)} -> {format_face(up)} [pivot {p}]\n"
                       for lo, up, p in rows)


@dataclass(frozen=True)
class CriticalCells:
    cells: FaceFamily
    source_size: int  # size of the family the matching was run on

    @property
    def histogram(self) -> Histogram:
        return self.cells.histogram()

    @property
    def empty_face_matched(self) -> bool:
        return 0 not in self.cells.members


def pivot_step(family: FaceFamily, p: int) -> tuple[list, FaceFamily]:
    """Pair I with I ∪ {p} whenever both lie in the family."""
    if not 1 <= p <= family.ground:
        raise InvalidParameter(f"pivot {p} outside 1..{family.ground}")
    bit = 1 << (p - 1)
    fam = family.members
    pairs = []
    matched = set()
    for f in fam:
        if not f & bit and f | bit in fam:
            pairs.append((f, f | bit, p))
            matched.add(f)
            matched.add(f | bit)
    return pairs, family.with_members(fam - matched)


def run_pivots(complex: FaceFamily, pivots: Iterable[int]) -> tuple[MorseMatching, CriticalCells]:
    pivots = tuple(pivots)
    if len(set(pivots)) != len(pivots):
        raise InvalidParameter(f"pivots must be distinct: {pivots}")
    rest = complex
    pairs = []
    for p in pivots:
        step, rest = pivot_step(rest, p)
        pairs.extend(step)
    return MorseMatching(tuple(pairs), pivots), CriticalCells(rest, len(complex))


def verify_acyclic(M: MorseMatching, complex: FaceFamily) -> bool:
    """True iff reversing the matched Hasse edges leaves no directed cycle.

    A cycle alternates between two adjacent levels, going up only along
    matched edges, so the search is restricted to matched faces.
    """
    fam = complex.members
    up_of = {}
    down_of = {}
    for lo, up, _ in M.pairs:
        if lo not in fam or up not in fam or lo & up != lo or popcount(up) != popcount(lo) + 1:
            raise InvalidParameter(
                f"{format_face(lo)} -> {format_face(up)} is not a covering pair of the family")
        if lo in up_of or lo in down_of or up in up_of or up in down_of:
            raise InvalidParameter("a face occurs in two pairs")
        up_of[lo] = up
        down_of[up] = lo

    def successors(f: int) -> list[int]:
        if f in up_of:
            return [up_of[f]]
        out = []
        rest = f
        while rest:
            b = rest & -rest
            rest ^= b
            g = f ^ b
            if g in up_of and g != down_of[f]:
                out.append(g)
        return out

    state = {}  # 1 = on stack, 2 = done
    for root in up_of:
        if root in state:
            continue
        state[root] = 1
        stack = [(root, iter(successors(root)))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return False
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(successors(nxt))))
    return True


def dot_join(A: FaceFamily, B: FaceFamily) -> FaceFamily:
    """{a ∪ b : a ∈ A, b ∈ B}; empty when either side is empty."""
    ground = max(A.ground, B.ground)
    return FaceFamily(ground, frozenset(a | b for a in A.members for b in B.members))


def size_profile(F: FaceFamily) -> dict[int, int]:
    out: dict[int, int] = {}
    for f in F.members:
        k = popcount(f)
        out[k] = out.get(k, 0) + 1
    return out


def equivalent(A: FaceFamily, B: FaceFamily) -> bool:
    """Same number of members of every size."""
    return size_profile(A) == size_profile(B)


# ---------------------------------------------------------------------------
# size-polynomial calculus


def poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def poly_mul(a: dict, b: dict) -> dict:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


ONE = {0: 1}    # {∅}, identity of the dot-join
POINT = {1: 1}  # a singleton pivot cell {q}
EDGE = {2: 1}   # a single critical edge


def to_histogram(poly: dict) -> Histogram:
    return {k - 1: v for k, v in sorted(poly.items()) if v}


def from_histogram(hist: Histogram) -> dict:
    return {d + 1: v for d, v in hist.items() if v}


def _cs_poly(spec: SectionableSpec) -> dict:
    if isinstance(spec, Transitive):
        return {}
    if isinstance(spec, HighlyRegular):
        return dict(EDGE)
    m, r = spec.m, spec.r
    c = [_cs_poly(ch) for ch in spec.children]
    total = dict(EDGE)
    for i in range(m):
        term = dict(ONE)
        for j in range(i, i + r):
            term = poly_mul(term, c[j % m])
        term = poly_mul(term, poly_add(POINT, c[(i + r) % m]))
        total = poly_add(total, term)
    return total


def cs_recursive(spec: SectionableSpec) -> Histogram:
    """Critical-cell histogram from the bottom-up window recursion."""
    return to_histogram(_cs_poly(spec))


def _window_factor(spec: Compose, b: int) -> dict:
    """Sum over the (r+1)-arcs through block b (0-based) of the other blocks'
    CS, plus the arcs not ending at b with their last block replaced by a
    singleton pivot cell."""
    m, r = spec.m, spec.r
    c = [_cs_poly(ch) for ch in spec.children]
    total: dict = {}
    for start in range(m):
        arc = [(start + t) % m for t in range(r + 1)]
        if b not in arc:
            continue
        term = dict(ONE)
        for j in arc:
            if j != b:
                term = poly_mul(term, c[j])
        total = poly_add(total, term)
        if arc[-1] != b:
            term = dict(POINT)
            for j in arc[:-1]:
                if j != b:
                    term = poly_mul(term, c[j])
            total = poly_add(total, term)
    return total


def first_triangle_path(spec: SectionableSpec) -> Optional[BlockSequence]:
    """Block sequence of the first R3 leaf in canonical order, if any."""
    if isinstance(spec, HighlyRegular):
        return () if spec.m == 3 else None
    if isinstance(spec, Transitive):
        return None
    for i, ch in enumerate(spec.children, 1):
        sub = first_triangle_path(ch)
        if sub is not None:
            return (i,) + sub
    return None


def _sigma_poly(spec: SectionableSpec, path: BlockSequence) -> dict:
    if not path:
        if spec != HighlyRegular(3):
            raise InvalidParameter("block sequence does not end at an R3 leaf")
        return dict(EDGE)
    if not isinstance(spec, Compose) or not 1 <= path[0] <= spec.m:
        raise InvalidParameter(f"invalid block index {path[0]}")
    inner = _sigma_poly(spec.children[path[0] - 1], path[1:])
    return poly_mul(inner, _window_factor(spec, path[0] - 1))


def cs_sigma(spec: SectionableSpec, block_index: int = 1,
             path: Optional[BlockSequence] = None) -> Histogram:
    """Histogram of CS(Σ(wz:v)) for a deep triangle {v,w,z} inside a block.

    The triangle is the R3 leaf at ``path`` (which must start with
    ``block_index``); by default the first R3 leaf inside that block.  At
    each level the block's own contribution is dot-joined with the (r+1)-arcs
    through it and with the r-arcs closed by a singleton pivot cell.
    """
    if not isinstance(spec, Compose):
        raise InvalidParameter("cs_sigma needs a composition")
    if not 1 <= block_index <= spec.m:
        raise InvalidParameter(f"block index {block_index} out of range 1..{spec.m}")
    if path is None:
        sub = first_triangle_path(spec.children[block_index - 1])
        if sub is None:
            raise InvalidParameter(f"block {block_index} contains no deep triangle")
        path = (block_index,) + sub
    path = tuple(path)
    if not path or path[0] != block_index:
        raise InvalidParameter("path must start at block_index")
    return to_histogram(_sigma_poly(spec, path))


# ---------------------------------------------------------------------------
# canonical pivots and the deep-triangle split


def canonical_block_order(m: int) -> list[int]:
    """1-based order in which the blocks of R_m(...) contribute pivots:
    block 1, then blocks r+2..2r+1, then blocks 2..r+1."""
    r = (m - 1) // 2
    return [1] + list(range(r + 2, m + 1)) + list(range(2, r + 2))


def canonical_pivots(spec: SectionableSpec, offset: int = 0) -> tuple[int, ...]:
    """The pivot sequence whose critical cells follow cs_recursive.

    TT_k contributes its least vertex; R_(2r+1) contributes v1, v_(r+1),
    v_(r+2); a composition concatenates its blocks' sequences in
    ``canonical_block_order``.
    """
    if isinstance(spec, Transitive):
        return (offset + 1,)
    if isinstance(spec, HighlyRegular):
        r = spec.r
        return (offset + 1, offset + r + 1, offset + r + 2)
    offs = spec.offsets()
    out: list[int] = []
    for i in canonical_block_order(spec.m):
        out.extend(canonical_pivots(spec.children[i - 1], offset + offs[i - 1]))
    return tuple(out)


def engine_histogram(spec: SectionableSpec, pivots: Optional[Iterable[int]] = None,
                     max_n: Optional[int] = None) -> Histogram:
    """Critical histogram of Acy(realize(spec)) from the explicit engine."""
    F = acyclic_complex(realize(spec), max_n)
    seq = canonical_pivots(spec) if pivots is None else pivots
    return run_pivots(F, seq)[1].histogram


@dataclass(frozen=True)
class PivotOrderReport:
    canonical: Histogram
    alternate: Histogram

    @property
    def differs(self) -> bool:
        return self.canonical != self.alternate


def compare_pivot_orders(spec: SectionableSpec, pivots: Iterable[int],
                         max_n: Optional[int] = None) -> PivotOrderReport:
    """Whether a user-supplied pivot order changes the critical histogram."""
    F = acyclic_complex(realize(spec), max_n)
    return PivotOrderReport(run_pivots(F, canonical_pivots(spec))[1].histogram,
                            run_pivots(F, pivots)[1].histogram)


@dataclass(frozen=True)
class TriangleSplit:
    sigma: FaceFamily               # Σ(wz:v) in Acy(T)
    residual: SectionableSpec       # T(I;R1)


def split_by_deep_triangle(spec: SectionableSpec, triangle: tuple[int, int, int],
                           I: BlockSequence) -> TriangleSplit:
    v, w, z = triangle
    sub, verts = resolve_block(spec, I)
    if sub != HighlyRegular(3) or set(verts) != {v, w, z} or len({v, w, z}) != 3:
        raise InvalidParameter(f"{triangle} is not the deep triangle at block sequence {tuple(I)}")
    T = realize(spec)
    return TriangleSplit(sigma(T, (w, z), [v]), replace_block(spec, I, Transitive(1)))

