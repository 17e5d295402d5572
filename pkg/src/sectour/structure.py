"""Closed-form invariants of spec trees: dim, depth, width, deep triangles."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

from .errors import InvalidParameter
from .tournament import (BlockSequence, Compose, HighlyRegular, SectionableSpec,
                         Transitive)


def _windows(m: int, r: int):
    """Cyclic windows of r+1 consecutive 0-based block indices."""
    return [[(i + t) % m for t in range(r + 1)] for i in range(m)]


def dim_formula(spec: SectionableSpec) -> int:
    """Dimension of Acy(realize(spec)) by the window recursion."""
    if isinstance(spec, Transitive):
        return spec.k - 1
    if isinstance(spec, HighlyRegular):
        return spec.r
    d = [dim_formula(c) for c in spec.children]
    return max(sum(d[j] for j in w) for w in _windows(spec.m, spec.r)) + spec.r


def depth_formula(spec: SectionableSpec) -> int:
    """Top critical dimension; 0 encodes an empty critical set."""
    if isinstance(spec, Transitive):
        return 0
    if isinstance(spec, HighlyRegular):
        return 1
    d = [depth_formula(c) for c in spec.children]
    r = spec.r
    best = 1
    for w in _windows(spec.m, r):
        vals = [d[j] for j in w]
        if all(vals[:r]) or all(vals[1:]):
            best = max(best, sum(vals) + r)
    return best


def pair_lower_bound(spec: Compose) -> int:
    """max over i != j of d_i + d_j + r, a lower bound for dim_formula."""
    d = [dim_formula(c) for c in spec.children]
    return max(d[i] + d[j] for i in range(spec.m) for j in range(spec.m) if i != j) + spec.r


def _require_compose(spec: SectionableSpec, what: str) -> Compose:
    if not isinstance(spec, Compose):
        raise InvalidParameter(f"{what} is defined on compositions only")
    return spec


def width(spec: SectionableSpec) -> int:
    """Longest cyclic run of non-transitive blocks."""
    spec = _require_compose(spec, "width")
    flags = [not isinstance(c, Transitive) for c in spec.children]
    if all(flags):
        return spec.m
    best = run = 0
    for f in flags + flags:
        run = run + 1 if f else 0
        best = max(best, run)
    return best


def is_elementary(spec: SectionableSpec) -> bool:
    spec = _require_compose(spec, "elementary")
    return width(spec) <= spec.r - 1


def deep_triangles(spec: SectionableSpec, _path: BlockSequence = (),
                   _offset: int = 0) -> list[tuple[BlockSequence, tuple[int, int, int]]]:
    """Every R3 leaf with its block sequence and vertex triple a→b→c→a."""
    if isinstance(spec, Transitive):
        return []
    if isinstance(spec, HighlyRegular):
        if spec.m != 3:
            return []
        o = _offset
        return [(_path, (o + 1, o + 2, o + 3))]
    out = []
    offs = spec.offsets()
    for i, c in enumerate(spec.children):
        out.extend(deep_triangles(c, _path + (i + 1,), _offset + offs[i]))
    return out


def normalize(spec: SectionableSpec) -> SectionableSpec:
    """Shrink transitive leaves to R1 and highly regular leaves to R3."""
    if isinstance(spec, Transitive):
        return Transitive(1)
    if isinstance(spec, HighlyRegular):
        return HighlyRegular(3)
    return Compose(spec.m, tuple(normalize(c) for c in spec.children))


@dataclass(frozen=True)
class DepthDimCheck:
    """The window characterisation of depth = dim, under both readings of d.

    ``holds`` is the direct comparison of the two formulas.  ``by_depths``
    and ``by_dims`` evaluate the characterisation with d_i taken as block
    depths or block dims; each is None when no window attains dim.
    """

    holds: bool
    depth: int
    dim: int
    by_depths: Optional[bool]
    witness_depths: Optional[int]
    by_dims: Optional[bool]
    witness_dims: Optional[int]

    @property
    def witness(self) -> Optional[int]:
        return self.witness_depths

    @property
    def agrees(self) -> bool:
        return self.by_depths == self.holds and self.by_dims == self.holds


def _characterise(d: list[int], r: int, m: int, target: int):
    """First window attaining ``target``, preferring one that satisfies the
    interior/ends condition.  Returns (verdict, 1-based window start)."""
    hits = [i for i, w in enumerate(_windows(m, r)) if sum(d[j] for j in w) + r == target]
    if not hits:
        return None, None
    for i in hits:
        w = [d[(i + t) % m] for t in range(r + 1)]
        if all(x >= 1 for x in w[1:r]) and max(w[0], w[r]) >= 1:
            return True, i + 1
    return False, hits[0] + 1


def depth_eq_dim(spec: SectionableSpec) -> DepthDimCheck:
    spec = _require_compose(spec, "depth_eq_dim")
    dim, depth = dim_formula(spec), depth_formula(spec)
    depths = [depth_formula(c) for c in spec.children]
    dims = [dim_formula(c) for c in spec.children]
    a, wa = _characterise(depths, spec.r, spec.m, dim)
    b, wb = _characterise(dims, spec.r, spec.m, dim)
    return DepthDimCheck(depth == dim, depth, dim, a, wa, b, wb)


@dataclass(frozen=True)
class StructureReport:
    dim: int
    depth: int
    width: Optional[int]
    elementary: Optional[bool]
    deep_triangles: list = field(default_factory=list)
    block_dims: list = field(default_factory=list)
    block_depths: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        out["deep_triangles"] = [{"blocks": list(I), "vertices": list(t)}
                                 for I, t in self.deep_triangles]
        return out


def structure_report(spec: SectionableSpec) -> StructureReport:
    comp = isinstance(spec, Compose)
    return StructureReport(
        dim=dim_formula(spec),
        depth=depth_formula(spec),
        width=width(spec) if comp else None,
        elementary=is_elementary(spec) if comp else None,
        deep_triangles=deep_triangles(spec),
        block_dims=[dim_formula(c) for c in spec.children] if comp else [],
        block_depths=[depth_formula(c) for c in spec.children] if comp else [],
    )


# ---------------------------------------------------------------------------
# named families

R1 = Transitive(1)
R3 = HighlyRegular(3)


def alternating_family(r: int) -> Compose:
    """R_(2r+1) with R3 in even positions and R1 elsewhere (elementary)."""
    if r < 2:
        raise InvalidParameter("the alternating family needs r >= 2")
    m = 2 * r + 1
    return Compose(m, tuple(R3 if i % 2 == 0 else R1 for i in range(1, m + 1)))


def nonelementary_family(r: int) -> Compose:
    """r+1 leading R3 blocks, R1, then R_m(R3,R1,...,R1), then R1s."""
    if r < 2:
        raise InvalidParameter("the non-elementary family needs r >= 2")
    m = 2 * r + 1
    inner = Compose(m, (R3,) + (R1,) * (m - 1))
    kids = [R3] * (r + 1) + [R1, inner] + [R1] * (r - 2)
    return Compose(m, tuple(kids))


def gap_family(k: int) -> Compose:
    """A composition with dim - depth = k: R_(2k+3) over one-point blocks."""
    if k < 1:
        raise InvalidParameter("gap must be positive")
    m = 2 * k + 3
    return Compose(m, (R1,) * m)
