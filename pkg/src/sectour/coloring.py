"""Acyclic colorings: exact search, palette constructions and the bound."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .config import DEFAULT_LIMITS
from .errors import ConstructionError, InvalidParameter, ResourceLimit
from .structure import dim_formula
from .tournament import (Compose, HighlyRegular, SectionableSpec, Tournament,
                         acyclic_mask, extends_acyclic, realize)

BOUND_TOL = 1e-9
FUNCT_SLACK = 1e-12


@dataclass(frozen=True)
class Coloring:
    """``assignment`` maps each vertex 1..n to a color index >= 1."""

    assignment: dict

    @property
    def color_count(self) -> int:
        return len(set(self.assignment.values()))

    @property
    def max_label(self) -> int:
        return max(self.assignment.values(), default=0)

    def classes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v, c in self.assignment.items():
            out[c] = out.get(c, 0) | (1 << (v - 1))
        return out

    def to_json(self) -> dict:
        return {str(v): c for v, c in sorted(self.assignment.items())}


def validate_coloring(T: Tournament, c: Coloring) -> bool:
    if set(c.assignment) != set(T.vertices):
        raise InvalidParameter("coloring must assign every vertex exactly once")
    if any(not isinstance(x, int) or x < 1 for x in c.assignment.values()):
        raise InvalidParameter("color indices must be positive integers")
    return all(acyclic_mask(T, m) for m in c.classes().values())


# ---------------------------------------------------------------------------
# exact search


def _colorable(T: Tournament, k: int) -> Optional[list[int]]:
    """A coloring with at most k classes, or None.

    Vertices are placed in label order; a new class may only be opened as
    the next unused index, which removes color permutations.
    """
    n = T.n
    classes: list[int] = []
    color = [0] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        v = i + 1
        bit = 1 << i
        for j in range(len(classes)):
            if extends_acyclic(T, classes[j], v):
                classes[j] |= bit
                color[i] = j + 1
                if place(i + 1):
                    return True
                classes[j] ^= bit
        if len(classes) < k:
            classes.append(bit)
            color[i] = len(classes)
            if place(i + 1):
                return True
            classes.pop()
        return False

    return color if place(0) else None


def chromatic_exact(T: Tournament, limit: Optional[int] = None) -> tuple[int, Coloring]:
    """Least k with a valid k-coloring, by iterative deepening on k."""
    cap = DEFAULT_LIMITS.chromatic_n if limit is None else limit
    if T.n > cap:
        raise ResourceLimit(
            f"exact coloring of {T.n} vertices exceeds cap {cap}", T.n, cap, "--max-chi-n")
    if T.n == 0:
        return 0, Coloring({})
    for k in range(1, T.n + 1):
        found = _colorable(T, k)
        if found is not None:
            return k, Coloring({v: found[v - 1] for v in T.vertices})
    raise AssertionError("unreachable: singletons always work")


# ---------------------------------------------------------------------------
# arithmetic facts


def ceil_identity(k: int, r: int, strict: bool = True) -> int:
    """⌈k(2r+1)/(r+1)⌉ in integer arithmetic (2k whenever 1 <= k <= r)."""
    if k < 1 or r < 1:
        raise InvalidParameter("k and r must be positive")
    if strict and r < k:
        raise InvalidParameter(f"identity needs k <= r, got k={k}, r={r}")
    return -(-k * (2 * r + 1) // (r + 1))


def chromatic_bound(r: int, d: int) -> float:
    """2(2 - 1/(r+1))^log2(d+1) - 1."""
    if r < 1 or d < 0:
        raise InvalidParameter("need r >= 1 and d >= 0")
    return 2 * (2 - 1 / (r + 1)) ** math.log2(d + 1) - 1


def funct_max_check(r: int, p: float) -> tuple[float, float, bool]:
    """a^log2(1+p) + a^log2(1+1/p) against 2a, with a = (r+1)/(2r+1)."""
    if r < 1 or p <= 0:
        raise InvalidParameter("need r >= 1 and p > 0")
    if p < 1:
        p = 1 / p
    a = (r + 1) / (2 * r + 1)
    lhs = a ** math.log2(1 + p) + a ** math.log2(1 + 1 / p)
    return lhs, 2 * a, lhs <= 2 * a + FUNCT_SLACK


# ---------------------------------------------------------------------------
# palette constructions


@dataclass(frozen=True)
class PalettePlan:
    """Global colors available to each block (0-based block order)."""

    palettes: tuple
    case: str
    total: int


def _arc(start: int, length: int, m: int) -> list[int]:
    return [(start + t) % m for t in range(length)]


def equal_palettes(r: int, k: int) -> PalettePlan:
    """Palettes of k colors per block using ⌈k(2r+1)/(r+1)⌉ colors or fewer.

    α colors go to each of the 2r+1 arcs of r+1 consecutive blocks; the
    remaining ℓ = k - α(r+1) colors are covered by two disjoint sets, one on
    blocks 1..r+1 and one on blocks r+2..2r+1.
    """
    m = 2 * r + 1
    alpha, ell = divmod(k, r + 1)
    pal: list[list[int]] = [[] for _ in range(m)]
    nxt = 1
    for start in range(m):
        for _ in range(alpha):
            for b in _arc(start, r + 1, m):
                pal[b].append(nxt)
            nxt += 1
    for _ in range(ell):
        for b in range(r + 1):
            pal[b].append(nxt)
        for b in range(r + 1, m):
            pal[b].append(nxt + 1)
        nxt += 2
    case = "3" if alpha and ell else ("2" if alpha else "1")
    return PalettePlan(tuple(tuple(p) for p in pal), case, nxt - 1)


def unequal_palettes(r: int, ks: list[int], s: int, t: int) -> PalettePlan:
    """Palettes when block s (0-based) needs the most colors, k_s > k_t.

    Case 1 (k_s >= 2k_t): k_t colors on blocks s..s+r, k_t more on blocks
    s-r..s, and k_s - 2k_t extra on block s.

    Case 2: with block s relabelled as P^1, one color per arc ending at
    P^1, ..., P^(r+1) for α = ⌊k_s/(r+1)⌋ rounds plus ℓ more arcs ending at
    P^1..P^ℓ; then λ = k_t - α colors on the arcs starting at P^(j+1),
    j = ((i-1) mod r) + 1 for i = 1..λ.
    """
    m = 2 * r + 1
    k_s, k_t = ks[s], ks[t]
    pal: list[list[int]] = [[] for _ in range(m)]
    nxt = 1

    def give(blocks, count=1):
        nonlocal nxt
        for _ in range(count):
            for b in blocks:
                pal[b].append(nxt)
            nxt += 1

    if k_s >= 2 * k_t:
        give(_arc(s, r + 1, m), k_t)
        give(_arc(s - r, r + 1, m), k_t)
        give([s], k_s - 2 * k_t)
        case = "1"
    else:
        alpha, ell = divmod(k_s, r + 1)
        # arc ending at relative block j (1-based) starts at j - r
        for _ in range(alpha):
            for j in range(1, r + 2):
                give(_arc(s + j - 1 - r, r + 1, m))
        for j in range(1, ell + 1):
            give(_arc(s + j - 1 - r, r + 1, m))
        for i in range(1, k_t - alpha + 1):
            j = (i - 1) % r + 1
            give(_arc(s + j, r + 1, m))
        case = "2"
    return PalettePlan(tuple(tuple(p) for p in pal), case, nxt - 1)


def _block_colorings(spec: Compose, block_colorings: list[Coloring]) -> list[int]:
    if not isinstance(spec, Compose):
        raise InvalidParameter("palette constructions need a composition")
    if len(block_colorings) != spec.m:
        raise InvalidParameter(f"expected {spec.m} block colorings, got {len(block_colorings)}")
    for i, (child, c) in enumerate(zip(spec.children, block_colorings), 1):
        if not validate_coloring(realize(child), c):
            raise InvalidParameter(f"coloring of block {i} is not acyclic")
    return [c.max_label for c in block_colorings]


def _assemble(spec: Compose, block_colorings: list[Coloring], plan: PalettePlan) -> Coloring:
    offs = spec.offsets()
    out = {}
    for b, c in enumerate(block_colorings):
        pal = plan.palettes[b]
        if c.max_label > len(pal):
            raise ConstructionError(
                f"block {b + 1} needs {c.max_label} colors but its palette has {len(pal)}")
        for v, col in c.assignment.items():
            out[offs[b] + v] = pal[col - 1]
    return Coloring(out)


def color_equal_blocks(spec: Compose, block_colorings: list[Coloring],
                       k: Optional[int] = None) -> Coloring:
    """Combine block colorings using labels 1..k (unused labels allowed)."""
    ks = _block_colorings(spec, block_colorings)
    k = max(ks) if k is None else k
    if any(x > k for x in ks):
        raise InvalidParameter(f"a block coloring uses more than k={k} colors")
    return _assemble(spec, block_colorings, equal_palettes(spec.r, k))


def color_unequal_blocks(spec: Compose, block_colorings: list[Coloring],
                         s: int, t: int) -> Coloring:
    """s, t are 1-based blocks with k_s > k_t >= every other k_i."""
    ks = _block_colorings(spec, block_colorings)
    if not (1 <= s <= spec.m and 1 <= t <= spec.m) or s == t:
        raise InvalidParameter("s and t must be distinct block indices")
    if not ks[s - 1] > ks[t - 1] or any(ks[i] > ks[t - 1] for i in range(spec.m) if i != s - 1):
        raise InvalidParameter(f"need k_s > k_t >= other k_i, got {ks}")
    return _assemble(spec, block_colorings, unequal_palettes(spec.r, ks, s - 1, t - 1))


def equal_bound(r: int, k: int) -> int:
    return -(-k * (2 * r + 1) // (r + 1))


def unequal_bound(r: int, k_s: int, k_t: int) -> int:
    return max(-(-((2 * r + 1) * (k_s + k_t) - 1) // (2 * r + 2)), k_s)


def palette_discipline(spec: Compose, c: Coloring) -> bool:
    """Every color is confined to some arc of r+1 consecutive blocks."""
    offs = spec.offsets()
    m, r = spec.m, spec.r
    blocks_of: dict[int, set] = {}
    for v, col in c.assignment.items():
        b = next(i for i in range(m) if offs[i] < v <= offs[i + 1])
        blocks_of.setdefault(col, set()).add(b)
    arcs = [set(_arc(i, r + 1, m)) for i in range(m)]
    return all(any(bs <= a for a in arcs) for bs in blocks_of.values())


@dataclass(frozen=True)
class RootColoring:
    coloring: Coloring
    construction: str   # "equal" or "unequal"
    case: str
    block_chi: tuple
    promised: int       # the construction's stated color bound


def color_spec(spec: Compose, limit: Optional[int] = None) -> RootColoring:
    """Optimal block colorings combined by the matching palette construction.

    When the two largest block values tie, every block is padded to the
    common maximum and the equal-blocks construction is used.
    """
    if not isinstance(spec, Compose):
        raise InvalidParameter("color_spec needs a composition")
    found = [chromatic_exact(realize(c), limit) for c in spec.children]
    ks = [k for k, _ in found]
    cols = [c for _, c in found]
    order = sorted(range(spec.m), key=lambda i: -ks[i])
    s, t = order[0], order[1]
    if ks[s] == ks[t]:
        plan = equal_palettes(spec.r, ks[s])
        return RootColoring(_assemble(spec, cols, plan), "equal", plan.case,
                            tuple(ks), equal_bound(spec.r, ks[s]))
    plan = unequal_palettes(spec.r, ks, s, t)
    return RootColoring(_assemble(spec, cols, plan), "unequal", plan.case,
                        tuple(ks), unequal_bound(spec.r, ks[s], ks[t]))


# ---------------------------------------------------------------------------
# the bound


def root_r(spec: SectionableSpec) -> int:
    """r of the root quotient; transitive roots use r = 1, the strictest."""
    if isinstance(spec, (Compose, HighlyRegular)):
        return spec.r
    return 1


@dataclass(frozen=True)
class BoundReport:
    spec: str
    n: int
    r: int
    dim: int
    chi: int
    bound: float
    slack: float
    passed: bool

    def to_json(self) -> dict:
        return {"spec": self.spec, "n": self.n, "r": self.r, "dim": self.dim,
                "chi": self.chi, "bound": self.bound, "slack": self.slack,
                "pass": self.passed}


def verify_bound(spec: SectionableSpec, limit: Optional[int] = None) -> BoundReport:
    from .dsl import format_spec
    T = realize(spec)
    chi, _ = chromatic_exact(T, limit)
    r, d = root_r(spec), dim_formula(spec)
    b = chromatic_bound(r, d)
    return BoundReport(format_spec(spec), T.n, r, d, chi, b, b - chi,
                       chi <= math.floor(b + BOUND_TOL))
