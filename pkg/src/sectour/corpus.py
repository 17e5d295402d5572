"""Seeded random spec trees for property checks and batch runs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .dsl import format_spec
from .tournament import Compose, HighlyRegular, SectionableSpec, Transitive


@dataclass(frozen=True)
class CorpusConfig:
    max_n: int = 14
    max_depth: int = 2
    orders: tuple = (3, 5, 7)   # quotient / leaf orders to draw from
    max_transitive: int = 3
    fill: float = 0.5           # chance a block grows beyond R1
    composite_only: bool = True


def random_spec(rng: random.Random, budget: int, cfg: CorpusConfig = CorpusConfig(),
                depth: int = 0) -> SectionableSpec:
    """A spec with at most ``budget`` vertices."""
    orders = [m for m in cfg.orders if m <= budget]
    kinds = ["T"]
    if orders:
        kinds.append("R")
        if depth < cfg.max_depth:
            kinds += ["C", "C"]
    kind = rng.choice(kinds)
    if kind == "T":
        return Transitive(rng.randint(1, min(cfg.max_transitive, budget)))
    if kind == "R":
        return HighlyRegular(rng.choice(orders))
    m = rng.choice(orders)
    kids: list[SectionableSpec] = [Transitive(1)] * m
    spare = budget - m
    for i in range(m):
        if spare > 0 and rng.random() < cfg.fill:
            kid = random_spec(rng, spare + 1, cfg, depth + 1)
            if kid.n - 1 <= spare:
                kids[i] = kid
                spare -= kid.n - 1
    return Compose(m, tuple(kids))


def generate(count: int, seed: int, cfg: CorpusConfig = CorpusConfig(),
             keep: Optional[Callable[[SectionableSpec], bool]] = None,
             max_tries: int = 100_000) -> list[SectionableSpec]:
    """``count`` distinct specs, deterministic in ``seed``."""
    rng = random.Random(seed)
    seen: set[str] = set()
    out: list[SectionableSpec] = []
    for _ in range(max_tries):
        if len(out) >= count:
            break
        s = random_spec(rng, cfg.max_n, cfg)
        if cfg.composite_only and not isinstance(s, Compose):
            continue
        if keep is not None and not keep(s):
            continue
        key = format_spec(s)
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


def has_reducible_leaf(spec: SectionableSpec) -> bool:
    """Contains an R_m leaf with m >= 5 or a transitive leaf of size >= 2."""
    if isinstance(spec, Transitive):
        return spec.k >= 2
    if isinstance(spec, HighlyRegular):
        return spec.m >= 5
    return any(has_reducible_leaf(c) for c in spec.children)
