"""One-spec consistency suite: formulas vs engine vs homology vs coloring."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .coloring import verify_bound
from .complex import acyclic_complex, dimension
from .config import DEFAULT_LIMITS, Limits
from .dsl import format_spec
from .homology import chain_summary, morse_consistency
from .morse import canonical_pivots, cs_recursive, run_pivots, verify_acyclic
from .structure import depth_formula, dim_formula
from .tournament import SectionableSpec, realize


@dataclass
class VerifyReport:
    spec: str
    n: int
    dim: int
    depth: int
    histogram: dict
    betti: Optional[list] = None
    chi: Optional[int] = None
    bound: Optional[float] = None
    checks: dict = field(default_factory=dict)  # name -> True / False / None (skipped)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def to_json(self) -> dict:
        return {"spec": self.spec, "n": self.n, "dim": self.dim, "depth": self.depth,
                "histogram": {str(k): v for k, v in self.histogram.items()},
                "betti": self.betti, "chi": self.chi, "bound": self.bound,
                "checks": self.checks, "pass": self.passed}


def verify_spec(spec: SectionableSpec, limits: Limits = DEFAULT_LIMITS) -> VerifyReport:
    T = realize(spec)
    F = acyclic_complex(T, limits.max_n)
    M, C = run_pivots(F, canonical_pivots(spec))
    hist = C.histogram
    rep = VerifyReport(format_spec(spec), T.n, dim_formula(spec), depth_formula(spec), hist)
    rep.checks["matching_acyclic"] = verify_acyclic(M, F)
    rep.checks["cs_formula"] = cs_recursive(spec) == hist
    rep.checks["depth_formula"] = rep.depth == max(hist, default=0)
    rep.checks["dim_formula"] = rep.dim == dimension(F)
    if len(F) <= limits.betti_faces:
        summary = chain_summary(F, limits.betti_faces)
        rep.betti = summary.betti
        rep.checks["morse_homology"] = morse_consistency(C, summary).passed
    else:
        rep.checks["morse_homology"] = None
    if T.n <= limits.chromatic_n:
        b = verify_bound(spec, limits.chromatic_n)
        rep.chi, rep.bound = b.chi, b.bound
        rep.checks["chromatic_bound"] = b.passed
    else:
        rep.checks["chromatic_bound"] = None
    return rep
