"""Sectionable tournaments: acyclic complexes, pivot matchings, colorings."""

from .complex import (EMPTY_DIMENSION, FaceFamily, acyclic_complex, circuits,
                      contract_edge, dimension, facets, generated_family, sigma)
from .coloring import (Coloring, ceil_identity, chromatic_bound, chromatic_exact,
                       color_equal_blocks, color_spec, color_unequal_blocks,
                       funct_max_check, validate_coloring, verify_bound)
from .dsl import format_spec, parse_spec
from .errors import ConstructionError, InvalidParameter, ResourceLimit
from .homology import betti_numbers, chain_summary, morse_consistency
from .morse import (CriticalCells, MorseMatching, canonical_pivots, cs_recursive,
                    cs_sigma, dot_join, equivalent, pivot_step, run_pivots,
                    split_by_deep_triangle, verify_acyclic)
from .structure import (deep_triangles, depth_eq_dim, depth_formula, dim_formula,
                        is_elementary, normalize, structure_report, width)
from .tournament import (Compose, HighlyRegular, Tournament, Transitive, compose,
                         find_dicycle, highly_regular, is_acyclic_set, realize,
                         replace_block, resolve_block, transitive_tournament)
