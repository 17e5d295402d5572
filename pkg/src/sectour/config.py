"""Size caps used across the library."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    max_n: int = 20            # vertex cap for face enumeration
    chromatic_n: int = 14      # vertex cap for exact chromatic search
    betti_faces: int = 200_000  # face cap for homology


DEFAULT_LIMITS = Limits()
