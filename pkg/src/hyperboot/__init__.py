"""Bootstrap percolation on the hypercube, k-snakes and a slow-percolation construction."""

from .cube import CoordPermutation, Vertex, WordSet, distance, neighbors, permute_coords, weight, xor_translate
from .dsl import evaluate, parse
from .engine import InfectionState, Outcome, is_stable, simulate
from .snake import SnakePath, search_longest, verify

__all__ = [
    "CoordPermutation",
    "InfectionState",
    "Outcome",
    "SnakePath",
    "Vertex",
    "WordSet",
    "distance",
    "evaluate",
    "is_stable",
    "neighbors",
    "parse",
    "permute_coords",
    "search_longest",
    "simulate",
    "verify",
    "weight",
    "xor_translate",
]

__version__ = "0.1.0"
