"""Constructions that turn a target matrix into a k-limited-access cover."""

from .branch_search import CoverGraph, branch, branch_search, min_cover, search
from .brute import brute_force_optimal
from .chain import chain_cover
from .scheme1 import scheme1_adapted, scheme1_full, scheme1_row_count, sections
from .scr import scr

__all__ = [
    "CoverGraph",
    "branch",
    "branch_search",
    "brute_force_optimal",
    "chain_cover",
    "min_cover",
    "scheme1_adapted",
    "scheme1_full",
    "scheme1_row_count",
    "scr",
    "search",
    "sections",
]
