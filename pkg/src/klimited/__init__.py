"""k-limited-access coding matrices over GF(2)."""

from .cover import CoverScheme, SearchLimitExceeded, SearchLimits
from .gf2 import BitMatrix, BitVec, Circuit

__version__ = "0.1.0"

__all__ = ["BitMatrix", "BitVec", "Circuit", "CoverScheme", "SearchLimitExceeded", "SearchLimits"]
