"""The CoverScheme data model and its text serialization."""

from __future__ import annotations

import time
from collections.abc import Mapping
from dataclasses import dataclass, field

from .gf2 import BitMatrix, MatrixFormatError, format_bits, parse_bits, xor_all


@dataclass(frozen=True)
class CoverScheme:
    """An overcomplete matrix ``a_k`` plus one witness set per target.

    ``witnesses`` maps a 0-based target index (a row of the source matrix,
    or a full-space index, see ``full_space_vector``) to 0-based rows of
    ``a_k`` whose sum is that target.
    """

    k: int
    a_k: BitMatrix
    witnesses: Mapping[int, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        rows = self.a_k.packed
        if 0 in rows:
            raise ValueError("a_k contains a zero row")
        if len(set(rows)) != len(rows):
            raise ValueError("a_k contains duplicate rows")

    @property
    def size(self) -> int:
        return len(self.a_k)

    @property
    def dim(self) -> int:
        return self.a_k.dim

    def reconstruct(self, target: int) -> int:
        """Packed sum of the stored witness rows for ``target``."""
        return xor_all(self.a_k.packed[i] for i in self.witnesses[target])


def full_space_vector(index: int, t: int) -> int:
    """Packed vector for 0-based full-space index ``index``.

    Full-space targets are ordered by the integer their text form spells
    (first coordinate most significant), so index 0 is ``0...01``.
    """
    value = index + 1
    if not 1 <= value < 1 << t:
        raise IndexError(index)
    return int(format(value, f"0{t}b")[::-1], 2)


def full_space_index(v: int, t: int) -> int:
    return int(format_bits(v, t), 2) - 1


class SearchLimitExceeded(RuntimeError):
    """A search ran out of budget before proving optimality.

    ``best`` holds the best complete cover found so far, if any.
    """

    def __init__(self, message: str, best: CoverScheme | None = None, examined: int = 0):
        super().__init__(message)
        self.best = best
        self.examined = examined


@dataclass(frozen=True)
class SearchLimits:
    max_subsets_examined: int = 10_000_000
    wall_clock_seconds: float = 60.0


class Budget:
    """Counts search nodes against a ``SearchLimits``."""

    def __init__(self, limits: SearchLimits):
        self.limits = limits
        self.examined = 0
        self._deadline = time.monotonic() + limits.wall_clock_seconds

    def tick(self) -> bool:
        """Count one node; False once either limit is exhausted."""
        self.examined += 1
        if self.examined > self.limits.max_subsets_examined:
            return False
        if self.examined & 0x3FF == 0 and time.monotonic() > self._deadline:
            return False
        return True


# -- text format ---------------------------------------------------------------

def dump_scheme(scheme: CoverScheme) -> str:
    """Header ``k T_k T``, the rows, then ``<target>: <rows>`` lines, all 1-based."""
    lines = [f"{scheme.k} {scheme.size} {scheme.dim}"]
    lines.extend(format_bits(row, scheme.dim) for row in scheme.a_k.packed)
    for target in sorted(scheme.witnesses):
        rows = " ".join(str(i + 1) for i in sorted(scheme.witnesses[target]))
        lines.append(f"{target + 1}: {rows}")
    return "\n".join(lines) + "\n"


def load_scheme(text: str) -> CoverScheme:
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise MatrixFormatError("missing 'k T_k T' header", 1)
    header_no, header = lines[0]
    fields = header.split()
    if len(fields) != 3 or not all(f.isdigit() for f in fields):
        raise MatrixFormatError("header must be three decimal integers 'k T_k T'", header_no)
    k, size, dim = map(int, fields)
    if len(lines) < 1 + size:
        raise MatrixFormatError(f"expected {size} matrix rows", lines[-1][0] + 1)
    packed = []
    for no, line in lines[1 : 1 + size]:
        for col, ch in enumerate(line, start=1):
            if ch not in "01":
                raise MatrixFormatError(f"invalid character {ch!r}", no, col)
        if len(line) != dim:
            raise MatrixFormatError(f"expected {dim} characters, found {len(line)}", no, min(len(line), dim) + 1)
        packed.append(parse_bits(line))
    witnesses: dict[int, frozenset[int]] = {}
    for no, line in lines[1 + size :]:
        target, sep, rest = line.partition(":")
        if not sep or not target.strip().isdigit():
            raise MatrixFormatError("witness lines look like '<target>: <rows>'", no)
        rows = []
        col = len(target) + 2
        for tok in rest.split():
            if not tok.isdigit() or not 1 <= int(tok) <= size:
                raise MatrixFormatError(f"bad row index {tok!r}", no, line.index(tok, col - 1) + 1)
            rows.append(int(tok) - 1)
        idx = int(target) - 1
        if idx < 0 or idx in witnesses:
            raise MatrixFormatError(f"bad or repeated target index {target.strip()}", no)
        witnesses[idx] = frozenset(rows)
    return CoverScheme(k, BitMatrix(dim, tuple(packed)), witnesses)
