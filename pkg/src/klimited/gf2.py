"""Packed GF(2) vectors and matrices.

A vector of length ``t`` is stored as a Python int whose bit ``i`` holds
coordinate ``i + 1``; the text form writes coordinate 1 first, so the string
``"100"`` is the int ``1``.  Row indices are 0-based in the API and 1-based
only in the text formats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class MatrixFormatError(ValueError):
    """Malformed matrix text, with the position of the first bad character."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_bits(text: str) -> int:
    value = 0
    for i, ch in enumerate(text):
        if ch == "1":
            value |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r} at position {i + 1}")
    return value


def format_bits(value: int, length: int) -> str:
    return "".join("1" if (value >> i) & 1 else "0" for i in range(length))


def reverse_bits(value: int, length: int) -> int:
    """Map between packed form and the integer read off the text form (MSB first)."""
    return int(format(value, f"0{length}b")[::-1], 2) if length else 0


@dataclass(frozen=True, slots=True)
class BitVec:
    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("vector length must be positive")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond the vector length")

    @classmethod
    def from_str(cls, text: str) -> BitVec:
        text = text.strip()
        return cls(len(text), parse_bits(text))

    def __str__(self) -> str:
        return format_bits(self.bits, self.length)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: BitVec) -> BitVec:
        if other.length != self.length:
            raise ValueError("dimension mismatch")
        return BitVec(self.length, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")


@dataclass(frozen=True)
class BitMatrix:
    """Ordered rows over GF(2); ``packed`` holds the rows as ints."""

    dim: int
    packed: tuple[int, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("matrix dimension must be positive")
        object.__setattr__(self, "packed", tuple(self.packed))
        limit = 1 << self.dim
        for i, row in enumerate(self.packed):
            if not 0 <= row < limit:
                raise ValueError(f"row {i} does not fit in dimension {self.dim}")

    @classmethod
    def from_rows(cls, rows: Iterable[str | BitVec], dim: int | None = None) -> BitMatrix:
        packed = []
        for row in rows:
            if isinstance(row, str):
                row = BitVec.from_str(row)
            if dim is None:
                dim = row.length
            elif row.length != dim:
                raise ValueError(f"row of length {row.length} in a matrix of dimension {dim}")
            packed.append(row.bits)
        if dim is None:
            raise ValueError("cannot infer the dimension of an empty matrix")
        return cls(dim, tuple(packed))

    @classmethod
    def parse(cls, text: str) -> BitMatrix:
        """Read the ``<n> <T>`` header format; blank and ``#`` lines are skipped."""
        lines = [
            (no, line.rstrip("\r\n"))
            for no, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("#")
        ]
        if not lines:
            raise MatrixFormatError("missing '<n> <T>' header", 1)
        header_no, header = lines[0]
        fields = header.split()
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise MatrixFormatError("header must be two decimal integers '<n> <T>'", header_no)
        n, dim = int(fields[0]), int(fields[1])
        if dim < 1:
            raise MatrixFormatError("dimension T must be positive", header_no, header.index(fields[1]) + 1)
        body = lines[1:]
        if len(body) != n:
            where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else header_no + 1)
            raise MatrixFormatError(f"expected {n} rows, found {len(body)}", where)
        packed = []
        for no, line in body:
            line = line.strip()
            for col, ch in enumerate(line, start=1):
                if ch not in "01":
                    raise MatrixFormatError(f"invalid character {ch!r}", no, col)
            if len(line) != dim:
                raise MatrixFormatError(f"expected {dim} characters, found {len(line)}", no, min(len(line), dim) + 1)
            packed.append(parse_bits(line))
        return cls(dim, tuple(packed))

    def format(self) -> str:
        lines = [f"{len(self.packed)} {self.dim}"]
        lines.extend(format_bits(row, self.dim) for row in self.packed)
        return "\n".join(lines) + "\n"

    def __len__(self) -> int:
        return len(self.packed)

    def __getitem__(self, i: int) -> BitVec:
        return BitVec(self.dim, self.packed[i])

    def __iter__(self) -> Iterator[BitVec]:
        return (BitVec(self.dim, row) for row in self.packed)

    def take(self, indices: Iterable[int]) -> BitMatrix:
        return BitMatrix(self.dim, tuple(self.packed[i] for i in indices))

    def append(self, row: int | BitVec) -> BitMatrix:
        bits = row.bits if isinstance(row, BitVec) else row
        return BitMatrix(self.dim, self.packed + (bits,))

    def column_weights(self) -> list[int]:
        return [sum((row >> c) & 1 for row in self.packed) for c in range(self.dim)]


@dataclass(frozen=True)
class Circuit:
    """Minimal dependent set of rows; ``indices`` is sorted and 0-based."""

    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(self.indices)))
        if len(self.indices) < 2:
            raise ValueError("a circuit has at least two elements")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)


# -- packed-int kernels -------------------------------------------------------

def reduce_vector(basis: dict[int, int], v: int) -> int:
    """Reduce ``v`` against an echelon basis keyed by leading bit."""
    while v:
        b = basis.get(v.bit_length() - 1)
        if b is None:
            return v
        v ^= b
    return 0


def insert_vector(basis: dict[int, int], v: int) -> bool:
    v = reduce_vector(basis, v)
    if v:
        basis[v.bit_length() - 1] = v
        return True
    return False


def rank_of(rows: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for row in rows:
        insert_vector(basis, row)
    return len(basis)


def first_dependency(rows: Sequence[int], order: Sequence[int] | None = None) -> tuple[int, ...] | None:
    """Indices of the first row (in scan order) that reduces to zero, plus its representation.

    The rows scanned before it are independent, so the representation is
    unique and the returned set is a circuit.
    """
    basis: dict[int, tuple[int, int]] = {}
    for i in order if order is not None else range(len(rows)):
        v, combo = rows[i], 1 << i
        while v:
            hit = basis.get(v.bit_length() - 1)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        if v:
            basis[v.bit_length() - 1] = (v, combo)
        else:
            return tuple(j for j in range(combo.bit_length()) if (combo >> j) & 1)
    return None


def xor_all(values: Iterable[int]) -> int:
    acc = 0
    for v in values:
        acc ^= v
    return acc


# -- public operations --------------------------------------------------------

def rank(m: BitMatrix) -> int:
    return rank_of(m.packed)


def in_span(m: BitMatrix, v: BitVec) -> bool:
    if v.length != m.dim:
        raise ValueError(f"vector of length {v.length} against a matrix of dimension {m.dim}")
    basis: dict[int, int] = {}
    for row in m.packed:
        insert_vector(basis, row)
    return reduce_vector(basis, v.bits) == 0


def find_dependency(m: BitMatrix) -> frozenset[int] | None:
    dep = first_dependency(m.packed)
    return None if dep is None else frozenset(dep)


def minimize_to_circuit(m: BitMatrix, dep: Iterable[int]) -> Circuit:
    """Shrink a zero-sum index set to a circuit.

    Scans ``dep`` in ascending order and stops at the first row that is
    spanned by the rows before it; that fundamental circuit is returned.
    """
    dep = sorted(set(dep))
    if not dep or xor_all(m.packed[i] for i in dep) != 0:
        raise ValueError("rows of the dependency do not sum to zero")
    found = first_dependency(m.packed, dep)
    assert found is not None
    return Circuit(found)


def find_small_circuit(m: BitMatrix, trials: int = 1, seed: int = 0) -> Circuit | None:
    """Smallest fundamental circuit seen over ``trials`` scan orders.

    The first trial scans rows in matrix order; later trials use random
    permutations drawn from ``seed``.  Zero rows are rejected.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if 0 in m.packed:
        raise ValueError("zero row: a loop, not a circuit")
    n = len(m.packed)
    best = first_dependency(m.packed)
    if best is None:
        return None
    rng = random.Random(seed)
    order = list(range(n))
    for _ in range(trials - 1):
        if len(best) == 2:
            break
        rng.shuffle(order)
        found = first_dependency(m.packed, order)
        if found is not None and len(found) < len(best):
            best = found
    return Circuit(best)
