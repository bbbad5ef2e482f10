"""Exact linear algebra over GF(2).

Bit vectors and matrices are small (token width is at most a couple dozen
bits), immutable and hashable, so everything is plain Python: Gaussian
elimination for rank/membership/solves, explicit enumeration only where an
operation is defined by it.

Bit order convention: index 0 is the leftmost (most significant) bit, so
``BitVector((1,0,0,1))`` prints as ``1001``.  Serialization is lowercase hex
with an explicit bit-length prefix: ``1001`` -> ``"4:9"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapacityError, DimensionError, RankError

#: enumeration guard for row_span()
SPAN_ROW_LIMIT = 20


@dataclass(frozen=True)
class BitVector:
    """Fixed-length sequence of bits over GF(2)."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_bits(bits: Iterable[int]) -> "BitVector":
        return BitVector(tuple(int(b) & 1 for b in bits))

    @staticmethod
    def from_string(s: str) -> "BitVector":
        """Parse a plain bit string such as ``"1001"``."""
        return BitVector(tuple(int(c) for c in s))

    @staticmethod
    def zeros(n: int) -> "BitVector":
        return BitVector((0,) * n)

    @staticmethod
    def unit(n: int, i: int) -> "BitVector":
        bits = [0] * n
        bits[i] = 1
        return BitVector(tuple(bits))

    @staticmethod
    def from_int(value: int, n: int) -> "BitVector":
        """Big-endian decode: bit 0 of the vector is the 2^(n-1) digit."""
        return BitVector(tuple((value >> (n - 1 - i)) & 1 for i in range(n)))

    # -- basics ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if len(self) != len(other):
            raise DimensionError(
                f"xor of lengths {len(self)} and {len(other)}")
        return BitVector(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def dot(self, other: "BitVector") -> int:
        """Inner product mod 2."""
        if len(self) != len(other):
            raise DimensionError(
                f"dot of lengths {len(self)} and {len(other)}")
        return sum(a & b for a, b in zip(self.bits, other.bits)) & 1

    def is_zero(self) -> bool:
        return not any(self.bits)

    def weight(self) -> int:
        return sum(self.bits)

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.bits + other.bits)

    def to_int(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    # -- serialization -----------------------------------------------------

    def to_hex(self) -> str:
        """Length-prefixed lowercase hex, e.g. ``1001`` -> ``"4:9"``."""
        return f"{len(self.bits)}:{self.to_int():x}"

    @staticmethod
    def from_hex(text: str) -> "BitVector":
        try:
            length_s, value_s = text.split(":", 1)
            n = int(length_s)
            value = int(value_s, 16)
        except ValueError as exc:
            raise ValueError(f"bad bit-vector encoding {text!r}") from exc
        if n < 0 or value >> n:
            raise ValueError(f"value out of range in {text!r}")
        return BitVector.from_int(value, n)


@dataclass(frozen=True)
class BitMatrix:
    """Rectangular matrix over GF(2), held as a tuple of equal-length rows."""

    rows: tuple[BitVector, ...]
    cols: int

    def __post_init__(self) -> None:
        for r in self.rows:
            if len(r) != self.cols:
                raise DimensionError("ragged rows in BitMatrix")

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]], cols: int | None = None) -> "BitMatrix":
        vecs = tuple(r if isinstance(r, BitVector) else BitVector.from_bits(r)
                     for r in rows)
        if cols is None:
            if not vecs:
                raise DimensionError("column count required for empty matrix")
            cols = len(vecs[0])
        return BitMatrix(vecs, cols)

    @staticmethod
    def replicate_row(row: BitVector, count: int) -> "BitMatrix":
        """Matrix whose ``count`` rows are all equal to ``row``.

        Supports the single-string reading of a row pad: one pad string
        applied to every row.
        """
        return BitMatrix((row,) * count, len(row))

    @staticmethod
    def zeros(rows: int, cols: int) -> "BitMatrix":
        return BitMatrix(tuple(BitVector.zeros(cols) for _ in range(rows)), cols)

    @staticmethod
    def identity(n: int) -> "BitMatrix":
        return BitMatrix(tuple(BitVector.unit(n, i) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.rows)

    def __str__(self) -> str:
        return "[" + ", ".join(str(r) for r in self.rows) + "]"

    def mul_vector(self, v: BitVector) -> BitVector:
        """Matrix-vector product: entry i is row_i . v."""
        return BitVector(tuple(r.dot(v) for r in self.rows))

    def to_hex_rows(self) -> list[str]:
        return [r.to_hex() for r in self.rows]

    @staticmethod
    def from_hex_rows(rows: Iterable[str], cols: int | None = None) -> "BitMatrix":
        vecs = tuple(BitVector.from_hex(r) for r in rows)
        if cols is None:
            if not vecs:
                raise DimensionError("column count required for empty matrix")
            cols = len(vecs[0])
        return BitMatrix(vecs, cols)


@dataclass(frozen=True)
class Coset:
    """Affine subspace ``rowspan(basis) + offset`` with a full-rank basis."""

    basis: BitMatrix
    offset: BitVector

    def __post_init__(self) -> None:
        if len(self.offset) != self.basis.cols:
            raise DimensionError("offset length does not match basis width")
        if rank(self.basis) != self.basis.nrows:
            raise RankError("coset basis must be full rank")

    def contains(self, v: BitVector) -> bool:
        return coset_contains(self, v)

    def size(self) -> int:
        return 1 << self.basis.nrows


# ---------------------------------------------------------------------------
# elimination core


def _eliminate(rows: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """In-place row echelon form; returns (rows, pivot column list)."""
    pivots: list[int] = []
    pivot_row = 0
    for col in range(cols):
        found = -1
        for r in range(pivot_row, len(rows)):
            if rows[r][col]:
                found = r
                break
        if found < 0:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return rows, pivots


def rank(m: BitMatrix) -> int:
    """Rank over GF(2) by Gaussian elimination."""
    rows = [list(r.bits) for r in m.rows]
    _, pivots = _eliminate(rows, m.cols)
    return len(pivots)


def sample_full_rank(rows: int, cols: int, rng) -> BitMatrix:
    """Uniform full-rank ``rows x cols`` matrix via rejection sampling.

    The retry cap (64 * cols) is effectively unreachable: a uniform square
    matrix is already full rank with probability > 0.288, and wide matrices
    only do better.
    """
    if rows > cols:
        raise DimensionError(f"cannot have rank {rows} with only {cols} columns")
    if rows == 0:
        return BitMatrix.zeros(0, cols)
    for _ in range(64 * cols):
        candidate = BitMatrix.from_rows(
            [rng.integers(0, 2, size=cols).tolist() for _ in range(rows)], cols)
        if rank(candidate) == rows:
            return candidate
    raise RankError("rejection sampling failed to find a full-rank matrix")


def row_span(m: BitMatrix) -> set[BitVector]:
    """All 2^rank(m) distinct GF(2) combinations of the rows."""
    if m.nrows > SPAN_ROW_LIMIT:
        raise CapacityError(f"row_span limited to {SPAN_ROW_LIMIT} rows")
    span = {BitVector.zeros(m.cols)}
    for row in m.rows:
        span |= {v ^ row for v in span}
    return span


def perp(m: BitMatrix) -> BitMatrix:
    """Basis of the dual space {v : v . s = 0 for all s in rowspan(m)}.

    Requires a full-rank input; output has cols - rows independent rows.
    Computed from the echelon form: free columns parameterize the kernel of
    the row-space inner product.
    """
    if rank(m) != m.nrows:
        raise RankError("perp requires a full-rank matrix")
    cols = m.cols
    rows = [list(r.bits) for r in m.rows]
    reduced, pivots = _eliminate(rows, cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(cols) if c not in pivot_set]
    basis_rows = []
    for fc in free_cols:
        v = [0] * cols
        v[fc] = 1
        # reduced row i reads: v[pivots[i]] = sum of v over its free columns
        for i, pc in enumerate(pivots):
            if reduced[i][fc]:
                v[pc] = 1
        basis_rows.append(BitVector.from_bits(v))
    return BitMatrix(tuple(basis_rows), cols)


def coset_contains(c: Coset, v: BitVector) -> bool:
    """Exact membership v in rowspan(basis) + offset, by elimination."""
    if len(v) != c.basis.cols:
        raise DimensionError("vector length does not match coset width")
    target = v ^ c.offset
    return in_rowspan(c.basis, target)


def in_rowspan(m: BitMatrix, v: BitVector) -> bool:
    """True iff v is a GF(2) combination of the rows of m."""
    if len(v) != m.cols:
        raise DimensionError("vector length does not match matrix width")
    rows = [list(r.bits) for r in m.rows]
    _, pivots = _eliminate(rows, m.cols)
    augmented = [list(r.bits) for r in m.rows] + [list(v.bits)]
    _, aug_pivots = _eliminate(augmented, m.cols)
    # appending a dependent vector cannot raise the rank
    return len(aug_pivots) == len(pivots)


def xor_shift_rows(m: BitMatrix, r: BitVector) -> BitMatrix:
    """XOR the same vector into every row (an involution)."""
    if len(r) != m.cols:
        raise DimensionError("shift length does not match matrix width")
    return BitMatrix(tuple(row ^ r for row in m.rows), m.cols)


def solve_dual_shift(m: BitMatrix, d: BitVector) -> BitVector:
    """Some e with m . e = d (row i of m dotted with e equals d_i).

    Always solvable for full-rank m; any witness is acceptable.
    """
    if rank(m) != m.nrows:
        raise RankError("solve_dual_shift requires a full-rank matrix")
    if len(d) != m.nrows:
        raise DimensionError("target length must equal the row count")
    cols = m.cols
    rows = [list(row.bits) + [d[i]] for i, row in enumerate(m.rows)]
    reduced, pivots = _eliminate(rows, cols)
    e = [0] * cols
    for i, pc in enumerate(pivots):
        e[pc] = reduced[i][cols]
    return BitVector.from_bits(e)
