"""Linear algebra over GF(2) on bit-packed rows.

Each row (or vector) is packed into a Python ``int``: bit ``j`` holds
coordinate ``j``.  Python integers are arbitrary precision, so the word size
is whatever CPython uses internally and never leaks into the API.  All
positions in this module are 0-based; the 1-based server/object numbering
lives in the modules above.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .config import SPAN_CAP
from .errors import CapExceeded


def popcount(x: int) -> int:
    return x.bit_count()


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits_of(x: int) -> list[int]:
    """Positions of the set bits of ``x``, ascending."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def mask_of(positions: Iterable[int]) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


@dataclass(frozen=True)
class BinaryVector:
    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("vector length must be nonnegative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "BinaryVector":
        return cls(len(values), mask_of(i for i, v in enumerate(values) if v & 1))

    @classmethod
    def unit(cls, length: int, i: int) -> "BinaryVector":
        return cls(length, 1 << i)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: "BinaryVector") -> "BinaryVector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BinaryVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def weight(self) -> int:
        return popcount(self.bits)

    def support(self) -> list[int]:
        return bits_of(self.bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class BinaryMatrix:
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ncols < 1 or len(self.rows) < 1:
            raise ValueError("matrix needs at least one row and one column")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row has bits set beyond ncols")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        if not rows:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(ncols, tuple(BinaryVector.from_list(r).bits for r in rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BinaryMatrix":
        return cls.from_lists([[int(ch) for ch in r] for r in rows])

    @classmethod
    def from_vectors(cls, vectors: Sequence[BinaryVector]) -> "BinaryMatrix":
        if not vectors:
            raise ValueError("matrix needs at least one row")
        ncols = vectors[0].length
        if any(v.length != ncols for v in vectors):
            raise ValueError("vectors of unequal length")
        return cls(ncols, tuple(v.bits for v in vectors))

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BinaryMatrix":
        return cls(ncols, (0,) * nrows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.ncols:
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BinaryVector:
        return BinaryVector(self.ncols, self.rows[i])

    def column_bits(self, j: int) -> int:
        """Column ``j`` packed with bit ``i`` = entry in row ``i``."""
        c = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                c |= 1 << i
        return c

    def column(self, j: int) -> BinaryVector:
        return BinaryVector(self.nrows, self.column_bits(j))

    def columns_bits(self) -> tuple[int, ...]:
        return tuple(self.column_bits(j) for j in range(self.ncols))

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.nrows, self.columns_bits())

    def mul_vec(self, x: BinaryVector) -> BinaryVector:
        """``M @ x`` over GF(2); ``x`` has length ``ncols``."""
        if x.length != self.ncols:
            raise ValueError("dimension mismatch")
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & x.bits):
                out |= 1 << i
        return BinaryVector(self.nrows, out)

    def vec_mul(self, a: BinaryVector) -> BinaryVector:
        """``a @ M`` over GF(2); the XOR of rows selected by ``a``."""
        if a.length != self.nrows:
            raise ValueError("dimension mismatch")
        out = 0
        for i in bits_of(a.bits):
            out ^= self.rows[i]
        return BinaryVector(self.ncols, out)

    def select_columns(self, cols: Sequence[int]) -> "BinaryMatrix":
        rows = []
        for r in self.rows:
            v = 0
            for new, old in enumerate(cols):
                if (r >> old) & 1:
                    v |= 1 << new
            rows.append(v)
        return BinaryMatrix(len(cols), tuple(rows))

    def stack(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch")
        return BinaryMatrix(self.ncols, self.rows + other.rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_strings(self) -> list[str]:
        return ["".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def _eliminate(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Gauss-Jordan in place; returns (reduced nonzero rows, pivot columns)."""
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        for r in range(top, len(rows)):
            if rows[r] & bit:
                break
        else:
            continue
        rows[top], rows[r] = rows[r], rows[top]
        prow = rows[top]
        for r in range(len(rows)):
            if r != top and rows[r] & bit:
                rows[r] ^= prow
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows[:top], pivots


def rank_of_rows(rows: Iterable[int], ncols: int) -> int:
    return len(_eliminate(list(rows), ncols)[1])


def rank(m: BinaryMatrix) -> int:
    return rank_of_rows(m.rows, m.ncols)


def rref(m: BinaryMatrix) -> tuple[BinaryMatrix, list[int]]:
    """Reduced row-echelon form; zero rows are dropped, so ``R.nrows == rank``.

    A rank-0 input returns a single zero row (a matrix cannot be empty).
    """
    reduced, pivots = _eliminate(list(m.rows), m.ncols)
    if not reduced:
        reduced = [0]
    return BinaryMatrix(m.ncols, tuple(reduced)), pivots


def nullspace_rows(rows: Sequence[int], ncols: int) -> list[int]:
    reduced, pivots = _eliminate(list(rows), ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for prow, pcol in zip(reduced, pivots):
            if (prow >> free) & 1:
                v |= 1 << pcol
        basis.append(v)
    return basis


def nullspace_basis(m: BinaryMatrix) -> list[BinaryVector]:
    """Basis of ``{x : M x^T = 0}``, one vector per free column."""
    return [BinaryVector(m.ncols, v) for v in nullspace_rows(m.rows, m.ncols)]


def solve_columns(columns: Sequence[int], target: int, nrows: int) -> int | None:
    """Find a subset of ``columns`` XOR-ing to ``target``; returns its mask.

    Columns are packed over ``nrows`` bits.  Works on the augmented system
    ``[M | b]`` with one row per equation.
    """
    ncols = len(columns)
    aug = []
    for i in range(nrows):
        r = 0
        for j, c in enumerate(columns):
            if (c >> i) & 1:
                r |= 1 << j
        if (target >> i) & 1:
            r |= 1 << ncols
        aug.append(r)
    reduced, pivots = _eliminate(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = 0
    for prow, pcol in zip(reduced, pivots):
        if (prow >> ncols) & 1:
            x |= 1 << pcol
    return x


def solve(m: BinaryMatrix, b: BinaryVector) -> BinaryVector | None:
    """Some ``x`` with ``M x^T = b``, or ``None`` when inconsistent."""
    if b.length != m.nrows:
        raise ValueError(f"dimension mismatch: b has length {b.length}, matrix has {m.nrows} rows")
    x = solve_columns(m.columns_bits(), b.bits, m.nrows)
    return None if x is None else BinaryVector(m.ncols, x)


def span_ints(basis: Sequence[int], cap: int = SPAN_CAP) -> Iterator[int]:
    """All XOR combinations of ``basis`` in Gray-code order, zero first.

    The basis is assumed independent; use :func:`enumerate_span` for the
    checked public entry point.
    """
    size = 1 << len(basis)
    if size > cap:
        raise CapExceeded("span", size, cap, "span")
    v = 0
    yield v
    for i in range(1, size):
        # Gray code: flip the basis vector indexed by the lowest set bit of i.
        v ^= basis[(i & -i).bit_length() - 1]
        yield v


def enumerate_span(
    basis: Sequence[BinaryVector], cap: int = SPAN_CAP, length: int | None = None
) -> Iterator[BinaryVector]:
    """Yield every element of ``span(basis)`` exactly once, zero vector first.

    ``length`` is only needed for an empty basis, whose span is the zero
    vector of that length.  Raises ``ValueError`` for unequal lengths or a
    dependent basis and :class:`CapExceeded` when ``2**len(basis) > cap``.
    """
    if not basis:
        if length is None:
            raise ValueError("empty basis needs an explicit length")
        yield BinaryVector(length, 0)
        return
    length = basis[0].length
    if any(v.length != length for v in basis):
        raise ValueError("basis vectors must have equal length")
    words = [v.bits for v in basis]
    if rank_of_rows(words, length) != len(words):
        raise ValueError("basis is linearly dependent")
    size = 1 << len(words)
    if size > cap:
        raise CapExceeded("span", size, cap, "span")
    for x in span_ints(words, cap):
        yield BinaryVector(length, x)
