"""Binary linear codes bound to a concrete generator matrix.

Object indices ``1..k`` and server (coordinate) indices ``1..n`` are 1-based
throughout this module and everything built on it.  Supports are returned as
sorted tuples of 1-based coordinates.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

from . import gf2
from .config import SPAN_CAP
from .errors import CapExceeded, InvariantViolation, ParseError, RankDeficientError
from .gf2 import BinaryMatrix, BinaryVector, bits_of, popcount

RANDOM_CODE_ALGORITHM = "srrlab-random-v1"


def support_of(mask: int) -> tuple[int, ...]:
    """1-based support of a 0-based bit mask."""
    return tuple(p + 1 for p in bits_of(mask))


def mask_from_support(support: Sequence[int], n: int) -> int:
    m = 0
    for j in support:
        if not 1 <= j <= n:
            raise ValueError(f"coordinate {j} outside 1..{n}")
        m |= 1 << (j - 1)
    return m


@dataclass(frozen=True)
class WeightEnumerator:
    coefficients: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, w: int) -> int:
        return self.coefficients[w]

    def total(self) -> int:
        return sum(self.coefficients)

    def min_nonzero_weight(self) -> int | None:
        for w in range(1, len(self.coefficients)):
            if self.coefficients[w]:
                return w
        return None


def _direct_enumerator(basis: Sequence[int], n: int, cap: int) -> WeightEnumerator:
    counts = [0] * (n + 1)
    for x in gf2.span_ints(basis, cap):
        counts[popcount(x)] += 1
    return WeightEnumerator(tuple(counts))


def krawtchouk(i: int, j: int, n: int) -> int:
    return sum((-1) ** s * comb(j, s) * comb(n - j, i - s) for s in range(i + 1))


def macwilliams(dual: WeightEnumerator) -> WeightEnumerator:
    """Weight distribution of a code from that of its dual."""
    n = dual.n
    size = dual.total()
    out = []
    for i in range(n + 1):
        acc = sum(b * krawtchouk(i, j, n) for j, b in enumerate(dual.coefficients) if b)
        q, r = divmod(acc, size)
        if r:
            raise InvariantViolation("MacWilliams transform produced a non-integer count")
        out.append(q)
    return WeightEnumerator(tuple(out))


class LinearCode:
    """A binary ``[n, k]`` code as stored by ``n`` servers.

    The analysis results depend on the concrete generator rows and column
    order, so two generators of the same code are different objects here.
    Derived distance data is computed lazily, once, under a lock.
    """

    def __init__(self, generator: BinaryMatrix, name: str = ""):
        acc: list[int] = []
        for i, r in enumerate(generator.rows):
            if gf2.rank_of_rows(acc + [r], generator.ncols) == len(acc):
                raise RankDeficientError(i + 1)
            acc.append(r)
        self.generator = generator
        self.name = name
        self.n = generator.ncols
        self.k = generator.nrows
        self.columns: tuple[int, ...] = generator.columns_bits()
        self.dual_basis: list[BinaryVector] = gf2.nullspace_basis(generator)
        self._dual_words = [v.bits for v in self.dual_basis]
        smap: dict[int, int] = {}
        for j, col in enumerate(self.columns):
            if col and col & (col - 1) == 0:
                obj = col.bit_length()
                smap.setdefault(obj, j + 1)
        self.systematic_map = smap
        self._lock = threading.Lock()
        self._enum: WeightEnumerator | None = None
        self._dual_enum: WeightEnumerator | None = None

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<LinearCode{label} [{self.n}, {self.k}]>"

    # -- enumeration -----------------------------------------------------

    def codewords(self, cap: int = SPAN_CAP) -> Iterator[int]:
        """Codewords as 0-based masks, zero first."""
        return gf2.span_ints(self.generator.rows, cap)

    def dual_codewords(self, cap: int = SPAN_CAP) -> Iterator[int]:
        return gf2.span_ints(self._dual_words, cap)

    def encode(self, message: Sequence[int] | BinaryVector) -> BinaryVector:
        if not isinstance(message, BinaryVector):
            message = BinaryVector.from_list(message)
        return self.generator.vec_mul(message)

    def column_sum(self, servers: Sequence[int]) -> int:
        """XOR of the 1-based columns ``servers`` (packed over ``k`` bits)."""
        s = 0
        for j in servers:
            s ^= self.columns[j - 1]
        return s

    def column_sum_mask(self, mask: int) -> int:
        s = 0
        for j in bits_of(mask):
            s ^= self.columns[j]
        return s

    def is_dual_word(self, mask: int) -> bool:
        return self.column_sum_mask(mask) == 0

    # -- weight data -----------------------------------------------------

    def weight_enumerator(self, cap: int = SPAN_CAP) -> WeightEnumerator:
        with self._lock:
            if self._enum is None:
                self._compute_enumerators(cap)
            assert self._enum is not None
            return self._enum

    def dual_weight_enumerator(self, cap: int = SPAN_CAP) -> WeightEnumerator:
        with self._lock:
            if self._dual_enum is None:
                self._compute_enumerators(cap)
            assert self._dual_enum is not None
            return self._dual_enum

    def _compute_enumerators(self, cap: int) -> None:
        small = min(self.k, self.n - self.k)
        if (1 << small) > cap:
            raise CapExceeded("weight enumeration", 1 << small, cap, "span")
        if self.k <= self.n - self.k:
            enum = _direct_enumerator(self.generator.rows, self.n, cap)
            dual = macwilliams(enum)
        else:
            dual = _direct_enumerator(self._dual_words, self.n, cap)
            enum = macwilliams(dual)
        self._enum, self._dual_enum = enum, dual

    def min_distance(self, cap: int = SPAN_CAP) -> int:
        d = self.weight_enumerator(cap).min_nonzero_weight()
        assert d is not None  # k >= 1 always gives a nonzero codeword
        return d

    def dual_distance(self, cap: int = SPAN_CAP) -> int:
        """Minimum nonzero dual weight; ``n + 1`` when the dual is ``{0}``."""
        d = self.dual_weight_enumerator(cap).min_nonzero_weight()
        return self.n + 1 if d is None else d

    @property
    def d(self) -> int:
        return self.min_distance()

    @property
    def d_dual(self) -> int:
        return self.dual_distance()

    def is_systematic_at(self, obj: int) -> bool:
        return obj in self.systematic_map


def from_generator(m: BinaryMatrix, name: str = "") -> LinearCode:
    return LinearCode(m, name)


def dual(c: LinearCode) -> LinearCode:
    if c.k == c.n:
        raise ValueError("dual is trivial: k = n")
    return LinearCode(BinaryMatrix.from_vectors(c.dual_basis), f"dual({c.name})" if c.name else "")


def weight_enumerator(c: LinearCode, cap: int = SPAN_CAP) -> WeightEnumerator:
    return c.weight_enumerator(cap)


def direct_weight_enumerator(c: LinearCode, cap: int = SPAN_CAP) -> WeightEnumerator:
    """Enumerate all ``2**k`` codewords; the reference route for cross-checks."""
    return _direct_enumerator(c.generator.rows, c.n, cap)


def min_distance(c: LinearCode, cap: int = SPAN_CAP) -> int:
    return c.min_distance(cap)


def dual_distance(c: LinearCode, cap: int = SPAN_CAP) -> int:
    return c.dual_distance(cap)


def min_weight_codewords(
    c: LinearCode, w: int, restrict_to: int | None = None, cap: int = SPAN_CAP
) -> list[tuple[int, ...]]:
    """Supports of all codewords of weight exactly ``w``.

    With ``restrict_to`` only supports containing that 1-based coordinate are
    kept.  The zero word is never returned.  Output is sorted lexicographically.
    """
    if w <= 0:
        return []
    need = 0 if restrict_to is None else 1 << (restrict_to - 1)
    out = [
        support_of(x)
        for x in c.codewords(cap)
        if x and popcount(x) == w and x & need == need
    ]
    return sorted(out)


def same_code(a: LinearCode, b: LinearCode) -> bool:
    """True when both generators span the same row space."""
    if a.n != b.n or a.k != b.k:
        return False
    return gf2.rank(a.generator.stack(b.generator)) == a.k


# -- families ----------------------------------------------------------


def simplex_evaluation(r: int) -> LinearCode:
    """``[2^r - 1, r]`` generator whose column ``j`` is ``j`` in binary, MSB on top."""
    if r < 2:
        raise ValueError("simplex needs r >= 2")
    n = (1 << r) - 1
    rows = []
    for i in range(r):
        shift = r - 1 - i
        rows.append(gf2.mask_of(j - 1 for j in range(1, n + 1) if (j >> shift) & 1))
    return LinearCode(BinaryMatrix(n, tuple(rows)), f"simplex({r})")


class SimplexForms(NamedTuple):
    evaluation: LinearCode
    systematic: LinearCode


def simplex(r: int) -> SimplexForms:
    ev = simplex_evaluation(r)
    sys_code, _ = systematic_form(ev)
    sys_code.name = f"simplex({r})-systematic"
    return SimplexForms(ev, sys_code)


def hamming(r: int) -> LinearCode:
    """Systematic ``[2^r - 1, 2^r - r - 1, 3]`` Hamming generator.

    Built as the reduced row-echelon basis of the null space of the
    evaluation-form Simplex matrix, so its dual is exactly that Simplex
    code.  The identity columns sit at the RREF pivots (``1..2^r - r - 2``
    followed by one later column), recorded in ``systematic_map``.
    """
    if r < 2:
        raise ValueError("hamming needs r >= 2")
    ev = simplex_evaluation(r)
    basis = BinaryMatrix.from_vectors(ev.dual_basis)
    reduced, _ = gf2.rref(basis)
    return LinearCode(reduced, f"hamming({r})")


def repetition(n: int) -> LinearCode:
    if n < 1:
        raise ValueError("repetition needs n >= 1")
    return LinearCode(BinaryMatrix(n, ((1 << n) - 1,)), f"repetition({n})")


def spc(n: int) -> LinearCode:
    """Systematic single parity-check code ``[I_{n-1} | 1]``."""
    if n < 2:
        raise ValueError("spc needs n >= 2")
    last = 1 << (n - 1)
    rows = tuple((1 << i) | last for i in range(n - 1))
    return LinearCode(BinaryMatrix(n, rows), f"spc({n})")


def reed_muller(r: int, m: int) -> LinearCode:
    """RM(r, m) by monomial evaluation.

    Rows are the monomials of degree ``0..r`` in ``x_1..x_m`` (by degree,
    then lexicographically); column ``p + 1`` evaluates at the point whose
    binary expansion ``x_1 ... x_m`` is ``p`` (``x_1`` most significant).
    """
    from itertools import combinations

    if m < 1 or not 0 <= r <= m:
        raise ValueError("reed_muller needs m >= 1 and 0 <= r <= m")
    n = 1 << m
    rows = []
    for deg in range(r + 1):
        for mono in combinations(range(m), deg):
            row = 0
            for p in range(n):
                if all((p >> (m - 1 - v)) & 1 for v in mono):
                    row |= 1 << p
            rows.append(row)
    return LinearCode(BinaryMatrix(n, tuple(rows)), f"RM({r},{m})")


def random_code(n: int, k: int, seed: int) -> LinearCode:
    """Uniformly random full-rank ``k x n`` generator, reproducible per seed.

    Algorithm ``srrlab-random-v1``: seed CPython's ``random.Random`` (MT19937)
    with the integer ``seed``; draw the ``k`` rows in order with
    ``getrandbits(n)`` (bit ``j`` is column ``j + 1``); redraw the whole
    matrix until it has rank ``k``.
    """
    if not 1 <= k <= n:
        raise ValueError("random_code needs 1 <= k <= n")
    rng = random.Random(seed)
    while True:
        rows = tuple(rng.getrandbits(n) for _ in range(k))
        if gf2.rank_of_rows(rows, n) == k:
            return LinearCode(BinaryMatrix(n, rows), f"random({n},{k},{seed})")


def systematic_form(c: LinearCode) -> tuple[LinearCode, tuple[int, ...]]:
    """Equivalent ``[I_k | P]`` generator and the column permutation used.

    ``perm[j - 1]`` is the original 1-based column placed at new position
    ``j``.  The result stores objects on different servers than ``c``; it is
    the caller's choice whether to analyze it.
    """
    reduced, pivots = gf2.rref(c.generator)
    rest = [j for j in range(c.n) if j not in set(pivots)]
    order = pivots + rest
    permuted = reduced.select_columns(order)
    name = f"{c.name}-systematic" if c.name else ""
    return LinearCode(permuted, name), tuple(j + 1 for j in order)


# -- .gm text format ---------------------------------------------------


def parse_gm(text: str) -> BinaryMatrix:
    """Parse the ``.gm`` format: header ``n k`` then ``k`` rows of ``n`` bits."""
    header: tuple[int, int] | None = None
    rows: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if line.startswith("#") or not line.strip():
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError(f"expected header 'n k', got {line!r}", lineno)
            n, k = int(parts[0]), int(parts[1])
            if n < 1 or k < 1:
                raise ParseError("n and k must be positive", lineno)
            header = (n, k)
            continue
        n, k = header
        if len(rows) == k:
            raise ParseError(f"more than k={k} rows", lineno)
        if len(line) != n or set(line) - {"0", "1"}:
            raise ParseError(f"row must be exactly {n} characters from {{0,1}}", lineno)
        rows.append(line)
    if header is None:
        raise ParseError("missing header 'n k'")
    if len(rows) != header[1]:
        raise ParseError(f"expected {header[1]} rows, found {len(rows)}")
    return BinaryMatrix.from_strings(rows)


def format_gm(m: BinaryMatrix, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{m.ncols} {m.nrows}")
    lines.extend(m.to_strings())
    return "\n".join(lines) + "\n"


def read_gm(path: str | Path, name: str = "") -> LinearCode:
    p = Path(path)
    return LinearCode(parse_gm(p.read_text()), name or p.stem)


def write_gm(path: str | Path, m: BinaryMatrix, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_gm(m, comments))
