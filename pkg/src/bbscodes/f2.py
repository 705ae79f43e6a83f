"""Dense GF(2) linear algebra on bit-packed matrices.

Every matrix in this package (parity checks, generator matrices, Pauli
support matrices, stabilizer matrices) is a ``BitMatrix``.  Rows are
stored as Python integers, one bit per entry with column ``j`` at bit
position ``j``, so a row XOR is a single integer XOR regardless of width.
Matrices are immutable after construction; all operations return new
values.  The 0xN and Nx0 matrices are valid and behave sensibly (rank 0,
full kernel, etc.).
"""

from __future__ import annotations

import numpy as np


class BitMatrix:
    """An immutable dense matrix over GF(2) with bit-packed rows.

    Attributes:
        rows: Number of rows (>= 0).
        cols: Number of columns (>= 0).
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: list[int]):
        """Build from raw row integers.  Prefer the named constructors.

        Bits at positions >= cols must be zero; this is checked.
        """
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(data) != rows:
            raise ValueError(f"expected {rows} row words, got {len(data)}")
        mask = (1 << cols) - 1
        for i, r in enumerate(data):
            if r < 0 or r & ~mask:
                raise ValueError(f"row {i} has bits outside {cols} columns")
        self.rows = rows
        self.cols = cols
        self._data = list(data)

    # ---------------------------------------------------------------- build

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, [0] * rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def ones(cls, rows: int, cols: int) -> BitMatrix:
        full = (1 << cols) - 1
        return cls(rows, cols, [full] * rows)

    @classmethod
    def from_rows(cls, entries, cols: int | None = None) -> BitMatrix:
        """Build from an iterable of rows, each a list/tuple of 0/1 ints
        or a string of '0'/'1' characters."""
        data = []
        width = cols
        for row in entries:
            bits = [int(ch) for ch in row]
            if any(b not in (0, 1) for b in bits):
                raise ValueError("entries must be 0 or 1")
            if width is None:
                width = len(bits)
            elif len(bits) != width:
                raise ValueError("ragged rows")
            data.append(sum(b << j for j, b in enumerate(bits)))
        if width is None:
            raise ValueError("cannot infer column count from zero rows")
        return cls(len(data), width, data)

    @classmethod
    def diag(cls, vec: int, n: int) -> BitMatrix:
        """Square diagonal matrix with the bits of ``vec`` on the diagonal."""
        return cls(n, n, [((vec >> i) & 1) << i for i in range(n)])

    @classmethod
    def random(cls, rows: int, cols: int, rng: np.random.Generator) -> BitMatrix:
        return cls(rows, cols, [_random_bits(rng, cols) for _ in range(rows)])

    # ---------------------------------------------------------------- access

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i},{j}) out of range for {self.rows}x{self.cols}")
        return (self._data[i] >> j) & 1

    def row_int(self, i: int) -> int:
        """The i-th row as a bit-packed integer (bit j = column j)."""
        return self._data[i]

    def row_ints(self) -> list[int]:
        return list(self._data)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def popcount(self) -> int:
        """Total number of 1 entries."""
        return sum(r.bit_count() for r in self._data)

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self._data]

    def col_weights(self) -> list[int]:
        w = [0] * self.cols
        for r in self._data:
            while r:
                low = r & -r
                w[low.bit_length() - 1] += 1
                r ^= low
        return w

    def is_zero(self) -> bool:
        return all(r == 0 for r in self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    __hash__ = None  # mutable payload; not hashable

    def __repr__(self) -> str:
        if self.rows <= 8 and self.cols <= 24:
            body = ",".join(
                "".join(str((r >> j) & 1) for j in range(self.cols))
                for r in self._data
            )
            return f"BitMatrix({self.rows}x{self.cols}:[{body}])"
        return f"BitMatrix({self.rows}x{self.cols})"

    # --------------------------------------------------------------- algebra

    @property
    def T(self) -> BitMatrix:
        """Transpose."""
        out = [0] * self.cols
        for i, r in enumerate(self._data):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.cols, self.rows, out)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        """Matrix product over GF(2)."""
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch for product: {self.shape} @ {other.shape}"
            )
        brows = other._data
        out = []
        for a in self._data:
            acc = 0
            while a:
                low = a & -a
                acc ^= brows[low.bit_length() - 1]
                a ^= low
            out.append(acc)
        return BitMatrix(self.rows, other.cols, out)

    def __add__(self, other: BitMatrix) -> BitMatrix:
        """Entrywise sum over GF(2) (XOR)."""
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch for sum: {self.shape} + {other.shape}")
        return BitMatrix(
            self.rows, self.cols, [a ^ b for a, b in zip(self._data, other._data)]
        )

    def __and__(self, other: BitMatrix) -> BitMatrix:
        """Entrywise (pointwise) product."""
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch for and: {self.shape} & {other.shape}")
        return BitMatrix(
            self.rows, self.cols, [a & b for a, b in zip(self._data, other._data)]
        )

    def mul_vec(self, v: int) -> int:
        """M @ v for a bit-packed column vector; returns a length-``rows`` vector."""
        acc = 0
        for i, r in enumerate(self._data):
            acc |= ((r & v).bit_count() & 1) << i
        return acc

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        data = [a | (b << self.cols) for a, b in zip(self._data, other._data)]
        return BitMatrix(self.rows, self.cols + other.cols, data)

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return BitMatrix(self.rows + other.rows, self.cols, self._data + other._data)

    def kron(self, other: BitMatrix) -> BitMatrix:
        """Kronecker product; block (i1,j1) is ``self[i1,j1] * other``."""
        oc = other.cols
        out = []
        for a in self._data:
            for b in other._data:
                acc = 0
                aa = a
                while aa:
                    low = aa & -aa
                    acc |= b << ((low.bit_length() - 1) * oc)
                    aa ^= low
                out.append(acc)
        return BitMatrix(self.rows * other.rows, self.cols * other.cols, out)

    def submatrix_rows(self, indices) -> BitMatrix:
        return BitMatrix(len(list(indices)), self.cols, [self._data[i] for i in indices])


# ------------------------------------------------------------------ reduction


def _reduce_rows(data: list[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of raw row words.

    Returns (reduced rows including zero rows at the bottom, pivot columns).
    Pivoting is by first set bit in column order; over GF(2) there are no
    ties to break.
    """
    work = list(data)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> c) & 1:
                work[i] ^= work[r]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work, pivots


def rank(m: BitMatrix) -> int:
    """GF(2) row rank.  Equals the column rank."""
    _, pivots = _reduce_rows(m._data, m.cols)
    return len(pivots)


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form and its pivot columns."""
    work, pivots = _reduce_rows(m._data, m.cols)
    return BitMatrix(m.rows, m.cols, work), pivots


def row_basis(m: BitMatrix) -> BitMatrix:
    """A canonical (RREF) basis for the row space."""
    work, pivots = _reduce_rows(m._data, m.cols)
    return BitMatrix(len(pivots), m.cols, work[: len(pivots)])


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis for the right kernel {v : M v^T = 0}, one vector per row.

    The result has cols(M) columns and cols(M) - rank(M) rows.
    """
    work, pivots = _reduce_rows(m._data, m.cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    out = []
    for f in free_cols:
        v = 1 << f
        for r, p in enumerate(pivots):
            if (work[r] >> f) & 1:
                v |= 1 << p
        out.append(v)
    return BitMatrix(len(out), m.cols, out)


def _reduce_vector(v: int, reduced: list[int], pivots: list[int]) -> int:
    for r, p in enumerate(pivots):
        if (v >> p) & 1:
            v ^= reduced[r]
    return v


def rowspace_contains(m: BitMatrix, v: int, length: int | None = None) -> bool:
    """Whether the bit-packed vector ``v`` lies in the row space of ``m``."""
    if length is not None and length != m.cols:
        raise ValueError(f"vector length {length} does not match {m.cols} columns")
    if v < 0 or v >> m.cols:
        raise ValueError("vector has bits outside the column range")
    work, pivots = _reduce_rows(m._data, m.cols)
    return _reduce_vector(v, work, pivots) == 0


def rowspaces_equal(a: BitMatrix, b: BitMatrix) -> bool:
    """Whether two matrices span the same row space."""
    if a.cols != b.cols:
        return False
    ra = rank(a)
    rb = rank(b)
    if ra != rb:
        return False
    return rank(a.vstack(b)) == ra


def rowspace_intersection(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Basis for row(a) ∩ row(b).

    A combination (alpha | beta) with alpha^T A = beta^T B is a kernel
    element of the stacked transpose; its A-part evaluates to an
    intersection vector.
    """
    if a.cols != b.cols:
        raise ValueError("column mismatch")
    ba = row_basis(a)
    bb = row_basis(b)
    if ba.rows == 0 or bb.rows == 0:
        return BitMatrix.zeros(0, a.cols)
    stacked = ba.vstack(bb)
    combos = kernel_basis(stacked.T)
    vecs = []
    for t in range(combos.rows):
        alpha = combos.row_int(t) & ((1 << ba.rows) - 1)
        acc = 0
        while alpha:
            low = alpha & -alpha
            acc ^= ba.row_int(low.bit_length() - 1)
            alpha ^= low
        vecs.append(acc)
    return row_basis(BitMatrix(len(vecs), a.cols, vecs))


def quotient_basis(v: BitMatrix, w: BitMatrix) -> BitMatrix:
    """Rows of a basis of row(v) that are independent modulo row(w).

    Requires nothing of the inputs; the returned rows extend a basis of
    row(w) inside row(v) + row(w).  Used for logical-operator coset
    representatives.
    """
    if v.cols != w.cols:
        raise ValueError("column mismatch")
    reduced, pivots = _reduce_rows(w._data, w.cols)
    reduced = [reduced[i] for i in range(len(pivots))]
    pivots = list(pivots)
    out = []
    for row in v._data:
        rem = _reduce_vector(row, reduced, pivots)
        if rem:
            # insert into the reduced set to keep later rows independent
            p = (rem & -rem).bit_length() - 1
            k = 0
            while k < len(pivots) and pivots[k] < p:
                k += 1
            reduced.insert(k, rem)
            pivots.insert(k, p)
            out.append(row)
    return BitMatrix(len(out), v.cols, out)


# ------------------------------------------------------------------- random


def _random_bits(rng: np.random.Generator, nbits: int) -> int:
    v = 0
    filled = 0
    while filled < nbits:
        chunk = min(32, nbits - filled)
        v |= int(rng.integers(0, 1 << chunk)) << filled
        filled += chunk
    return v


def random_invertible(k: int, seed) -> BitMatrix:
    """A uniformly random invertible k x k matrix, deterministic per seed.

    Rejection sampling: draw uniform matrices until full rank.  The
    success probability exceeds 1/4 for every k, so this terminates
    quickly.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    while True:
        m = BitMatrix.random(k, k, rng)
        if rank(m) == k:
            return m


# --------------------------------------------------------------- vector utils


def vec_from_bits(bits) -> int:
    return sum((1 if b else 0) << i for i, b in enumerate(bits))


def vec_to_bits(v: int, length: int) -> list[int]:
    return [(v >> i) & 1 for i in range(length)]


def vec_weight(v: int) -> int:
    return v.bit_count()


def vec_dot_parity(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


# ----------------------------------------------------------------- text format


def to_text(m: BitMatrix) -> str:
    """Dense text format: first line "R C", then R lines of C characters."""
    lines = [f"{m.rows} {m.cols}"]
    for r in m._data:
        lines.append("".join(str((r >> j) & 1) for j in range(m.cols)))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> BitMatrix:
    """Parse the dense text format.  Rejects ragged rows and bad characters,
    naming the offending line."""
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("line 1: expected 'R C' header")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise ValueError("line 1: header entries must be integers") from None
    if rows < 0 or cols < 0:
        raise ValueError("line 1: dimensions must be nonnegative")
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} matrix rows, found {len(lines) - 1}")
    data = []
    for i, ln in enumerate(lines[1:], start=2):
        entry = ln.strip()
        if len(entry) != cols:
            raise ValueError(f"line {i}: expected {cols} characters, got {len(entry)}")
        bad = next((j for j, ch in enumerate(entry) if ch not in "01"), None)
        if bad is not None:
            raise ValueError(f"line {i}, column {bad + 1}: invalid character {entry[bad]!r}")
        data.append(sum(1 << j for j, ch in enumerate(entry) if ch == "1"))
    return BitMatrix(rows, cols, data)
