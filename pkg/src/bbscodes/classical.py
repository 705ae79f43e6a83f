"""Classical linear codes over GF(2).

A code is held as a parity check matrix H together with a derived
generator matrix G (a kernel basis of H).  The check matrix is preserved
verbatim, including redundant rows: constructions downstream (notably
hypergraph products) depend on the literal H, not just its row space.
Distances are computed lazily by brute force and cached; an infinite
distance (trivial code) is represented by ``math.inf``.
"""

from __future__ import annotations

import math

from . import f2
from .f2 import BitMatrix

INF = math.inf

#: Exhaustive distance search enumerates 2^k codewords; refuse beyond this.
MAX_BRUTEFORCE_K = 24


class CapacityError(Exception):
    """An exhaustive computation would exceed its enumeration guard."""


class LinearCode:
    """A classical [n, k, d] linear code defined by parity checks."""

    def __init__(self, h: BitMatrix, g: BitMatrix):
        self.H = h
        self.G = g
        self.n = h.cols
        self.k = g.rows
        self._d: float | None = None

    @property
    def d(self) -> float | None:
        """Cached distance, or None if not yet computed."""
        return self._d

    def distance(self) -> float:
        """Exact minimum distance; computes and caches on first call."""
        if self._d is None:
            self._d = min_distance_bruteforce(self)
        return self._d

    def contains(self, word: int) -> bool:
        """Whether the bit-packed word is a codeword (H w = 0)."""
        return self.H.mul_vec(word) == 0

    def params(self) -> tuple[int, int, float | None]:
        return (self.n, self.k, self._d)

    def __repr__(self) -> str:
        d = self._d if self._d is not None else "?"
        return f"LinearCode[{self.n},{self.k},{d}]"


class TransposeCode:
    """The code ker(H^T): codewords are redundancies among the checks of H."""

    def __init__(self, code: LinearCode):
        self.code = code
        self.nT = code.n
        self.kT = code.k
        self.F = code.G

    @property
    def dT(self) -> float:
        return INF if self.kT == 0 else self.code.distance()

    def __repr__(self) -> str:
        return f"TransposeCode[{self.nT},{self.kT}]"


class LdpcProfile:
    """Maximum column weight b and row weight c of a check matrix."""

    def __init__(self, b: int, c: int):
        self.b = b
        self.c = c

    def astuple(self) -> tuple[int, int]:
        return (self.b, self.c)

    def __eq__(self, other):
        if isinstance(other, tuple):
            return self.astuple() == other
        if isinstance(other, LdpcProfile):
            return self.astuple() == other.astuple()
        return NotImplemented

    def __repr__(self) -> str:
        return f"LdpcProfile(b={self.b}, c={self.c})"


def code_from_checks(h: BitMatrix) -> LinearCode:
    """The code ker(H).  H may be rank-deficient; it is kept as given."""
    return LinearCode(h, f2.kernel_basis(h))


def code_from_generator(g: BitMatrix) -> LinearCode:
    """The code row(G) for a spanning set G (rows need not be independent)."""
    basis = f2.row_basis(g)
    return LinearCode(f2.kernel_basis(basis), basis)


def min_distance_bruteforce(code: LinearCode) -> float:
    """Exact minimum nonzero codeword weight by 2^k enumeration.

    Uses a Gray-code walk over messages so each step is one row XOR.
    Returns inf when k = 0.
    """
    k = code.k
    if k == 0:
        return INF
    if k > MAX_BRUTEFORCE_K:
        raise CapacityError(f"k={k} exceeds brute-force guard {MAX_BRUTEFORCE_K}")
    rows = code.G.row_ints()
    best = code.n + 1
    word = 0
    for x in range(1, 1 << k):
        word ^= rows[(x & -x).bit_length() - 1]
        w = word.bit_count()
        if 0 < w < best:
            best = w
            if best == 1:
                break
    return best


def transpose_code(code: LinearCode) -> TransposeCode:
    """Construct the transpose code from H^T.  Satisfies n - k = nT - kT."""
    return TransposeCode(code_from_checks(code.H.T))


def repetition_code(n: int) -> LinearCode:
    """The [n, 1, n] repetition code with the bidiagonal check matrix."""
    if n < 2:
        raise ValueError("repetition code needs n >= 2")
    return code_from_checks(repetition_checks(n))


def repetition_checks(n: int) -> BitMatrix:
    """The (n-1) x n bidiagonal parity check matrix of the repetition code."""
    return BitMatrix(n - 1, n, [0b11 << i for i in range(n - 1)])


def cyclic_repetition_checks(n: int) -> BitMatrix:
    """The n x n cyclic (redundant) check matrix of the repetition code.

    Sum of all rows is zero; the transpose code is again [n, 1, n].
    Produces the toric code under the hypergraph product.
    """
    rows = [0b11 << i for i in range(n - 1)]
    rows.append(1 | (1 << (n - 1)))
    return BitMatrix(n, n, rows)


HAMMING_G = BitMatrix.from_rows(
    [
        "1000110",
        "0100101",
        "0010011",
        "0001111",
    ]
)

HAMMING_H = BitMatrix.from_rows(
    [
        "1101100",
        "1011010",
        "0111001",
    ]
)


def hamming_code() -> LinearCode:
    """The [7, 4, 3] Hamming code with a fixed check/generator pair."""
    code = LinearCode(HAMMING_H, HAMMING_G)
    if (HAMMING_H @ HAMMING_G.T).popcount() != 0:
        raise AssertionError("Hamming H G^T != 0")
    return code


def ldpc_profile(h: BitMatrix) -> LdpcProfile:
    """Exact maximum column and row weights of a check matrix."""
    b = max(h.col_weights(), default=0)
    c = max(h.row_weights(), default=0)
    return LdpcProfile(b, c)


# ------------------------------------------------------------------- alist IO


def to_alist(h: BitMatrix) -> str:
    """Serialize a check matrix in the standard alist interchange format.

    Header is "n m" (columns then rows); neighbor lists are 1-indexed.
    """
    n, m = h.cols, h.rows
    col_lists = [[] for _ in range(n)]
    row_lists = [[] for _ in range(m)]
    for i in range(m):
        r = h.row_int(i)
        while r:
            low = r & -r
            j = low.bit_length() - 1
            col_lists[j].append(i + 1)
            row_lists[i].append(j + 1)
            r ^= low
    bmax = max((len(c) for c in col_lists), default=0)
    cmax = max((len(r) for r in row_lists), default=0)
    lines = [f"{n} {m}", f"{bmax} {cmax}"]
    lines.append(" ".join(str(len(c)) for c in col_lists))
    lines.append(" ".join(str(len(r)) for r in row_lists))
    for c in col_lists:
        lines.append(" ".join(str(v) for v in c))
    for r in row_lists:
        lines.append(" ".join(str(v) for v in r))
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> BitMatrix:
    """Parse an alist file into a check matrix.  Padding zeros tolerated."""
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if len(lines) < 4:
        raise ValueError("alist: expected at least 4 lines")
    try:
        n, m = (int(v) for v in lines[0].split())
    except ValueError:
        raise ValueError("alist line 1: expected 'n m'") from None
    col_degrees = [int(v) for v in lines[2].split()]
    row_degrees = [int(v) for v in lines[3].split()]
    if len(col_degrees) != n or len(row_degrees) != m:
        raise ValueError("alist: degree list lengths do not match header")
    if len(lines) < 4 + n + m:
        raise ValueError("alist: missing neighbor lists")
    data = [0] * m
    for j in range(n):
        neighbors = [int(v) for v in lines[4 + j].split() if int(v) != 0]
        if len(neighbors) != col_degrees[j]:
            raise ValueError(f"alist: column {j + 1} degree mismatch")
        for i in neighbors:
            if not 1 <= i <= m:
                raise ValueError(f"alist: column {j + 1} neighbor {i} out of range")
            data[i - 1] |= 1 << j
    # cross-check against the row lists
    for i in range(m):
        neighbors = {int(v) for v in lines[4 + n + i].split() if int(v) != 0}
        expect = set()
        r = data[i]
        while r:
            low = r & -r
            expect.add(low.bit_length())
            r ^= low
        if neighbors != expect:
            raise ValueError(f"alist: row {i + 1} neighbor list inconsistent")
    return BitMatrix(m, n, data)
