"""Hypergraph product codes.

Two classical check matrices H1 (n1T x n1) and H2 (n2T x n2) produce a
CSS subspace code on N = n1 n2 + n1T n2T qubits, arranged on a big
lattice L (n1 x n2) followed by a small lattice l (n1T x n2T), both
row-major.  Stabilizer and logical generator matrices are the standard
Kronecker block forms; the equivalent reshaped-matrix conditions (a pair
of supports S, T with S H2^T = H1^T T and so on) are used as an
independent oracle in the tests, not trusted.

Redundant check matrices are honored verbatim: the cyclic repetition
checks give the toric code where the full-rank checks give the planar
surface code.
"""

from __future__ import annotations

from . import classical, f2, pauli
from .classical import INF, LinearCode, TransposeCode
from .f2 import BitMatrix
from .pauli import CssGroup, QubitLayout, SubsystemCode


class HgpCode:
    """The hypergraph product of two check matrices."""

    def __init__(self, h1: BitMatrix, h2: BitMatrix):
        self.H1 = h1
        self.H2 = h2
        self.n1t, self.n1 = h1.shape
        self.n2t, self.n2 = h2.shape

        self.c1: LinearCode = classical.code_from_checks(h1)
        self.c2: LinearCode = classical.code_from_checks(h2)
        self.t1: TransposeCode = classical.transpose_code(self.c1)
        self.t2: TransposeCode = classical.transpose_code(self.c2)
        self.k1, self.k2 = self.c1.k, self.c2.k
        self.k1t, self.k2t = self.t1.kT, self.t2.kT

        i_n1 = BitMatrix.identity(self.n1)
        i_n2 = BitMatrix.identity(self.n2)
        i_n1t = BitMatrix.identity(self.n1t)
        i_n2t = BitMatrix.identity(self.n2t)

        self.S_X = h1.kron(i_n2).hstack(i_n1t.kron(h2.T))
        self.S_Z = i_n1.kron(h2).hstack(h1.T.kron(i_n2t))

        g1, g2 = self.c1.G, self.c2.G
        f1, f2_ = self.t1.F, self.t2.F
        zx1 = BitMatrix.zeros(self.n1 * self.k2, self.n1t * self.n2t)
        zx2 = BitMatrix.zeros(self.k1t * self.n2t, self.n1 * self.n2)
        self.L_X = self.S_X.vstack(i_n1.kron(g2).hstack(zx1)).vstack(
            zx2.hstack(f1.kron(i_n2t))
        )
        zz1 = BitMatrix.zeros(self.k1 * self.n2, self.n1t * self.n2t)
        zz2 = BitMatrix.zeros(self.n1t * self.k2t, self.n1 * self.n2)
        self.L_Z = self.S_Z.vstack(g1.kron(i_n2).hstack(zz1)).vstack(
            zz2.hstack(i_n1t.kron(f2_))
        )

        self.N = self.n1 * self.n2 + self.n1t * self.n2t
        self.K = self.k1 * self.k2 + self.k1t * self.k2t
        k_by_rank = self.N - f2.rank(self.S_X) - f2.rank(self.S_Z)
        if k_by_rank != self.K:
            raise AssertionError(
                f"K mismatch: rank computation gives {k_by_rank}, formula {self.K}"
            )

        p1 = classical.ldpc_profile(h1)
        p2 = classical.ldpc_profile(h2)
        self.beta = max(p1.b + p2.b, p1.c + p2.c)
        self.gamma = max(p1.c + p2.b, p1.b + p2.c)

        self.layout = (
            QubitLayout()
            .add_lattice("L", self.n1, self.n2)
            .add_lattice("l", self.n1t, self.n2t)
        )
        self._d: float | None = None

    @property
    def D(self) -> float:
        if self._d is None:
            self._d = hgp_distance(self)
        return self._d

    def to_subsystem(self) -> SubsystemCode:
        """The same code as a subsystem code whose gauge group is its
        stabilizer group (abelian, J = 0)."""
        return SubsystemCode(self.layout, CssGroup(self.S_X, self.S_Z))

    def split(self, v: int) -> tuple[int, int]:
        """Split a global support vector into its (L, l) parts."""
        big = self.n1 * self.n2
        return v & ((1 << big) - 1), v >> big

    def params(self) -> tuple[int, int, float]:
        return (self.N, self.K, self.D)

    def ldpc(self) -> tuple[int, int]:
        return (self.beta, self.gamma)

    def __repr__(self) -> str:
        d = self._d if self._d is not None else "?"
        return f"HgpCode[[{self.N},{self.K},{d}]]"


def hgp_code(h1: BitMatrix, h2: BitMatrix) -> HgpCode:
    return HgpCode(h1, h2)


def hgp_distance(code: HgpCode, oracle: bool = False) -> float:
    """Code distance.

    Closed form: min of the constituent code distances, including the
    transpose distances when both transpose codes are nontrivial.
    Infinite distances propagate (a code with K = 0 has distance inf).
    With ``oracle=True`` the distance is instead found by enumerating
    minimum-weight nontrivial logical operators directly (N <= 14).
    """
    if oracle:
        return pauli.dressed_distance_bruteforce(code.to_subsystem())
    if code.K == 0:
        return INF
    d1, d2 = code.c1.distance(), code.c2.distance()
    if code.k1t == 0 or code.k2t == 0:
        return min(d1, d2)
    return min(d1, d2, code.t1.dT, code.t2.dT)


def surface_code(n: int) -> HgpCode:
    """The planar surface code as the product of two repetition codes."""
    h = classical.repetition_checks(n)
    return HgpCode(h, h)


def toric_code(n: int) -> HgpCode:
    """The toric code from the redundant cyclic repetition checks."""
    h = classical.cyclic_repetition_checks(n)
    return HgpCode(h, h)


def reshape(v: int, rows: int, cols: int) -> BitMatrix:
    """Reshape a bit-packed vector of length rows*cols into a row-major
    matrix: entry (i, j) is bit i*cols + j."""
    if v < 0 or v >> (rows * cols):
        raise ValueError(f"vector does not fit {rows}x{cols}")
    mask = (1 << cols) - 1
    return BitMatrix(rows, cols, [(v >> (i * cols)) & mask for i in range(rows)])


def flatten(m: BitMatrix) -> int:
    """Inverse of ``reshape``."""
    v = 0
    for i in range(m.rows):
        v |= m.row_int(i) << (i * m.cols)
    return v
