"""Bravyi-Bacon-Shor subsystem codes and their 2D-local augmented form.

A BBS code is defined entirely by a binary matrix A: qubits sit at the
1-entries of A, X-type gauge operators pair qubits sharing a column,
Z-type gauge operators pair qubits sharing a row.  The augmented (aBBS)
form adds a second lattice of qubits at the 0-entries so that a
generating set of one- and two-qubit operators between *neighboring*
sites suffices, making the code geometrically local in the plane.

Code parameters come from the column-space and row-space codes of A:
N = |A| (or 2 n1 n2 - |A| augmented), K = rank(A), and D is the minimum
nonzero weight in row(A) or col(A).
"""

from __future__ import annotations

import warnings

from . import classical, f2
from .classical import LinearCode
from .f2 import BitMatrix
from .pauli import CssGroup, QubitLayout, SubsystemCode


def strip_zero_lines(a: BitMatrix) -> BitMatrix:
    """Drop all-zero rows and columns; they carry no qubits and do not
    change the code.  Warns when anything is removed."""
    keep_rows = [i for i in range(a.rows) if a.row_int(i) != 0]
    col_w = a.col_weights()
    keep_cols = [j for j in range(a.cols) if col_w[j] != 0]
    if len(keep_rows) == a.rows and len(keep_cols) == a.cols:
        return a
    warnings.warn("stripping all-zero rows/columns from A", stacklevel=3)
    data = []
    for i in keep_rows:
        r = a.row_int(i)
        data.append(sum(((r >> j) & 1) << pos for pos, j in enumerate(keep_cols)))
    return BitMatrix(len(keep_rows), len(keep_cols), data)


class BbsCode:
    """BBS(A): a subsystem code on the 1-entries of A."""

    def __init__(self, a: BitMatrix):
        if a.rows == 0 or a.cols == 0 or a.popcount() == 0:
            raise ValueError("A must contain at least one 1")
        a = strip_zero_lines(a)
        self.A = a
        self.n1, self.n2 = a.shape

        layout = QubitLayout().add_lattice("L", self.n1, self.n2, mask=a)
        self.layout = layout

        # occupied sites per column / row, in index order
        self.column_sites = [
            [layout.index("L", i, j) for i in range(self.n1) if a.get(i, j)]
            for j in range(self.n2)
        ]
        self.row_sites = [
            [layout.index("L", i, j) for j in range(self.n2) if a.get(i, j)]
            for i in range(self.n1)
        ]

        # gauge generators: consecutive-qubit pairs within columns (X) and
        # rows (Z); these generate the same group as all within-line pairs
        self.x_pair_columns = [
            [(sites[t], sites[t + 1]) for t in range(len(sites) - 1)]
            for sites in self.column_sites
        ]
        self.z_pair_rows = [
            [(sites[t], sites[t + 1]) for t in range(len(sites) - 1)]
            for sites in self.row_sites
        ]
        gx = [
            (1 << p) | (1 << q) for col in self.x_pair_columns for (p, q) in col
        ]
        gz = [(1 << p) | (1 << q) for row in self.z_pair_rows for (p, q) in row]
        n = layout.n_qubits
        self.code = SubsystemCode(
            layout, CssGroup(BitMatrix(len(gx), n, gx), BitMatrix(len(gz), n, gz))
        )

        self.c1 = classical.code_from_generator(a.T)  # col(A)
        self.c2 = classical.code_from_generator(a)    # row(A)
        self.N = a.popcount()
        self.K = self.c1.k
        self._d: float | None = None

    @property
    def H1(self) -> BitMatrix:
        """Checks of the column-space code; rows span ker(A^T)."""
        return self.c1.H

    @property
    def H2(self) -> BitMatrix:
        """Checks of the row-space code; rows span ker(A)."""
        return self.c2.H

    @property
    def D_X(self) -> float:
        return self.c2.distance()

    @property
    def D_Z(self) -> float:
        return self.c1.distance()

    @property
    def D(self) -> float:
        if self._d is None:
            self._d = min(self.D_X, self.D_Z)
        return self._d

    def x_stabilizer_supports(self) -> BitMatrix:
        """Closed-form X stabilizer generators: diag(r) A for check rows r."""
        vecs = [
            self.layout.support_to_vec("L", BitMatrix.diag(self.H1.row_int(t), self.n1) @ self.A)
            for t in range(self.H1.rows)
        ]
        return BitMatrix(len(vecs), self.code.n, vecs)

    def z_stabilizer_supports(self) -> BitMatrix:
        """Closed-form Z stabilizer generators: A diag(c) for check rows c."""
        vecs = [
            self.layout.support_to_vec("L", self.A @ BitMatrix.diag(self.H2.row_int(t), self.n2))
            for t in range(self.H2.rows)
        ]
        return BitMatrix(len(vecs), self.code.n, vecs)

    def params(self) -> tuple[int, int, float]:
        return (self.N, self.K, self.D)

    def __repr__(self) -> str:
        return f"BbsCode[[{self.N},{self.K},{self.D}]]"


class AbbsCode:
    """aBBS(A): the augmented code on two overlaid lattices.

    Lattice L1 holds type-0 (shared) and type-1 qubits; L2 holds type-0
    and type-2.  The 2D-local generating set consists of X pairs between
    vertically adjacent L1 sites, Z pairs between horizontally adjacent
    L2 sites, and single-qubit X (Z) on type-2 (type-1) sites.
    """

    def __init__(self, a: BitMatrix):
        if a.rows == 0 or a.cols == 0 or a.popcount() == 0:
            raise ValueError("A must contain at least one 1")
        a = strip_zero_lines(a)
        self.A = a
        self.n1, self.n2 = a.shape

        layout = abbs_layout(a)
        self.layout = layout

        self.x_pair_grid = [
            [
                (layout.index("L1", i, j), layout.index("L1", i + 1, j))
                for j in range(self.n2)
            ]
            for i in range(self.n1 - 1)
        ]
        self.z_pair_grid = [
            [
                (layout.index("L2", i, j), layout.index("L2", i, j + 1))
                for j in range(self.n2 - 1)
            ]
            for i in range(self.n1)
        ]
        self.x_singles = {
            (i, j): layout.index("L2", i, j)
            for i in range(self.n1)
            for j in range(self.n2)
            if a.get(i, j) == 0
        }
        self.z_singles = {
            (i, j): layout.index("L1", i, j)
            for i in range(self.n1)
            for j in range(self.n2)
            if a.get(i, j) == 0
        }

        gx = [(1 << p) | (1 << q) for row in self.x_pair_grid for (p, q) in row]
        gx += [1 << idx for idx in self.x_singles.values()]
        gz = [(1 << p) | (1 << q) for row in self.z_pair_grid for (p, q) in row]
        gz += [1 << idx for idx in self.z_singles.values()]
        self.n_g2d = len(gx) + len(gz)
        expected = 4 * self.n1 * self.n2 - (self.n1 + self.n2) - 2 * a.popcount()
        if self.n_g2d != expected:
            raise AssertionError("2D-local generator count mismatch")

        n = layout.n_qubits
        self.code = SubsystemCode(
            layout, CssGroup(BitMatrix(len(gx), n, gx), BitMatrix(len(gz), n, gz))
        )

        self.c1 = classical.code_from_generator(a.T)
        self.c2 = classical.code_from_generator(a)
        self.N = layout.n_qubits  # 2 n1 n2 - |A|
        self.K = self.c1.k
        self._d: float | None = None

    @property
    def H1(self) -> BitMatrix:
        return self.c1.H

    @property
    def H2(self) -> BitMatrix:
        return self.c2.H

    @property
    def D(self) -> float:
        if self._d is None:
            self._d = min(self.c1.distance(), self.c2.distance())
        return self._d

    def x_stabilizer_supports(self) -> BitMatrix:
        """Closed-form X stabilizers: full selected rows of lattice L2."""
        ones = BitMatrix.ones(self.n1, self.n2)
        vecs = [
            self.layout.support_to_vec(
                "L2", BitMatrix.diag(self.H1.row_int(t), self.n1) @ ones
            )
            for t in range(self.H1.rows)
        ]
        return BitMatrix(len(vecs), self.code.n, vecs)

    def z_stabilizer_supports(self) -> BitMatrix:
        """Closed-form Z stabilizers: full selected columns of lattice L1."""
        ones = BitMatrix.ones(self.n1, self.n2)
        vecs = [
            self.layout.support_to_vec(
                "L1", ones @ BitMatrix.diag(self.H2.row_int(t), self.n2)
            )
            for t in range(self.H2.rows)
        ]
        return BitMatrix(len(vecs), self.code.n, vecs)

    def params(self) -> tuple[int, int, float]:
        return (self.N, self.K, self.D)

    def __repr__(self) -> str:
        return f"AbbsCode[[{self.N},{self.K},{self.D}]]"


def abbs_layout(a: BitMatrix) -> QubitLayout:
    """Two full lattices identified wherever A is 1."""
    n1, n2 = a.shape
    layout = QubitLayout().add_lattice("L1", n1, n2)
    identify = {
        (i, j): ("L1", i, j) for i in range(n1) for j in range(n2) if a.get(i, j)
    }
    layout.add_lattice("L2", n1, n2, identify=identify)
    return layout


def bbs_from_matrix(a: BitMatrix) -> BbsCode:
    return BbsCode(a)


def abbs_from_matrix(a: BitMatrix) -> AbbsCode:
    return AbbsCode(a)


def bbs_from_codes(c1: LinearCode, c2: LinearCode, q: BitMatrix) -> BbsCode:
    """Build BBS(A) with A = G1^T Q G2 from two classical codes encoding
    the same number of bits; Q is any invertible k x k change of basis."""
    k = c1.k
    if c2.k != k:
        raise ValueError(f"codes encode different bit counts: {c1.k} vs {c2.k}")
    if q.shape != (k, k):
        raise ValueError(f"Q must be {k}x{k}, got {q.shape}")
    if f2.rank(q) != k:
        raise ValueError("Q is singular")
    a = c1.G.T @ q @ c2.G
    return BbsCode(a)


def _weight_of_construction(g1_cols: list[int], g2_rows: list[int], q_rows: list[int]) -> int:
    """popcount(G1^T Q G2) on raw bit-packed rows, for the Q search."""
    b = []
    for qr in q_rows:
        acc = 0
        while qr:
            low = qr & -qr
            acc ^= g2_rows[low.bit_length() - 1]
            qr ^= low
        b.append(acc)
    total = 0
    for col in g1_cols:
        acc = 0
        while col:
            low = col & -col
            acc ^= b[low.bit_length() - 1]
            col ^= low
        total += acc.bit_count()
    return total


def _all_invertible(k: int):
    """Yield the row lists of every invertible k x k matrix over GF(2)."""
    rows: list[int] = []
    span = {0}

    def extend():
        if len(rows) == k:
            yield list(rows)
            return
        for cand in range(1, 1 << k):
            if cand in span:
                continue
            added = [cand ^ s for s in span]
            span.update(added)
            rows.append(cand)
            yield from extend()
            rows.pop()
            span.difference_update(added)

    yield from extend()


def minimize_weight_q(c1: LinearCode, c2: LinearCode, budget: int = 20000,
                      seed: int = 0) -> tuple[BitMatrix, BbsCode]:
    """Search for the invertible Q minimizing the qubit count |G1^T Q G2|.

    For k <= 4 the search is exhaustive over all of GL(k, 2) and the
    returned Q is certified optimal.  For larger k, seeded random
    restarts with single-entry hill climbing run until ``budget`` weight
    evaluations are spent.
    """
    k = c1.k
    if c2.k != k:
        raise ValueError("codes encode different bit counts")
    g1_cols = c1.G.T.row_ints()
    g2_rows = c2.G.row_ints()

    best_q: list[int] | None = None
    best_w = None
    if k <= 4:
        for q_rows in _all_invertible(k):
            w = _weight_of_construction(g1_cols, g2_rows, q_rows)
            if best_w is None or w < best_w:
                best_w, best_q = w, list(q_rows)
    else:
        import numpy as np

        rng = np.random.default_rng(seed)
        evals = 0
        while evals < budget:
            q = f2.random_invertible(k, rng).row_ints()
            w = _weight_of_construction(g1_cols, g2_rows, q)
            evals += 1
            improved = True
            while improved and evals < budget:
                improved = False
                for i in range(k):
                    for j in range(k):
                        q[i] ^= 1 << j
                        if f2.rank(BitMatrix(k, k, q)) == k:
                            w2 = _weight_of_construction(g1_cols, g2_rows, q)
                            evals += 1
                            if w2 < w:
                                w = w2
                                improved = True
                            else:
                                q[i] ^= 1 << j
                        else:
                            q[i] ^= 1 << j
            if best_w is None or w < best_w:
                best_w, best_q = w, list(q)
    q_mat = BitMatrix(k, k, best_q)
    return q_mat, bbs_from_codes(c1, c2, q_mat)
