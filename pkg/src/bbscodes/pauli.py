"""CSS Pauli groups on qubit layouts.

A layout places qubits on one or more named rectangular lattices; sites
can be absent (no qubit) or identified across lattices (one physical
qubit appearing in two lattices).  Every qubit gets a global index, and
all group algebra happens on bit-packed support vectors over those
indices.  Lattice-shaped support matrices are views, never authoritative,
because identified sites make per-lattice supports non-unique.

Phases are dropped throughout: an X-type Pauli is just its support
vector, and two CSS Paulis of opposite type commute iff their supports
overlap evenly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import f2
from .classical import INF, CapacityError
from .f2 import BitMatrix


class QubitLayout:
    """Named lattices with per-site occupancy, identification, and global
    qubit indices.

    Lattices are registered in order; indices are assigned row-major per
    lattice, skipping absent sites and reusing the index of an identified
    earlier site.
    """

    def __init__(self):
        self._shapes: dict[str, tuple[int, int]] = {}
        self._index: dict[tuple[str, int, int], int] = {}
        self.n_qubits = 0

    def add_lattice(self, name: str, rows: int, cols: int,
                    mask: BitMatrix | None = None,
                    identify: dict[tuple[int, int], tuple[str, int, int]] | None = None):
        """Register a lattice.

        Args:
            mask: sites with entry 1 carry a qubit; None means all sites.
            identify: map from (i, j) here to (lattice, i, j) of an
                already-registered site sharing the same physical qubit.
        """
        if name in self._shapes:
            raise ValueError(f"duplicate lattice {name!r}")
        if mask is not None and mask.shape != (rows, cols):
            raise ValueError("mask shape mismatch")
        identify = identify or {}
        self._shapes[name] = (rows, cols)
        for i in range(rows):
            for j in range(cols):
                if mask is not None and mask.get(i, j) == 0:
                    continue
                if (i, j) in identify:
                    target = identify[(i, j)]
                    if target not in self._index:
                        raise ValueError(f"identification target {target} does not exist")
                    self._index[(name, i, j)] = self._index[target]
                else:
                    self._index[(name, i, j)] = self.n_qubits
                    self.n_qubits += 1
        return self

    def lattice_names(self) -> list[str]:
        return list(self._shapes)

    def shape(self, name: str) -> tuple[int, int]:
        return self._shapes[name]

    def index(self, name: str, i: int, j: int) -> int | None:
        """Global index of site (i, j) on the named lattice, or None if absent."""
        return self._index.get((name, i, j))

    def has_site(self, name: str, i: int, j: int) -> bool:
        return (name, i, j) in self._index

    def support_to_vec(self, name: str, s: BitMatrix) -> int:
        """Flatten a lattice-shaped support matrix to a global bit vector.

        Raises if the support touches an absent site.
        """
        rows, cols = self._shapes[name]
        if s.shape != (rows, cols):
            raise ValueError(f"support shape {s.shape} != lattice {name} {rows}x{cols}")
        v = 0
        for i in range(rows):
            r = s.row_int(i)
            while r:
                low = r & -r
                j = low.bit_length() - 1
                idx = self._index.get((name, i, j))
                if idx is None:
                    raise ValueError(f"support hits absent site {name}({i},{j})")
                v |= 1 << idx
                r ^= low
        return v

    def vec_to_support(self, name: str, v: int) -> BitMatrix:
        """View the part of a global vector that lies on the named lattice."""
        rows, cols = self._shapes[name]
        data = []
        for i in range(rows):
            word = 0
            for j in range(cols):
                idx = self._index.get((name, i, j))
                if idx is not None and (v >> idx) & 1:
                    word |= 1 << j
            data.append(word)
        return BitMatrix(rows, cols, data)

    def single(self, name: str, i: int, j: int) -> int:
        idx = self._index.get((name, i, j))
        if idx is None:
            raise ValueError(f"no qubit at {name}({i},{j})")
        return 1 << idx

    def same_structure(self, other: QubitLayout) -> bool:
        return (
            isinstance(other, QubitLayout)
            and self._shapes == other._shapes
            and self._index == other._index
        )

    def __repr__(self) -> str:
        parts = ", ".join(f"{n}:{r}x{c}" for n, (r, c) in self._shapes.items())
        return f"QubitLayout({parts}; N={self.n_qubits})"


@dataclass(frozen=True)
class CssPauli:
    """A pure X-type or Z-type Pauli given by its global support."""

    kind: str  # "X" or "Z"
    support: int
    layout: QubitLayout

    def __post_init__(self):
        if self.kind not in ("X", "Z"):
            raise ValueError("kind must be 'X' or 'Z'")
        if self.support < 0 or self.support >> self.layout.n_qubits:
            raise ValueError("support outside the layout")

    def weight(self) -> int:
        return self.support.bit_count()


def commutes(p: CssPauli, q: CssPauli) -> bool:
    """Same-type Paulis always commute; X vs Z commute iff the supports
    overlap in an even number of qubits."""
    if p.layout is not q.layout and not p.layout.same_structure(q.layout):
        raise ValueError("Paulis live on different layouts")
    if p.kind == q.kind:
        return True
    return (p.support & q.support).bit_count() % 2 == 0


class CssGroup:
    """An X/Z-split Pauli group given by generator support matrices.

    Rows are supports over global indices; they need not be independent
    (redundant generating sets are preserved as given).
    """

    def __init__(self, gx: BitMatrix, gz: BitMatrix):
        if gx.cols != gz.cols:
            raise ValueError("X and Z generator matrices must share qubit count")
        self.gx = gx
        self.gz = gz
        self.n = gx.cols

    @classmethod
    def empty(cls, n: int) -> CssGroup:
        return cls(BitMatrix.zeros(0, n), BitMatrix.zeros(0, n))

    def rank_x(self) -> int:
        return f2.rank(self.gx)

    def rank_z(self) -> int:
        return f2.rank(self.gz)

    def contains_x(self, v: int) -> bool:
        return f2.rowspace_contains(self.gx, v)

    def contains_z(self, v: int) -> bool:
        return f2.rowspace_contains(self.gz, v)

    def is_abelian(self) -> bool:
        return (self.gx @ self.gz.T).is_zero()

    def __repr__(self) -> str:
        return f"CssGroup(N={self.n}, #X={self.gx.rows}, #Z={self.gz.rows})"


def group_center_css(g: CssGroup) -> CssGroup:
    """The center: elements of the group commuting with every generator.

    The X part is a basis of row(GX) intersected with the kernel of the
    GZ overlap map, and symmetrically for Z.
    """
    rx = f2.row_basis(g.gx)
    rz = f2.row_basis(g.gz)
    cx = f2.kernel_basis(g.gz @ rx.T) @ rx if rx.rows else BitMatrix.zeros(0, g.n)
    cz = f2.kernel_basis(g.gx @ rz.T) @ rz if rz.rows else BitMatrix.zeros(0, g.n)
    return CssGroup(cx, cz)


class SubsystemCode:
    """A CSS subsystem code: a gauge group plus everything derived from it.

    The stabilizer (center), encoded-qubit count K, gauge-qubit count J,
    and logical coset representatives are computed once on demand and
    cached.  The defining generator matrices are never mutated.
    """

    def __init__(self, layout: QubitLayout, gauge: CssGroup):
        if gauge.n != layout.n_qubits:
            raise ValueError("gauge group and layout disagree on qubit count")
        self.layout = layout
        self.gauge = gauge
        self.n = layout.n_qubits
        self._stabilizer: CssGroup | None = None
        self._k: int | None = None
        self._reps: tuple[BitMatrix, BitMatrix] | None = None

    @property
    def stabilizer(self) -> CssGroup:
        if self._stabilizer is None:
            self._stabilizer = group_center_css(self.gauge)
        return self._stabilizer

    @property
    def K(self) -> int:
        """Number of protected logical qubits."""
        if self._k is None:
            total = (
                self.gauge.rank_x()
                + self.gauge.rank_z()
                + self.stabilizer.gx.rows
                + self.stabilizer.gz.rows
            )
            if total % 2:
                raise AssertionError("odd combined rank; gauge group is inconsistent")
            self._k = self.n - total // 2
        return self._k

    @property
    def J(self) -> int:
        """Number of gauge qubits (unprotected encoded pairs)."""
        jx = self.gauge.rank_x() - self.stabilizer.gx.rows
        jz = self.gauge.rank_z() - self.stabilizer.gz.rows
        if jx != jz:
            raise AssertionError("X/Z gauge quotients differ; group is inconsistent")
        return jx

    def logical_reps(self) -> tuple[BitMatrix, BitMatrix]:
        """Coset representatives for bare logical operators.

        X reps: a basis of ker(GZ overlap) modulo the X stabilizer span;
        Z reps symmetric.  Both have exactly K rows.
        """
        if self._reps is None:
            lx = f2.quotient_basis(f2.kernel_basis(self.gauge.gz), self.stabilizer.gx)
            lz = f2.quotient_basis(f2.kernel_basis(self.gauge.gx), self.stabilizer.gz)
            if lx.rows != self.K or lz.rows != self.K:
                raise AssertionError("logical representative count does not match K")
            self._reps = (lx, lz)
        return self._reps

    def __repr__(self) -> str:
        return f"SubsystemCode(N={self.n}, K={self.K})"


def logical_reps(code: SubsystemCode) -> tuple[BitMatrix, BitMatrix]:
    return code.logical_reps()


#: dressed-distance enumeration guard: kernels up to 2^N with N <= this.
MAX_ORACLE_QUBITS = 14


def dressed_distance_bruteforce(code: SubsystemCode) -> float:
    """Exact distance: minimum weight of a dressed logical operator that
    acts nontrivially, i.e. commutes with all stabilizers but lies outside
    the gauge group.  Enumerates both Pauli types; inf when K = 0."""
    if code.n > MAX_ORACLE_QUBITS:
        raise CapacityError(f"N={code.n} exceeds oracle guard {MAX_ORACLE_QUBITS}")
    best = INF
    for kernel_of, gauge_part in (
        (code.stabilizer.gz, code.gauge.gx),
        (code.stabilizer.gx, code.gauge.gz),
    ):
        basis = f2.kernel_basis(kernel_of).row_ints()
        reduced, pivots = f2._reduce_rows(gauge_part.row_ints(), code.n)
        reduced = reduced[: len(pivots)]
        word = 0
        for x in range(1, 1 << len(basis)):
            word ^= basis[(x & -x).bit_length() - 1]
            w = word.bit_count()
            if 0 < w < best and f2._reduce_vector(word, reduced, pivots) != 0:
                best = w
    return best


def pairing_matrix(code: SubsystemCode) -> BitMatrix:
    """Overlap parities between X and Z logical representatives.

    Full rank K exactly when the representatives form K independent
    anticommuting pairs."""
    lx, lz = code.logical_reps()
    return lx @ lz.T


# ------------------------------------------------------------- serialization


def css_group_to_text(group: CssGroup, layout_name: str) -> str:
    """Dense text serialization with a layout-naming header line."""
    header = f"css-group layout={layout_name}\n"
    return header + f2.to_text(group.gx) + f2.to_text(group.gz)


def css_group_from_text(text: str) -> tuple[str, CssGroup]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("css-group layout="):
        raise ValueError("missing css-group header")
    layout_name = lines[0].split("=", 1)[1]
    body = lines[1:]
    rx, _ = (int(v) for v in body[0].split())
    gx = f2.from_text("\n".join(body[: rx + 1]))
    gz = f2.from_text("\n".join(body[rx + 1:]))
    return layout_name, CssGroup(gx, gz)
