"""Gauge fixing: restricting a gauge group while preserving the logical
qubits.

A code with gauge group G' is a gauge-fixing of one with gauge group G
when S(G) <= S(G') <= G' <= G and both encode the same number of qubits.
The verifier checks every generator inclusion by row-space membership
and reports the first violation as a witness; the constructors below
realize the two families of fixings of an augmented Bravyi-Bacon-Shor
code (to the plain BBS code, and to the two repetition hypergraph
products) on shared qubit layouts, padding with |+>, |0>, and bare-gauge
ancillas as needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import f2
from .bbs import AbbsCode, BbsCode, abbs_layout, strip_zero_lines
from .classical import CapacityError, repetition_checks
from .f2 import BitMatrix
from .hgp import HgpCode
from .pauli import (
    CssGroup,
    QubitLayout,
    SubsystemCode,
    dressed_distance_bruteforce,
)


@dataclass
class AncillaSpec:
    """Ancilla placements inside a target layout, by global qubit index.

    ``plus`` sites contribute single-qubit X gauge generators, ``zero``
    sites single-qubit Z, and ``gauge`` sites both (a bare gauge qubit).
    """

    layout: QubitLayout
    plus: list[int] = field(default_factory=list)
    zero: list[int] = field(default_factory=list)
    gauge: list[int] = field(default_factory=list)

    @property
    def m_plus(self) -> int:
        return len(self.plus)

    @property
    def m_zero(self) -> int:
        return len(self.zero)

    @property
    def m_gauge(self) -> int:
        return len(self.gauge)

    def all_sites(self) -> list[int]:
        return list(self.plus) + list(self.zero) + list(self.gauge)


def _embed_row(row: int, embedding: list[int]) -> int:
    out = 0
    while row:
        low = row & -row
        out |= 1 << embedding[low.bit_length() - 1]
        row ^= low
    return out


def append_ancillas(code: SubsystemCode, spec: AncillaSpec,
                    embedding: list[int] | None = None) -> SubsystemCode:
    """Extend a code with ancilla qubits on a (possibly larger) layout.

    ``embedding`` maps the code's global indices into the target layout;
    identity when omitted.  The embedded data sites and the ancilla
    placements must be disjoint and together cover the whole target
    layout, so the number of encoded qubits is provably unchanged (each
    ancilla is pinned by its own gauge generator).
    """
    target = spec.layout
    if embedding is None:
        embedding = list(range(code.n))
    if len(embedding) != code.n:
        raise ValueError("embedding length must equal the code's qubit count")
    data_sites = set(embedding)
    if len(data_sites) != code.n:
        raise ValueError("embedding is not injective")
    placements = spec.all_sites()
    placed = set(placements)
    if len(placed) != len(placements):
        raise ValueError("ancilla placement collision")
    if placed & data_sites:
        raise ValueError("ancilla placement collides with a data qubit")
    if len(placed) + len(data_sites) != target.n_qubits:
        raise ValueError("embedding plus ancillas must cover the target layout")

    gx = [_embed_row(code.gauge.gx.row_int(i), embedding) for i in range(code.gauge.gx.rows)]
    gz = [_embed_row(code.gauge.gz.row_int(i), embedding) for i in range(code.gauge.gz.rows)]
    gx += [1 << s for s in spec.plus]
    gx += [1 << s for s in spec.gauge]
    gz += [1 << s for s in spec.zero]
    gz += [1 << s for s in spec.gauge]
    n = target.n_qubits
    out = SubsystemCode(target, CssGroup(BitMatrix(len(gx), n, gx), BitMatrix(len(gz), n, gz)))
    if out.K != code.K:
        raise AssertionError("appending ancillas changed K")
    return out


@dataclass
class GaugeFixingVerdict:
    """Outcome of a gauge-fixing check, with the first violation named."""

    ok: bool
    reason: str = ""
    witness_kind: str = ""
    witness_row: int = -1
    witness_support: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _rows_in_span(rows: BitMatrix, span: BitMatrix, kind: str) -> GaugeFixingVerdict | None:
    reduced, pivots = f2._reduce_rows(span.row_ints(), span.cols)
    reduced = reduced[: len(pivots)]
    for i in range(rows.rows):
        if f2._reduce_vector(rows.row_int(i), reduced, pivots) != 0:
            return GaugeFixingVerdict(False, f"{kind} generator {i} not contained",
                                      kind, i, rows.row_int(i))
    return None


def is_gauge_fixing(g_prime: SubsystemCode, g: SubsystemCode) -> GaugeFixingVerdict:
    """Verify S(G) <= S(G') <= G' <= G and K(G) = K(G') on a shared layout."""
    if not g_prime.layout.same_structure(g.layout):
        raise ValueError("codes live on different layouts")
    if g_prime.K != g.K:
        return GaugeFixingVerdict(False, f"K mismatch: {g_prime.K} != {g.K}", "K")
    checks = [
        (g.stabilizer.gx, g_prime.stabilizer.gx, "S_X(G) <= S_X(G')"),
        (g.stabilizer.gz, g_prime.stabilizer.gz, "S_Z(G) <= S_Z(G')"),
        (g_prime.stabilizer.gx, g_prime.gauge.gx, "S_X(G') <= G'_X"),
        (g_prime.stabilizer.gz, g_prime.gauge.gz, "S_Z(G') <= G'_Z"),
        (g_prime.gauge.gx, g.gauge.gx, "G'_X <= G_X"),
        (g_prime.gauge.gz, g.gauge.gz, "G'_Z <= G_Z"),
    ]
    for rows, span, kind in checks:
        verdict = _rows_in_span(rows, span, kind)
        if verdict is not None:
            return verdict
    return GaugeFixingVerdict(True)


def bbs_fixing_of_abbs(a: BitMatrix) -> tuple[SubsystemCode, SubsystemCode]:
    """The BBS code (plus |+> on type-2 and |0> on type-1 sites) as a
    gauge-fixing of the augmented code, both on the two-lattice layout.

    Returns (g_prime, g); the fixing is verified before returning.
    """
    a = strip_zero_lines(a)
    abbs = AbbsCode(a)
    bbs = BbsCode(a)
    layout = abbs.layout
    n1, n2 = abbs.n1, abbs.n2
    embedding = [0] * bbs.code.n
    for i in range(n1):
        for j in range(n2):
            idx = bbs.layout.index("L", i, j)
            if idx is not None:
                embedding[idx] = layout.index("L1", i, j)
    spec = AncillaSpec(
        layout,
        plus=[layout.index("L2", i, j) for (i, j) in sorted(abbs.x_singles)],
        zero=[layout.index("L1", i, j) for (i, j) in sorted(abbs.z_singles)],
    )
    g_prime = append_ancillas(bbs.code, spec, embedding)
    verdict = is_gauge_fixing(g_prime, abbs.code)
    if not verdict:
        raise AssertionError(f"BBS fixing failed verification: {verdict.reason}")
    return g_prime, abbs.code


def theorem5_layout(a: BitMatrix, n1t: int, n2t: int) -> QubitLayout:
    """Four lattices: the two aBBS lattices plus the small HGP lattices
    l1 ((n1-1) x n2t) and l2 (n1t x (n2-1))."""
    layout = abbs_layout(a)
    n1, n2 = a.shape
    layout.add_lattice("l1", n1 - 1, n2t)
    layout.add_lattice("l2", n1t, n2 - 1)
    return layout


def hgp_fixings_of_abbs(a: BitMatrix, h1: BitMatrix, h2: BitMatrix
                        ) -> tuple[SubsystemCode, SubsystemCode, SubsystemCode]:
    """Both repetition hypergraph products as gauge-fixings of aBBS(A).

    ``h1`` and ``h2`` may contain redundant rows but must span ker(A^T)
    and ker(A) respectively.  Returns (q_prime, q_double_prime, q) on the
    shared four-lattice layout:

    - q_prime       = HGP(H_R, H2) on (L1, l1), plus |+> on type-2 sites
                      and bare gauge qubits on l2;
    - q_double_prime = HGP(H1, H_R) on (L2, l2), plus |0> on type-1 sites
                      and bare gauge qubits on l1;
    - q             = aBBS(A) with bare gauge qubits on l1 and l2.

    Both fixings are verified before returning.
    """
    a = strip_zero_lines(a)
    if not f2.rowspaces_equal(h1, f2.kernel_basis(a.T)):
        raise ValueError("rows of h1 must span ker(A^T)")
    if not f2.rowspaces_equal(h2, f2.kernel_basis(a)):
        raise ValueError("rows of h2 must span ker(A)")
    abbs = AbbsCode(a)
    n1, n2 = abbs.n1, abbs.n2
    n1t, n2t = h1.rows, h2.rows
    layout = theorem5_layout(a, n1t, n2t)

    def lattice_sites(name: str) -> list[int]:
        rows, cols = layout.shape(name)
        return [layout.index(name, i, j) for i in range(rows) for j in range(cols)]

    # q: the augmented code, l1 and l2 filled with bare gauge qubits
    q = append_ancillas(
        abbs.code,
        AncillaSpec(layout, gauge=lattice_sites("l1") + lattice_sites("l2")),
        embedding=list(range(abbs.code.n)),
    )

    type2 = [layout.index("L2", i, j) for (i, j) in sorted(abbs.x_singles)]
    type1 = [layout.index("L1", i, j) for (i, j) in sorted(abbs.z_singles)]

    def hgp_embedding(code: HgpCode, big: str, small: str) -> list[int]:
        emb = [0] * code.N
        for name, target in (("L", big), ("l", small)):
            rows, cols = code.layout.shape(name)
            for i in range(rows):
                for j in range(cols):
                    emb[code.layout.index(name, i, j)] = layout.index(target, i, j)
        return emb

    hgp1 = HgpCode(repetition_checks(n1), h2)
    q_prime = append_ancillas(
        hgp1.to_subsystem(),
        AncillaSpec(layout, plus=type2, gauge=lattice_sites("l2")),
        hgp_embedding(hgp1, "L1", "l1"),
    )

    hgp2 = HgpCode(h1, repetition_checks(n2))
    q_double_prime = append_ancillas(
        hgp2.to_subsystem(),
        AncillaSpec(layout, zero=type1, gauge=lattice_sites("l1")),
        hgp_embedding(hgp2, "L2", "l2"),
    )

    for name, fixed in (("HGP(H_R,H2)", q_prime), ("HGP(H1,H_R)", q_double_prime)):
        verdict = is_gauge_fixing(fixed, q)
        if not verdict:
            raise AssertionError(f"{name} fixing failed verification: {verdict.reason}")
    return q_prime, q_double_prime, q


def dressed_subset_check(g_prime: SubsystemCode, g: SubsystemCode) -> bool:
    """Enumerate every dressed logical of G' and confirm containment in
    the dressed set of G, and that the distance did not shrink.

    Oracle-scale only (N <= 14); requires a verified gauge fixing.
    """
    verdict = is_gauge_fixing(g_prime, g)
    if not verdict:
        raise ValueError(f"not a gauge fixing: {verdict.reason}")
    if g.n > 14:
        raise CapacityError(f"N={g.n} exceeds the enumeration guard")
    for s_prime, s in (
        (g_prime.stabilizer.gz, g.stabilizer.gz),
        (g_prime.stabilizer.gx, g.stabilizer.gx),
    ):
        basis = f2.kernel_basis(s_prime).row_ints()
        word = 0
        for x in range(1, 1 << len(basis)):
            word ^= basis[(x & -x).bit_length() - 1]
            if s.mul_vec(word) != 0:
                return False
    return dressed_distance_bruteforce(g_prime) >= dressed_distance_bruteforce(g)


def switching_stabilizer(g_prime: SubsystemCode, g_double_prime: SubsystemCode) -> CssGroup:
    """The stabilizer group protecting data while switching between two
    fixings: the intersection S(G') ∩ S(G'')."""
    inter_x = f2.rowspace_intersection(g_prime.stabilizer.gx, g_double_prime.stabilizer.gx)
    inter_z = f2.rowspace_intersection(g_prime.stabilizer.gz, g_double_prime.stabilizer.gz)
    return CssGroup(inter_x, inter_z)
