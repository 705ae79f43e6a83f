"""Greedy bit-flip decoding with noisy syndromes.

The decoder repeatedly flips a bit whenever doing so strictly reduces the
number of unsatisfied checks, choosing a bit with the most incident
unsatisfied checks (ties broken by lowest index, for reproducible
traces).  Bits are kept in buckets keyed by their unsatisfied-check
count, as doubly-linked lists, so each v-count change is a constant-time
move.  On a certified expander within the admissible error budget, the
residual error after decoding is below |f|/r check errors; with clean
syndromes the recovery is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .expander import ExpansionCertificate
from .f2 import BitMatrix


@dataclass
class Correction:
    """Result of one decode: the correction and its trace."""

    e_hat: int                 # bit-packed correction vector, length n
    flip_count: int
    unsat_trace: list[int]     # |u'| after setup and after every flip
    bucket_moves: int          # linked-list insert/remove/move events
    initial_unsat: int

    def weight(self) -> int:
        return self.e_hat.bit_count()


class FlipDecoder:
    """Reusable decoder bound to one check matrix."""

    def __init__(self, h: BitMatrix):
        self.h = h
        self.m = h.rows
        self.n = h.cols
        self.check_bits: list[tuple[int, ...]] = []
        for j in range(self.m):
            r = h.row_int(j)
            bits = []
            while r:
                low = r & -r
                bits.append(low.bit_length() - 1)
                r ^= low
            self.check_bits.append(tuple(bits))
        bit_checks: list[list[int]] = [[] for _ in range(self.n)]
        for j, bits in enumerate(self.check_bits):
            for i in bits:
                bit_checks[i].append(j)
        self.bit_checks = [tuple(c) for c in bit_checks]
        self.deg = [len(c) for c in self.bit_checks]
        self.b_max = max(self.deg, default=0)
        self.c_max = max((len(b) for b in self.check_bits), default=0)

    def decode(self, u: int) -> Correction:
        """Run flip decoding on the unsatisfied-check vector ``u``.

        Always terminates: every flip strictly decreases the number of
        unsatisfied checks.  Returns a correction such that no further
        single-bit flip improves the syndrome.
        """
        if u < 0 or u >> self.m:
            raise ValueError(f"syndrome must have {self.m} bits")
        n, deg = self.n, self.deg
        b_max = self.b_max

        # unsatisfied counts per bit
        v = [0] * n
        uu = u
        while uu:
            low = uu & -uu
            for i in self.check_bits[low.bit_length() - 1]:
                v[i] += 1
            uu ^= low

        # intrusive doubly-linked bucket lists keyed by v[i]
        head = [-1] * (b_max + 1)
        nxt = [-1] * n
        prv = [-1] * n
        moves = 0
        for i in range(n - 1, -1, -1):  # reversed insert => heads start lowest-index
            vi = v[i]
            nxt[i] = head[vi]
            if head[vi] != -1:
                prv[head[vi]] = i
            prv[i] = -1
            head[vi] = i
            moves += 1

        def unlink(i: int) -> None:
            if prv[i] != -1:
                nxt[prv[i]] = nxt[i]
            else:
                head[v[i]] = nxt[i]
            if nxt[i] != -1:
                prv[nxt[i]] = prv[i]

        def push(i: int) -> None:
            vi = v[i]
            nxt[i] = head[vi]
            if head[vi] != -1:
                prv[head[vi]] = i
            prv[i] = -1
            head[vi] = i

        u_cur = u
        unsat = u.bit_count()
        trace = [unsat]
        e_hat = 0
        flips = 0

        while True:
            # highest bucket holding an improving bit; lowest index within
            pick = -1
            for vv in range(b_max, 0, -1):
                i = head[vv]
                while i != -1:
                    if 2 * vv > deg[i] and (pick == -1 or i < pick):
                        pick = i
                    i = nxt[i]
                if pick != -1:
                    break
            if pick == -1:
                return Correction(e_hat, flips, trace, moves, trace[0])

            e_hat ^= 1 << pick
            flips += 1
            for j in self.bit_checks[pick]:
                bit = 1 << j
                delta = -1 if (u_cur & bit) else 1
                u_cur ^= bit
                unsat += delta
                for l in self.check_bits[j]:
                    unlink(l)
                    v[l] += delta
                    push(l)
                    moves += 1
            trace.append(unsat)


def decode_flip(h: BitMatrix, u: int) -> Correction:
    """One-shot flip decode of syndrome ``u`` against check matrix ``h``."""
    return FlipDecoder(h).decode(u)


@dataclass
class FlipGuarantee:
    """Error budgets under which flip decoding is provably good.

    Requires a left-regular degree-b graph certified as an (n, m, b,
    delta, epsilon) expander, with 1 <= r < b/4 and epsilon < 1/4 - r/b;
    otherwise ``admissible`` is False and the budgets are meaningless.
    All arithmetic is exact (Fractions), so boundary cases behave as the
    strict inequalities dictate.
    """

    n: int
    m: int
    b: int
    delta: Fraction
    epsilon: Fraction
    r: int
    admissible: bool = field(init=False)
    threshold: Fraction = field(init=False)   # (1 - 2 eps) * floor((1-delta) n)
    data_budget: int = field(init=False)
    check_budget: int = field(init=False)

    def __post_init__(self):
        self.delta = Fraction(self.delta)
        self.epsilon = Fraction(self.epsilon)
        ok_r = 1 <= self.r and Fraction(self.r) < Fraction(self.b, 4)
        ok_eps = self.epsilon < Fraction(1, 4) - Fraction(self.r, self.b)
        self.admissible = bool(ok_r and ok_eps)
        cap = int((1 - self.delta) * self.n)  # floor, exact
        self.threshold = (1 - 2 * self.epsilon) * cap
        if self.admissible:
            self.data_budget = int(self.threshold)
            self.check_budget = int(self.threshold * self.b / 2)
        else:
            self.data_budget = 0
            self.check_budget = 0

    def admissible_errors(self, e_weight: int, f_weight: int) -> bool:
        """|e| + (2/b)|f| <= (1 - 2 eps) floor((1 - delta) n), exactly."""
        if not self.admissible:
            return False
        return e_weight + Fraction(2 * f_weight, self.b) <= self.threshold

    def combined_form(self, e_weight: int, f_weight: int) -> bool:
        """The weaker combined budget |e| + |f| <= threshold."""
        if not self.admissible:
            return False
        return e_weight + f_weight <= self.threshold

    def steady_state(self, e_weight: int, f_weight: int) -> bool:
        """|e| + 2|f| <= threshold: repeated correction keeps residuals bounded."""
        if not self.admissible:
            return False
        return e_weight + 2 * f_weight <= self.threshold

    def residual_bound(self, f_weight: int) -> int:
        """Largest residual |e_hat - e| consistent with < |f|/r: ceil(|f|/r) - 1."""
        return -(-f_weight // self.r) - 1 if f_weight else 0


def flip_guarantee(n: int, m: int, b: int, delta, epsilon, r: int) -> FlipGuarantee:
    """Build the guarantee record; inadmissible parameters are flagged,
    not raised."""
    return FlipGuarantee(n=n, m=m, b=b, delta=Fraction(delta),
                         epsilon=Fraction(epsilon), r=r)


def guarantee_from_certificate(cert: ExpansionCertificate, r: int) -> FlipGuarantee:
    """Derive the guarantee from an exhaustively certified expansion profile."""
    eps = max(
        (Fraction(1) - Fraction(cert.worst_neighbors[s], cert.b * s)
         for s in cert.worst_neighbors),
        default=Fraction(0),
    )
    delta = Fraction(1) - Fraction(cert.max_subset_size, cert.n)
    return FlipGuarantee(n=cert.n, m=cert.m, b=cert.b, delta=delta,
                         epsilon=eps, r=r)
