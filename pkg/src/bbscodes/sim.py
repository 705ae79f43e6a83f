"""Monte Carlo error-correction simulation for BBS and aBBS codes.

The decoder never sees the quantum state: gauge generators are measured
(two-qubit pairs, plus single-qubit operators in the augmented case),
stabilizer eigenvalues are reconstructed as parities of gauge outcomes,
and a classical decoder run on those reconstructed syndromes flags rows
and columns to correct.  One X (or Z) applied anywhere in a flagged
column (row) is as good as any other, since the choices differ by gauge
operators; we always take the lowest-index occupied site.

Qubit noise with rate q and measurement noise with rate q' reduce, on
the classical code embedded in the rows/columns, to independent bit
flips with probability p_i = (1 - (1-2q)^{c_i})/2 and check errors with
p'_j = (1 - (1-2q')^{c'_j})/2, where c_i counts the qubits in line i and
c'_j the measured generators whose product reconstructs stabilizer j.
A purely classical simulation of that reduced model runs alongside the
quantum one to validate the reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bbs import AbbsCode, BbsCode
from .f2 import BitMatrix
from .flip import FlipDecoder


@dataclass
class NoiseModel:
    """Independent X and Z flips with rate q per qubit per round; each
    measured gauge generator reports the wrong value with rate qprime.
    With ``depolarizing`` set, X/Y/Z errors occur with rate q/3 each
    instead."""

    q: float
    qprime: float
    seed: int = 0
    depolarizing: bool = False

    def __post_init__(self):
        if not (0.0 <= self.q <= 0.5 and 0.0 <= self.qprime <= 0.5):
            raise ValueError("noise rates must lie in [0, 1/2]")


@dataclass
class EffectiveNoise:
    """The classical error model induced on one decoding side."""

    p: list[float]        # per effective bit
    p_prime: list[float]  # per reconstructed check
    c: list[int]          # qubits per line
    c_prime: list[int]    # measured generators per stabilizer


def _odd_flip_prob(rate: float, count: int) -> float:
    return 0.5 * (1.0 - (1.0 - 2.0 * rate) ** count)


class MeasurementPlan:
    """Static structure for simulating one code: measured generators,
    stabilizer decompositions, decode matrices, correction sites."""

    def __init__(self, code: BbsCode | AbbsCode):
        self.code = code
        self.n = code.code.n
        self.augmented = isinstance(code, AbbsCode)
        a = code.A
        n1, n2 = code.n1, code.n2

        if not self.augmented:
            self.x_gens = [
                (1 << p) | (1 << q) for col in code.x_pair_columns for (p, q) in col
            ]
            self.z_gens = [
                (1 << p) | (1 << q) for row in code.z_pair_rows for (p, q) in row
            ]
            x_pair_index: dict[tuple[int, int], int] = {}
            t = 0
            for j, col in enumerate(code.x_pair_columns):
                for a_ in range(len(col)):
                    x_pair_index[(j, a_)] = t
                    t += 1
            z_pair_index: dict[tuple[int, int], int] = {}
            t = 0
            for i, row in enumerate(code.z_pair_rows):
                for a_ in range(len(row)):
                    z_pair_index[(i, a_)] = t
                    t += 1

            col_occ = [[i for i in range(n1) if a.get(i, j)] for j in range(n2)]
            row_occ = [[j for j in range(n2) if a.get(i, j)] for i in range(n1)]

            # stabilizer value = parity of the gauge outcomes selected by the
            # unique decomposition over the consecutive-pair path of each line
            self.x_decomp_masks = []
            for trow in range(code.H1.rows):
                r = code.H1.row_int(trow)
                mask = 0
                for j in range(n2):
                    par = 0
                    occ = col_occ[j]
                    for s in range(len(occ) - 1):
                        par ^= (r >> occ[s]) & 1
                        if par:
                            mask |= 1 << x_pair_index[(j, s)]
                self.x_decomp_masks.append(mask)
            self.z_decomp_masks = []
            for trow in range(code.H2.rows):
                c = code.H2.row_int(trow)
                mask = 0
                for i in range(n1):
                    par = 0
                    occ = row_occ[i]
                    for s in range(len(occ) - 1):
                        par ^= (c >> occ[s]) & 1
                        if par:
                            mask |= 1 << z_pair_index[(i, s)]
                self.z_decomp_masks.append(mask)

            layout = code.layout
            self.col_masks = [
                sum(1 << layout.index("L", i, j) for i in range(n1) if a.get(i, j))
                for j in range(n2)
            ]
            self.row_masks = [
                sum(1 << layout.index("L", i, j) for j in range(n2) if a.get(i, j))
                for i in range(n1)
            ]
            self.col_fix = [code.column_sites[j][0] for j in range(n2)]
            self.row_fix = [code.row_sites[i][0] for i in range(n1)]
            self.c_cols = [len(s) for s in code.column_sites]
            self.c_rows = [len(s) for s in code.row_sites]
        else:
            self._build_augmented(code)

        self.H1 = code.H1
        self.H2 = code.H2
        self.x_stabs = code.x_stabilizer_supports().row_ints()
        self.z_stabs = code.z_stabilizer_supports().row_ints()
        self.c_prime_x = [m.bit_count() for m in self.x_decomp_masks]
        self.c_prime_z = [m.bit_count() for m in self.z_decomp_masks]
        self._dec1 = FlipDecoder(self.H1)
        self._dec2 = FlipDecoder(self.H2)
        lx, lz = code.code.logical_reps()
        self.lx_reps = lx.row_ints()
        self.lz_reps = lz.row_ints()

    def _build_augmented(self, code: AbbsCode):
        a, n1, n2 = code.A, code.n1, code.n2
        layout = code.layout

        # pair generators first (grid order), then the single-qubit ones
        self.x_gens = [
            (1 << p) | (1 << q) for row in code.x_pair_grid for (p, q) in row
        ]
        self.n_x_pairs = len(self.x_gens)
        x_single_sites = sorted(code.x_singles)
        self.x_gens += [1 << code.x_singles[s] for s in x_single_sites]
        x_single_index = {s: self.n_x_pairs + t for t, s in enumerate(x_single_sites)}

        self.z_gens = [
            (1 << p) | (1 << q) for row in code.z_pair_grid for (p, q) in row
        ]
        self.n_z_pairs = len(self.z_gens)
        z_single_sites = sorted(code.z_singles)
        self.z_gens += [1 << code.z_singles[s] for s in z_single_sites]
        z_single_index = {s: self.n_z_pairs + t for t, s in enumerate(z_single_sites)}

        def x_pair(i, j):  # vertical pair (i,j)-(i+1,j) in L1
            return i * n2 + j

        def z_pair(i, j):  # horizontal pair (i,j)-(i,j+1) in L2
            return i * (n2 - 1) + j

        # decompositions, and their interval form for the cumulative sweep:
        # within each line the included pairs form intervals between
        # consecutive selected shared sites
        self.x_decomp_masks = []
        self.x_intervals = []  # per stabilizer: (singles_mask, [(j, lo, hi)])
        for trow in range(code.H1.rows):
            r = code.H1.row_int(trow)
            mask = 0
            singles = 0
            for (i, j), idx in x_single_index.items():
                if (r >> i) & 1:
                    mask |= 1 << idx
                    singles |= 1 << idx
            intervals = []
            for j in range(n2):
                par = 0
                lo = None
                for i in range(n1 - 1):
                    par ^= (r >> i) & 1 & a.get(i, j)
                    if par and lo is None:
                        lo = i
                    if not par and lo is not None:
                        intervals.append((j, lo, i - 1))
                        lo = None
                    if par:
                        mask |= 1 << x_pair(i, j)
                if lo is not None:
                    intervals.append((j, lo, n1 - 2))
            self.x_decomp_masks.append(mask)
            self.x_intervals.append((singles, intervals))

        self.z_decomp_masks = []
        self.z_intervals = []
        for trow in range(code.H2.rows):
            c = code.H2.row_int(trow)
            mask = 0
            singles = 0
            for (i, j), idx in z_single_index.items():
                if (c >> j) & 1:
                    mask |= 1 << idx
                    singles |= 1 << idx
            intervals = []
            for i in range(n1):
                par = 0
                lo = None
                for j in range(n2 - 1):
                    par ^= (c >> j) & 1 & a.get(i, j)
                    if par and lo is None:
                        lo = j
                    if not par and lo is not None:
                        intervals.append((i, lo, j - 1))
                        lo = None
                    if par:
                        mask |= 1 << z_pair(i, j)
                if lo is not None:
                    intervals.append((i, lo, n2 - 2))
            self.z_decomp_masks.append(mask)
            self.z_intervals.append((singles, intervals))

        # effective bits: full L1 columns (X errors) and L2 rows (Z errors)
        self.col_masks = [
            sum(1 << layout.index("L1", i, j) for i in range(n1)) for j in range(n2)
        ]
        self.row_masks = [
            sum(1 << layout.index("L2", i, j) for j in range(n2)) for i in range(n1)
        ]
        self.col_fix = [layout.index("L1", 0, j) for j in range(n2)]
        self.row_fix = [layout.index("L2", i, 0) for i in range(n1)]
        self.c_cols = [n1] * n2
        self.c_rows = [n2] * n1

    # ------------------------------------------------------------ decoding

    def decode_x_side(self, syndrome_z: int, decoder=None) -> int:
        """X correction from the Z-stabilizer syndrome: one X per flagged
        column."""
        flags = decoder(self.H2, syndrome_z) if decoder else self._dec2.decode(syndrome_z).e_hat
        corr = 0
        while flags:
            low = flags & -flags
            corr |= 1 << self.col_fix[low.bit_length() - 1]
            flags ^= low
        return corr

    def decode_z_side(self, syndrome_x: int, decoder=None) -> int:
        flags = decoder(self.H1, syndrome_x) if decoder else self._dec1.decode(syndrome_x).e_hat
        corr = 0
        while flags:
            low = flags & -flags
            corr |= 1 << self.row_fix[low.bit_length() - 1]
            flags ^= low
        return corr

    def exact_syndromes(self, x_frame: int, z_frame: int) -> tuple[int, int]:
        """Noiseless stabilizer values of a Pauli frame."""
        sx = 0
        for t, s in enumerate(self.x_stabs):
            sx |= ((s & z_frame).bit_count() & 1) << t
        sz = 0
        for t, s in enumerate(self.z_stabs):
            sz |= ((s & x_frame).bit_count() & 1) << t
        return sx, sz

    def column_parities(self, x_frame: int) -> int:
        v = 0
        for j, m in enumerate(self.col_masks):
            v |= ((m & x_frame).bit_count() & 1) << j
        return v

    def row_parities(self, z_frame: int) -> int:
        v = 0
        for i, m in enumerate(self.row_masks):
            v |= ((m & z_frame).bit_count() & 1) << i
        return v


@dataclass
class SyndromeRecord:
    """Outcomes of one measurement round."""

    x_outcomes: int  # bit t = measured value of X-type gauge generator t
    z_outcomes: int
    syndrome_x: int  # reconstructed X-stabilizer bits (one per H1 check)
    syndrome_z: int
    dp_ops: int = 0  # cumulative-sweep bookkeeping operations (aBBS only)


def effective_probs(code: BbsCode | AbbsCode, noise: NoiseModel,
                    kind: str = "X") -> EffectiveNoise:
    """The induced classical error model for one decoding side.

    ``kind="X"`` describes X data errors read through Z stabilizers
    (effective bits are columns, checks are rows of H2); ``kind="Z"`` the
    mirror image.
    """
    plan = code if isinstance(code, MeasurementPlan) else MeasurementPlan(code)
    if kind == "X":
        c, cp = plan.c_cols, plan.c_prime_z
    elif kind == "Z":
        c, cp = plan.c_rows, plan.c_prime_x
    else:
        raise ValueError("kind must be 'X' or 'Z'")
    return EffectiveNoise(
        p=[_odd_flip_prob(noise.q, ci) for ci in c],
        p_prime=[_odd_flip_prob(noise.qprime, cj) for cj in cp],
        c=list(c),
        c_prime=list(cp),
    )


def _sample_flips(rng: np.random.Generator, n: int, rate: float) -> int:
    if rate == 0.0:
        return 0
    v = 0
    for i in np.flatnonzero(rng.random(n) < rate):
        v |= 1 << int(i)
    return v


def sample_round(plan: MeasurementPlan, noise: NoiseModel, frame: tuple[int, int],
                 rng: np.random.Generator) -> tuple[tuple[int, int], SyndromeRecord]:
    """Apply fresh noise, measure every gauge generator (noisily), and
    reconstruct the stabilizer syndromes.

    BBS codes reconstruct each stabilizer directly as the parity of its
    decomposition; aBBS codes use the cumulative sweep along each line,
    which costs O(n1 n2) bookkeeping per round.
    """
    x_frame, z_frame = frame
    if noise.depolarizing:
        u = rng.random(plan.n)
        for i in np.flatnonzero(u < noise.q):
            r = u[int(i)]
            if r < noise.q / 3:
                x_frame ^= 1 << int(i)
            elif r < 2 * noise.q / 3:
                z_frame ^= 1 << int(i)
            else:
                x_frame ^= 1 << int(i)
                z_frame ^= 1 << int(i)
    else:
        x_frame ^= _sample_flips(rng, plan.n, noise.q)
        z_frame ^= _sample_flips(rng, plan.n, noise.q)

    x_out = 0
    for t, s in enumerate(plan.x_gens):
        x_out |= ((s & z_frame).bit_count() & 1) << t
    z_out = 0
    for t, s in enumerate(plan.z_gens):
        z_out |= ((s & x_frame).bit_count() & 1) << t
    x_out ^= _sample_flips(rng, len(plan.x_gens), noise.qprime)
    z_out ^= _sample_flips(rng, len(plan.z_gens), noise.qprime)

    if plan.augmented:
        syndrome_x, ops_x = _sweep_reconstruct(plan, x_out, "X")
        syndrome_z, ops_z = _sweep_reconstruct(plan, z_out, "Z")
        record = SyndromeRecord(x_out, z_out, syndrome_x, syndrome_z, ops_x + ops_z)
    else:
        syndrome_x = 0
        for t, m in enumerate(plan.x_decomp_masks):
            syndrome_x |= ((m & x_out).bit_count() & 1) << t
        syndrome_z = 0
        for t, m in enumerate(plan.z_decomp_masks):
            syndrome_z |= ((m & z_out).bit_count() & 1) << t
        record = SyndromeRecord(x_out, z_out, syndrome_x, syndrome_z)
    return (x_frame, z_frame), record


def naive_reconstruct(plan: MeasurementPlan, x_out: int, z_out: int) -> tuple[int, int]:
    """Oracle reconstruction: direct parity over each decomposition."""
    sx = 0
    for t, m in enumerate(plan.x_decomp_masks):
        sx |= ((m & x_out).bit_count() & 1) << t
    sz = 0
    for t, m in enumerate(plan.z_decomp_masks):
        sz |= ((m & z_out).bit_count() & 1) << t
    return sx, sz


def _sweep_reconstruct(plan: MeasurementPlan, outcomes: int, kind: str) -> tuple[int, int]:
    """Cumulative-sum reconstruction for augmented codes.

    Pair outcomes are prefix-summed along each line once; each stabilizer
    then reads two cumulative values per included interval plus its
    single-qubit outcomes.
    """
    code = plan.code
    n1, n2 = code.n1, code.n2
    ops = 0
    if kind == "X":
        lines, length = n2, n1 - 1
        intervals = plan.x_intervals

        def pair_bit(line, pos):  # column-major sweep over vertical pairs
            return (outcomes >> (pos * n2 + line)) & 1
    else:
        lines, length = n1, n2 - 1
        intervals = plan.z_intervals

        def pair_bit(line, pos):
            return (outcomes >> (line * (n2 - 1) + pos)) & 1

    cum = [[0] * (length + 1) for _ in range(lines)]
    for line in range(lines):
        c = cum[line]
        for pos in range(length):
            c[pos + 1] = c[pos] ^ pair_bit(line, pos)
            ops += 1

    syndrome = 0
    for t, (singles_mask, ivals) in enumerate(intervals):
        bit = (outcomes & singles_mask).bit_count() & 1
        ops += 1
        for line, lo, hi in ivals:
            bit ^= cum[line][hi + 1] ^ cum[line][lo]
            ops += 2
        syndrome |= bit << t
    return syndrome, ops


@dataclass
class Correction:
    x: int
    z: int


def induced_decode(plan: MeasurementPlan, syndrome_x: int, syndrome_z: int,
                   decoder=None) -> Correction:
    """Run the classical decoder on each reconstructed syndrome and place
    one correction per flagged line."""
    return Correction(
        x=plan.decode_x_side(syndrome_z, decoder),
        z=plan.decode_z_side(syndrome_x, decoder),
    )


def wilson_interval(k: int, n: int, z: float = 1.96) -> tuple[float, float]:
    if n == 0:
        return (0.0, 1.0)
    phat = k / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / n + z * z / (4 * n * n)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass
class TrialReport:
    trials: int
    rounds: int
    failures: int
    failures_x: int
    failures_z: int
    per_logical_x: list[int]
    per_logical_z: list[int]
    residual_syndrome: int
    rate: float
    wilson_low: float
    wilson_high: float
    q: float
    qprime: float
    seed: int

    def stderr(self) -> float:
        p = self.rate
        return math.sqrt(max(p * (1.0 - p), 1e-300) / self.trials)


def run_trials(code: BbsCode | AbbsCode, noise: NoiseModel, rounds: int,
               trials: int, decoder=None, seed: int | None = None) -> TrialReport:
    """Estimate the logical failure rate.

    Each trial runs ``rounds`` noisy measure-and-correct cycles followed
    by one ideal (noiseless-measurement) cycle, then checks the residual
    frame: a trial fails if the residual anticommutes with any logical
    representative or leaves a nonzero syndrome.  Each trial draws its
    own counter-derived RNG stream, so results do not depend on
    execution order.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    plan = MeasurementPlan(code)
    base_seed = noise.seed if seed is None else seed
    k = len(plan.lx_reps)
    per_x = [0] * k
    per_z = [0] * k
    failures = fail_x_total = fail_z_total = residual = 0

    for t in range(trials):
        rng = np.random.default_rng([base_seed, t])
        x_frame = z_frame = 0
        for _ in range(rounds):
            (x_frame, z_frame), rec = sample_round(plan, noise, (x_frame, z_frame), rng)
            corr = induced_decode(plan, rec.syndrome_x, rec.syndrome_z, decoder)
            x_frame ^= corr.x
            z_frame ^= corr.z
        sx, sz = plan.exact_syndromes(x_frame, z_frame)
        corr = induced_decode(plan, sx, sz, decoder)
        x_frame ^= corr.x
        z_frame ^= corr.z

        sx, sz = plan.exact_syndromes(x_frame, z_frame)
        fail_x = sz != 0
        fail_z = sx != 0
        if sx or sz:
            residual += 1
        for l in range(k):
            if (plan.lz_reps[l] & x_frame).bit_count() & 1:
                per_x[l] += 1
                fail_x = True
            if (plan.lx_reps[l] & z_frame).bit_count() & 1:
                per_z[l] += 1
                fail_z = True
        fail_x_total += fail_x
        fail_z_total += fail_z
        failures += fail_x or fail_z

    lo, hi = wilson_interval(failures, trials)
    return TrialReport(
        trials=trials, rounds=rounds, failures=failures,
        failures_x=fail_x_total, failures_z=fail_z_total,
        per_logical_x=per_x, per_logical_z=per_z,
        residual_syndrome=residual,
        rate=failures / trials, wilson_low=lo, wilson_high=hi,
        q=noise.q, qprime=noise.qprime, seed=base_seed,
    )


def classical_run_trials(h: BitMatrix, p_bits: list[float], p_checks: list[float],
                         rounds: int, trials: int, decoder=None,
                         seed: int = 0) -> TrialReport:
    """The reduced classical model: iid bit flips, noisy check readout,
    the same decoder, failure when the final state is off the codeword.

    Mirrors the round structure of ``run_trials`` exactly, so its failure
    rate is the reference point for the induced-decoder bound.
    """
    n, m = h.cols, h.rows
    flip = FlipDecoder(h)
    p_bits_arr = np.asarray(p_bits)
    p_checks_arr = np.asarray(p_checks)
    failures = 0
    for t in range(trials):
        rng = np.random.default_rng([seed, 311, t])
        e = 0
        for _ in range(rounds):
            for i in np.flatnonzero(rng.random(n) < p_bits_arr):
                e ^= 1 << int(i)
            u = h.mul_vec(e)
            for j in np.flatnonzero(rng.random(m) < p_checks_arr):
                u ^= 1 << int(j)
            e ^= decoder(h, u) if decoder else flip.decode(u).e_hat
        u = h.mul_vec(e)
        e ^= decoder(h, u) if decoder else flip.decode(u).e_hat
        if e != 0:
            failures += 1
    lo, hi = wilson_interval(failures, trials)
    return TrialReport(
        trials=trials, rounds=rounds, failures=failures,
        failures_x=failures, failures_z=0, per_logical_x=[], per_logical_z=[],
        residual_syndrome=0, rate=failures / trials,
        wilson_low=lo, wilson_high=hi, q=0.0, qprime=0.0, seed=seed,
    )
