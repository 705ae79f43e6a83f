"""GF(2) linear algebra: oracles, identities, and format round-trips."""

import numpy as np
import pytest

from bbscodes import f2
from bbscodes.f2 import BitMatrix


def naive_multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Triple-loop reference product."""
    out = []
    for i in range(a.rows):
        row = 0
        for j in range(b.cols):
            acc = 0
            for k in range(a.cols):
                acc ^= a.get(i, k) & b.get(k, j)
            row |= acc << j
        out.append(row)
    return BitMatrix(a.rows, b.cols, out)


HAMMING_H = BitMatrix.from_rows(["1101100", "1011010", "0111001"])


def test_rank_identity():
    assert f2.rank(BitMatrix.identity(3)) == 3


def test_rank_all_ones():
    assert f2.rank(BitMatrix.ones(3, 3)) == 1


def test_rank_hamming_checks_by_exhaustion():
    # no nonzero combination of the 3 rows vanishes
    rows = HAMMING_H.row_ints()
    combos = set()
    for x in range(1, 8):
        acc = 0
        for t in range(3):
            if (x >> t) & 1:
                acc ^= rows[t]
        combos.add(acc)
    assert 0 not in combos
    assert f2.rank(HAMMING_H) == 3


def test_rank_equals_transpose_rank_random():
    rng = np.random.default_rng(11)
    for _ in range(100):
        m = BitMatrix.random(int(rng.integers(1, 9)), int(rng.integers(1, 9)), rng)
        assert f2.rank(m) == f2.rank(m.T)


def test_rank_empty_matrices():
    assert f2.rank(BitMatrix.zeros(0, 5)) == 0
    assert f2.rank(BitMatrix.zeros(5, 0)) == 0


def test_kernel_of_repetition_checks():
    h = BitMatrix.from_rows(["110", "011"])
    k = f2.kernel_basis(h)
    assert k.shape == (1, 3)
    assert k.row_int(0) == 0b111


def test_kernel_of_identity_is_empty():
    assert f2.kernel_basis(BitMatrix.identity(2)).shape == (0, 2)


def test_kernel_of_hamming_spans_generator():
    g = BitMatrix.from_rows(["1000110", "0100101", "0010011", "0001111"])
    k = f2.kernel_basis(HAMMING_H)
    assert k.rows == 4
    assert (HAMMING_H @ k.T).is_zero()
    assert f2.rowspaces_equal(k, g)


def test_kernel_rank_nullity_random():
    rng = np.random.default_rng(5)
    for _ in range(100):
        m = BitMatrix.random(int(rng.integers(0, 8)), int(rng.integers(1, 10)), rng)
        k = f2.kernel_basis(m)
        assert f2.rank(m) + k.rows == m.cols
        if k.rows:
            assert (m @ k.T).is_zero()
            assert f2.rank(k) == k.rows


def test_rowspace_contains_sum_of_rows():
    m = BitMatrix.from_rows(["110", "101"])
    assert f2.rowspace_contains(m, 0b110 ^ 0b101)


def test_rowspace_contains_zero_always():
    m = BitMatrix.from_rows(["110", "101"])
    assert f2.rowspace_contains(m, 0)
    assert f2.rowspace_contains(BitMatrix.zeros(0, 3), 0)


def test_rowspace_excludes_all_ones_for_repetition_checks():
    h = BitMatrix.from_rows(["110", "011"])
    # enumerate all 4 combinations: none is (1,1,1)
    spans = {0, 0b110, 0b011, 0b110 ^ 0b011}
    assert 0b111 not in spans
    assert not f2.rowspace_contains(h, 0b111)


def test_multiply_rep_generator_orthogonal_to_checks():
    g = BitMatrix.from_rows(["111"])
    h = BitMatrix.from_rows(["110", "011"])
    assert (g @ h.T).is_zero()


def test_pointwise_and_absorption():
    rng = np.random.default_rng(3)
    a = BitMatrix.random(4, 6, rng)
    s = a & BitMatrix.random(4, 6, rng)  # s is a submask of a
    assert (s & a) == s


def test_add_self_is_zero():
    rng = np.random.default_rng(4)
    m = BitMatrix.random(5, 7, rng)
    assert (m + m).is_zero()


def test_multiply_matches_naive_oracle():
    rng = np.random.default_rng(7)
    for _ in range(100):
        r, inner, c = (int(rng.integers(1, 9)) for _ in range(3))
        a = BitMatrix.random(r, inner, rng)
        b = BitMatrix.random(inner, c, rng)
        assert a @ b == naive_multiply(a, b)


def test_transpose_of_product():
    rng = np.random.default_rng(8)
    for _ in range(50):
        a = BitMatrix.random(4, 5, rng)
        b = BitMatrix.random(5, 3, rng)
        assert (a @ b).T == b.T @ a.T


def test_shape_mismatch_raises():
    a = BitMatrix.zeros(2, 3)
    with pytest.raises(ValueError):
        a @ BitMatrix.zeros(2, 3)
    with pytest.raises(ValueError):
        a + BitMatrix.zeros(3, 2)
    with pytest.raises(ValueError):
        a & BitMatrix.zeros(3, 2)


def test_random_invertible_k1():
    m = f2.random_invertible(1, 0)
    assert m.to_lists() == [[1]]


def test_random_invertible_full_rank():
    for seed in range(10):
        m = f2.random_invertible(5, seed)
        assert f2.rank(m) == 5


def test_random_invertible_deterministic():
    assert f2.random_invertible(4, 12345) == f2.random_invertible(4, 12345)


def test_kron_against_entrywise_definition():
    rng = np.random.default_rng(9)
    a = BitMatrix.random(2, 3, rng)
    b = BitMatrix.random(3, 2, rng)
    k = a.kron(b)
    assert k.shape == (6, 6)
    for i1 in range(2):
        for j1 in range(3):
            for i2 in range(3):
                for j2 in range(2):
                    assert k.get(i1 * 3 + i2, j1 * 2 + j2) == a.get(i1, j1) & b.get(i2, j2)


def test_quotient_basis_extends_span():
    w = BitMatrix.from_rows(["1100", "0011"])
    v = BitMatrix.from_rows(["1111", "1000", "0100"])
    q = f2.quotient_basis(v, w)
    # 1111 is in row(w); 1000 is new; 0100 = 1100 + 1000 is then dependent
    assert q.rows == 1
    assert q.row_int(0) == 0b0001


def test_rowspace_intersection():
    a = BitMatrix.from_rows(["110", "001"])
    b = BitMatrix.from_rows(["111", "110"])
    inter = f2.rowspace_intersection(a, b)
    assert f2.rank(inter) == 2  # both contain 110 and 111 = 110 + 001
    for t in range(inter.rows):
        v = inter.row_int(t)
        assert f2.rowspace_contains(a, v) and f2.rowspace_contains(b, v)


def test_rowspace_intersection_random_membership():
    rng = np.random.default_rng(10)
    for _ in range(30):
        a = BitMatrix.random(3, 6, rng)
        b = BitMatrix.random(3, 6, rng)
        inter = f2.rowspace_intersection(a, b)
        for t in range(inter.rows):
            v = inter.row_int(t)
            assert f2.rowspace_contains(a, v) and f2.rowspace_contains(b, v)
        # dimension identity: dim(A) + dim(B) = dim(A+B) + dim(A∩B)
        assert f2.rank(a) + f2.rank(b) == f2.rank(a.vstack(b)) + inter.rows


def test_text_roundtrip():
    rng = np.random.default_rng(12)
    m = BitMatrix.random(4, 9, rng)
    assert f2.from_text(f2.to_text(m)) == m


def test_text_rejects_ragged_rows():
    with pytest.raises(ValueError, match="line 3"):
        f2.from_text("2 3\n010\n01\n")


def test_text_rejects_bad_characters():
    with pytest.raises(ValueError, match="column 2"):
        f2.from_text("1 3\n0x1\n")


def test_zero_size_matrices_are_first_class():
    z = BitMatrix.zeros(0, 4)
    assert z.T.shape == (4, 0)
    assert (z @ BitMatrix.zeros(4, 2)).shape == (0, 2)
    assert f2.kernel_basis(BitMatrix.zeros(0, 3)).rows == 3  # everything


def test_diag_and_vec_helpers():
    d = BitMatrix.diag(0b101, 3)
    assert d.to_lists() == [[1, 0, 0], [0, 0, 0], [0, 0, 1]]
    assert f2.vec_from_bits([1, 0, 1]) == 0b101
    assert f2.vec_to_bits(0b101, 3) == [1, 0, 1]
    assert f2.vec_weight(0b1011) == 3
    assert f2.vec_dot_parity(0b110, 0b011) == 1
