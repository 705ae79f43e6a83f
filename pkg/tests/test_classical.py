"""Classical code construction, distances against a support-enumeration
oracle, transpose codes, and alist IO."""

import itertools
import math

import numpy as np
import pytest

from bbscodes import classical, f2
from bbscodes.classical import (
    CapacityError,
    code_from_checks,
    code_from_generator,
    hamming_code,
    ldpc_profile,
    min_distance_bruteforce,
    repetition_code,
    transpose_code,
)
from bbscodes.f2 import BitMatrix


def distance_by_support_enumeration(code) -> float:
    """Independent oracle: scan supports by increasing weight until a
    codeword appears."""
    for w in range(1, code.n + 1):
        for support in itertools.combinations(range(code.n), w):
            v = sum(1 << i for i in support)
            if code.H.mul_vec(v) == 0:
                return w
    return math.inf


def test_repetition_checks_exact_form():
    assert repetition_code(3).H.to_lists() == [[1, 1, 0], [0, 1, 1]]


def test_repetition_code_from_checks():
    c = repetition_code(3)
    assert (c.n, c.k) == (3, 1)
    assert c.G.to_lists() == [[1, 1, 1]]


def test_code_from_empty_checks_is_everything():
    c = code_from_checks(BitMatrix.zeros(0, 4))
    assert (c.n, c.k) == (4, 4)
    assert f2.rowspaces_equal(c.G, BitMatrix.identity(4))


def test_hamming_parameters():
    c = hamming_code()
    assert (c.n, c.k) == (7, 4)
    assert c.distance() == 3


def test_construction_invariants_random():
    rng = np.random.default_rng(21)
    for _ in range(50):
        h = BitMatrix.random(int(rng.integers(1, 6)), int(rng.integers(2, 9)), rng)
        c = code_from_checks(h)
        assert (c.H @ c.G.T).is_zero()
        assert f2.rank(c.G) == c.k == c.n - f2.rank(c.H)


def test_min_distance_repetition():
    assert repetition_code(5).distance() == 5


def test_min_distance_identity_generator():
    c = code_from_generator(BitMatrix.identity(2))
    assert min_distance_bruteforce(c) == 1


def test_min_distance_trivial_code_is_infinite():
    c = code_from_checks(BitMatrix.identity(3))
    assert c.k == 0
    assert min_distance_bruteforce(c) == math.inf


def test_min_distance_guard():
    c = code_from_checks(BitMatrix.zeros(0, 30))
    with pytest.raises(CapacityError):
        min_distance_bruteforce(c)


def test_min_distance_matches_support_oracle():
    rng = np.random.default_rng(22)
    for _ in range(40):
        h = BitMatrix.random(int(rng.integers(1, 6)), int(rng.integers(2, 13)), rng)
        c = code_from_checks(h)
        assert c.distance() == distance_by_support_enumeration(c)


def test_distance_cached_once():
    c = repetition_code(4)
    assert c.d is None
    assert c.distance() == 4
    assert c.d == 4


def test_transpose_full_rank_checks():
    t = transpose_code(repetition_code(3))
    assert (t.nT, t.kT) == (2, 0)
    assert t.dT == math.inf


def test_transpose_of_cyclic_checks_is_repetition():
    h = classical.cyclic_repetition_checks(3)
    c = code_from_checks(h)
    t = transpose_code(c)
    assert (t.nT, t.kT) == (3, 1)
    assert t.dT == 3


def test_transpose_relation_random():
    rng = np.random.default_rng(23)
    for _ in range(50):
        h = BitMatrix.random(int(rng.integers(1, 7)), int(rng.integers(1, 9)), rng)
        c = code_from_checks(h)
        t = transpose_code(c)
        assert c.n - c.k == t.nT - t.kT


def test_transpose_of_transpose_restores_parameters():
    rng = np.random.default_rng(24)
    for _ in range(20):
        h = BitMatrix.random(3, 6, rng)
        c = code_from_checks(h)
        back = transpose_code(transpose_code(c).code)
        assert (back.nT, back.kT) == (c.n, c.k)


def test_ldpc_profile_repetition():
    assert ldpc_profile(repetition_code(5).H) == (2, 2)


def test_ldpc_profile_hamming():
    assert ldpc_profile(classical.HAMMING_H) == (3, 4)


def test_redundant_checks_preserved_verbatim():
    h = classical.cyclic_repetition_checks(4)
    c = code_from_checks(h)
    assert c.H is h
    assert c.H.rows == 4  # not reduced to rank 3


def test_alist_roundtrip():
    rng = np.random.default_rng(25)
    for _ in range(20):
        h = BitMatrix.random(int(rng.integers(1, 6)), int(rng.integers(1, 9)), rng)
        assert classical.from_alist(classical.to_alist(h)) == h


def test_alist_rejects_inconsistent_lists():
    text = classical.to_alist(BitMatrix.from_rows(["110", "011"]))
    broken = text.replace("1 2", "1 1", 1)  # corrupt a column degree entry
    with pytest.raises(ValueError):
        classical.from_alist(broken)
