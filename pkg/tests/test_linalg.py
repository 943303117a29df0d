import numpy as np
import pytest

import oracles
from bglb.linalg import (DEFAULT_PRIME, rank_and_extension_mod_p, rank_exact, rank_mod_p,
                         sketch_columns)


def test_rank_small_known():
    m = np.array([[1, 2], [2, 4]], dtype=np.int64)
    assert rank_mod_p(m, DEFAULT_PRIME) == 1
    assert rank_exact(m) == 1
    eye = np.eye(5, dtype=np.int64)
    assert rank_mod_p(eye, DEFAULT_PRIME) == 5


def test_rank_matches_fraction_oracle():
    rng = np.random.default_rng(5)
    for _ in range(20):
        rows, cols = rng.integers(1, 9, size=2)
        m = rng.integers(-6, 7, size=(rows, cols)).astype(np.int64)
        want = oracles.fraction_rank(m.tolist())
        assert rank_exact(m) == want
        assert rank_mod_p(m, DEFAULT_PRIME) == want


def test_rank_handles_negative_entries():
    m = np.array([[-1, 1], [1, -1], [0, 3]], dtype=np.int64)
    assert rank_mod_p(m, DEFAULT_PRIME) == 2


def test_empty_shapes():
    assert rank_mod_p(np.zeros((0, 4), dtype=np.int64), DEFAULT_PRIME) == 0
    assert rank_mod_p(np.zeros((4, 0), dtype=np.int64), DEFAULT_PRIME) == 0
    assert rank_exact(np.zeros((3, 3), dtype=np.int64)) == 0


def test_rank_and_extension_agrees_with_separate_ranks():
    rng = np.random.default_rng(11)
    for _ in range(15):
        rows = int(rng.integers(2, 9))
        ca = int(rng.integers(1, 7))
        cb = int(rng.integers(1, 7))
        a = rng.integers(-5, 6, size=(rows, ca)).astype(np.int64)
        b = rng.integers(-5, 6, size=(rows, cb)).astype(np.int64)
        ra, raug = rank_and_extension_mod_p(a, b, DEFAULT_PRIME)
        assert ra == oracles.fraction_rank(a.tolist())
        assert raug == oracles.fraction_rank(np.concatenate([a, b], axis=1).tolist())


def test_rank_mod_p_rejects_huge_prime():
    with pytest.raises(ValueError):
        rank_mod_p(np.eye(2, dtype=np.int64), 1 << 33)


def test_sketch_preserves_rank_whp():
    rng = np.random.default_rng(3)
    # wide low-rank matrix: 30 independent columns spread over 400
    base = rng.integers(0, DEFAULT_PRIME, size=(60, 30)).astype(np.int64)
    mix = rng.integers(0, 50, size=(30, 400)).astype(np.int64)
    wide = (base @ mix) % DEFAULT_PRIME
    want = rank_mod_p(wide, DEFAULT_PRIME)
    sk = sketch_columns(wide, DEFAULT_PRIME, target=90, seed=17)
    assert sk.shape == (60, 90)
    assert rank_mod_p(sk, DEFAULT_PRIME) == want


def test_sketch_never_overcounts():
    rng = np.random.default_rng(9)
    for seed in range(5):
        m = rng.integers(0, 40, size=(12, 80)).astype(np.int64)
        want = rank_mod_p(m, DEFAULT_PRIME)
        sk = sketch_columns(m, DEFAULT_PRIME, target=20, seed=seed)
        assert rank_mod_p(sk, DEFAULT_PRIME) <= want


def test_sketch_passthrough_when_narrow():
    m = np.arange(12, dtype=np.int64).reshape(3, 4)
    out = sketch_columns(m, DEFAULT_PRIME, target=10, seed=0)
    assert np.array_equal(out, m % DEFAULT_PRIME)


def test_bareiss_rank_exact_on_scaled_hilbertish_matrix():
    # entries engineered so float arithmetic would misjudge the rank
    n = 7
    m = np.array([[1 * (i + j + 1) for j in range(n)] for i in range(n)], dtype=np.int64)
    assert rank_exact(m) == 2
