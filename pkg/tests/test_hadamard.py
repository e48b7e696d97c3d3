import itertools

import numpy as np
import pytest

from coding import brute_force_ml, build_code, encode, fht, fht_decode_first_order
from coding.hadamard import MAX_BRUTE_FORCE_DIMENSION


@pytest.fixture
def rng():
    return np.random.default_rng(11)


def _hadamard_matrix(m):
    z = np.arange(1 << m)
    parity = np.array([[bin(k & x).count('1') & 1 for x in z] for k in z])
    return 1 - 2 * parity


def test_fht_matches_dense_transform(rng):
    for m in (1, 2, 3, 5):
        L = rng.normal(size=1 << m)
        np.testing.assert_allclose(fht(L), _hadamard_matrix(m) @ L, rtol=1e-12, atol=1e-12)


def test_fht_is_batched(rng):
    L = rng.normal(size=(3, 4, 16))
    spectrum = fht(L)
    assert spectrum.shape == L.shape
    np.testing.assert_allclose(spectrum[1, 2], fht(L[1, 2]))


def test_fht_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        fht(np.ones(6))


def test_fht_decode_examples():
    assert list(fht_decode_first_order([4.0, 4.0, 4.0, 4.0])) == [0, 0, 0, 0]
    assert list(fht_decode_first_order([-4.0, -4.0, -4.0, -4.0])) == [1, 1, 1, 1]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_fht_decoder_is_maximum_likelihood(m, rng):
    code = build_code(m, 1)
    compared = 0
    for _ in range(1000):
        L = rng.normal(size=code.n)
        top = np.sort(np.abs(fht(L)))
        if top[-1] - top[-2] < 1e-9:
            continue
        compared += 1
        decoded = fht_decode_first_order(L)
        expected = brute_force_ml(L, code)
        assert np.array_equal(decoded, expected), f"FHT and ML disagree for m={m} on {L}"
    assert compared > 900, "Too many tie cases skipped"


def test_brute_force_examples(rng):
    code = build_code(3, 2)
    c = encode(code, rng.integers(0, 2, size=code.k))
    assert np.array_equal(brute_force_ml(4.0 * (1 - 2.0 * c), code), c)
    assert not brute_force_ml(np.zeros(code.n), code).any(), "Ties must resolve to the all-zeros codeword"


def test_brute_force_matches_independent_search(rng):
    code = build_code(3, 2)
    codewords = [
        encode(code, np.array(u, dtype=np.uint8)) for u in itertools.product([0, 1], repeat=code.k)
    ]
    for _ in range(50):
        L = rng.normal(size=code.n)
        scores = [float(np.dot(1 - 2.0 * c, L)) for c in codewords]
        best = codewords[int(np.argmax(scores))]
        assert np.array_equal(brute_force_ml(L, code), best)


def test_brute_force_refuses_large_codes():
    code = build_code(7, 3)
    assert code.k > MAX_BRUTE_FORCE_DIMENSION
    with pytest.raises(ValueError):
        brute_force_ml(np.zeros(code.n), code)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_fht_decoder_commutes_with_first_order_codewords(m, rng):
    code = build_code(m, 1)
    compared = 0
    for _ in range(300):
        L = rng.normal(size=code.n)
        top = np.sort(np.abs(fht(L)))
        if top[-1] - top[-2] < 1e-9:
            continue
        compared += 1
        c = encode(code, rng.integers(0, 2, size=code.k))
        flipped = fht_decode_first_order(L * (1 - 2.0 * c))
        assert np.array_equal(flipped, fht_decode_first_order(L) ^ c), (
            f"Flipping L by codeword {c} should shift the decision by the same codeword (m={m})"
        )
    assert compared > 250, "Too many tie cases skipped"
