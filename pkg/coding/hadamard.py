from functools import lru_cache

import numpy as np

from .reed_muller import RmCode, encode

MAX_BRUTE_FORCE_DIMENSION = 20
_MESSAGE_CHUNK = 1 << 12


def _length_exponent(n: int) -> int:
    m = n.bit_length() - 1
    if n < 2 or n != 1 << m:
        raise ValueError(f"Vector length {n} is not a power of two >= 2")
    return m


@lru_cache(maxsize=16)
def _parity_table(m: int) -> np.ndarray:
    # entry [k, z] = <k, z> over GF(2)
    z = np.arange(1 << m, dtype=np.int64)
    anded = z[:, None] & z[None, :]
    parity = np.zeros_like(anded)
    for j in range(m):
        parity ^= (anded >> j) & 1
    table = parity.astype(np.uint8)
    table.setflags(write=False)
    return table


def fht(L) -> np.ndarray:
    """
    Walsh-Hadamard spectrum W_k = sum_z (-1)^<k,z> L(z) by the fast butterfly.

    Args:
        L (array-like): Real vector(s) of length 2^m along the last axis.

    Returns:
        np.ndarray: The spectrum, same shape as L.
    """
    W = np.array(L, dtype=np.float64)
    n = W.shape[-1]
    _length_exponent(n)
    lead = W.shape[:-1]
    h = 1
    while h < n:
        W = W.reshape(lead + (n // (2 * h), 2, h))
        a = W[..., 0, :]
        b = W[..., 1, :]
        W = np.stack((a + b, a - b), axis=-2)
        h *= 2
    return W.reshape(lead + (n,))


def fht_decode_first_order(L) -> np.ndarray:
    """
    Maximum-likelihood decoding of RM(m, 1) through the fast Hadamard transform.

    The spectrum entry with the largest magnitude selects the linear part k*
    (smallest k on ties); its sign selects the codeword or its complement, a
    spectrum value of exactly zero counting as positive.

    Args:
        L (array-like): LLR vector(s) of length 2^m along the last axis.

    Returns:
        np.ndarray: Decoded first-order codeword bits, dtype uint8, same shape as L.

    Raises:
        ValueError: If the length is not a power of two.
    """
    W = fht(L)
    m = _length_exponent(W.shape[-1])
    best = np.asarray(np.argmax(np.abs(W), axis=-1))
    value = np.take_along_axis(W, best[..., None], axis=-1)
    return _parity_table(m)[best] ^ (value < 0).astype(np.uint8)


def brute_force_ml(L, code: RmCode) -> np.ndarray:
    """
    Exhaustive maximum-likelihood decoding over all 2^k codewords.

    Correlation sum_z (1 - 2c(z)) L(z) is maximised; ties go to the smallest
    message value, message bit j being bit j of that value.

    Args:
        L (array-like): LLR vector of length n.
        code (RmCode): The code to search.

    Returns:
        np.ndarray: The ML codeword, dtype uint8.

    Raises:
        ValueError: If k exceeds MAX_BRUTE_FORCE_DIMENSION or lengths mismatch.
    """
    if code.k > MAX_BRUTE_FORCE_DIMENSION:
        raise ValueError(
            f"Refusing exhaustive search over 2^{code.k} codewords (limit 2^{MAX_BRUTE_FORCE_DIMENSION})"
        )
    L = np.asarray(L, dtype=np.float64)
    if L.shape != (code.n,):
        raise ValueError(f"LLR vector must have length {code.n}, got shape {L.shape}")
    shifts = np.arange(code.k, dtype=np.int64)
    best_value = -np.inf
    best_codeword = None
    for start in range(0, 1 << code.k, _MESSAGE_CHUNK):
        values = np.arange(start, min(start + _MESSAGE_CHUNK, 1 << code.k), dtype=np.int64)
        messages = ((values[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        codewords = encode(code, messages)
        correlation = (1.0 - 2.0 * codewords) @ L
        top = int(np.argmax(correlation))
        if correlation[top] > best_value:
            best_value = correlation[top]
            best_codeword = codewords[top]
    return best_codeword
