import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from subspaces import Subspace, quotient_map


def _as_bits(vector, length: int, what: str) -> np.ndarray:
    bits = np.asarray(vector, dtype=np.uint8)
    if bits.shape[-1:] != (length,):
        raise ValueError(f"{what} must have length {length}, got shape {bits.shape}")
    if np.any(bits > 1):
        raise ValueError(f"{what} must be binary")
    return bits


@dataclass(frozen=True)
class RmCode:
    """
    The Reed-Muller code RM(m, r) of blocklength n = 2^m.

    Generator rows are the evaluations of the multilinear monomials of degree at
    most r, ordered by degree and then lexicographically on the sorted variable
    indices. Variable z_{j+1} is bit j of the element index, so the row of {z_1}
    alternates 0, 1, 0, 1, ...

    Attributes:
        m (int): Number of variables.
        r (int): Maximum monomial degree.
        monomials (tuple): Zero-based variable index tuples labelling the rows.
        generator (np.ndarray): k x n binary generator matrix (read-only).
    """
    m: int
    r: int
    monomials: tuple = field(repr=False)
    generator: np.ndarray = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def k(self) -> int:
        return len(self.monomials)

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def d_min(self) -> int:
        return 1 << (self.m - self.r)

    @cached_property
    def _echelon(self) -> tuple:
        # fully reduced row basis of the generator and its pivot columns
        rows = self.generator.copy()
        pivots = []
        top = 0
        for col in range(self.n):
            candidates = np.flatnonzero(rows[top:, col]) + top
            if candidates.size == 0:
                continue
            pivot = candidates[0]
            if pivot != top:
                rows[[top, pivot]] = rows[[pivot, top]]
            others = np.flatnonzero(rows[:, col])
            others = others[others != top]
            rows[others] ^= rows[top]
            pivots.append(col)
            top += 1
            if top == rows.shape[0]:
                break
        return rows[:top], np.array(pivots, dtype=np.int64)


@lru_cache(maxsize=64)
def build_code(m: int, r: int) -> RmCode:
    """
    Construct RM(m, r).

    Args:
        m (int): Number of variables, at least 1.
        r (int): Order, 0 <= r <= m.

    Returns:
        RmCode: The code description; k = sum_{i<=r} C(m, i).

    Raises:
        ValueError: If (m, r) does not describe a Reed-Muller code.
    """
    if m < 1 or r < 0 or r > m:
        raise ValueError(f"Invalid Reed-Muller parameters m={m}, r={r}")
    z = np.arange(1 << m, dtype=np.int64)
    variables = [((z >> j) & 1).astype(np.uint8) for j in range(m)]
    monomials = []
    rows = []
    for degree in range(r + 1):
        for monomial in itertools.combinations(range(m), degree):
            row = np.ones(1 << m, dtype=np.uint8)
            for j in monomial:
                row &= variables[j]
            monomials.append(monomial)
            rows.append(row)
    generator = np.array(rows, dtype=np.uint8)
    generator.setflags(write=False)
    return RmCode(m=m, r=r, monomials=tuple(monomials), generator=generator)


def encode(code: RmCode, u) -> np.ndarray:
    """
    Encode message bits: c = u G over GF(2).

    Args:
        code (RmCode): The code.
        u (array-like): Binary message of length k (leading batch axes allowed).

    Returns:
        np.ndarray: Codeword bits of length n, dtype uint8.

    Raises:
        ValueError: On a length mismatch.
    """
    u = _as_bits(u, code.k, "Message")
    return ((u.astype(np.int64) @ code.generator) & 1).astype(np.uint8)


def is_codeword(code: RmCode, c) -> bool:
    """
    Test membership in the row space of the generator by GF(2) elimination.

    Args:
        code (RmCode): The code.
        c (array-like): Binary vector of length n.

    Returns:
        bool: True if c is a codeword.

    Raises:
        ValueError: On a length mismatch.
    """
    residual = _as_bits(c, code.n, "Word").copy()
    rows, pivots = code._echelon
    for row, pivot in zip(rows, pivots):
        if residual[pivot]:
            residual ^= row
    return not residual.any()


def project_codeword(code: RmCode, c, b: Subspace) -> np.ndarray:
    """
    Project a codeword onto the cosets of a subspace by XOR-folding.

    The result is indexed by the quotient map's coset-index rule and is a
    codeword of RM(m - s, r - s).

    Args:
        code (RmCode): The code c belongs to.
        c (array-like): Binary vector of length n.
        b (Subspace): Subspace of F_2^m with dimension s <= r.

    Returns:
        np.ndarray: Binary vector of length 2^{m-s}.

    Raises:
        ValueError: If the subspace is larger than r or lives in another space.
    """
    c = _as_bits(c, code.n, "Codeword")
    if b.ambient_dim != code.m:
        raise ValueError(f"Subspace of F_2^{b.ambient_dim} cannot project an RM({code.m},{code.r}) word")
    if b.dim > code.r:
        raise ValueError(f"Subspace dimension {b.dim} exceeds the code order {code.r}")
    q = quotient_map(b)
    return np.bitwise_xor.reduce(c[..., q.coset_members], axis=-1)
