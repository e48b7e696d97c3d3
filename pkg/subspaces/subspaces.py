import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np


def q_binomial(m: int, s: int) -> int:
    """
    Count the s-dimensional subspaces of the binary space F_2^m.

    The Gaussian binomial coefficient with q = 2 is evaluated in exact integer
    arithmetic: numerator and denominator products are accumulated first and
    divided once, so the result is always an exact integer.

    Args:
        m (int): Ambient dimension.
        s (int): Subspace dimension, 0 <= s <= m.

    Returns:
        int: The number of distinct s-dimensional subspaces.

    Raises:
        ValueError: If a dimension is negative or s > m.
    """
    if m < 0 or s < 0 or s > m:
        raise ValueError(f"Invalid q-binomial arguments m={m}, s={s}")
    numerator = 1
    denominator = 1
    for i in range(s):
        numerator *= (1 << (m - i)) - 1
        denominator *= (1 << (i + 1)) - 1
    return numerator // denominator


def high_bit(i: int) -> int:
    """Index of the highest set bit of a nonzero integer."""
    if i <= 0:
        raise ValueError(f"Element {i} has no highest set bit")
    return i.bit_length() - 1


def _delete_bit(x, h: int):
    low = x & ((1 << h) - 1)
    return ((x >> (h + 1)) << h) | low


def _insert_zero_bit(w, h: int):
    low = w & ((1 << h) - 1)
    return ((w >> h) << (h + 1)) | low


@dataclass(frozen=True)
class Subspace:
    """
    An s-dimensional subspace of F_2^m in canonical basis form.

    The basis is stored in reduced row-echelon form: pivots (highest set bits)
    strictly descending, and every pivot bit is zero in all other basis vectors.
    Two Subspace values are equal exactly when they span the same set.
    """
    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        if not self.basis or len(self.basis) > self.ambient_dim:
            raise ValueError(
                f"Subspace dimension {len(self.basis)} invalid for ambient dimension {self.ambient_dim}"
            )
        pivots = [high_bit(b) for b in self.basis]
        if any(b >= (1 << self.ambient_dim) for b in self.basis):
            raise ValueError(f"Basis {self.basis} lies outside F_2^{self.ambient_dim}")
        if any(p <= q for p, q in zip(pivots, pivots[1:])):
            raise ValueError(f"Basis {self.basis} is not in row-echelon form")
        for idx, b in enumerate(self.basis):
            for j, p in enumerate(pivots):
                if j != idx and (b >> p) & 1:
                    raise ValueError(f"Basis {self.basis} is not reduced at pivot {p}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(high_bit(b) for b in self.basis)

    def elements(self) -> np.ndarray:
        """Return the 2^s members of the subspace in ascending order."""
        return np.sort(self._span_by_subset)

    def contains(self, x: int) -> bool:
        return int(_reduce(np.asarray(x), self.basis)) == 0

    @cached_property
    def _span_by_subset(self) -> np.ndarray:
        # entry t is the XOR of the basis vectors selected by the bits of t
        span = np.zeros(1 << self.dim, dtype=np.int64)
        for j, b in enumerate(self.basis):
            half = 1 << j
            span[half:2 * half] = span[:half] ^ b
        return span

    def __repr__(self):
        return f"Subspace(m={self.ambient_dim}, basis={[bin(b) for b in self.basis]})"


def subspace_from_vectors(m: int, vectors) -> Subspace:
    """
    Build the canonical Subspace spanned by arbitrary vectors of F_2^m.

    Args:
        m (int): Ambient dimension.
        vectors (iterable of int): Spanning vectors; zero and dependent vectors are dropped.

    Returns:
        Subspace: The span in reduced row-echelon form.

    Raises:
        ValueError: If a vector lies outside [0, 2^m) or the span is trivial.
    """
    rows = []
    for v in vectors:
        v = int(v)
        if v < 0 or v >= (1 << m):
            raise ValueError(f"Vector {v} lies outside F_2^{m}")
        # reduce against the rows collected so far
        for row in rows:
            if (v >> high_bit(row)) & 1:
                v ^= row
        if v == 0:
            continue
        p = high_bit(v)
        rows = [row ^ v if (row >> p) & 1 else row for row in rows]
        rows.append(v)
    if not rows:
        raise ValueError("The zero subspace is not supported")
    rows.sort(reverse=True)
    return Subspace(ambient_dim=m, basis=tuple(rows))


def enumerate_one_dim(m: int) -> list:
    """
    List the one-dimensional subspaces B_i = {0, i} of F_2^m in index order.

    Args:
        m (int): Ambient dimension, at least 1.

    Returns:
        list of Subspace: B_1, ..., B_{2^m - 1}.

    Raises:
        ValueError: If m < 1.
    """
    if m < 1:
        raise ValueError(f"Ambient dimension must be at least 1, got {m}")
    return [Subspace(ambient_dim=m, basis=(i,)) for i in range(1, 1 << m)]


def _rref_bases(m: int, s: int):
    for pivots in itertools.combinations(range(m - 1, -1, -1), s):
        pivot_set = set(pivots)
        free_positions = [
            [p for p in range(pivot) if p not in pivot_set]
            for pivot in pivots
        ]
        fillings = [range(1 << len(free)) for free in free_positions]
        for choice in itertools.product(*fillings):
            basis = []
            for pivot, free, bits in zip(pivots, free_positions, choice):
                vector = 1 << pivot
                for j, position in enumerate(free):
                    if (bits >> j) & 1:
                        vector |= 1 << position
                basis.append(vector)
            yield tuple(basis)


def enumerate_subspaces(m: int, s: int) -> list:
    """
    Enumerate every s-dimensional subspace of F_2^m exactly once.

    Subspaces are produced from their reduced row-echelon bases and returned in
    lexicographic order of those basis tuples, which gives a canonical order that
    does not depend on the enumeration strategy. For s = 1 the order coincides
    with `enumerate_one_dim`.

    Args:
        m (int): Ambient dimension.
        s (int): Subspace dimension, 1 <= s <= m.

    Returns:
        list of Subspace: `q_binomial(m, s)` subspaces.

    Raises:
        ValueError: On invalid dimensions.
    """
    if m < 1 or s < 1 or s > m:
        raise ValueError(f"Invalid subspace dimensions m={m}, s={s}")
    return [Subspace(ambient_dim=m, basis=basis) for basis in sorted(_rref_bases(m, s))]


def _reduce(x, basis):
    x = np.array(x, dtype=np.int64, copy=True)
    for b in basis:
        p = high_bit(b)
        x = np.where((x >> p) & 1, x ^ b, x)
    return x


@dataclass(frozen=True)
class QuotientMap:
    """
    The coset structure E/B of a subspace B.

    Attributes:
        subspace (Subspace): The subspace B.
        coset_index_of (np.ndarray): Length-2^m map from element to coset index.
        coset_members (np.ndarray): Shape (2^{m-s}, 2^s); row t lists the members of coset t.
    """
    subspace: Subspace
    coset_index_of: np.ndarray
    coset_members: np.ndarray

    @property
    def num_cosets(self) -> int:
        return self.coset_members.shape[0]


@lru_cache(maxsize=4096)
def quotient_map(b: Subspace) -> QuotientMap:
    """
    Compute the quotient map of a subspace.

    Cosets are ranked by their minimum element. Because the basis is reduced,
    the minimum of each coset is the member whose pivot bits are all zero, so
    the coset index equals that member with the pivot bits deleted; coset 0 is
    the subspace itself.

    Args:
        b (Subspace): The subspace to quotient by.

    Returns:
        QuotientMap: Immutable coset tables (arrays are read-only).
    """
    m = b.ambient_dim
    elements = np.arange(1 << m, dtype=np.int64)
    minimum = _reduce(elements, b.basis)
    index = minimum
    for p in sorted(b.pivots, reverse=True):
        index = _delete_bit(index, p)
    representatives = np.unique(minimum)
    members = representatives[:, None] ^ b._span_by_subset[None, :]
    index.setflags(write=False)
    members.setflags(write=False)
    return QuotientMap(subspace=b, coset_index_of=index, coset_members=members)


def lift(w, i: int, m: int):
    """
    Map a coset index of {0, i} back to its canonical representative in F_2^m.

    The representative is the coset member whose bit at the highest set bit h of
    i is zero; its index is that member with bit h deleted. `lift` inserts the
    zero back at position h, so it is the inverse of the coset-indexing rule used
    by the one-dimensional projections. Works on ints and numpy integer arrays.

    Args:
        w (int or np.ndarray): Coset index in [0, 2^{m-1}).
        i (int): Nonzero element spanning the subspace.
        m (int): Ambient dimension of the space containing i.

    Returns:
        int or np.ndarray: Element of F_2^m with bit h clear.

    Raises:
        ValueError: If i is zero or w is out of range.
    """
    if i == 0:
        raise ValueError("Cannot lift through the zero element")
    if i >= (1 << m):
        raise ValueError(f"Element {i} lies outside F_2^{m}")
    if np.any(np.asarray(w) < 0) or np.any(np.asarray(w) >= (1 << (m - 1))):
        raise ValueError(f"Coset index {w} is out of range for m={m}")
    result = _insert_zero_bit(w, high_bit(i))
    return int(result) if isinstance(w, (int, np.integer)) else result


def lift_through(w, path):
    """
    Lift an element of the innermost projected space back to the original space.

    Args:
        w (int or np.ndarray): Element(s) of F_2^{m - len(path)}.
        path (list of tuple): (chosen index, ambient dimension) per recursion level,
            outermost level first.

    Returns:
        int or np.ndarray: Representative element(s) in the original F_2^m.
    """
    for i, dim in reversed(list(path)):
        w = lift(w, i, dim)
    return w


def induced_subspace(path) -> Subspace:
    """
    Subspace of the original space induced by a chain of one-dimensional projections.

    Projecting through {0, i_0}, then through {0, i_1} of the quotient, and so
    on, is the same as projecting once onto the span of i_0 and the lifts of the
    later indices back through each quotient's canonical section.

    Args:
        path (list of tuple): (chosen index, current ambient dimension) per level,
            outermost first; e.g. [(1, 3), (1, 2)].

    Returns:
        Subspace: The induced len(path)-dimensional subspace in canonical form.

    Raises:
        ValueError: If a chosen index is zero or out of range, or the dimensions
            do not decrease by one per level.
    """
    path = list(path)
    if not path:
        raise ValueError("An induced subspace needs at least one projection level")
    m = path[0][1]
    for level, (i, dim) in enumerate(path):
        if dim != m - level:
            raise ValueError(f"Level {level} has ambient dimension {dim}, expected {m - level}")
        if i <= 0 or i >= (1 << dim):
            raise ValueError(f"Index {i} is invalid at level {level} (ambient dimension {dim})")
    vectors = [lift_through(i, path[:level]) for level, (i, _) in enumerate(path)]
    return subspace_from_vectors(m, vectors)


@lru_cache(maxsize=16)
def one_dim_coset_tables(m: int) -> tuple:
    """
    Lookup tables for projections onto every one-dimensional subspace of F_2^m.

    Args:
        m (int): Ambient dimension, at least 1.

    Returns:
        tuple of np.ndarray:
            - representatives, shape (2^m, 2^{m-1}): entry [i, w] = lift(w, i, m);
            - coset_index, shape (2^m, 2^m): entry [i, z] = coset index of z under {0, i};
            - xor, shape (2^m, 2^m): entry [i, z] = z XOR i.
            Row 0 of each table is unused.
    """
    if m < 1:
        raise ValueError(f"Ambient dimension must be at least 1, got {m}")
    n = 1 << m
    w = np.arange(n // 2, dtype=np.int64)
    z = np.arange(n, dtype=np.int64)
    representatives = np.zeros((n, n // 2), dtype=np.int64)
    coset_index = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        h = high_bit(i)
        representatives[i] = _insert_zero_bit(w, h)
        coset_index[i] = _delete_bit(np.where((z >> h) & 1, z ^ i, z), h)
    xor = np.bitwise_xor.outer(z, z)
    for table in (representatives, coset_index, xor):
        table.setflags(write=False)
    return representatives, coset_index, xor
