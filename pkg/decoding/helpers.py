import numpy as np

from subspaces import QuotientMap, one_dim_coset_tables, quotient_map

TANH_GUARD = 1.0 - 1e-12


def sign(x) -> np.ndarray:
    """Elementwise sign with sign(0) = +1."""
    return np.where(np.asarray(x) < 0, -1.0, 1.0)


def hard_decision(L) -> np.ndarray:
    """
    Map LLRs to bits: negative values decide 1, everything else (zero included) 0.

    Args:
        L (array-like): LLR values.

    Returns:
        np.ndarray: Bits, dtype uint8.
    """
    return (np.asarray(L) < 0).astype(np.uint8)


def _atanh_clamped(product, clamp: float) -> np.ndarray:
    product = np.clip(product, -TANH_GUARD, TANH_GUARD)
    return np.clip(2.0 * np.arctanh(product), -clamp, clamp)


def combine_exact(values, clamp: float = 40.0, axis: int = -1) -> np.ndarray:
    """
    Box-plus combination 2 atanh(prod tanh(x / 2)) along an axis.

    Args:
        values (array-like): LLRs to combine.
        clamp (float, optional): Magnitude cap of the result. Defaults to 40.0.
        axis (int, optional): Axis holding the combined set. Defaults to -1.

    Returns:
        np.ndarray: Combined LLRs with the axis removed.
    """
    product = np.prod(np.tanh(np.asarray(values, dtype=np.float64) / 2.0), axis=axis)
    return _atanh_clamped(product, clamp)


def combine_minsum(values, axis: int = -1) -> np.ndarray:
    """Min-sum combination: smallest magnitude times the product of signs."""
    values = np.asarray(values, dtype=np.float64)
    return np.min(np.abs(values), axis=axis) * np.prod(sign(values), axis=axis)


def _check_quotient(L: np.ndarray, q: QuotientMap):
    n = 1 << q.subspace.ambient_dim
    if L.shape[-1] != n:
        raise ValueError(
            f"LLR vector of length {L.shape[-1]} does not match the quotient of F_2^{q.subspace.ambient_dim}"
        )


def project_exact(L, q: QuotientMap, clamp: float = 40.0) -> np.ndarray:
    """
    Project LLRs onto the cosets of a subspace with the exact tanh rule.

    Args:
        L (array-like): LLR vector(s) of length 2^m along the last axis.
        q (QuotientMap): Coset structure of the subspace.
        clamp (float, optional): Magnitude cap of the projected values. Defaults to 40.0.

    Returns:
        np.ndarray: Projected LLRs of length 2^{m-s}, indexed by coset index.

    Raises:
        ValueError: On a dimension mismatch.
    """
    L = np.asarray(L, dtype=np.float64)
    _check_quotient(L, q)
    return combine_exact(L[..., q.coset_members], clamp=clamp)


def project_minsum(L, q: QuotientMap) -> np.ndarray:
    """
    Project LLRs onto the cosets of a subspace with the min-sum rule.

    Args:
        L (array-like): LLR vector(s) of length 2^m along the last axis.
        q (QuotientMap): Coset structure of the subspace.

    Returns:
        np.ndarray: Projected LLRs of length 2^{m-s}, indexed by coset index.

    Raises:
        ValueError: On a dimension mismatch.
    """
    L = np.asarray(L, dtype=np.float64)
    _check_quotient(L, q)
    return combine_minsum(L[..., q.coset_members])


def project_one_dim(L: np.ndarray, indices: np.ndarray, exact: bool, clamp: float) -> np.ndarray:
    """
    Project a batch of vectors onto several one-dimensional subspaces at once.

    Args:
        L (np.ndarray): Shape (G, 2^m).
        indices (np.ndarray): The nonzero elements i of the subspaces {0, i}, shape (P,).
        exact (bool): Use the tanh rule instead of min-sum.
        clamp (float): Magnitude cap for the tanh rule.

    Returns:
        np.ndarray: Shape (G, P, 2^{m-1}).
    """
    m = L.shape[-1].bit_length() - 1
    representatives, _, _ = one_dim_coset_tables(m)
    first = representatives[indices]
    a = L[:, first]
    b = L[:, first ^ indices[:, None]]
    if exact:
        return _atanh_clamped(np.tanh(a / 2.0) * np.tanh(b / 2.0), clamp)
    return np.minimum(np.abs(a), np.abs(b)) * sign(a) * sign(b)


def aggregate_one_dim(L: np.ndarray, indices: np.ndarray, decisions: np.ndarray, divisor: int) -> np.ndarray:
    """
    Aggregate decoded one-dimensional projections into a new LLR estimate.

    Computes, for every row, (1 / divisor) * sum_i (1 - 2 y_i(coset of z)) L(z XOR i).

    Args:
        L (np.ndarray): Shape (G, 2^m).
        indices (np.ndarray): Subspace elements i, shape (P,).
        decisions (np.ndarray): Decoded projected words, shape (G, P, 2^{m-1}).
        divisor (int): Normalisation.

    Returns:
        np.ndarray: Shape (G, 2^m).
    """
    G, n = L.shape
    m = n.bit_length() - 1
    _, coset_index, xor = one_dim_coset_tables(m)
    where = np.broadcast_to(coset_index[indices], (G, len(indices), n))
    weights = 1.0 - 2.0 * np.take_along_axis(decisions, where, axis=2)
    return np.sum(weights * L[:, xor[indices]], axis=1) / divisor


def aggregate_rpa(L, decisions: list, divisor: int) -> np.ndarray:
    """
    Aggregation of the recursive decoders over one-dimensional subspaces.

    Args:
        L (array-like): Input LLR vector of length 2^m.
        decisions (list of tuple): (Subspace {0, i}, decoded projected word) pairs.
        divisor (int): Must equal the number of decisions (n - 1 for the full
            recursive decoder, lp - fp + 1 for the unique schedule).

    Returns:
        np.ndarray: The aggregated LLR vector.

    Raises:
        ValueError: If the divisor does not match or a subspace is not one-dimensional.
    """
    L = np.asarray(L, dtype=np.float64)
    if divisor != len(decisions):
        raise ValueError(f"Divisor {divisor} does not match {len(decisions)} decisions")
    if any(b.dim != 1 for b, _ in decisions):
        raise ValueError("Recursive aggregation expects one-dimensional subspaces")
    indices = np.array([b.basis[0] for b, _ in decisions], dtype=np.int64)
    words = np.array([y for _, y in decisions], dtype=np.uint8)
    if words.shape[1:] != (L.shape[-1] // 2,):
        raise ValueError(f"Decoded words must have length {L.shape[-1] // 2}")
    return aggregate_one_dim(L[None, :], indices, words[None], divisor)[0]


def leave_one_out_exact(values: np.ndarray, clamp: float) -> np.ndarray:
    """Tanh-rule combination of every coset member's companions, excluding itself."""
    t = np.tanh(values / 2.0)
    ones = np.ones(t.shape[:-1] + (1,))
    before = np.cumprod(np.concatenate((ones, t[..., :-1]), axis=-1), axis=-1)
    after = np.cumprod(np.concatenate((ones, t[..., :0:-1]), axis=-1), axis=-1)[..., ::-1]
    return _atanh_clamped(before * after, clamp)


def leave_one_out_minsum(values: np.ndarray) -> np.ndarray:
    """Min-sum combination of every coset member's companions, excluding itself."""
    magnitude = np.abs(values)
    smallest = np.argmin(magnitude, axis=-1)[..., None]
    two_smallest = np.partition(magnitude, 1, axis=-1)
    position = np.arange(values.shape[-1])
    loo_magnitude = np.where(position == smallest, two_smallest[..., 1:2], two_smallest[..., 0:1])
    signs = sign(values)
    return loo_magnitude * np.prod(signs, axis=-1, keepdims=True) * signs


def aggregate_collapsed(L: np.ndarray, members: np.ndarray, decisions: np.ndarray,
                        exact: bool, clamp: float) -> np.ndarray:
    """
    Aggregation of the collapsed decoder over (r-1)-dimensional subspaces.

    Args:
        L (np.ndarray): Input LLR vector of length 2^m.
        members (np.ndarray): Coset members per subspace, shape (P, C, S).
        decisions (np.ndarray): Decoded first-order words, shape (P, C).
        exact (bool): Use the tanh rule instead of min-sum.
        clamp (float): Magnitude cap for the tanh rule.

    Returns:
        np.ndarray: The aggregated LLR vector.
    """
    values = L[members]
    companions = leave_one_out_exact(values, clamp) if exact else leave_one_out_minsum(values)
    contributions = (1.0 - 2.0 * decisions[..., None]) * companions
    total = np.bincount(members.ravel(), weights=contributions.ravel(), minlength=L.shape[-1])
    return total / members.shape[0]


def aggregate_cpa(L, decisions: list, rule: str = 'minsum', clamp: float = 40.0) -> np.ndarray:
    """
    Aggregation of the collapsed decoder from a list of decisions.

    Args:
        L (array-like): Input LLR vector of length 2^m.
        decisions (list of tuple): (Subspace of dimension r-1, decoded first-order word) pairs.
        rule (str, optional): 'tanh' or 'minsum'. Defaults to 'minsum'.
        clamp (float, optional): Magnitude cap for the tanh rule. Defaults to 40.0.

    Returns:
        np.ndarray: The aggregated LLR vector.

    Raises:
        ValueError: On dimension mismatches or an unknown rule.
    """
    L = np.asarray(L, dtype=np.float64)
    if rule not in ('tanh', 'minsum'):
        raise ValueError(f"Unsupported projection rule '{rule}'")
    if not decisions:
        raise ValueError("Collapsed aggregation needs at least one decision")
    dims = {b.dim for b, _ in decisions}
    if len(dims) != 1:
        raise ValueError(f"All subspaces must share one dimension, got {sorted(dims)}")
    members = np.array([quotient_map(b).coset_members for b, _ in decisions])
    if (1 << decisions[0][0].ambient_dim) != L.shape[-1]:
        raise ValueError(f"LLR vector of length {L.shape[-1]} does not match the subspaces")
    words = np.array([y for _, y in decisions], dtype=np.uint8)
    if words.shape[1:] != members.shape[1:2]:
        raise ValueError(f"Decoded words must have length {members.shape[1]}")
    return aggregate_collapsed(L, members, words, rule == 'tanh', clamp)


def early_stop(L, Lhat, theta: float):
    """
    Convergence test: sum |L - Lhat| <= theta * sum |L| (per row for batches).

    Args:
        L (array-like): Input LLRs of one iteration.
        Lhat (array-like): Aggregated LLRs of the same iteration.
        theta (float): Relative tolerance.

    Returns:
        bool or np.ndarray: True where the iteration has converged.
    """
    L = np.asarray(L, dtype=np.float64)
    Lhat = np.asarray(Lhat, dtype=np.float64)
    if L.shape != Lhat.shape:
        raise ValueError(f"Shape mismatch {L.shape} vs {Lhat.shape}")
    result = np.sum(np.abs(L - Lhat), axis=-1) <= theta * np.sum(np.abs(L), axis=-1)
    return bool(result) if np.ndim(result) == 0 else result
