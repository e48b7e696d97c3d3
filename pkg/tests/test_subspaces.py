import itertools

import numpy as np
import pytest

from decoding import project_exact, project_minsum
from subspaces import (
    Subspace, duplicate_count, enumerate_one_dim, enumerate_subspaces, induced_subspace, lift, lift_through,
    one_dim_coset_tables, q_binomial, quotient_map, schedule_paths, subspace_from_vectors,
)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.mark.parametrize("m, s, expected", [(7, 1, 127), (7, 2, 2667), (6, 3, 1395), (4, 2, 35), (3, 3, 1)])
def test_q_binomial(m, s, expected):
    assert q_binomial(m, s) == expected, f"q_binomial({m}, {s}) should be {expected}"


def test_q_binomial_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        q_binomial(3, 4)


def test_enumerate_one_dim():
    assert [b.basis for b in enumerate_one_dim(2)] == [(1,), (2,), (3,)]
    assert len(enumerate_one_dim(3)) == 7
    assert [b.basis for b in enumerate_one_dim(1)] == [(1,)]


@pytest.mark.parametrize("m, s", [(3, 1), (4, 2), (3, 3), (5, 2), (5, 3)])
def test_enumerate_subspaces_matches_exhaustive_spans(m, s):
    listed = enumerate_subspaces(m, s)
    assert len(listed) == q_binomial(m, s), f"Expected {q_binomial(m, s)} subspaces, got {len(listed)}"
    assert len(set(listed)) == len(listed), "Enumeration produced duplicates"
    spans = {
        subspace_from_vectors(m, vectors)
        for vectors in itertools.combinations(range(1, 1 << m), s)
    }
    spans = {b for b in spans if b.dim == s}
    assert spans == set(listed), "Enumeration misses subspaces reachable by spanning vectors"


def test_enumerate_subspaces_of_dimension_one_follows_index_order():
    assert enumerate_subspaces(3, 1) == enumerate_one_dim(3)


def test_subspace_rejects_unreduced_basis():
    with pytest.raises(ValueError):
        Subspace(ambient_dim=3, basis=(3, 1))
    with pytest.raises(ValueError):
        Subspace(ambient_dim=2, basis=(4,))


def test_subspace_from_vectors_drops_dependent_vectors():
    b = subspace_from_vectors(3, [3, 1, 2, 0])
    assert b.basis == (2, 1)
    assert list(b.elements()) == [0, 1, 2, 3]
    assert b.contains(3) and not b.contains(4)
    with pytest.raises(ValueError):
        subspace_from_vectors(3, [0])


def test_quotient_map_examples():
    q = quotient_map(Subspace(ambient_dim=2, basis=(1,)))
    assert list(q.coset_index_of) == [0, 0, 1, 1]

    q = quotient_map(Subspace(ambient_dim=2, basis=(3,)))
    assert list(q.coset_index_of) == [0, 1, 1, 0]

    q = quotient_map(subspace_from_vectors(3, [1, 2]))
    assert list(q.coset_index_of) == [0, 0, 0, 0, 1, 1, 1, 1]
    assert q.num_cosets == 2


def test_quotient_map_partitions_the_space(rng):
    m = 5
    for s in (1, 2, 3):
        subspaces = enumerate_subspaces(m, s)
        for idx in rng.choice(len(subspaces), size=10, replace=False):
            b = subspaces[idx]
            q = quotient_map(b)
            assert q.coset_members.shape == (1 << (m - s), 1 << s)
            assert sorted(q.coset_members.ravel()) == list(range(1 << m)), f"{b} cosets do not partition F_2^{m}"
            for t, members in enumerate(q.coset_members):
                assert np.all(q.coset_index_of[members] == t), f"{b}: coset {t} has inconsistent indices"
            x, y = rng.integers(0, 1 << m, size=2)
            same = q.coset_index_of[x] == q.coset_index_of[y]
            assert same == b.contains(int(x ^ y)), f"{b}: coset equality disagrees with XOR membership"


def test_lift_examples():
    assert lift(0b0, 0b10, 2) == 0b00
    assert lift(0b1, 0b10, 2) == 0b01
    assert lift(0b101, 0b0100, 4) == 0b1001
    with pytest.raises(ValueError):
        lift(0, 0, 3)
    with pytest.raises(ValueError):
        lift(4, 1, 3)


@pytest.mark.parametrize("m", [2, 3, 5])
def test_lift_inverts_the_one_dim_coset_index(m):
    _, coset_index, _ = one_dim_coset_tables(m)
    w = np.arange(1 << (m - 1))
    for i in range(1, 1 << m):
        lifted = lift(w, i, m)
        assert np.array_equal(coset_index[i, lifted], w), f"lift is not a section of the coset index for i={i}"
        q = quotient_map(Subspace(ambient_dim=m, basis=(i,)))
        assert np.array_equal(q.coset_index_of, coset_index[i]), f"One-dim tables disagree with quotient_map at i={i}"


def test_induced_subspace_examples():
    assert induced_subspace([(1, 4)]) == Subspace(ambient_dim=4, basis=(1,))
    assert induced_subspace([(1, 3), (1, 2)]) == subspace_from_vectors(3, [0b001, 0b010])
    with pytest.raises(ValueError):
        induced_subspace([(1, 3), (1, 3)])


def test_full_tree_leaves_collapse_onto_all_subspaces():
    leaves = list(schedule_paths(4, 3, unique=False))
    induced = {induced_subspace(path) for path in leaves}
    assert len(leaves) == 105, f"Expected 105 leaf paths, got {len(leaves)}"
    assert induced == set(enumerate_subspaces(4, 2)), "Leaf paths should reach all 35 two-dimensional subspaces"


def _project_chain(L, path, exact):
    for i, dim in path:
        q = quotient_map(Subspace(ambient_dim=dim, basis=(i,)))
        L = project_exact(L, q) if exact else project_minsum(L, q)
    return L


@pytest.mark.parametrize("m, depth", [(3, 2), (4, 2), (5, 2), (4, 3), (5, 3)])
def test_nested_projection_equals_induced_projection(m, depth, rng):
    L = rng.normal(scale=2.0, size=1 << m)
    paths = [p for p in schedule_paths(m, depth + 1, unique=False)]
    if len(paths) > 400:
        paths = [paths[k] for k in rng.choice(len(paths), size=400, replace=False)]
    w = np.arange(1 << (m - depth))
    for path in paths:
        q = quotient_map(induced_subspace(path))
        where = q.coset_index_of[lift_through(w, path)]
        nested_minsum = _project_chain(L, path, exact=False)
        assert np.array_equal(nested_minsum, project_minsum(L, q)[where]), f"Min-sum mismatch on path {path}"
        nested_exact = _project_chain(L, path, exact=True)
        np.testing.assert_allclose(nested_exact, project_exact(L, q)[where], rtol=1e-9, atol=1e-12,
                                   err_msg=f"Exact-rule mismatch on path {path}")


SUBSPACE_DIMS = [
    pytest.param(m, s, marks=pytest.mark.slow) if m >= 7 else (m, s)
    for m in range(1, 9) for s in range(1, m + 1)
]


@pytest.mark.parametrize("m, s", SUBSPACE_DIMS)
def test_enumeration_yields_each_canonical_basis_once(m, s):
    listed = enumerate_subspaces(m, s)
    assert len(listed) == q_binomial(m, s), f"Expected {q_binomial(m, s)} subspaces of F_2^{m}, got {len(listed)}"
    assert len({b.basis for b in listed}) == len(listed), f"Duplicate bases among {s}-dim subspaces of F_2^{m}"
    for b in listed:
        mixed = [row ^ below for row, below in zip(b.basis, b.basis[1:])] + [b.basis[-1]]
        assert subspace_from_vectors(m, mixed) == b, f"{b} does not come back from another spanning set"


@pytest.mark.parametrize("m, s", SUBSPACE_DIMS)
def test_every_quotient_map_partitions_the_space(m, s):
    everything = np.arange(1 << m)
    for b in enumerate_subspaces(m, s):
        q = quotient_map(b)
        members = q.coset_members
        assert members.shape == (1 << (m - s), 1 << s), f"{b}: cosets have shape {members.shape}"
        assert np.array_equal(np.sort(members, axis=None), everything), f"{b} cosets do not partition F_2^{m}"
        rows = np.broadcast_to(np.arange(members.shape[0])[:, None], members.shape)
        assert np.array_equal(q.coset_index_of[members], rows), f"{b}: coset members have inconsistent indices"
        assert np.array_equal(np.sort(members[0]), b.elements()), f"{b}: coset 0 is not the subspace itself"


FULL_TREE_CODES = [
    pytest.param(m, r, marks=pytest.mark.slow) if duplicate_count(m, r)['N_T'] > 20_000 else (m, r)
    for m in range(2, 7) for r in range(2, m + 1)
]


@pytest.mark.parametrize("m, r", FULL_TREE_CODES)
def test_full_tree_leaves_cover_each_subspace(m, r):
    counts = duplicate_count(m, r)
    leaves = 0
    induced = set()
    for path in schedule_paths(m, r, unique=False):
        leaves += 1
        induced.add(induced_subspace(path))
    assert leaves == counts['N_T'], f"RM({m},{r}): {leaves} leaves, expected {counts['N_T']}"
    assert len(induced) == counts['N_U'], f"RM({m},{r}): {len(induced)} distinct subspaces, expected {counts['N_U']}"
    assert leaves - len(induced) == counts['N_D']


def _insert_reduced(basis, v):
    for row in basis:
        if v ^ row < v:
            v ^= row
    p = v.bit_length() - 1
    rows = [row ^ v if (row >> p) & 1 else row for row in basis]
    return tuple(sorted(rows + [v], reverse=True))


def _full_tree_bases(m, r):
    """Reduced basis induced by every leaf of the full tree, in schedule_paths order."""
    def walk(dim, levels, highs, basis):
        for i in range(1, 1 << dim):
            v = i
            for h in reversed(highs):
                v = ((v >> h) << (h + 1)) | (v & ((1 << h) - 1))
            child = _insert_reduced(basis, v)
            if levels == 1:
                yield child
            else:
                yield from walk(dim - 1, levels - 1, highs + (i.bit_length() - 1,), child)

    yield from walk(m, r - 1, (), ())


@pytest.mark.parametrize("m, r", [(3, 2), (3, 3), (4, 3), (4, 4), (5, 3), (5, 4), (5, 5)])
def test_incremental_leaf_bases_match_induced_subspaces(m, r):
    walked = list(_full_tree_bases(m, r))
    expected = [induced_subspace(path).basis for path in schedule_paths(m, r, unique=False)]
    assert walked == expected, f"Incremental bases disagree with induced_subspace for RM({m},{r})"


@pytest.mark.slow
@pytest.mark.parametrize("r", range(2, 8))
def test_full_tree_of_length_128_covers_each_subspace(r):
    counts = duplicate_count(7, r)
    leaves = 0
    induced = set()
    for basis in _full_tree_bases(7, r):
        leaves += 1
        induced.add(basis)
    assert leaves == counts['N_T'], f"RM(7,{r}): {leaves} leaves, expected {counts['N_T']}"
    assert induced == {b.basis for b in enumerate_subspaces(7, r - 1)}, f"RM(7,{r}) leaves miss subspaces"
