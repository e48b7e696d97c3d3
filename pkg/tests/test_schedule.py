import pytest

from subspaces import (
    duplicate_count, level_counts, level_projection_counts, projection_indices, q_binomial,
    schedule_paths, schedule_tree, verify_unique_schedule,
)


def test_projection_indices_follow_branch_number():
    assert projection_indices(7, 3) == range(1, 64)
    assert projection_indices(7, 3, b=5) == range(4, 64)
    assert projection_indices(6, 2, b=32) == range(32, 64)
    assert projection_indices(4, 3, unique=False) == range(1, 16)


def test_projection_indices_reject_empty_schedule():
    with pytest.raises(ValueError):
        projection_indices(4, 3, b=8)


@pytest.mark.parametrize("m, r", [(4, 3), (5, 3), (6, 3), (7, 3), (5, 4), (6, 4), (7, 4)])
def test_unique_schedule_is_complete(m, r):
    report = verify_unique_schedule(m, r)
    expected = q_binomial(m, r - 1)
    assert report['distinct_count'] == expected, f"RM({m},{r}): {report['distinct_count']} distinct, expected {expected}"
    assert report['leaf_count'] == expected, f"RM({m},{r}) schedule has duplicate leaves"
    assert report['complete'], f"RM({m},{r}) schedule reported incomplete"


@pytest.mark.parametrize("m", [2, 3, 5, 7])
def test_second_order_schedule_is_single_level(m):
    report = verify_unique_schedule(m, 2)
    n = (1 << m) - 1
    assert (report['leaf_count'], report['distinct_count'], report['complete']) == (n, n, True)


SCHEDULE_CODES = [
    pytest.param(m, r, marks=pytest.mark.slow) if m >= 7 else (m, r)
    for m in range(2, 9) for r in range(2, m + 1)
]


@pytest.mark.parametrize("m, r", SCHEDULE_CODES)
def test_unique_schedule_is_complete_for_every_code(m, r):
    report = verify_unique_schedule(m, r)
    assert report['complete'], (
        f"RM({m},{r}): {report['leaf_count']} leaves, {report['distinct_count']} distinct, "
        f"expected {report['expected_count']}"
    )


def test_rupa_tree_has_sixty_three_top_level_projections():
    first_levels = {path[0][0] for path in schedule_paths(7, 3)}
    assert first_levels == set(range(1, 64))


@pytest.mark.parametrize("m, r", [(4, 3), (5, 3), (6, 4)])
def test_level_counts_match_closed_forms(m, r):
    unique_tree = schedule_tree(m, r, unique=True)
    assert level_counts(unique_tree) == level_projection_counts(m, r, unique=True), (
        f"Unique tree of RM({m},{r}) disagrees with the closed-form level counts"
    )


@pytest.mark.parametrize("m, r", [(4, 3), (5, 3), (5, 4)])
def test_full_tree_level_counts(m, r):
    full_tree = schedule_tree(m, r, unique=False)
    assert level_counts(full_tree) == level_projection_counts(m, r, unique=False)


def test_level_projection_counts_examples():
    assert level_projection_counts(7, 3, unique=True) == [63, 2667]
    assert level_projection_counts(7, 3, unique=False) == [127, 8001]
    assert level_projection_counts(6, 4, unique=True)[-1] == 1395


@pytest.mark.parametrize("m, r, expected", [
    (7, 3, {'N_T': 8001, 'N_U': 2667, 'N_D': 5334}),
    (6, 4, {'N_T': 29295, 'N_U': 1395, 'N_D': 27900}),
    (5, 2, {'N_T': 31, 'N_U': 31, 'N_D': 0}),
])
def test_duplicate_count(m, r, expected):
    assert duplicate_count(m, r) == expected


def test_duplicate_count_kept_fractions():
    for m, r, denominator in [(7, 3, 3), (8, 3, 3), (6, 4, 21), (7, 4, 21)]:
        counts = duplicate_count(m, r)
        assert counts['N_T'] == denominator * counts['N_U'], f"RM({m},{r}) should keep 1/{denominator}"
    counts = duplicate_count(6, 4)
    assert round(100 * counts['N_D'] / counts['N_T'], 2) == 95.24


@pytest.mark.parametrize("m, r", [(3, 1), (3, 4), (0, 0)])
def test_duplicate_count_rejects_invalid_codes(m, r):
    with pytest.raises(ValueError):
        duplicate_count(m, r)
