import logging
from dataclasses import dataclass

import numpy as np

from coding import brute_force_ml, build_code, fht, fht_decode_first_order
from decoding import combine_exact, combine_minsum
from subspaces import verify_unique_schedule

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_partition(rng: np.random.Generator, size: int) -> list:
    """Split range(size) into a random number of non-empty parts."""
    parts = int(rng.integers(1, size + 1))
    order = rng.permutation(size)
    labels = np.concatenate((np.arange(parts), rng.integers(0, parts, size=size - parts)))
    return [order[labels == p] for p in range(parts)]


def check_partition_property(rng: np.random.Generator, trials: int = 1000) -> CheckResult:
    """Combining a set directly equals combining the combinations of any partition of it."""
    failures = 0
    for _ in range(trials):
        size = int(rng.integers(1, 17))
        values = rng.uniform(-10.0, 10.0, size=size)
        parts = random_partition(rng, size)
        direct_exact = combine_exact(values)
        nested_exact = combine_exact([combine_exact(values[p]) for p in parts])
        direct_minsum = combine_minsum(values)
        nested_minsum = combine_minsum([combine_minsum(values[p]) for p in parts])
        if not np.isclose(direct_exact, nested_exact, rtol=1e-9, atol=1e-12) or direct_minsum != nested_minsum:
            failures += 1
    return CheckResult('partition property', failures == 0, f"{trials - failures}/{trials} trials agree")


def check_fht_against_ml(rng: np.random.Generator, trials: int = 1000, dims=(2, 3, 4)) -> CheckResult:
    """The fast Hadamard decoder agrees with exhaustive ML search on tie-free inputs."""
    compared = agreed = 0
    for m in dims:
        code = build_code(m, 1)
        for _ in range(trials):
            llr = rng.normal(size=code.n)
            spectrum = np.sort(np.abs(fht(llr)))
            if spectrum[-1] - spectrum[-2] < 1e-9:
                continue
            compared += 1
            agreed += np.array_equal(fht_decode_first_order(llr), brute_force_ml(llr, code))
    return CheckResult('fht vs ml', agreed == compared, f"{agreed}/{compared} decisions agree")


def check_schedules(max_m: int = 6) -> CheckResult:
    """The unique-projection schedule reaches every subspace exactly once for all 2 <= r <= m <= max_m."""
    broken = []
    checked = 0
    for m in range(2, max_m + 1):
        for r in range(2, m + 1):
            checked += 1
            if not verify_unique_schedule(m, r)['complete']:
                broken.append(f"RM({m},{r})")
    detail = f"{checked - len(broken)}/{checked} schedules complete"
    if broken:
        detail += f" (failed: {', '.join(broken)})"
    return CheckResult('unique schedule', not broken, detail)


def run_selftest(seed: int = 1) -> list:
    """
    Run the built-in consistency checks.

    Args:
        seed (int, optional): Seed of the random trials. Defaults to 1.

    Returns:
        list of CheckResult: One result per check.
    """
    rng = np.random.default_rng(seed)
    results = [check_partition_property(rng), check_fht_against_ml(rng), check_schedules()]
    for result in results:
        logger.info(f"[Selftest] {result.name}: {'PASS' if result.passed else 'FAIL'}")
    return results
