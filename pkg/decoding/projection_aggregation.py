from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache

import numpy as np

from coding import fht_decode_first_order
from subspaces import enumerate_subspaces, quotient_map
from subspaces.schedule import first_projection, last_projection

from .helpers import (
    aggregate_collapsed, aggregate_one_dim, combine_exact, combine_minsum, early_stop,
    hard_decision, project_one_dim,
)


class Algorithm(str, Enum):
    RPA = 'rpa'
    CPA = 'cpa'
    RUPA = 'rupa'
    IUPA = 'iupa'


class ProjectionRule(str, Enum):
    EXACT_TANH = 'tanh'
    MIN_SUM = 'minsum'


def default_max_iters(m: int, r: int) -> int:
    """Outer iteration budget used for the published curves: 4 for RM(8,3), 3 otherwise."""
    return 4 if (m, r) == (8, 3) else 3


@dataclass(frozen=True)
class DecoderConfig:
    """
    Settings shared by the projection-aggregation decoders.

    Attributes:
        algorithm (Algorithm): Which decoder to run.
        rule (ProjectionRule): Projection (and collapsed aggregation) rule.
        max_iters (int): Iteration budget N_max per decoding loop.
        theta (float): Early-stopping tolerance.
        clamp (float): Magnitude cap of tanh-rule results.
    """
    algorithm: Algorithm = Algorithm.RUPA
    rule: ProjectionRule = ProjectionRule.MIN_SUM
    max_iters: int = 3
    theta: float = 0.05
    clamp: float = 40.0

    def __post_init__(self):
        object.__setattr__(self, 'algorithm', Algorithm(self.algorithm))
        object.__setattr__(self, 'rule', ProjectionRule(self.rule))
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")
        if not 0 <= self.theta < 1:
            raise ValueError(f"theta must lie in [0, 1), got {self.theta}")
        if not self.clamp > 0:
            raise ValueError(f"clamp must be positive, got {self.clamp}")


@dataclass(frozen=True)
class BranchContext:
    """Position of a vector in the projection tree; 1 for a top-level call."""
    b: int = 1

    def __post_init__(self):
        if self.b < 1:
            raise ValueError(f"Branch number must be at least 1, got {self.b}")


@dataclass
class DecodeOutcome:
    """
    Result of decoding one frame.

    Attributes:
        codeword (np.ndarray): Hard decision of the final LLRs.
        iterations_used (int): Outer iterations performed.
        converged (bool): Whether the last outer iteration met the early-stop test.
        first_order_decodes (int): First-order (FHT) decodes over the whole run.
        projection_ops (int): Coset-combine evaluations over the whole run.
        trace (list, optional): Recorded first-order decoder inputs.
    """
    codeword: np.ndarray
    iterations_used: int
    converged: bool
    first_order_decodes: int
    projection_ops: int
    trace: list = field(default=None, repr=False)


@dataclass
class _Counters:
    first_order_decodes: int = 0
    projection_ops: int = 0
    trace: list = None


@lru_cache(maxsize=16)
def _collapsed_tables(m: int, s: int) -> tuple:
    subspaces = enumerate_subspaces(m, s)
    members = np.stack([quotient_map(b).coset_members for b in subspaces])
    members.setflags(write=False)
    return tuple(subspaces), members


def _first_projections(branches: np.ndarray) -> np.ndarray:
    distinct, inverse = np.unique(branches, return_inverse=True)
    return np.array([first_projection(int(b)) for b in distinct], dtype=np.int64)[inverse]


class ProjectionAggregationDecoder:
    """
    Projection-aggregation decoding of RM(m, r) from channel LLRs.

    One class runs all four decoders:

    - RPA projects onto every one-dimensional subspace, decodes each projection
      recursively as RM(m-1, r-1) (every level iterating up to N_max times) and
      aggregates the decisions back into a new LLR estimate.
    - RUPA keeps the recursion but only projects onto {0, i} for i between
      2^floor(log2 b) and 2^{m-r+2} - 1, b being the branch number of the vector,
      which leaves one first-order decode per distinct (r-1)-dimensional subspace.
    - IUPA uses the RUPA tree but only the top level iterates; inner levels make
      a single projection, decode and aggregation pass.
    - CPA projects straight onto every (r-1)-dimensional subspace and aggregates
      with the leave-one-out rule.

    All vectors of one recursion level are handled as a single numpy batch.
    Rows iterate independently: a row leaves the batch once its own early-stop
    test fires, so every vector runs exactly the iterations it would run alone.
    The decoder holds no per-frame state, so one instance can decode any number
    of frames.
    """

    def __init__(self, m: int, r: int, config: DecoderConfig = None, record_first_order: bool = False):
        """
        Args:
            m (int): Code length exponent.
            r (int): Code order, 1 <= r <= m.
            config (DecoderConfig, optional): Decoder settings. Defaults to DecoderConfig().
            record_first_order (bool, optional): Keep every first-order decoder input
                in the outcome's trace. Defaults to False.
        """
        if m < 1 or r < 1 or r > m:
            raise ValueError(f"Invalid Reed-Muller parameters m={m}, r={r}")
        self.m = m
        self.r = r
        self.config = config or DecoderConfig()
        self.record_first_order = record_first_order
        if self.config.algorithm is Algorithm.CPA and r < 2:
            raise ValueError("Collapsed projection-aggregation needs r >= 2")

    @property
    def exact(self) -> bool:
        return self.config.rule is ProjectionRule.EXACT_TANH

    @property
    def unique(self) -> bool:
        return self.config.algorithm in (Algorithm.RUPA, Algorithm.IUPA)

    def decode(self, L, branch: int = 1) -> DecodeOutcome:
        """
        Decode one received LLR vector.

        Args:
            L (array-like): Finite LLRs of length 2^m (positive favours bit 0).
            branch (int, optional): Branch number for the unique schedules. Defaults to 1.

        Returns:
            DecodeOutcome: Decision and accounting.

        Raises:
            ValueError: On a malformed LLR vector or an empty schedule.
        """
        L = np.asarray(L, dtype=np.float64)
        if L.shape != (1 << self.m,):
            raise ValueError(f"LLR vector must have length {1 << self.m}, got shape {L.shape}")
        if not np.all(np.isfinite(L)):
            raise ValueError("LLR vector contains non-finite values")
        BranchContext(branch)
        if self.unique and self.r >= 2 and first_projection(branch) > last_projection(self.m, self.r):
            raise ValueError(f"Branch {branch} leaves no projections for RM({self.m},{self.r})")

        counters = _Counters(trace=[] if self.record_first_order else None)
        if self.config.algorithm is Algorithm.CPA:
            decisions, iterations, converged = self._collapsed(L, counters)
        else:
            decisions, iterations, converged = self._recursive(
                L[None, :], self.m, self.r,
                branches=np.array([branch], dtype=np.int64),
                paths=np.zeros((1, 0), dtype=np.int64),
                depth=0, counters=counters,
            )
            decisions, iterations, converged = decisions[0], int(iterations[0]), bool(converged[0])
        return DecodeOutcome(
            codeword=decisions,
            iterations_used=iterations,
            converged=converged,
            first_order_decodes=counters.first_order_decodes,
            projection_ops=counters.projection_ops,
            trace=counters.trace,
        )

    def _first_order(self, L: np.ndarray, paths: np.ndarray, counters: _Counters) -> np.ndarray:
        counters.first_order_decodes += L.shape[0]
        if counters.trace is not None:
            for row, path in zip(L, paths):
                levels = [(int(i), self.m - d) for d, i in enumerate(path)]
                counters.trace.append((levels, row.copy()))
        return fht_decode_first_order(L)

    def _recursive(self, L: np.ndarray, m: int, r: int, branches: np.ndarray, paths: np.ndarray,
                   depth: int, counters: _Counters) -> tuple:
        rows_total = L.shape[0]
        if r == 1:
            decisions = self._first_order(L, paths, counters)
            return decisions, np.ones(rows_total, dtype=np.int64), np.ones(rows_total, dtype=bool)

        single_pass = self.config.algorithm is Algorithm.IUPA and depth > 0
        budget = 1 if single_pass else self.config.max_iters
        L = L.copy()
        active = np.ones(rows_total, dtype=bool)
        iterations = np.zeros(rows_total, dtype=np.int64)
        converged = np.zeros(rows_total, dtype=bool)
        for _ in range(budget):
            rows = np.flatnonzero(active)
            if rows.size == 0:
                break
            Lhat = self._one_pass(L[rows], m, r, branches[rows], paths[rows], depth, counters)
            iterations[rows] += 1
            if not single_pass:
                done = early_stop(L[rows], Lhat, self.config.theta)
                converged[rows[done]] = True
                active[rows[done]] = False
            L[rows] = Lhat
        return hard_decision(L), iterations, converged

    def _schedule_groups(self, m: int, r: int, branches: np.ndarray):
        if not self.unique:
            yield np.arange(branches.size), np.arange(1, 1 << m, dtype=np.int64)
            return
        lp = last_projection(m, r)
        fps = _first_projections(branches)
        for fp in np.unique(fps):
            yield np.flatnonzero(fps == fp), np.arange(fp, lp + 1, dtype=np.int64)

    def _one_pass(self, L: np.ndarray, m: int, r: int, branches: np.ndarray, paths: np.ndarray,
                  depth: int, counters: _Counters) -> np.ndarray:
        half = L.shape[1] // 2
        Lhat = np.empty_like(L)
        for rows, indices in self._schedule_groups(m, r, branches):
            group, count = rows.size, indices.size
            projected = project_one_dim(L[rows], indices, self.exact, self.config.clamp)
            counters.projection_ops += group * count * half
            child_paths = np.concatenate(
                (np.repeat(paths[rows], count, axis=0), np.tile(indices, group)[:, None]), axis=1
            )
            decisions, _, _ = self._recursive(
                projected.reshape(group * count, half), m - 1, r - 1,
                branches=np.tile(indices, group), paths=child_paths,
                depth=depth + 1, counters=counters,
            )
            Lhat[rows] = aggregate_one_dim(L[rows], indices, decisions.reshape(group, count, half), count)
        return Lhat

    def _collapsed(self, L: np.ndarray, counters: _Counters) -> tuple:
        subspaces, members = _collapsed_tables(self.m, self.r - 1)
        converged = False
        iterations = 0
        for _ in range(self.config.max_iters):
            values = L[members]
            if self.exact:
                projected = combine_exact(values, clamp=self.config.clamp)
            else:
                projected = combine_minsum(values)
            counters.projection_ops += projected.size
            counters.first_order_decodes += projected.shape[0]
            if counters.trace is not None:
                counters.trace.extend(zip(subspaces, projected.copy()))
            decisions = fht_decode_first_order(projected)
            Lhat = aggregate_collapsed(L, members, decisions, self.exact, self.config.clamp)
            iterations += 1
            converged = early_stop(L, Lhat, self.config.theta)
            L = Lhat
            if converged:
                break
        return hard_decision(L), iterations, converged


def _run(L, m: int, r: int, cfg: DecoderConfig, algorithm: Algorithm, branch: int = 1) -> DecodeOutcome:
    cfg = replace(cfg or DecoderConfig(), algorithm=algorithm)
    return ProjectionAggregationDecoder(m, r, cfg).decode(L, branch=branch)


def rpa_decode(L, m: int, r: int, cfg: DecoderConfig = None) -> DecodeOutcome:
    """Recursive projection-aggregation over all one-dimensional subspaces."""
    return _run(L, m, r, cfg, Algorithm.RPA)


def rupa_decode(L, m: int, r: int, ctx: BranchContext = None, cfg: DecoderConfig = None) -> DecodeOutcome:
    """Recursive decoding restricted to the unique-projection schedule."""
    ctx = ctx or BranchContext()
    return _run(L, m, r, cfg, Algorithm.RUPA, branch=ctx.b)


def cpa_decode(L, m: int, r: int, cfg: DecoderConfig = None) -> DecodeOutcome:
    """Collapsed projection-aggregation over all (r-1)-dimensional subspaces."""
    if r < 2:
        raise ValueError("Collapsed projection-aggregation needs r >= 2")
    return _run(L, m, r, cfg, Algorithm.CPA)


def iupa_decode(L, m: int, r: int, cfg: DecoderConfig = None) -> DecodeOutcome:
    """Unique-projection schedule with a single pass at every inner level."""
    return _run(L, m, r, cfg, Algorithm.IUPA)
