import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
import pandas as pd
from scipy.stats import beta
from tqdm import tqdm

from coding import build_code, encode
from decoding import DecoderConfig, ProjectionAggregationDecoder

from .channel import ChannelConfig, modulate, transmit_and_llr
from .reference import reference_fer

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    'code', 'decoder', 'rule', 'nmax', 'theta', 'ebno_db', 'frames', 'frame_errors', 'fer',
    'ci95_low', 'ci95_high', 'bit_errors', 'ber', 'avg_iters', 'avg_fo_decodes', 'seed',
]
# columns identifying one sweep when resuming
_RUN_KEYS = ['code', 'decoder', 'rule', 'nmax', 'theta', 'seed']


@dataclass(frozen=True)
class SimConfig:
    """
    Monte-Carlo settings for one code and decoder.

    Attributes:
        code (tuple): (m, r) of the Reed-Muller code.
        decoder (DecoderConfig): Decoder settings.
        ebno_grid (tuple): Eb/N0 points in dB, simulated in order.
        max_frames (int): Hard cap on frames per point.
        min_frame_errors (int): Stop a point after this many frame errors.
        seed (int): Base seed; frame t of every point draws from the stream (seed, t).
        workers (int): Worker processes; 1 decodes in-process.
        chunk_frames (int): Frames dispatched per reduction step.
    """
    code: tuple
    decoder: DecoderConfig = field(default_factory=DecoderConfig)
    ebno_grid: tuple = ()
    max_frames: int = 1_000_000
    min_frame_errors: int = 100
    seed: int = 1
    workers: int = 1
    chunk_frames: int = 256

    def __post_init__(self):
        object.__setattr__(self, 'code', tuple(int(v) for v in self.code))
        object.__setattr__(self, 'ebno_grid', tuple(float(v) for v in self.ebno_grid))
        m, r = self.code
        if m < 1 or r < 1 or r > m:
            raise ValueError(f"Invalid Reed-Muller parameters m={m}, r={r}")
        if self.max_frames < 1:
            raise ValueError(f"max_frames must be at least 1, got {self.max_frames}")
        if self.min_frame_errors < 1:
            raise ValueError(f"min_frame_errors must be at least 1, got {self.min_frame_errors}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"Seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        if self.chunk_frames < 1:
            raise ValueError(f"chunk_frames must be at least 1, got {self.chunk_frames}")

    @property
    def code_label(self) -> str:
        return f"RM({self.code[0]},{self.code[1]})"


@dataclass(frozen=True)
class FrameResult:
    frame_error: bool
    bit_errors: int
    iterations: int
    first_order_decodes: int


@dataclass(frozen=True)
class FerPoint:
    """
    Counters and estimates for one Eb/N0 point.

    Attributes:
        ebno_db (float): Eb/N0 in dB.
        frames (int): Frames decoded.
        frame_errors (int): Frames with any bit in error.
        bit_errors (int): Codeword bits in error.
        fer (float): frame_errors / frames.
        ber (float): bit_errors / (frames * n).
        avg_iterations (float): Mean outer iterations per frame.
        avg_first_order_decodes (float): Mean first-order decodes per frame.
        ci95_low (float): Clopper-Pearson lower bound on the FER.
        ci95_high (float): Clopper-Pearson upper bound on the FER.
    """
    ebno_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float
    avg_iterations: float
    avg_first_order_decodes: float
    ci95_low: float
    ci95_high: float


def clopper_pearson(k: int, n: int, alpha: float = 0.05) -> tuple:
    """
    Exact binomial confidence interval for k successes in n trials.

    Args:
        k (int): Observed errors.
        n (int): Trials, at least 1.
        alpha (float, optional): One minus the confidence level. Defaults to 0.05.

    Returns:
        tuple: (low, high).
    """
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"Invalid binomial counts k={k}, n={n}")
    low = 0.0 if k == 0 else float(beta.ppf(alpha / 2, k, n - k + 1))
    high = 1.0 if k == n else float(beta.ppf(1 - alpha / 2, k + 1, n - k))
    return low, high


def frame_outcome(sim: SimConfig, ebno_db: float, frame_index: int) -> FrameResult:
    """
    Simulate one frame: random message, encode, BPSK, AWGN, decode, compare.

    The frame depends only on its arguments, so any worker can compute any frame.

    Args:
        sim (SimConfig): Simulation settings.
        ebno_db (float): Operating point.
        frame_index (int): Index of the frame within the point.

    Returns:
        FrameResult: Error counts and decoder accounting of the frame.
    """
    m, r = sim.code
    code = build_code(m, r)
    rng = np.random.default_rng([sim.seed, frame_index])
    message = rng.integers(0, 2, size=code.k, dtype=np.uint8)
    codeword = encode(code, message)
    llr = transmit_and_llr(modulate(codeword), ChannelConfig(ebno_db, code.rate), rng)
    outcome = ProjectionAggregationDecoder(m, r, sim.decoder).decode(llr)
    bit_errors = int(np.count_nonzero(outcome.codeword != codeword))
    return FrameResult(
        frame_error=bit_errors > 0,
        bit_errors=bit_errors,
        iterations=outcome.iterations_used,
        first_order_decodes=outcome.first_order_decodes,
    )


def _frame_task(args) -> FrameResult:
    return frame_outcome(*args)


def _point_from_counts(ebno_db: float, frames: int, frame_errors: int, bit_errors: int,
                       iterations: int, first_order_decodes: int, n: int) -> FerPoint:
    low, high = clopper_pearson(frame_errors, frames)
    return FerPoint(
        ebno_db=ebno_db,
        frames=frames,
        frame_errors=frame_errors,
        bit_errors=bit_errors,
        fer=frame_errors / frames,
        ber=bit_errors / (frames * n),
        avg_iterations=iterations / frames,
        avg_first_order_decodes=first_order_decodes / frames,
        ci95_low=low,
        ci95_high=high,
    )


class FerSimulator:
    """
    Frame-error-rate Monte-Carlo harness for the projection-aggregation decoders.

    Frames are decoded in chunks (optionally across worker processes) and
    reduced in frame-index order; a point stops exactly at the frame that
    reaches `min_frame_errors`, so the counters do not depend on the number of
    workers.
    """

    def __init__(self, sim: SimConfig, progress: bool = False):
        """
        Args:
            sim (SimConfig): Simulation settings.
            progress (bool, optional): Show a tqdm progress bar on stderr. Defaults to False.
        """
        self.sim = sim
        self.code = build_code(*sim.code)
        self.progress = progress

    def _frames(self, executor, ebno_db: float, start: int, stop: int):
        tasks = [(self.sim, ebno_db, t) for t in range(start, stop)]
        if executor is None:
            return map(_frame_task, tasks)
        chunksize = max(1, len(tasks) // (4 * self.sim.workers))
        return executor.map(_frame_task, tasks, chunksize=chunksize)

    def _run_point(self, ebno_db: float, executor) -> FerPoint:
        sim = self.sim
        frames = frame_errors = bit_errors = iterations = decodes = 0
        bar = tqdm(total=sim.max_frames, file=sys.stderr, disable=not self.progress,
                   desc=f"{sim.code_label} {sim.decoder.algorithm.value} {ebno_db:g} dB", leave=False)
        with bar:
            while frames < sim.max_frames and frame_errors < sim.min_frame_errors:
                stop = min(frames + sim.chunk_frames, sim.max_frames)
                for result in self._frames(executor, ebno_db, frames, stop):
                    frames += 1
                    frame_errors += result.frame_error
                    bit_errors += result.bit_errors
                    iterations += result.iterations
                    decodes += result.first_order_decodes
                    bar.update(1)
                    if frame_errors >= sim.min_frame_errors:
                        break
                bar.set_postfix(errors=frame_errors)
        point = _point_from_counts(ebno_db, frames, frame_errors, bit_errors, iterations, decodes, self.code.n)
        logger.info(f"[Sweep] {sim.code_label} {sim.decoder.algorithm.value} @ {ebno_db:g} dB: "
                    f"{frame_errors}/{frames} frame errors, FER {point.fer:.4g}")
        published = reference_fer(sim.code, sim.decoder.algorithm.value, ebno_db)
        if published is not None:
            logger.info(f"[Reference] measured FER {point.fer:.4g} "
                        f"[{point.ci95_low:.4g}, {point.ci95_high:.4g}] vs published {published:.4g}")
        return point

    def _executor(self):
        return ProcessPoolExecutor(max_workers=self.sim.workers) if self.sim.workers > 1 else None

    def run_fer_point(self, point) -> FerPoint:
        """
        Simulate one Eb/N0 point.

        Args:
            point (ChannelConfig or float): Operating point (a bare float is read as Eb/N0 in dB).

        Returns:
            FerPoint: Counters and estimates of the point.
        """
        ebno_db = point.ebno_db if isinstance(point, ChannelConfig) else float(point)
        ChannelConfig(ebno_db, self.code.rate)
        executor = self._executor()
        try:
            return self._run_point(ebno_db, executor)
        finally:
            if executor is not None:
                executor.shutdown()

    def _run_identity(self) -> dict:
        cfg = self.sim.decoder
        return {
            'code': self.sim.code_label,
            'decoder': cfg.algorithm.value,
            'rule': cfg.rule.value,
            'nmax': cfg.max_iters,
            'theta': cfg.theta,
            'seed': self.sim.seed,
        }

    def csv_row(self, point: FerPoint) -> dict:
        """Flatten a point into the CSV schema."""
        row = self._run_identity()
        row.update({
            'ebno_db': point.ebno_db,
            'frames': point.frames,
            'frame_errors': point.frame_errors,
            'fer': point.fer,
            'ci95_low': point.ci95_low,
            'ci95_high': point.ci95_high,
            'bit_errors': point.bit_errors,
            'ber': point.ber,
            'avg_iters': point.avg_iterations,
            'avg_fo_decodes': point.avg_first_order_decodes,
        })
        return {column: row[column] for column in CSV_COLUMNS}

    def _completed_points(self, out: str) -> dict:
        if not os.path.exists(out) or os.path.getsize(out) == 0:
            return {}
        previous = pd.read_csv(out, float_precision='round_trip')
        missing = set(CSV_COLUMNS) - set(previous.columns)
        if missing:
            raise ValueError(f"Cannot resume from {out}: missing columns {sorted(missing)}")
        key = self._run_identity()
        mask = np.ones(len(previous), dtype=bool)
        for column in _RUN_KEYS:
            if column == 'theta':
                mask &= np.isclose(previous[column].astype(float), key[column])
            else:
                mask &= previous[column].astype(str) == str(key[column])
        completed = {}
        for _, row in previous[mask].iterrows():
            completed[float(row['ebno_db'])] = FerPoint(
                ebno_db=float(row['ebno_db']),
                frames=int(row['frames']),
                frame_errors=int(row['frame_errors']),
                bit_errors=int(row['bit_errors']),
                fer=float(row['fer']),
                ber=float(row['ber']),
                avg_iterations=float(row['avg_iters']),
                avg_first_order_decodes=float(row['avg_fo_decodes']),
                ci95_low=float(row['ci95_low']),
                ci95_high=float(row['ci95_high']),
            )
        return completed

    def _emit(self, point: FerPoint, out, header: bool):
        if out is None:
            return
        frame = pd.DataFrame([self.csv_row(point)], columns=CSV_COLUMNS)
        if isinstance(out, (str, os.PathLike)):
            frame.to_csv(out, mode='a', header=header, index=False)
        else:
            frame.to_csv(out, header=header, index=False)
            out.flush()

    def run_sweep(self, out=None, resume: bool = False) -> list:
        """
        Simulate every point of the Eb/N0 grid, writing one CSV row per point as it finishes.

        Args:
            out (str or file-like, optional): CSV destination; rows are appended. Defaults to None.
            resume (bool, optional): Skip points already stored in `out` for the same
                code, decoder, rule, N_max, theta and seed. Defaults to False.

        Returns:
            list of FerPoint: One point per grid entry, in grid order.
        """
        if resume and not isinstance(out, (str, os.PathLike)):
            raise ValueError("Resuming a sweep needs an output file path")
        completed = self._completed_points(out) if resume else {}
        if isinstance(out, (str, os.PathLike)):
            header = not os.path.exists(out) or os.path.getsize(out) == 0
        else:
            header = True
        points = []
        executor = self._executor() if self.sim.ebno_grid else None
        try:
            for ebno_db in self.sim.ebno_grid:
                if ebno_db in completed:
                    logger.info(f"[Resume] {self.sim.code_label} @ {ebno_db:g} dB already in {out}, skipping")
                    points.append(completed[ebno_db])
                    continue
                point = self._run_point(ebno_db, executor)
                self._emit(point, out, header)
                header = False
                points.append(point)
        finally:
            if executor is not None:
                executor.shutdown()
        return points


def points_frame(points: list) -> pd.DataFrame:
    """FerPoints as a table, one row per point."""
    return pd.DataFrame([asdict(p) for p in points], columns=list(FerPoint.__dataclass_fields__))


def run_fer_point(sim: SimConfig, point) -> FerPoint:
    """Simulate one operating point with a fresh FerSimulator."""
    return FerSimulator(sim).run_fer_point(point)


def run_sweep(sim: SimConfig, out=None, resume: bool = False) -> list:
    """Simulate the whole Eb/N0 grid of `sim`; see FerSimulator.run_sweep."""
    return FerSimulator(sim).run_sweep(out=out, resume=resume)
