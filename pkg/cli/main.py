import argparse
import logging
import os
import sys
from fractions import Fraction

import pandas as pd

from decoding import Algorithm, DecoderConfig, ProjectionAggregationDecoder, ProjectionRule, default_max_iters
from parsing import parse_code_spec, parse_snr_grid, read_llr_file
from simulation import PUBLISHED_FER, FerSimulator, SimConfig
from subspaces import duplicate_count, level_projection_counts, verify_unique_schedule

from .selftest import run_selftest

logger = logging.getLogger(__name__)

SEED_ENV = 'RM_PAAL_SEED'


def _argument_type(parse):
    def convert(text):
        try:
            return parse(text)
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e)) from e
    convert.__name__ = parse.__name__
    return convert


def _add_code(parser):
    parser.add_argument('--code', required=True, type=_argument_type(parse_code_spec), metavar='m,r',
                        help="Reed-Muller code, e.g. 7,3")


def _add_decoder(parser):
    parser.add_argument('--decoder', choices=[a.value for a in Algorithm], default=Algorithm.RUPA.value)
    parser.add_argument('--rule', choices=[r.value for r in ProjectionRule], default=ProjectionRule.MIN_SUM.value)
    parser.add_argument('--nmax', type=int, default=None,
                        help="iteration budget (default: 4 for RM(8,3), 3 otherwise)")
    parser.add_argument('--theta', type=float, default=0.05, help="early-stopping tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='rm-paal',
        description="Projection-aggregation decoding of Reed-Muller codes.",
    )
    parser.add_argument('-v', '--verbose', action='store_true', help="log progress messages to stderr")
    commands = parser.add_subparsers(dest='command', required=True)

    simulate = commands.add_parser('simulate', help="Monte-Carlo FER/BER sweep, CSV output")
    _add_code(simulate)
    _add_decoder(simulate)
    simulate.add_argument('--snr', type=_argument_type(parse_snr_grid), default=None, metavar='a:b:step',
                          help="Eb/N0 grid in dB (default: the published grid of the code)")
    simulate.add_argument('--min-errors', type=int, default=100)
    simulate.add_argument('--max-frames', type=int, default=10 ** 6)
    simulate.add_argument('--seed', type=int, default=1, help=f"base seed (overridden by ${SEED_ENV})")
    simulate.add_argument('--workers', type=int, default=1)
    simulate.add_argument('--out', default=None, help="append CSV rows to this file instead of stdout")
    simulate.add_argument('--resume', action='store_true', help="skip grid points already in --out")
    simulate.add_argument('--progress', action='store_true', help="show a progress bar on stderr")

    decode = commands.add_parser('decode', help="decode one LLR vector read from a text file")
    _add_code(decode)
    _add_decoder(decode)
    decode.add_argument('--in', dest='llr_path', required=True, metavar='PATH',
                        help="whitespace-separated LLR values")

    verify = commands.add_parser('verify-schedule', help="check the unique-projection schedule by brute force")
    _add_code(verify)

    count = commands.add_parser('count', help="projection counts of the full and unique schedules")
    _add_code(count)

    selftest = commands.add_parser('selftest', help="run the built-in consistency checks")
    selftest.add_argument('--seed', type=int, default=1)
    return parser


def _decoder_config(parser, args) -> DecoderConfig:
    m, r = args.code
    nmax = args.nmax if args.nmax is not None else default_max_iters(m, r)
    try:
        return DecoderConfig(algorithm=args.decoder, rule=args.rule, max_iters=nmax, theta=args.theta)
    except ValueError as e:
        parser.error(str(e))


def _require_projection_code(parser, args):
    m, r = args.code
    if r < 2:
        parser.error(f"RM({m},{r}) has no projection levels; need r >= 2")


def _resolve_seed(parser, seed: int) -> int:
    override = os.environ.get(SEED_ENV)
    if override is None or override == '':
        return seed
    try:
        return int(override)
    except ValueError:
        parser.error(f"${SEED_ENV} must be an integer, got '{override}'")


def cmd_simulate(parser, args) -> int:
    m, r = args.code
    config = _decoder_config(parser, args)
    grid = args.snr
    if grid is None:
        curves = PUBLISHED_FER.get((m, r))
        if curves is None:
            parser.error(f"--snr is required for RM({m},{r}) (no published grid)")
        grid = tuple(sorted(curves[config.algorithm.value]))
    if args.resume and not args.out:
        parser.error("--resume requires --out")
    try:
        sim = SimConfig(
            code=(m, r), decoder=config, ebno_grid=grid, max_frames=args.max_frames,
            min_frame_errors=args.min_errors, seed=_resolve_seed(parser, args.seed), workers=args.workers,
        )
    except ValueError as e:
        parser.error(str(e))
    if config.algorithm is Algorithm.CPA and r < 2:
        parser.error("the collapsed decoder needs r >= 2")
    logger.info(f"[Sweep] RM({m},{r}) {config.algorithm.value}/{config.rule.value}, "
                f"N_max={config.max_iters}, theta={config.theta}, {len(grid)} point(s)")
    FerSimulator(sim, progress=args.progress).run_sweep(out=args.out or sys.stdout, resume=args.resume)
    return 0


def cmd_decode(parser, args) -> int:
    m, r = args.code
    config = _decoder_config(parser, args)
    if config.algorithm is Algorithm.CPA and r < 2:
        parser.error("the collapsed decoder needs r >= 2")
    try:
        llr = read_llr_file(args.llr_path, length=1 << m)
    except (OSError, ValueError) as e:
        parser.error(f"{args.llr_path}: {e}")
    outcome = ProjectionAggregationDecoder(m, r, config).decode(llr)
    print(f"codeword: {''.join(str(int(b)) for b in outcome.codeword)}")
    print(f"iterations: {outcome.iterations_used}")
    print(f"converged: {str(outcome.converged).lower()}")
    print(f"first_order_decodes: {outcome.first_order_decodes}")
    print(f"projection_ops: {outcome.projection_ops}")
    return 0


def cmd_verify_schedule(parser, args) -> int:
    _require_projection_code(parser, args)
    m, r = args.code
    report = verify_unique_schedule(m, r)
    status = 'complete' if report['complete'] else 'INCOMPLETE'
    print(f"RM({m},{r}): {report['distinct_count']}/{report['expected_count']} unique, {status}")
    print(f"leaf paths: {report['leaf_count']}")
    return 0 if report['complete'] else 1


def cmd_count(parser, args) -> int:
    _require_projection_code(parser, args)
    m, r = args.code
    counts = duplicate_count(m, r)
    kept = Fraction(counts['N_U'], counts['N_T'])
    print(f"RM({m},{r})")
    print(f"N_T: {counts['N_T']}")
    print(f"N_U: {counts['N_U']}")
    print(f"N_D: {counts['N_D']}")
    print(f"kept fraction: {kept} ({float(kept):.4f})")
    print(f"reduction: {100 * counts['N_D'] / counts['N_T']:.2f}%")
    levels = pd.DataFrame({
        'level': range(r - 1),
        'length': [1 << (m - d) for d in range(r - 1)],
        'rpa_projections': level_projection_counts(m, r, unique=False),
        'rupa_projections': level_projection_counts(m, r, unique=True),
    })
    print(levels.to_string(index=False))
    return 0


def cmd_selftest(parser, args) -> int:
    results = run_selftest(seed=_resolve_seed(parser, args.seed))
    for result in results:
        print(f"{result.name}: {'PASS' if result.passed else 'FAIL'} ({result.detail})")
    return 0 if all(result.passed for result in results) else 1


COMMANDS = {
    'simulate': cmd_simulate,
    'decode': cmd_decode,
    'verify-schedule': cmd_verify_schedule,
    'count': cmd_count,
    'selftest': cmd_selftest,
}


def main(argv=None) -> int:
    """
    Entry point of the `rm-paal` command.

    Returns:
        int: 0 on success, 1 on a runtime failure; flag and input errors exit with 2.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )
    try:
        return COMMANDS[args.command](parser, args)
    except Exception as e:
        print(f"rm-paal: error: {e}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
