import os
import argparse
import logging
from dotenv import load_dotenv
from typing import Any, Dict

from src.commands import (
    RunConfig,
    parse_degree_bound,
    parse_int_range,
    parse_rational,
    parse_rational_list,
    parse_rational_range,
    run_command,
)
from src.momentdensity.legendre import SupportInterval
from src.utils.cache_utils import cache_stats, configure_cache
from src.utils.env_utils import Settings, load_settings
from src.utils.errors import SeparabilityError
from src.utils.output_handler import ResultWriter

# Load environment variables
load_dotenv()

# Setup logging
log_level_str = os.environ.get("LOG_LEVEL", "INFO")
log_level = getattr(logging, log_level_str.upper(), logging.INFO)
logging.basicConfig(
    level=log_level,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logging.getLogger().setLevel(log_level)
logger = logging.getLogger(__name__)

EVAL_MODES = ["q", "p", "complement", "envelope", "generalized", "master", "closed", "concise", "diff"]
ASYMPTOTIC_MODES = ["loglog-p", "p-log-ratio", "q-alpha-slope", "q-ratio", "diagonal"]
CHECK_MODES = ["identity", "telescoping", "roots", "exterior", "constants"]


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument('--prec', type=int, default=None, help='Working precision in bits')
    parser.add_argument('--out', type=str, default=None, help='Output file path (optional)')
    parser.add_argument('--format', choices=['csv', 'json'], default='csv', help='Format of tabular output')
    parser.add_argument('--verbose', action='store_true', help='Enable verbose output')


def parse_arguments():
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description='Separability probability formulas for two-qubit states')
    subparsers = parser.add_subparsers(dest='command', required=True)

    p_eval = subparsers.add_parser('eval', help='Evaluate one quantity at (k, alpha)')
    p_eval.add_argument('mode', choices=EVAL_MODES, help='Quantity to evaluate')
    p_eval.add_argument('--k', type=int, required=True, help='Induced-measure exponent')
    p_eval.add_argument('--alpha', type=parse_rational, required=True, help='Random-matrix parameter, e.g. 1/2')
    _add_common(p_eval)

    p_table = subparsers.add_parser('table', help='Tabulate a quantity over k and alpha ranges')
    p_table.add_argument('mode', choices=EVAL_MODES, help='Quantity to tabulate')
    p_table.add_argument('--k-range', type=parse_int_range, required=True, help='Integer range a..b')
    p_table.add_argument('--alpha-range', type=parse_rational_range, required=True,
                         help='Rational range a..b[:step]')
    _add_common(p_table)

    p_asym = subparsers.add_parser('asymptotics', help='Fit an asymptotic sequence')
    p_asym.add_argument('mode', choices=ASYMPTOTIC_MODES, help='Sequence to fit')
    p_asym.add_argument('--k', type=int, default=0, help='Fixed k for the alpha-slope fit')
    p_asym.add_argument('--alpha', type=parse_rational, default=parse_rational('1/2'),
                        help='Fixed alpha for the P fits')
    p_asym.add_argument('--k-range', type=parse_int_range, default=None, help='Integer range a..b')
    p_asym.add_argument('--alphas', type=parse_rational_list, default=None, help='Comma-separated alphas')
    p_asym.add_argument('--alpha-range', type=parse_rational_range, default=None,
                        help='Rational range a..b[:step]')
    _add_common(p_asym)

    p_mc = subparsers.add_parser('mc', help='Monte Carlo estimate of Q and P')
    p_mc.add_argument('--k', type=int, required=True, help='Induced-measure exponent (k >= 0)')
    p_mc.add_argument('--alpha', type=parse_rational, required=True, help='1/2, 1 or 2')
    p_mc.add_argument('--samples', type=int, default=1_000_000, help='Number of sampled states')
    p_mc.add_argument('--seed', type=int, default=None, help='Root seed')
    p_mc.add_argument('--threads', type=int, default=None, help='Worker threads')
    p_mc.add_argument('--dump', type=str, default=None, help='Write (|rho|, |rho^PT|) pairs as float64')
    _add_common(p_mc)

    p_rec = subparsers.add_parser('reconstruct', help='Legendre reconstruction from exact moments')
    p_rec.add_argument('mode', nargs='?', choices=['diff', 'ptdet'], default='diff', help='Moment family')
    p_rec.add_argument('--k', type=int, default=0, help='Induced-measure exponent')
    p_rec.add_argument('--alpha', type=parse_rational, required=True, help='Random-matrix parameter')
    p_rec.add_argument('--moments', type=int, default=None, help='Single Legendre degree to use')
    p_rec.add_argument('--deg', type=str, default=None, help='Comma-separated degree schedule')
    p_rec.add_argument('--tol', type=float, default=None, help='Convergence tolerance')
    _add_common(p_rec)

    p_fit = subparsers.add_parser('fitrec', help='Fit the second-order recurrence of G2 in alpha')
    p_fit.add_argument('--k', type=int, required=True, help='Induced-measure exponent')
    p_fit.add_argument('--alpha-max', type=int, default=40, help='Largest alpha of the fitted sequence')
    p_fit.add_argument('--deg', type=parse_degree_bound, default=None, help='Degree bound d or shape d0,d1,d2')
    _add_common(p_fit)

    p_check = subparsers.add_parser('check', help='Run identity checks')
    p_check.add_argument('mode', choices=CHECK_MODES, help='Family of checks')
    p_check.add_argument('--alphas', type=parse_rational_list, default=None, help='Comma-separated alphas')
    _add_common(p_check)

    return parser.parse_args()


def build_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """Merge parsed flags with environment settings."""
    alpha_values = getattr(args, 'alphas', None) or getattr(args, 'alpha_range', None) or []
    degrees = []
    if getattr(args, 'deg', None) and args.command == 'reconstruct':
        degrees = [int(d) for d in args.deg.split(',') if d.strip()]
    elif getattr(args, 'moments', None):
        degrees = [args.moments]
    return RunConfig(
        command=args.command,
        mode=getattr(args, 'mode', None),
        k=getattr(args, 'k', 0),
        alpha=1 if getattr(args, 'alpha', None) is None else args.alpha,
        k_values=getattr(args, 'k_range', None) or [],
        alpha_values=alpha_values,
        precision_bits=args.prec or settings.precision_bits,
        seed=settings.seed if getattr(args, 'seed', None) is None else args.seed,
        samples=getattr(args, 'samples', 1_000_000),
        threads=getattr(args, 'threads', None) or settings.threads,
        output_path=args.out,
        format=args.format,
        degree_bound=args.deg if args.command == 'fitrec' else None,
        degrees=degrees,
        tolerance=getattr(args, 'tol', None),
        alpha_max=getattr(args, 'alpha_max', 40),
        support=SupportInterval(lo=settings.support_lo, hi=settings.support_hi),
        dump_path=getattr(args, 'dump', None),
    )


def print_result(result: Dict[str, Any], verbose: bool = False):
    """Pretty print the result to the console."""
    print("\n" + "="*80)
    print(f"SEPARABILITY {result.get('command', '').upper()} RESULT")
    print("="*80)

    if not result.get("success", True):
        print("\nSTATUS: FAILED")
    else:
        print("\nSTATUS: SUCCESS")

    print()
    for line in result.get("lines", []):
        print(line)

    if result.get("output_file"):
        print(f"\nOUTPUT: {result['output_file']}")

    payload = result.get("payload")
    if isinstance(payload, dict) and "runtime" in payload:
        runtime = payload["runtime"]
        print("\nRUNTIME:")
        print(f"- Total runtime: {runtime.get('runtime_formatted', 'unknown')}")

    if verbose:
        entries, hits, misses = cache_stats()
        print(f"\nCACHE: {entries} entries, {hits} hits, {misses} misses")

    print("\n" + "="*80)


def main():
    """Main entry point for the separability formula tools."""
    # Parse command line arguments
    args = parse_arguments()

    if args.verbose:
        logging.getLogger('src').setLevel(logging.DEBUG)
        logger.info("Verbose logging enabled")

    try:
        settings = load_settings()
        configure_cache(settings.cache_size)
        config = build_config(args, settings)

        result = run_command(config, ResultWriter(settings.output_dir))
        print_result(result, args.verbose)

        # Return appropriate exit code
        return 0 if result.get("success", False) else 1

    except SeparabilityError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"\nError: {e}")
        return e.exit_code

    except Exception as e:
        logger.error(f"Error running command: {e}", exc_info=True)
        return 1

if __name__ == "__main__":
    exit(main())
