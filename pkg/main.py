# python
"""
Main entry point for the potential-theory lab
位势论数值实验室主入口
"""

import argparse
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.errors import PotentialLabError
from src.lab import PotentialLab


EXIT_ERROR = 2
SETTINGS_PATH = 'config/config.yaml'


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='potential-lab',
        description='Numerical lab for subharmonic mean-value inequalities and Liouville audits',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Verify the mean-value chain for a harmonic field
  potential-lab --config config/runs/chain_harmonic.json

  # Audit Re z along a doubling sequence, report without timestamp
  potential-lab --config config/runs/audit_re_z.json --output out/audit.csv --no-timestamp

Exit codes:
  0  all checks passed (or the run only computes values)
  1  a check failed or an audit found a recurrence violation
  2  configuration, numerical or I/O error

Lab settings (logging, quadrature, growth, audit, reports) are read from
config/config.yaml in the working directory when present.
        """
    )
    parser.add_argument('--config', '-c', required=True, help='Path to the JSON run configuration')
    parser.add_argument('--output', '-o', help='Report path (overrides output_path)')
    parser.add_argument('--no-timestamp', action='store_true',
                        help='Omit the generation timestamp from the report')
    parser.add_argument('--verbose', '-v', action='store_true', help='Print debug messages')
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    lab = None
    try:
        lab = PotentialLab(config_path=SETTINGS_PATH, verbose=args.verbose)
        cfg = lab.load_run(args.config)
        if args.verbose:
            print(f"✓ Loaded {cfg.command} run from {args.config}")
        return lab.execute(cfg, output=args.output, timestamp=not args.no_timestamp)
    except (PotentialLabError, ValueError, TypeError, OSError) as e:
        print(f"✗ Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        if lab is not None:
            lab.close()


if __name__ == '__main__':
    sys.exit(main())
