"""
Gaussian channel toolkit - Main Entry Point

    python src/main.py check channel.json
    python src/main.py catalog attenuator 0.5 0 > attenuator.json
    python src/main.py apply attenuator.json vacuum.json --output out.json

compose order: a state passes through the first channel, then the second.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from cli import CommandHandler, ExitCode
from config_loader import load_config, setup_logging

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 64 so they never collide with analysis exit codes"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help="YAML configuration file (default: $CONFIG_FILE or built-in defaults)")
    common.add_argument('--tol', type=float, help="symmetry/validity tolerance (default 1e-9)")
    common.add_argument('--rank-tol', type=float, help="relative numerical-rank threshold (default 1e-7)")
    common.add_argument('--nmax', type=int, help="Fock truncation level (default 60)")
    common.add_argument('--grid-extent', type=float, help="half-width of the characteristic-function grid (default 6)")
    common.add_argument('--grid-step', type=float, help="grid spacing (default 0.05)")
    common.add_argument('--seed', type=int, help="seed for randomized sampling")
    common.add_argument('--json', action='store_true', help="machine-readable report on standard output")

    parser = ArgumentParser(
        prog='gaussian-channels',
        description="Analyse bosonic Gaussian channels: complete positivity, dilation, extremality, duality",
    )
    commands = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    for name, help_text in (
        ('check', "complete positivity, environment and extremality verdict"),
        ('dilate', "block symplectic dilation with residuals"),
        ('complement', "complementary channel"),
        ('dual', "dual channel and scale |det K|^-1"),
        ('verify-fock', "truncated Fock-space oracle (one mode)"),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('channel_file')

    apply_parser = commands.add_parser('apply', parents=[common], help="output state of a channel")
    apply_parser.add_argument('channel_file')
    apply_parser.add_argument('state_file')
    apply_parser.add_argument('--output', help="write the output state JSON here")

    catalog_parser = commands.add_parser('catalog', parents=[common], help="emit a standard channel as JSON")
    catalog_parser.add_argument('kind', choices=['attenuator', 'amplifier', 'classical_noise'])
    catalog_parser.add_argument('params', type=float, nargs='*', help="eta [nbar] | g [nbar] | nu")

    return parser


def configure(args: argparse.Namespace) -> dict:
    """Configuration file first, then command-line overrides"""
    config = load_config(args.config or os.environ.get('CONFIG_FILE'))
    overrides = (
        ('numerics', 'tol', args.tol),
        ('numerics', 'rank_tol', args.rank_tol),
        ('fock', 'n_max', args.nmax),
        ('fock', 'grid_extent', args.grid_extent),
        ('fock', 'grid_step', args.grid_step),
        ('oracle', 'seed', args.seed),
    )
    for section, key, value in overrides:
        if value is not None:
            config[section][key] = value
    return config


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)

    try:
        config = configure(args)
    except Exception as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return ExitCode.INPUT_ERROR
    setup_logging(config)

    handler = CommandHandler(config)
    if args.command == 'check':
        result = handler.cmd_check(args.channel_file)
    elif args.command == 'dilate':
        result = handler.cmd_dilate(args.channel_file)
    elif args.command == 'complement':
        result = handler.cmd_complement(args.channel_file)
    elif args.command == 'dual':
        result = handler.cmd_dual(args.channel_file)
    elif args.command == 'apply':
        result = handler.cmd_apply(args.channel_file, args.state_file, args.output)
    elif args.command == 'catalog':
        result = handler.cmd_catalog(args.kind, args.params)
    else:
        result = handler.cmd_verify_fock(args.channel_file)

    output = result.render(args.json or args.command == 'catalog')
    if output:
        print(output)
    if result.message:
        print(f"error: {result.message}", file=sys.stderr)
    return int(result.exit_code)


if __name__ == "__main__":
    sys.exit(main())
