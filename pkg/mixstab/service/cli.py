import argparse
import json
import logging
import sys
from typing import List, Optional

import pydantic

from mixstab.constants import ExitCode
from mixstab.errors import MixstabError, UsageError
from mixstab.protocol.config_protocol import RunConfig
from mixstab.protocol.report_protocol import ErrorResponse
from mixstab.service.commands import CommandContext, commands, get_command
from mixstab.utils import build_logger, resolve_threads
from mixstab.version import MIXSTAB_VERSION


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with ExitCode.USAGE and the JSON error body."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def add_global_args(parser):
    parser.add_argument("--config", type=str, default=None, help="JSON configuration file")
    parser.add_argument(
        "--output", type=str, default=None,
        help="Output file prefix; data goes to stdout when omitted",
    )
    parser.add_argument("--threads", type=int, default=None, help="Parallelism degree (default: CPU count)")
    parser.add_argument("--log-file", type=str, default=None, help="Also log to this file under the log directory")
    parser.add_argument("--verbose", action="store_true", help="Log at INFO level")


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    add_global_args(common)

    parser = ArgumentParser(prog="mixstab", description="Stability, spectra and droplets of binary Bose mixtures")
    parser.add_argument("--version", action="version", version=f"mixstab {MIXSTAB_VERSION}")
    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=ArgumentParser)
    subparsers.required = True
    for name, command in commands.items():
        sub = subparsers.add_parser(name, help=command.help, parents=[common])
        command.add_args(sub)
    return parser


def _error(e: Exception, code: ExitCode) -> int:
    body = ErrorResponse(message=str(getattr(e, "message", e)), code=int(code), type=type(e).__name__)
    sys.stderr.write(body.json() + "\n")
    return int(code)


def _load_config(path: Optional[str]) -> RunConfig:
    if path is None:
        return RunConfig()
    return RunConfig.parse_file(path)


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except MixstabError as e:
        return _error(e, e.exit_code)

    logger = build_logger("mixstab.cli", args.log_file)
    logging.getLogger().setLevel(logging.INFO if args.verbose else logging.WARNING)
    logging.captureWarnings(True)

    try:
        config = _load_config(args.config)
    except (OSError, ValueError, pydantic.ValidationError) as e:
        return _error(e, ExitCode.CONFIG_INVALID)

    try:
        context = CommandContext(
            args=args,
            config=config,
            threads=resolve_threads(args.threads),
            output=args.output,
            logger=logger,
        )
        logger.info(f"args: {vars(args)}")
        logger.info(f"config: {json.dumps(json.loads(config.json()), sort_keys=True)}")
        return int(get_command(args.command).run(context))
    except MixstabError as e:
        logger.debug("command failed", exc_info=True)
        return _error(e, e.exit_code)
    except pydantic.ValidationError as e:
        return _error(e, ExitCode.CONFIG_INVALID)


def main():
    sys.exit(run())
