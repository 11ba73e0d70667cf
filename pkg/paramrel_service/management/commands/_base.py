from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from django.core.management.base import (
    BaseCommand,
    CommandError,
)

from paramrel_service.common.config import parse_config
from paramrel_service.common.exceptions import ParamrelServiceException
from paramrel_service.common.logs import report_exception
from paramrel_toolkit import exceptions

from ._context import (
    CONFIG_NAME,
    RunContext,
)


__all__ = (
    "EXIT_FAILURE",
    "EXIT_USAGE",
    "RunCommand",
)

_logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_FAILURE = 2


class RunCommand(BaseCommand):
    """a paramrel subcommand: declares its own arguments, then handles a prepared `RunContext`

    every subcommand accepts `--seed`, `--config`, `--out`, `--set KEY=VALUE`
    (repeatable) and `--run DIR` (a training run whose config and checkpoint
    to reuse); usage and config errors exit 1, anything else that goes wrong
    exits 2
    """

    expects_trained_model: bool = True
    requires_system_checks: list = []

    @property
    def command_name(self) -> str:
        return self.__module__.rpartition(".")[2]

    def add_run_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def handle_run(self, context: RunContext, options: dict) -> None:
        raise NotImplementedError

    ###
    # BaseCommand

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, help="master seed (overrides the config)")
        parser.add_argument("--config", type=Path, help="key = value config file")
        parser.add_argument("--out", type=Path, help="output directory")
        parser.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override one config key",
        )
        parser.add_argument("--run", type=Path, help="directory of a finished training run")
        self.add_run_arguments(parser)

    def run_from_argv(self, argv):
        # django exits 2 on bad command-line arguments; here that is a usage error
        _parser = self.create_parser(argv[0], argv[1])
        _parser.called_from_command_line = False
        try:
            _parser.parse_args(argv[2:])
        except CommandError as _error:
            self.stderr.write(f"{_parser.format_usage().rstrip()}\n{_error}")
            sys.exit(EXIT_USAGE)
        super().run_from_argv(argv)

    def handle(self, *args, **options):
        try:
            self.handle_run(self.build_context(options), options)
        except (exceptions.UsageError, exceptions.ConfigError) as _error:
            raise CommandError(str(_error), returncode=EXIT_USAGE) from _error
        except (
            exceptions.ParamrelToolkitException,
            ParamrelServiceException,
            OSError,
        ) as _error:
            _logger.error("%s failed: %s", self.command_name, _error)
            raise CommandError(str(_error), returncode=EXIT_FAILURE) from _error
        except Exception as _error:
            _logger.exception("%s failed unexpectedly", self.command_name)
            report_exception(_error)
            raise CommandError(
                f"unexpected {type(_error).__name__}: {_error}", returncode=EXIT_FAILURE
            ) from _error

    ###
    # local helpers

    def build_context(self, options: dict) -> RunContext:
        if options["run"] is not None and options["config"] is not None:
            raise exceptions.UsageError("give --run or --config, not both")
        _path = options["config"]
        if options["run"] is not None:
            _path = options["run"] / CONFIG_NAME
        _overrides = list(options["overrides"])
        if options["seed"] is not None:
            _overrides.append(f"seed={options['seed']}")
        return RunContext(
            command_name=self.command_name,
            config=parse_config(_path, _overrides),
            out=options["out"],
            run_dir=options["run"],
            expects_trained_model=self.expects_trained_model,
        )
