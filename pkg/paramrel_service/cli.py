"""the `paramrel` command line: django's `manage.py`, with dashed subcommand names

exit codes: 0 on success, 1 for usage or configuration errors (a bare
`paramrel` included), 2 for any failure while running
"""

import os
import sys


__all__ = ("main",)

PROG = "paramrel"
EXIT_OK = 0
EXIT_USAGE = 1


def main(argv: list[str] | None = None) -> int:
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "app.settings")
    from django.core.management import execute_from_command_line

    _argv = sys.argv[1:] if argv is None else list(argv)
    if not _argv:
        execute_from_command_line([PROG, "help"])
        return EXIT_USAGE
    if not _argv[0].startswith("-"):
        # `flow-heatmap` names the `flow_heatmap` management command
        _argv[0] = _argv[0].replace("-", "_")
    try:
        execute_from_command_line([PROG, *_argv])
    except SystemExit as _exit:
        if _exit.code is None:
            return EXIT_OK
        return _exit.code if isinstance(_exit.code, int) else EXIT_USAGE
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
