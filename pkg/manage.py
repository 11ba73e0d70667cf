#!/usr/bin/env python
"""command-line utility: `python manage.py <command>` runs a paramrel subcommand,
`python manage.py test` runs the test suite"""
import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "app.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django; install requirements/requirements.txt"
            " into the active environment"
        ) from exc
    if len(sys.argv) < 2:
        # no subcommand is a usage error
        execute_from_command_line([sys.argv[0], "help"])
        sys.exit(1)
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
