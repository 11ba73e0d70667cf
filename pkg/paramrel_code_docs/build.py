import os
from pathlib import Path

import django
import pdoc


_DOCUMENTED_MODULES = (
    "paramrel_toolkit",
    "paramrel_service",
)


def build_docs(output_directory: str = "paramrel_code_docs/html/") -> None:
    # the management commands read django settings
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "app.settings")
    django.setup()
    # include the top-level readme for the index page
    pdoc.render.env.globals["paramrel_readme"] = _readme()
    pdoc.pdoc(*_DOCUMENTED_MODULES, output_directory=Path(output_directory))


def _this_directory() -> Path:
    return Path(__file__).resolve().parent


def _readme() -> str:
    with open(_this_directory().parent / "README.md") as _readme_file:
        return _readme_file.read()


if __name__ == "__main__":
    build_docs()
