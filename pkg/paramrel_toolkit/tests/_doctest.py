import doctest

import numpy as np


DOCTEST_FLAGS = doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE


def load_doctests(*modules, optionflags: int = DOCTEST_FLAGS):
    """a `load_tests` hook that runs the doctests of `modules`

    (see https://docs.python.org/3/library/unittest.html#load-tests-protocol)

    keep it in a test module of its own:
    ```
    from paramrel_toolkit.tests._doctest import load_doctests
    import paramrel_toolkit.schedules

    load_tests = load_doctests(paramrel_toolkit.schedules)
    ```
    array reprs in examples print with numpy's default options, whatever a
    previous test left set
    """

    def _load_tests(loader, tests, pattern):
        tests.addTests(
            doctest.DocTestSuite(
                _module,
                optionflags=optionflags,
                setUp=_pin_print_options,
                tearDown=_restore_print_options,
            )
            for _module in modules
        )
        return tests

    return _load_tests


def _pin_print_options(test: doctest.DocTest) -> None:
    _options = np.printoptions(precision=8, threshold=1000, suppress=False)
    _options.__enter__()
    test.globs["__print_options"] = _options


def _restore_print_options(test: doctest.DocTest) -> None:
    test.globs.pop("__print_options").__exit__(None, None, None)
