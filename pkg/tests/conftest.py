import contextlib
import io
import json

import pytest

from sigmapairs.cli import main as cli_main

KNOWN_PAIRS = ((3, 3, 13), (4, 13, 61), (22, 22419767768701, 107419560853453))

FIRST_TERMS = [1, 1, 3, 13, 61, 291, 1393, 6673, 31971, 153181]


@pytest.fixture
def run_cli():
    """Invoke the CLI in-process, returning (exit_code, stdout)."""

    def run(*argv):
        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = cli_main(list(argv))
        return code, buffer.getvalue()

    return run


def json_doc(output: str) -> dict:
    return json.loads(output)


def results_only(output: str) -> str:
    """Canonical serialization of the results subtree, the part that
    must be byte-identical across resumes and thread counts."""
    return json.dumps(json_doc(output)["results"], indent=2)
