"""Python bindings for the Fefferman measure lab."""

import json

from ._fefflab import *  # noqa: F401,F403
from ._fefflab import FefflabError, SCHEMA_ID, report_schema, run


def schema():
    return json.loads(report_schema())


def report(*args):
    """Run a CLI command and return (exit_code, parsed JSON report)."""
    code, out, err = run([str(a) for a in args])
    if not out:
        raise FefflabError(err.strip())
    return code, json.loads(out)
