"""Finite quantales, groupoids and selection bases.

The command functions mirror the ``gqtk`` command line tool: each takes a
JSON document (a dict or a path) and returns the report as a dict, with the
process exit code the CLI would use under ``"exit_code"``.
"""

import json
from os import PathLike

from . import _gqtk
from ._gqtk import BudgetExceeded, Error, InputError, ValidationError

__all__ = [
    "BudgetExceeded",
    "Error",
    "InputError",
    "Quantale",
    "Space",
    "ValidationError",
    "build_gq",
    "check",
    "fixture",
    "fixture_names",
    "fixtures",
    "reconstruct",
    "roundtrip",
    "search",
]

EXIT_PASS, EXIT_CHECK_FAILURE, EXIT_INPUT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


def _text(doc):
    if isinstance(doc, (str, PathLike)):
        with open(doc, encoding="utf-8") as fh:
            return fh.read()
    return json.dumps(doc)


def _report(result):
    code, body = result
    report = json.loads(body)
    report["exit_code"] = code
    return report


def check(doc, kind, *, verify_oracles=False, budget=_gqtk.DEFAULT_SIZE_BUDGET):
    """kind is one of "space", "groupoid", "quantale", "base"."""
    return _report(_gqtk.run_check(_text(doc), kind, verify_oracles, budget))


def build_gq(doc, *, verify_oracles=False, budget=_gqtk.DEFAULT_SIZE_BUDGET):
    return _report(_gqtk.run_build_gq(_text(doc), verify_oracles, budget))


def reconstruct(doc, *, verify_oracles=False, budget=_gqtk.DEFAULT_SIZE_BUDGET):
    return _report(_gqtk.run_reconstruct(_text(doc), verify_oracles, budget))


def roundtrip(doc, *, verify_oracles=False, budget=_gqtk.DEFAULT_SIZE_BUDGET):
    return _report(_gqtk.run_roundtrip(_text(doc), verify_oracles, budget))


def fixtures(which="all", *, verify_oracles=False):
    return _report(_gqtk.run_fixtures(which, verify_oracles))


def search(max_size=4, *, cap=5, budget=1 << 26, threads=1):
    return _report(_gqtk.run_search(max_size, cap, budget, threads))


def fixture(name):
    """The JSON document of a built-in fixture, by name or alias."""
    return json.loads(_gqtk.fixture_document(name))


def fixture_names():
    return list(_gqtk.fixture_names())


class Space(_gqtk.Space):
    """A finite topological space from {"points": [...], "opens": [[...], ...]}."""

    def __init__(self, doc):
        super().__init__(json.dumps(doc) if isinstance(doc, dict) else doc)


class Quantale(_gqtk.Quantale):
    """A finite quantale from {"n", "leq", "product", "involution", "unit"}.

    Only the lattice is validated on construction; call check_axioms().
    """

    def __init__(self, doc):
        super().__init__(json.dumps(doc) if isinstance(doc, dict) else doc)
