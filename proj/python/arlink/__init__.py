"""Python access to the arlink library.

The ``run_*`` helpers return ``(exit_code, payload)`` where ``payload`` is the
same JSON document the command-line tool prints with ``--json``.
"""

import json

from ._core import (
    CompatibilityError,
    ConsistencyError,
    InputError,
    ParseError,
    PreconditionError,
    ResourceError,
    class_number_gate,
    eps,
    legendre,
    linking_invariant_n1,
    linking_invariant_n2,
    magnus_matrix,
    mu_linking_number,
    normalize_word,
    ordering_extends_to_quadratic,
    ramifies_in_quadratic,
    redei_solve_conic,
    redei_symbol,
    single_globalization_exists,
)
from . import _core


def _decode(result):
    code, text = result
    return code, json.loads(text)


def run_symbol(kind, *arguments):
    return _decode(_core.cmd_symbol(kind, [str(a) for a in arguments]))


def run_solve(text, lift=False):
    return _decode(_core.cmd_solve_text(text, lift))


def run_magnus(word, index, q):
    return _decode(_core.cmd_magnus(word, index, q))


def run_verify(suite, **options):
    return _decode(_core.cmd_verify(suite, **options))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
