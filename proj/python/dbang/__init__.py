"""Distant bang calculus workbench: reduction, Taylor expansion and Boehm approximants."""

import json

from . import _core
from ._core import (
    JoinFailure,
    Lang,
    Mode,
    ParseError,
    Term,
    approximants,
    bt_truncate,
    from_json,
    in_fragment,
    meaningful,
    normalize,
    one_step,
    parse,
    res_normal_forms,
    suites,
    taylor,
    taylor_nf,
    translate,
)


def check(suite, term=None, fuel=10, cap=8):
    """Run a property suite and return its report as a dict."""
    if isinstance(term, str):
        lang = Lang.LAMBDA if suite.startswith(("translation", "embedding")) else Lang.DBANG
        term = parse(term, lang)
    return json.loads(_core.check(suite, term, fuel, cap))


def main(args):
    return _core.main(list(args))


__all__ = [
    "JoinFailure", "Lang", "Mode", "ParseError", "Term", "approximants", "bt_truncate", "check", "from_json",
    "in_fragment", "main", "meaningful", "normalize", "one_step", "parse", "res_normal_forms", "suites", "taylor",
    "taylor_nf", "translate",
]
