"""Invariant noncommutative rational functions under finite solvable groups.

Matrices are lists of rows of cyclotomic literal strings such as "1/2*z8^3".
A representation is either a family name with a kind ("perm", "regular",
"diagonal", "trivial") or a dict {group, degree, images}.
"""

import json

from . import _ncinv

__all__ = ["NcinvError", "equal", "evaluate", "group_info", "invariants", "rewrite", "certify"]


class NcinvError(Exception):
    """Raised for every library error; `kind` names the error class."""

    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


def _call(fn, *args):
    try:
        return json.loads(fn(*args))
    except _ncinv.Error as e:
        kind, _, message = str(e).partition("|")
        raise NcinvError(kind, message) from None


def _rep(family, kind, rep, degree):
    if rep is not None:
        return json.dumps(rep)
    if family is None:
        raise ValueError("give a family name or a representation")
    return json.dumps({"group": family, "kind": kind, "degree": degree})


def _group(group):
    return json.dumps(group if isinstance(group, dict) else {"family": group})


def equal(e1, e2, vars=None, seed=1):
    """Decide e1 = e2; returns {verdict, sizes, center, points_checked[, witness]}."""
    return _call(_ncinv.equal, e1, e2, list(vars or []), seed)


def evaluate(expr, point, vars=None):
    """Value of expr at point {symbol: matrix}."""
    return _call(_ncinv.evaluate, expr, json.dumps(point), list(vars or []))


def group_info(group):
    """Classes, character table, normal abelian subgroups, derived series, unramified verdict."""
    return _call(_ncinv.group_info, _group(group))


def invariants(family=None, kind="auto", rep=None, mode="auto", degree=1):
    """Free generators of the invariant skew field."""
    return _call(_ncinv.invariants, _rep(family, kind, rep, degree), mode)


def rewrite(expr, family=None, kind="auto", rep=None, seed=1, degree=1):
    """Realization of an invariant expression over invariant generators."""
    return _call(_ncinv.rewrite, expr, _rep(family, kind, rep, degree), seed)


def certify(family=None, constraint="entire", kind="auto", rep=None, degree=1, printed_twist=True):
    """R_G and Q_G for a named constraint or a matrix of expression strings."""
    c = constraint if isinstance(constraint, str) else json.dumps(constraint)
    return _call(_ncinv.certify, _rep(family, kind, rep, degree), c, printed_twist)
