"""Certified polynomial approximations of symmetric and block-symmetric functions.

Rationals go in and come out as "num/den" strings; approximants come back as
the same JSON documents the command-line tool writes, decoded to dicts.
"""

import json
from fractions import Fraction

from . import _polyapx
from ._polyapx import PrecisionRejected, cheb_eval, closed_form, run_criterion, sweep_csv

__all__ = [
    "PrecisionRejected", "and_or", "cheb_coeffs", "cheb_eval", "closed_form", "deg_eps", "exact_weight",
    "minimax", "run_criterion", "sampling", "small_support", "surjectivity", "sweep_csv", "symmetric", "verify",
]


def _q(x):
    return str(Fraction(x)) if not isinstance(x, str) else x


def _qs(values):
    return [_q(v) for v in values]


def cheb_coeffs(d):
    return json.loads(_polyapx.cheb_coeffs(d))


def and_or(n, eps=None, *, d=None, which="and", precision=_polyapx.DEFAULT_PRECISION):
    if (eps is None) == (d is None):
        raise ValueError("give exactly one of eps and d")
    if d is not None:
        return json.loads(_polyapx.and_or_degree(n, d, which, precision))
    return json.loads(_polyapx.and_or(n, _q(eps), which, precision))


def exact_weight(n, k, m, eps, precision=_polyapx.DEFAULT_PRECISION):
    return json.loads(_polyapx.exact_weight(n, k, m, _q(eps), precision))


def symmetric(values, eps, precision=_polyapx.DEFAULT_PRECISION):
    return json.loads(_polyapx.symmetric(_qs(values), _q(eps), precision))


def small_support(values, eps):
    return json.loads(_polyapx.small_support(_qs(values), _q(eps)))


def sampling(values, eps):
    return json.loads(_polyapx.sampling(_qs(values), _q(eps)))


def surjectivity(n, r, eps="1/3"):
    return json.loads(_polyapx.surjectivity(n, r, _q(eps)))


def deg_eps(values, eps):
    return _polyapx.deg_eps(_qs(values), _q(eps))


def minimax(values, d):
    return json.loads(_polyapx.minimax(_qs(values), d))


def verify(doc, precision=_polyapx.DEFAULT_PRECISION):
    """(passed, max_error as Fraction, argmax) for a constructed approximant."""
    ok, err, where = _polyapx.verify(doc if isinstance(doc, str) else json.dumps(doc), precision)
    return ok, Fraction(err), where
