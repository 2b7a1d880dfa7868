"""Integral cohomology rings of the projective unitary groups.

Thin decoding layer over the compiled extension: the extension returns
JSON (coefficients as decimal strings), this module turns it into dicts.
"""
import json

from . import _core

__version__ = "0.1.0"

__all__ = [
    "present",
    "present_text",
    "present_latex",
    "theta",
    "theta_text",
    "groups",
    "groups_text",
    "verify",
    "c_multiplier",
    "binomial_gcd",
]

present_text = _core.present_text
present_latex = _core.present_latex
theta_text = _core.theta_text
groups_text = _core.groups_text
c_multiplier = _core.c_multiplier


def present(n):
    """Generators and relations of the cohomology ring of PU(n)."""
    return json.loads(_core.present_json(n))


def theta(n, index):
    """The connecting map on the generator monomial named by index."""
    return json.loads(_core.theta_json(n, list(index)))


def groups(n, max_degree=-1, jobs=1):
    """The group in each degree, as invariant factors."""
    return json.loads(_core.groups_json(n, max_degree, jobs))


def verify(n, jobs=1):
    """Cross-check n against every oracle that is feasible for it."""
    return json.loads(_core.verify_json(n, jobs))


def binomial_gcd(n, r):
    """gcd(C(n,1), ..., C(n,r)) as an int."""
    return int(_core.binomial_gcd(n, r))
