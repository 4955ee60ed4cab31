"""Propositional, modal and quantified team logic.

The most used entry points are re-exported here; submodules hold the rest.
"""

from .formula import Formula, Signature, classify
from .oracle import SearchBudget, entails, equiv, valid
from .semantics import LAX, STRICT, eval_team, load_context
from .syntax import ParseError, parse, render

__version__ = "0.1.0"

__all__ = [
    "Formula",
    "LAX",
    "ParseError",
    "STRICT",
    "SearchBudget",
    "Signature",
    "classify",
    "entails",
    "equiv",
    "eval_team",
    "load_context",
    "parse",
    "render",
    "valid",
]
