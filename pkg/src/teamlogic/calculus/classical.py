"""Validity of classical formulas, used to check classical shorthand steps.

Propositional formulas go through truth tables, modal ones through a
tableau for K, quantified Boolean formulas through quantifier expansion.
First-order formulas are abstracted to propositional skeletons, which is
sound but incomplete.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ..formula import (
    Box,
    ClassicalImpl,
    ClassicalNeg,
    ForAll,
    Formula,
    FragmentError,
    MetaVar,
    PropAtom,
    fragment_base,
    classify,
    free_names,
    is_classical,
    subformulas,
)
from ..schema import _fill
from ..semantics import _classical, assignment


def truth_table_valid(f: Formula) -> bool:
    props = sorted({g.name for g in subformulas(f) if isinstance(g, PropAtom)} & free_names(f))
    for bits in itertools.product((0, 1), repeat=len(props)):
        if not _classical(f, assignment(dict(zip(props, bits))), "prop", None):
            return False
    return True


# -- K tableau over negation normal form --------------------------------------


def _nnf(f: Formula, positive: bool = True) -> tuple:
    if isinstance(f, PropAtom):
        return ("lit", f.name, positive)
    if isinstance(f, ClassicalNeg):
        return _nnf(f.body, not positive)
    if isinstance(f, ClassicalImpl):
        if positive:
            return ("or", _nnf(f.left, False), _nnf(f.right, True))
        return ("and", _nnf(f.left, True), _nnf(f.right, False))
    if isinstance(f, Box):
        return ("box" if positive else "dia", _nnf(f.body, positive))
    raise FragmentError(f"not a modal formula: {type(f).__name__}")


@lru_cache(maxsize=65536)
def _satisfiable(todo: frozenset) -> bool:
    # Saturate conjunctions, branch on disjunctions, then open one world per diamond.
    for g in todo:
        if g[0] == "and":
            return _satisfiable((todo - {g}) | {g[1], g[2]})
    for g in todo:
        if g[0] == "or":
            rest = todo - {g}
            return _satisfiable(rest | {g[1]}) or _satisfiable(rest | {g[2]})
    lits = {(g[1], g[2]) for g in todo if g[0] == "lit"}
    if any((name, not pol) in lits for name, pol in lits):
        return False
    boxed = frozenset(g[1] for g in todo if g[0] == "box")
    return all(_satisfiable(boxed | {g[1]}) for g in todo if g[0] == "dia")


def k_valid(f: Formula) -> bool:
    """Validity in the basic modal logic K."""
    return not _satisfiable(frozenset({_nnf(f, False)}))


# -- quantified Boolean and first-order ------------------------------------------


def qbf_valid(f: Formula) -> bool:
    from ..elimination import qbf_expand

    return truth_table_valid(qbf_expand(f))


def skeleton(f: Formula, atoms: dict) -> Formula:
    """Replace maximal subformulas not built by ``!`` and ``->`` with fresh atoms."""
    if isinstance(f, ClassicalNeg):
        return ClassicalNeg(skeleton(f.body, atoms))
    if isinstance(f, ClassicalImpl):
        return ClassicalImpl(skeleton(f.left, atoms), skeleton(f.right, atoms))
    if f not in atoms:
        atoms[f] = PropAtom(f"_{len(atoms)}")
    return atoms[f]


def atomize_metas(f: Formula) -> Formula:
    """Read schematic letters as fresh atoms; validity is closed under substitution."""
    metas = {g.name for g in subformulas(f) if isinstance(g, MetaVar)}
    if not metas:
        return f
    return _fill(f, {m: PropAtom(f"_{m}") for m in metas})


def classically_valid(f: Formula) -> bool:
    if not is_classical(f):
        raise FragmentError("classical validity needs a classical formula")
    f = atomize_metas(f)
    base = fragment_base(classify(f))
    if base == "PL":
        return truth_table_valid(f)
    if base == "ML":
        return k_valid(f)
    if base == "QBF":
        return qbf_valid(f)
    return truth_table_valid(skeleton(f, {}))


__all__ = ["atomize_metas", "classically_valid", "k_valid", "qbf_valid", "skeleton", "truth_table_valid", "ForAll"]
