"""Axiom schemas over typed metavariables, with matching and instantiation.

Formula slots come in two sorts: classical slots (``$alpha``, ``$beta``,
``$gamma``, ``$delta``) accept only classical formulas, general slots
(``$phi``, ``$psi``, ``$theta``, ``$chi``) accept anything.  ``$x``/``$y``/``$z``
stand for variables and ``$t``/``$s`` for arbitrary terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .formula import (
    QUANTIFIERS,
    ClassicalNeg,
    Constant,
    FoEquality,
    FoPredicate,
    Formula,
    FunctionApp,
    MetaTerm,
    MetaVar,
    PropAtom,
    Signature,
    Term,
    Variable,
    children,
    free_names,
    is_classical,
    rebuild,
    top_for,
)
from .syntax import TERM_META, VARIABLE_META, parse, render, render_term

Instantiation = dict


@dataclass(frozen=True)
class AxiomSchema:
    """A named axiom pattern.

    ``derive`` computes slots that are functions of others (``$beta`` in
    ``forall x. alpha -> alpha[x/t]``), ``solve`` recovers parameters that do
    not occur in the pattern (the term ``t``) from a raw match, and ``side``
    checks the side condition.
    """

    name: str
    pattern: Formula
    side_condition: str = "none"
    derive: Optional[Callable[[dict], dict]] = field(default=None, compare=False)
    solve: Optional[Callable[[dict], Optional[dict]]] = field(default=None, compare=False)
    side: Optional[Callable[[dict], bool]] = field(default=None, compare=False)
    params: tuple = ()

    @property
    def text(self) -> str:
        return render(self.pattern)

    def slots(self) -> dict:
        """Metavariable name -> sort (``classical``, ``general``, ``variable`` or ``term``)."""
        out = dict.fromkeys(self.params, "term")
        for g in _walk(self.pattern):
            if isinstance(g, MetaVar):
                out[g.name] = "classical" if g.classical else "general"
            elif isinstance(g, QUANTIFIERS) and g.var.startswith("$"):
                out[g.var[1:]] = "variable"
            elif isinstance(g, (FoPredicate, FoEquality)):
                terms = g.terms if isinstance(g, FoPredicate) else (g.left, g.right)
                for t in terms:
                    for m in _term_metas(t):
                        out[m] = "variable" if m in VARIABLE_META else "term"
        return out


def _walk(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(children(g))


def _term_metas(t):
    if isinstance(t, MetaTerm):
        yield t.name
    elif isinstance(t, FunctionApp):
        for a in t.args:
            yield from _term_metas(a)


def schema(name: str, text: str, **kw) -> AxiomSchema:
    return AxiomSchema(name, parse(text, allow_meta=True), **kw)


# -- matching ---------------------------------------------------------------


def _match_term(p: Term, t: Term, inst: dict) -> bool:
    if isinstance(p, MetaTerm):
        if p.name in VARIABLE_META:
            if not isinstance(t, Variable):
                return False
            value = t.name
        else:
            value = t
        if p.name in inst:
            return inst[p.name] == value
        inst[p.name] = value
        return True
    if type(p) is not type(t):
        return False
    if isinstance(p, (Variable, Constant)):
        return p.name == t.name
    if isinstance(p, FunctionApp):
        return p.name == t.name and len(p.args) == len(t.args) and all(
            _match_term(a, b, inst) for a, b in zip(p.args, t.args)
        )
    return False


def _match(p: Formula, f: Formula, inst: dict) -> bool:
    if isinstance(p, MetaVar):
        if p.name in inst:
            return inst[p.name] == f
        if p.classical and not is_classical(f):
            return False
        inst[p.name] = f
        return True
    if type(p) is not type(f):
        return False
    if isinstance(p, PropAtom):
        return p.name == f.name
    if isinstance(p, FoPredicate):
        return p.name == f.name and len(p.terms) == len(f.terms) and all(
            _match_term(a, b, inst) for a, b in zip(p.terms, f.terms)
        )
    if isinstance(p, FoEquality):
        return _match_term(p.left, f.left, inst) and _match_term(p.right, f.right, inst)
    if isinstance(p, QUANTIFIERS):
        if p.var.startswith("$"):
            key = p.var[1:]
            if key in inst and inst[key] != f.var:
                return False
            inst[key] = f.var
        elif p.var != f.var:
            return False
    return all(_match(a, b, inst) for a, b in zip(children(p), children(f)))


def match_schema(s: AxiomSchema, f: Formula) -> Optional[Instantiation]:
    """The unique instantiation making ``s`` equal to ``f``, or ``None``."""
    inst: dict = {}
    if not _match(s.pattern, f, inst):
        return None
    if s.solve is not None:
        inst = s.solve(inst)
        if inst is None:
            return None
    if s.derive is not None:
        for key, value in s.derive(inst).items():
            if inst.get(key) != value:
                return None
    if s.side is not None and not s.side(inst):
        return None
    return inst


class InstantiationError(ValueError):
    """An instantiation violates a slot sort or a side condition."""


def _subst_term(t: Term, inst: dict) -> Term:
    if isinstance(t, MetaTerm):
        value = inst[t.name]
        return Variable(value) if isinstance(value, str) else value
    if isinstance(t, FunctionApp):
        return FunctionApp(t.name, tuple(_subst_term(a, inst) for a in t.args))
    return t


def _fill(p: Formula, inst: dict) -> Formula:
    if isinstance(p, MetaVar):
        return inst[p.name]
    if isinstance(p, FoPredicate):
        return FoPredicate(p.name, tuple(_subst_term(t, inst) for t in p.terms))
    if isinstance(p, FoEquality):
        return FoEquality(_subst_term(p.left, inst), _subst_term(p.right, inst))
    if isinstance(p, QUANTIFIERS):
        var = inst[p.var[1:]] if p.var.startswith("$") else p.var
        return type(p)(var, _fill(p.body, inst))
    kids = children(p)
    return rebuild(p, tuple(_fill(k, inst) for k in kids)) if kids else p


def apply_schema(s: AxiomSchema, inst: Instantiation) -> Formula:
    """Instantiate ``s``; derived slots are computed when absent."""
    full = dict(inst)
    if s.derive is not None:
        derived = s.derive(full)
        for key, value in derived.items():
            if key in full and full[key] != value:
                raise InstantiationError(f"{s.name}: slot {key} must be {render(value)}")
            full[key] = value
    for key, sort in s.slots().items():
        if key not in full:
            raise InstantiationError(f"{s.name}: missing slot {key}")
        value = full[key]
        if sort == "classical" and not (isinstance(value, Formula) and is_classical(value)):
            raise InstantiationError(f"{s.name}: slot {key} needs a classical formula")
        if sort == "general" and not isinstance(value, Formula):
            raise InstantiationError(f"{s.name}: slot {key} needs a formula")
        if sort == "variable" and not isinstance(value, str):
            raise InstantiationError(f"{s.name}: slot {key} needs a variable name")
        if sort == "term" and not isinstance(value, Term):
            raise InstantiationError(f"{s.name}: slot {key} needs a term")
    if s.side is not None and not s.side(full):
        raise InstantiationError(f"{s.name}: side condition violated ({s.side_condition})")
    return _fill(s.pattern, full)


def parse_term(text: str, sig: Signature | None = None) -> Term:
    eq = parse(f"{text} = {text}", sig)
    return eq.left


def read_instantiation(s: AxiomSchema, raw: dict, sig: Signature | None = None) -> Instantiation:
    """Turn JSON strings into slot values according to the slot sorts of ``s``."""
    sorts = s.slots()
    out = {}
    for key, value in raw.items():
        sort = sorts.get(key, "general")
        if sort == "variable":
            out[key] = value
        elif sort == "term":
            out[key] = parse_term(value, sig)
        else:
            out[key] = parse(value, sig)
    return out


def render_instantiation(inst: Instantiation) -> dict:
    out = {}
    for key, value in inst.items():
        if isinstance(value, Formula):
            out[key] = render(value)
        elif isinstance(value, Term):
            out[key] = render_term(value)
        else:
            out[key] = value
    return out


# -- alignment helpers used by the solve hooks -------------------------------


def aligned_term(pattern: Formula, actual: Formula, var: str) -> Optional[Term]:
    """The term in ``actual`` sitting where ``pattern`` has a free ``var``."""

    def terms_of(g):
        return g.terms if isinstance(g, FoPredicate) else (g.left, g.right)

    def in_term(pt, at):
        if isinstance(pt, Variable) and pt.name == var:
            return at
        if isinstance(pt, FunctionApp) and isinstance(at, FunctionApp) and len(pt.args) == len(at.args):
            for a, b in zip(pt.args, at.args):
                found = in_term(a, b)
                if found is not None:
                    return found
        return None

    def go(p, a, bound):
        if type(p) is not type(a):
            return None
        if isinstance(p, (FoPredicate, FoEquality)):
            if var in bound:
                return None
            pts, ats = terms_of(p), terms_of(a)
            if len(pts) != len(ats):
                return None
            for pt, at in zip(pts, ats):
                found = in_term(pt, at)
                if found is not None:
                    return found
            return None
        if isinstance(p, QUANTIFIERS):
            return go(p.body, a.body, bound | {p.var})
        for pc, ac in zip(children(p), children(a)):
            found = go(pc, ac, bound)
            if found is not None:
                return found
        return None

    return go(pattern, actual, frozenset())


def aligned_formula(pattern: Formula, actual: Formula, atom: str) -> Optional[Formula]:
    """The subformula of ``actual`` sitting where ``pattern`` has a free atom ``atom``."""

    def go(p, a, bound):
        if isinstance(p, PropAtom) and p.name == atom and atom not in bound:
            return a
        if type(p) is not type(a):
            return None
        if isinstance(p, QUANTIFIERS):
            return go(p.body, a.body, bound | {p.var})
        for pc, ac in zip(children(p), children(a)):
            found = go(pc, ac, bound)
            if found is not None:
                return found
        return None

    return go(pattern, actual, frozenset())


def expansion_top(inst: dict) -> Formula:
    return inst.get("top") or top_for(inst["alpha"])


def is_sentence(f: Formula) -> bool:
    return not free_names(f)


__all__ = [
    "AxiomSchema",
    "Instantiation",
    "InstantiationError",
    "TERM_META",
    "VARIABLE_META",
    "aligned_formula",
    "aligned_term",
    "apply_schema",
    "expansion_top",
    "is_sentence",
    "match_schema",
    "parse_term",
    "read_instantiation",
    "render_instantiation",
    "schema",
    "ClassicalNeg",
]
