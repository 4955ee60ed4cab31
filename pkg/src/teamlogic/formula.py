"""Formula and term syntax trees, derived connectives, substitution and fragments.

Only twelve node kinds exist after parsing.  Every other connective
(conjunction, tensor, diamond, ...) is built from them by the constructor
helpers below, and recognised again by the matching ``as_*`` helpers when
rendering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Union


class Term:
    __slots__ = ()


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import render

        return render(self)


def _node(cls):
    """Frozen slotted dataclass whose hash is computed once per node."""
    keys = [k for k in cls.__annotations__ if not k.startswith("_")]

    def __post_init__(self):
        object.__setattr__(self, "_h", hash((cls.__name__,) + tuple(getattr(self, k) for k in keys)))

    def __hash__(self):
        return self._h

    cls.__post_init__ = __post_init__
    cls.__hash__ = __hash__
    return dataclass(frozen=True, slots=True)(cls)


# -- terms -----------------------------------------------------------------


@_node
class Variable(Term):
    name: str
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class Constant(Term):
    name: str
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class FunctionApp(Term):
    name: str
    args: tuple
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class MetaTerm(Term):
    """Term slot of an axiom schema; ``x``/``y``/``z`` slots only accept variables."""

    name: str
    _h: int = field(default=0, init=False, repr=False, compare=False)


# -- formulas --------------------------------------------------------------


@_node
class PropAtom(Formula):
    name: str
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class FoPredicate(Formula):
    name: str
    terms: tuple
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class FoEquality(Formula):
    left: Term
    right: Term
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class ClassicalNeg(Formula):
    body: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class ClassicalImpl(Formula):
    left: Formula
    right: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class StrongNeg(Formula):
    body: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class MaterialImpl(Formula):
    left: Formula
    right: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class LinearImpl(Formula):
    left: Formula
    right: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class Box(Formula):
    body: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class Delta(Formula):
    body: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class ForAll(Formula):
    var: str
    body: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class Shriek(Formula):
    var: str
    body: Formula
    _h: int = field(default=0, init=False, repr=False, compare=False)


@_node
class MetaVar(Formula):
    """Formula slot of an axiom schema.  Only appears inside schema patterns."""

    name: str
    classical: bool
    _h: int = field(default=0, init=False, repr=False, compare=False)


PRIMITIVE_KINDS = (
    PropAtom,
    FoPredicate,
    FoEquality,
    ClassicalNeg,
    ClassicalImpl,
    StrongNeg,
    MaterialImpl,
    LinearImpl,
    Box,
    Delta,
    ForAll,
    Shriek,
)

UNARY = (ClassicalNeg, StrongNeg, Box, Delta)
BINARY = (ClassicalImpl, MaterialImpl, LinearImpl)
QUANTIFIERS = (ForAll, Shriek)
ATOMIC = (PropAtom, FoPredicate, FoEquality, MetaVar)
TEAM_KINDS = (StrongNeg, MaterialImpl, LinearImpl, Delta, Shriek)

Substitute = Union[Term, Formula]


@dataclass(frozen=True)
class Signature:
    """First-order vocabulary.  ``props`` optionally fixes the proposition order."""

    relations: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    constants: tuple = ()
    props: tuple = ()

    def __post_init__(self):
        names = list(self.relations) + list(self.functions) + list(self.constants)
        if len(names) != len(set(names)):
            raise ValueError("signature symbols must have distinct names")
        for name, arity in list(self.relations.items()) + list(self.functions.items()):
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"bad arity for {name}: {arity!r}")
        object.__setattr__(self, "constants", tuple(self.constants))
        object.__setattr__(self, "props", tuple(self.props))

    @property
    def is_first_order(self) -> bool:
        return bool(self.relations or self.functions or self.constants)

    @classmethod
    def from_json(cls, data: dict) -> "Signature":
        return cls(
            relations=dict(data.get("relations", {})),
            functions=dict(data.get("functions", {})),
            constants=tuple(data.get("constants", ())),
            props=tuple(data.get("props", ())),
        )

    def extended(self, constants) -> "Signature":
        return Signature(dict(self.relations), dict(self.functions), self.constants + tuple(constants), self.props)


EMPTY_SIGNATURE = Signature()


# -- traversal -------------------------------------------------------------


def children(f: Formula) -> tuple:
    if isinstance(f, UNARY):
        return (f.body,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def rebuild(f: Formula, kids) -> Formula:
    """Same node kind as ``f`` with new children."""
    if isinstance(f, UNARY):
        return type(f)(kids[0])
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, kids[0])
    return f


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformula occurrences, parents before children."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def depth(f: Formula) -> int:
    kids = children(f)
    return 1 + max((depth(k) for k in kids), default=0)


def map_bottom_up(f: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    kids = children(f)
    if kids:
        new = tuple(map_bottom_up(k, fn) for k in kids)
        if new != kids:
            f = rebuild(f, new)
    return fn(f)


def replace_at(f: Formula, path: tuple, new: Formula) -> Formula:
    """Replace the subformula reached by child indices ``path``."""
    if not path:
        return new
    kids = list(children(f))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return rebuild(f, kids)


def at_path(f: Formula, path: tuple) -> Formula:
    for i in path:
        f = children(f)[i]
    return f


def is_classical(f: Formula) -> bool:
    """No strong negation, material or linear implication, Delta or shriek."""
    for g in subformulas(f):
        if isinstance(g, TEAM_KINDS):
            return False
        if isinstance(g, MetaVar) and not g.classical:
            return False
    return True


def term_vars(t: Term) -> set:
    if isinstance(t, Variable):
        return {t.name}
    if isinstance(t, FunctionApp):
        out = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def free_names(f: Formula) -> set:
    """Free term variables and free propositions (quantifiers bind both)."""
    if isinstance(f, PropAtom):
        return {f.name}
    if isinstance(f, FoPredicate):
        out = set()
        for t in f.terms:
            out |= term_vars(t)
        return out
    if isinstance(f, FoEquality):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_names(f.body) - {f.var}
    out = set()
    for k in children(f):
        out |= free_names(k)
    return out


def free_term_vars(f: Formula) -> set:
    """Free first-order variables only."""
    if isinstance(f, FoPredicate):
        out = set()
        for t in f.terms:
            out |= term_vars(t)
        return out
    if isinstance(f, FoEquality):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_term_vars(f.body) - {f.var}
    out = set()
    for k in children(f):
        out |= free_term_vars(k)
    return out


def all_names(f: Formula) -> set:
    """Every proposition, variable and bound name occurring anywhere in ``f``."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, PropAtom):
            out.add(g.name)
        elif isinstance(g, FoPredicate):
            for t in g.terms:
                out |= term_vars(t)
        elif isinstance(g, FoEquality):
            out |= term_vars(g.left) | term_vars(g.right)
        elif isinstance(g, QUANTIFIERS):
            out.add(g.var)
    return out


def propositions(f: Formula) -> list:
    """Sorted names of all propositional atoms (free or bound)."""
    return sorted({g.name for g in subformulas(f) if isinstance(g, PropAtom)})


def has_first_order(f: Formula) -> bool:
    return any(isinstance(g, (FoPredicate, FoEquality)) for g in subformulas(f))


# -- derived connectives ---------------------------------------------------

DEFAULT_TOP_ATOM = "p"


def top(atom: str = DEFAULT_TOP_ATOM) -> Formula:
    p = PropAtom(atom)
    return ClassicalImpl(p, p)


def fo_top(var: str = "v") -> Formula:
    v = Variable(var)
    return ForAll(var, FoEquality(v, v))


def bottom(t: Formula | None = None) -> Formula:
    return ClassicalNeg(t if t is not None else top())


def conj(a: Formula, b: Formula) -> Formula:
    return ClassicalNeg(ClassicalImpl(a, ClassicalNeg(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return ClassicalImpl(ClassicalNeg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return conj(ClassicalImpl(a, b), ClassicalImpl(b, a))


def tensor(a: Formula, b: Formula) -> Formula:
    return StrongNeg(LinearImpl(a, StrongNeg(b)))


def wedge(a: Formula, b: Formula) -> Formula:
    """Team conjunction."""
    return StrongNeg(MaterialImpl(a, StrongNeg(b)))


def vee(a: Formula, b: Formula) -> Formula:
    """Team (Boolean) disjunction."""
    return MaterialImpl(StrongNeg(a), b)


def strong_iff(a: Formula, b: Formula) -> Formula:
    return wedge(MaterialImpl(a, b), MaterialImpl(b, a))


def strong_falsum(t: Formula | None = None) -> Formula:
    t = t if t is not None else top()
    return StrongNeg(MaterialImpl(t, t))


def nonempty(t: Formula | None = None) -> Formula:
    return StrongNeg(bottom(t))


def some(b: Formula) -> Formula:
    """``E b``: some member of the team satisfies ``b``."""
    return StrongNeg(ClassicalNeg(b))


def dia(a: Formula) -> Formula:
    return StrongNeg(Delta(StrongNeg(a)))


def exists(var: str, a: Formula) -> Formula:
    return StrongNeg(Shriek(var, StrongNeg(a)))


def classical_dia(a: Formula) -> Formula:
    return ClassicalNeg(Box(ClassicalNeg(a)))


def classical_exists(var: str, a: Formula) -> Formula:
    return ClassicalNeg(ForAll(var, ClassicalNeg(a)))


def big(op: Callable[[Formula, Formula], Formula], items, empty: Formula | None = None) -> Formula:
    """Left fold of a binary constructor; ``empty`` for an empty list."""
    items = list(items)
    if not items:
        if empty is None:
            raise ValueError("empty fold without a unit")
        return empty
    out = items[0]
    for x in items[1:]:
        out = op(out, x)
    return out


def as_conj(f):
    if isinstance(f, ClassicalNeg) and isinstance(f.body, ClassicalImpl) and isinstance(f.body.right, ClassicalNeg):
        return f.body.left, f.body.right.body
    return None


def as_disj(f):
    if isinstance(f, ClassicalImpl) and isinstance(f.left, ClassicalNeg):
        return f.left.body, f.right
    return None


def as_tensor(f):
    if isinstance(f, StrongNeg) and isinstance(f.body, LinearImpl) and isinstance(f.body.right, StrongNeg):
        return f.body.left, f.body.right.body
    return None


def as_wedge(f):
    if isinstance(f, StrongNeg) and isinstance(f.body, MaterialImpl) and isinstance(f.body.right, StrongNeg):
        return f.body.left, f.body.right.body
    return None


def as_vee(f):
    if isinstance(f, MaterialImpl) and isinstance(f.left, StrongNeg):
        return f.left.body, f.right
    return None


def as_some(f):
    if isinstance(f, StrongNeg) and isinstance(f.body, ClassicalNeg):
        return f.body.body
    return None


def as_dia(f):
    if isinstance(f, StrongNeg) and isinstance(f.body, Delta) and isinstance(f.body.body, StrongNeg):
        return f.body.body.body
    return None


def as_exists(f):
    if isinstance(f, StrongNeg) and isinstance(f.body, Shriek) and isinstance(f.body.body, StrongNeg):
        return f.body.var, f.body.body.body
    return None


def as_strong_iff(f):
    w = as_wedge(f)
    if w and isinstance(w[0], MaterialImpl) and isinstance(w[1], MaterialImpl):
        a, b = w[0].left, w[0].right
        if w[1].left == b and w[1].right == a:
            return a, b
    return None


def neg(a: Formula) -> Formula:
    """Classical negation that strips an existing negation instead of doubling it."""
    return a.body if isinstance(a, ClassicalNeg) else ClassicalNeg(a)


def top_for(f: Formula) -> Formula:
    """A fixed classical tautology over the material of ``f``."""
    if has_first_order(f):
        return fo_top(fresh_name("v", all_names(f)))
    props = sorted(free_names(f) & set(propositions(f))) or propositions(f)
    return top(props[0] if props else DEFAULT_TOP_ATOM)


# -- substitution ----------------------------------------------------------


def fresh_name(base: str, used) -> str:
    """``base`` itself if unused, else ``base`` with the least unused numeric suffix."""
    used = set(used)
    if base not in used:
        return base
    stem = base.rstrip("0123456789") or base
    i = 1
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def substitute_term(t: Term, x: str, s: Term) -> Term:
    if isinstance(t, Variable):
        return s if t.name == x else t
    if isinstance(t, FunctionApp):
        return FunctionApp(t.name, tuple(substitute_term(a, x, s) for a in t.args))
    return t


def rename_free(f: Formula, old: str, new: str) -> Formula:
    """Rename free occurrences of ``old``, as variable or proposition, to ``new``."""
    if isinstance(f, PropAtom):
        return PropAtom(new) if f.name == old else f
    if isinstance(f, FoPredicate):
        return FoPredicate(f.name, tuple(substitute_term(a, old, Variable(new)) for a in f.terms))
    if isinstance(f, FoEquality):
        return FoEquality(substitute_term(f.left, old, Variable(new)), substitute_term(f.right, old, Variable(new)))
    if isinstance(f, QUANTIFIERS):
        if f.var == old:
            return f
        if f.var == new:
            fresh = fresh_name(new, all_names(f.body) | {old, new})
            return type(f)(fresh, rename_free(rename_free(f.body, new, fresh), old, new))
        return type(f)(f.var, rename_free(f.body, old, new))
    kids = children(f)
    return rebuild(f, tuple(rename_free(k, old, new) for k in kids)) if kids else f


def substitute_var(f: Formula, x: str, t: Substitute) -> Formula:
    """Capture-avoiding replacement of the free variable ``x`` by ``t``.

    A :class:`Term` replaces first-order occurrences; a :class:`Formula`
    replaces propositional occurrences (quantified Boolean formulas).
    """
    if isinstance(t, Term):
        if any(isinstance(g, PropAtom) and g.name == x for g in subformulas(f)) and not has_first_order(f):
            raise TypeError(f"cannot substitute a first-order term for proposition {x}")
        t_free = term_vars(t)
    elif isinstance(t, Formula):
        if x in free_term_vars(f):
            raise TypeError(f"cannot substitute a formula for first-order variable {x}")
        t_free = free_names(t)
    else:
        raise TypeError(f"not a term or formula: {t!r}")
    return _subst(f, x, t, t_free)


def _subst(f, x, t, t_free):
    if isinstance(f, PropAtom):
        return t if f.name == x and isinstance(t, Formula) else f
    if isinstance(f, FoPredicate):
        if isinstance(t, Term):
            return FoPredicate(f.name, tuple(substitute_term(a, x, t) for a in f.terms))
        return f
    if isinstance(f, FoEquality):
        if isinstance(t, Term):
            return FoEquality(substitute_term(f.left, x, t), substitute_term(f.right, x, t))
        return f
    if isinstance(f, QUANTIFIERS):
        if f.var == x or x not in free_names(f.body):
            return f
        var, body = f.var, f.body
        if var in t_free:
            new = fresh_name(var, all_names(body) | t_free | {x})
            body = rename_free(body, var, new)
            var = new
        return type(f)(var, _subst(body, x, t, t_free))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, tuple(_subst(k, x, t, t_free) for k in kids))


def substitute_subformula(f: Formula, target: Formula, replacement: Formula) -> Formula:
    """Replace every syntactic occurrence of ``target`` by ``replacement``."""
    if f == target:
        return replacement
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, tuple(substitute_subformula(k, target, replacement) for k in kids))


# -- fragments -------------------------------------------------------------

PL, QBF, ML, FO = "PL", "QBF", "ML", "FO"
B_PL, B_QBF, B_ML, B_FO = "B(PL)", "B(QBF)", "B(ML)", "B(FO)"
PTL, QPTL, MTL, QFO = "PTL", "QPTL", "MTL", "Q(FO)"

FRAGMENTS = (PL, QBF, ML, FO, B_PL, B_QBF, B_ML, B_FO, PTL, QPTL, MTL, QFO)
CLASSICAL_FRAGMENTS = (PL, QBF, ML, FO)
BOOLEAN_FRAGMENTS = (B_PL, B_QBF, B_ML, B_FO)
_FAMILY = {
    PL: (PL, 0), QBF: (QBF, 0), ML: (ML, 0), FO: (FO, 0),
    B_PL: (PL, 1), B_QBF: (QBF, 1), B_ML: (ML, 1), B_FO: (FO, 1),
    PTL: (PL, 2), QPTL: (QBF, 2), MTL: (ML, 2), QFO: (FO, 2),
}
_TAG = {v: k for k, v in _FAMILY.items()}


class FragmentError(ValueError):
    """Raised when a formula or context falls outside every supported fragment."""


def fragment_base(tag: str) -> str:
    return _FAMILY[tag][0]


def fragment_level(tag: str) -> int:
    """0 classical, 1 Boolean closure, 2 full team logic."""
    return _FAMILY[tag][1]


def fragment_leq(a: str, b: str) -> bool:
    """Inclusion order between fragment tags."""
    (ba, la), (bb, lb) = _FAMILY[a], _FAMILY[b]
    return la <= lb and (ba == bb or ba == PL)


def _base(f: Formula) -> str:
    fo = modal = quant = False
    for g in subformulas(f):
        if isinstance(g, (FoPredicate, FoEquality)):
            fo = True
        elif isinstance(g, (Box, Delta)):
            modal = True
        elif isinstance(g, QUANTIFIERS):
            quant = True
    if modal and (fo or quant):
        raise FragmentError("modal operators cannot be mixed with quantifiers")
    if fo:
        return FO
    if modal:
        return ML
    if quant:
        return QBF
    return PL


def in_boolean_closure(f: Formula) -> bool:
    """Built from classical formulas with strong negation and material implication only."""
    if is_classical(f):
        return True
    if isinstance(f, StrongNeg):
        return in_boolean_closure(f.body)
    if isinstance(f, MaterialImpl):
        return in_boolean_closure(f.left) and in_boolean_closure(f.right)
    return False


def classify(f: Formula) -> str:
    """Least fragment tag containing ``f``."""
    base = _base(f)
    if is_classical(f):
        level = 0
    elif in_boolean_closure(f):
        level = 1
    else:
        level = 2
    return _TAG[(base, level)]
