"""Translate team formulas into the Boolean closure of their classical base.

Every rewrite is recorded as a :class:`TraceStep` holding the whole formula
before and after, so each step can be checked for equivalence on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .formula import (
    FO,
    Box,
    ClassicalImpl,
    ClassicalNeg,
    Constant,
    Delta,
    ForAll,
    Formula,
    FragmentError,
    LinearImpl,
    MaterialImpl,
    PropAtom,
    Shriek,
    Signature,
    StrongNeg,
    Variable,
    all_names,
    as_some,
    big,
    children,
    classify,
    conj,
    disj,
    fragment_base,
    fragment_level,
    free_names,
    free_term_vars,
    fresh_name,
    in_boolean_closure,
    is_classical,
    nonempty,
    rebuild,
    rename_free,
    replace_at,
    size,
    some,
    strong_falsum,
    subformulas,
    substitute_var,
    tensor,
    top_for,
    vee,
    wedge,
)
from .semantics import LAX, STRICT
from .syntax import render

DEFAULT_MAX_NODES = 10**6


class EliminationError(ValueError):
    """Input outside the supported fragment, or a refused request."""


class SizeCeilingExceeded(EliminationError):
    def __init__(self, nodes: int, ceiling: int):
        super().__init__(f"intermediate formula has {nodes} nodes, above the ceiling of {ceiling}")
        self.nodes = nodes
        self.ceiling = ceiling


@dataclass(frozen=True)
class TraceStep:
    rule: str
    before: Formula
    after: Formula

    def to_json(self) -> dict:
        return {"rule": self.rule, "before": render(self.before), "after": render(self.after)}


@dataclass
class EliminationResult:
    output: Formula
    trace: list = field(default_factory=list)
    fragment: str = ""

    def __post_init__(self):
        if not self.fragment:
            self.fragment = classify(self.output)


# -- disjunctive normal form over team conjunction and disjunction ------------


@dataclass(frozen=True)
class Clause:
    """``classical[0] ⊼ ... ⊼ E some[0] ⊼ ...``; empty means the unit ⊤."""

    classical: tuple = ()
    some: tuple = ()

    def literals(self) -> list:
        return list(self.classical) + [some_literal(b) for b in self.some]

    def to_formula(self, unit: Formula) -> Formula:
        return big(wedge, self.literals(), unit)

    def classical_part(self) -> Optional[Formula]:
        """The classical literals joined by ∧, or None when there are none."""
        return big(conj, self.classical) if self.classical else None

    def merge(self, other: "Clause") -> "Clause":
        return _clause(self.classical + other.classical, self.some + other.some)


def some_literal(b: Formula) -> Formula:
    return some(b)


def _clause(classical, somes) -> Clause:
    return Clause(_sorted_unique(classical), _sorted_unique(somes))


def _sorted_unique(items) -> tuple:
    seen = {}
    for f in items:
        seen.setdefault(f, render(f))
    return tuple(sorted(seen, key=lambda f: seen[f]))


@dataclass(frozen=True)
class DnfForm:
    """``⊻`` over clauses; no clauses means the strong falsum."""

    clauses: tuple
    unit: Formula

    def to_formula(self) -> Formula:
        return big(vee, [c.to_formula(self.unit) for c in self.clauses], strong_falsum(self.unit))

    def to_json(self) -> list:
        return [
            {"classical": [render(a) for a in c.classical], "some": [render(b) for b in c.some]}
            for c in self.clauses
        ]


def _canonical(clauses, unit) -> DnfForm:
    keyed = {}
    for c in clauses:
        keyed.setdefault(c, render(c.to_formula(unit)))
    return DnfForm(tuple(sorted(keyed, key=lambda c: keyed[c])), unit)


def _raw_dnf(f: Formula, positive: bool) -> list:
    """Clauses as lists of raw literals (a leaf or ``~leaf``) before normalisation."""
    if is_classical(f):
        return [[f if positive else StrongNeg(f)]]
    if isinstance(f, StrongNeg):
        body = f.body
        if is_classical(body):
            return [[f]] if positive else [[body]]
        return _raw_dnf(body, not positive)
    if isinstance(f, MaterialImpl):
        if positive:
            return _raw_dnf(f.left, False) + _raw_dnf(f.right, True)
        lefts = _raw_dnf(f.left, True)
        rights = _raw_dnf(f.right, False)
        return [a + b for a in lefts for b in rights]
    raise FragmentError(f"{render(f)} is not in a Boolean closure")


def _raw_formula(raw: list, unit: Formula) -> Formula:
    return big(vee, [big(wedge, lits, unit) for lits in raw], strong_falsum(unit))


def _normalise_literal(lit: Formula) -> tuple:
    """``(classical, some)`` contribution of one raw literal."""
    if isinstance(lit, StrongNeg):
        body = lit.body
        if isinstance(body, StrongNeg):
            return _normalise_literal(body.body)
        if isinstance(body, ClassicalNeg):
            return (), (body.body,)
        return (), (ClassicalNeg(body),)
    return (lit,), ()


def _dnf_with_trace(f: Formula, unit: Formula) -> tuple:
    raw = _raw_dnf(f, True)
    clauses = []
    for lits in raw:
        classical, somes = [], []
        for lit in lits:
            c, s = _normalise_literal(lit)
            classical.extend(c)
            somes.extend(s)
        clauses.append(_clause(classical, somes))
    form = _canonical(clauses, unit)
    steps = []
    raw_f = _raw_formula(raw, unit)
    if raw_f != f:
        steps.append(("deMorgan-L", f, raw_f))
    done = form.to_formula()
    if done != raw_f:
        steps.append(("literal-normalize", raw_f, done))
    return form, steps


def dnf_boolean_closure(f: Formula, unit: Optional[Formula] = None) -> DnfForm:
    """Disjunctive normal form over ⊼ and ⊻ of a Boolean-closure formula."""
    if not in_boolean_closure(f):
        raise FragmentError(f"{render(f)} is not in a Boolean closure")
    return _dnf_with_trace(f, unit or top_for(f))[0]


def dnf_trace(f: Formula, unit: Optional[Formula] = None) -> EliminationResult:
    if not in_boolean_closure(f):
        raise FragmentError(f"{render(f)} is not in a Boolean closure")
    form, steps = _dnf_with_trace(f, unit or top_for(f))
    return EliminationResult(form.to_formula(), [TraceStep(*s) for s in steps])


# -- a small step recorder -------------------------------------------------------


class _Chain:
    """Records a sequence of whole-formula rewrites."""

    def __init__(self, start: Formula):
        self.current = start
        self.steps: list = []

    def to(self, rule: str, new: Formula):
        if new != self.current:
            self.steps.append(TraceStep(rule, self.current, new))
            self.current = new

    def extend(self, steps, wrap: Callable[[Formula], Formula] = lambda g: g):
        for rule, before, after in steps:
            assert wrap(before) == self.current
            self.to(rule, wrap(after))

    def result(self) -> EliminationResult:
        return EliminationResult(self.current, self.steps)


def _require_closure(*fs):
    for f in fs:
        if not in_boolean_closure(f):
            raise FragmentError(f"{render(f)} is not in a Boolean closure")


def _unit(*fs) -> Formula:
    return top_for(big(ClassicalImpl, [f for f in fs]))


def _tensor_parts(c: Clause, unit: Formula) -> list:
    a = c.classical_part()
    if not c.some:
        return [a if a is not None else unit]
    if a is None:
        return [some(b) for b in c.some]
    return [wedge(a, some(b)) for b in c.some]


def _flat_clause(c: Clause, unit: Formula) -> Formula:
    """A clause with its classical literals already joined by ∧."""
    a = c.classical_part()
    parts = ([a] if a is not None else []) + [some(b) for b in c.some]
    return big(wedge, parts, unit)


def _isolated(parts: list, unit: Formula, flat: bool = False) -> Formula:
    """``⊗ₖ (αₖ ⊼ Eβₖ)`` with the E-parts pulled out; parts are (α or None, β or None).

    A missing α stands for ⊤, which makes the whole classical tensor ⊤ in
    lax semantics, so it is dropped.
    """
    classical = [a for a, _ in parts] if all(a is not None for a, _ in parts) else []
    somes = [some(b if a is None else conj(a, b)) for a, b in parts if b is not None]
    if flat:
        classical, somes = list(_sorted_unique(classical)), list(_sorted_unique(somes))
    head = big(disj if flat else tensor, classical) if classical else None
    return big(wedge, ([head] if head is not None else []) + somes, unit)


def _split_parts(c: Clause) -> list:
    a = c.classical_part()
    if not c.some:
        return [(a, None)]
    return [(a, b) for b in c.some]


def eliminate_limp(lhs: Formula, rhs: Formula) -> EliminationResult:
    """A Boolean-closure formula equivalent (lax) to ``lhs ⊸ rhs``."""
    _require_closure(lhs, rhs)
    unit = _unit(lhs, rhs)
    chain = _Chain(LinearImpl(lhs, rhs))
    chain.to("double-negation", StrongNeg(tensor(lhs, StrongNeg(rhs))))
    left, left_steps = _dnf_with_trace(lhs, unit)
    right, right_steps = _dnf_with_trace(StrongNeg(rhs), unit)
    chain.extend(left_steps, lambda g: StrongNeg(tensor(g, StrongNeg(rhs))))
    done_left = left.to_formula()
    chain.extend(right_steps, lambda g: StrongNeg(tensor(done_left, g)))
    pairs = [(ci, cj) for ci in left.clauses for cj in right.clauses]
    if not pairs:
        chain.to("D⊻⊗", StrongNeg(strong_falsum(unit)))
        chain.to("vacuous-split", unit)
        return chain.result()

    def stage(fn):
        return StrongNeg(big(vee, [fn(ci, cj) for ci, cj in pairs]))

    chain.to("D⊻⊗", stage(lambda ci, cj: tensor(ci.to_formula(unit), cj.to_formula(unit))))
    chain.to("flatness-wedge", stage(lambda ci, cj: tensor(_flat_clause(ci, unit), _flat_clause(cj, unit))))
    chain.to(
        "distribute-E",
        stage(lambda ci, cj: big(tensor, _tensor_parts(ci, unit) + _tensor_parts(cj, unit))),
    )
    chain.to("isolate-E", stage(lambda ci, cj: _isolated(_split_parts(ci) + _split_parts(cj), unit)))
    chain.to("flatness-tensor", stage(lambda ci, cj: _isolated(_split_parts(ci) + _split_parts(cj), unit, True)))
    return chain.result()


# -- pushing box and forall inward -------------------------------------------------


def _push(f: Formula, linear: Callable, distribute: Callable, lin_rule: str, dist_rule: str) -> EliminationResult:
    chain = _Chain(f)

    def find(g, path):
        hit = linear(g) or distribute(g)
        if hit is not None:
            return path, hit
        for i, k in enumerate(children(g)):
            found = find(k, path + (i,))
            if found:
                return found
        return None

    while True:
        found = find(chain.current, ())
        if not found:
            break
        path, (rule, new) = found
        chain.to(rule, replace_at(chain.current, path, new))
    return chain.result()


def eliminate_box(inner: Formula) -> EliminationResult:
    """A B(ML) formula equivalent to ``□ inner`` for ``inner`` in B(ML)."""
    _require_closure(inner)

    def linear(g):
        if isinstance(g, Box) and isinstance(g.body, StrongNeg):
            return "Lin□", StrongNeg(Box(g.body.body))
        return None

    def distribute(g):
        if isinstance(g, Box) and isinstance(g.body, MaterialImpl):
            return "D□⤳", MaterialImpl(Box(g.body.left), Box(g.body.right))
        return None

    return _push(Box(inner), linear, distribute, "Lin□", "D□⤳")


def eliminate_forall(var: str, inner: Formula) -> EliminationResult:
    """A Boolean-closure formula equivalent to ``∀var inner``."""
    _require_closure(inner)

    def linear(g):
        if isinstance(g, ForAll) and isinstance(g.body, StrongNeg):
            return "Lin∀", StrongNeg(ForAll(g.var, g.body.body))
        return None

    def distribute(g):
        if isinstance(g, ForAll) and isinstance(g.body, MaterialImpl):
            return "D∀⤳", MaterialImpl(ForAll(g.var, g.body.left), ForAll(g.var, g.body.right))
        return None

    return _push(ForAll(var, inner), linear, distribute, "Lin∀", "D∀⤳")


# -- Delta and shriek via their duals -----------------------------------------------


@dataclass(frozen=True)
class _Dual:
    """The operator family used to eliminate a Δ-like quantifier."""

    strong: Callable  # Δ or !x
    weak: Callable  # the team dual ◇ or ∃x
    flat: Callable  # classical dual ¬□¬ or ¬∀x¬
    names: dict


def _dual_modal() -> _Dual:
    from .formula import classical_dia, dia

    return _Dual(
        Delta,
        dia,
        classical_dia,
        {"dual": "dual-delta", "or": "D◇⊻", "tensor": "D◇⊗", "isolate": "◇IsolateE", "flat": "F◇"},
    )


def _dual_quantifier(var: str) -> _Dual:
    from .formula import classical_exists, exists

    return _Dual(
        lambda g: Shriek(var, g),
        lambda g: exists(var, g),
        lambda g: classical_exists(var, g),
        {"dual": "dual-shriek", "or": "D∃⊻", "tensor": "D∃⊗", "isolate": "∃IsolateE", "flat": "F∃"},
    )


def _eliminate_dual(inner: Formula, ops: _Dual) -> EliminationResult:
    _require_closure(inner)
    unit = _unit(inner)
    chain = _Chain(ops.strong(inner))
    negated = StrongNeg(inner)
    chain.to(ops.names["dual"], StrongNeg(ops.weak(negated)))
    form, steps = _dnf_with_trace(negated, unit)
    chain.extend(steps, lambda g: StrongNeg(ops.weak(g)))
    if not form.clauses:
        chain.to(ops.names["or"], StrongNeg(strong_falsum(unit)))
        chain.to("vacuous-split", unit)
        return chain.result()
    clauses = form.clauses

    def stage(fn):
        return StrongNeg(big(vee, [fn(c) for c in clauses]))

    def alpha(c):
        a = c.classical_part()
        return a if a is not None else unit

    def parts(c):
        return [wedge(alpha(c), some(b)) for b in c.some] if c.some else [alpha(c)]

    chain.to(ops.names["or"], stage(lambda c: ops.weak(c.to_formula(unit))))
    chain.to("flatness-wedge", stage(lambda c: ops.weak(_flat_clause(c, unit))))
    chain.to("distribute-E", stage(lambda c: ops.weak(big(tensor, parts(c)))))
    chain.to(ops.names["tensor"], stage(lambda c: big(tensor, [ops.weak(x) for x in parts(c)])))

    def isolated_piece(c, b, flat):
        a = alpha(c)
        left = ops.flat(a) if flat else ops.weak(a)
        return wedge(left, some(ops.flat(conj(a, b))))

    def per_clause(c, flat):
        if not c.some:
            a = alpha(c)
            return ops.flat(a) if flat else ops.weak(a)
        return big(tensor, [isolated_piece(c, b, flat) for b in c.some])

    chain.to(ops.names["isolate"], stage(lambda c: per_clause(c, False)))
    chain.to(ops.names["flat"], stage(lambda c: per_clause(c, True)))

    def isolated(c, flat=False):
        d = ops.flat(alpha(c))
        if not c.some:
            return d
        return _isolated([(d, ops.flat(conj(alpha(c), b))) for b in c.some], unit, flat)

    chain.to("isolate-E", stage(isolated))
    chain.to("flatness-tensor", stage(lambda c: isolated(c, True)))
    return chain.result()


def eliminate_delta(inner: Formula) -> EliminationResult:
    """A B(ML) formula equivalent (lax) to ``Δ inner`` for ``inner`` in B(ML)."""
    return _eliminate_dual(inner, _dual_modal())


def eliminate_shriek(var: str, inner: Formula) -> EliminationResult:
    """A Boolean-closure formula equivalent (lax) to ``!var inner``."""
    return _eliminate_dual(inner, _dual_quantifier(var))


# -- quantified Boolean formulas -------------------------------------------------


def _expansion(f: ForAll) -> Formula:
    t = _top_avoiding(f)
    return conj(substitute_var(f.body, f.var, t), substitute_var(f.body, f.var, ClassicalNeg(t)))


def propositions_of(f: Formula) -> set:
    return {g.name for g in subformulas(f) if isinstance(g, PropAtom)} & free_names(f)


def _top_avoiding(f: ForAll) -> Formula:
    from .formula import top

    names = sorted(n for n in free_names(f) if n != f.var)
    return top(names[0] if names else f.var)


def qbf_expand_trace(f: Formula) -> EliminationResult:
    """Innermost-first expansion of propositional quantifiers in classical material."""
    if any(isinstance(g, Shriek) for g in subformulas(f)):
        raise FragmentError("shriek must be eliminated before quantifier expansion")
    chain = _Chain(f)

    def find(g, path):
        for i, k in enumerate(children(g)):
            hit = find(k, path + (i,))
            if hit:
                return hit
        if isinstance(g, ForAll):
            return path, g
        return None

    while True:
        found = find(chain.current, ())
        if not found:
            break
        path, g = found
        chain.to("X", replace_at(chain.current, path, _expansion(g)))
    return chain.result()


def qbf_expand(f: Formula) -> Formula:
    """An equivalent quantifier-free formula; ``∀x α`` becomes ``α[x/⊤] ∧ α[x/⊥]``."""
    if fragment_base(classify(f)) == FO:
        raise FragmentError("quantifier expansion applies to propositional quantifiers only")
    return qbf_expand_trace(f).output


# -- the full translation ----------------------------------------------------------


def to_boolean_closure(
    f: Formula,
    mode: str = LAX,
    *,
    expand_qbf: bool = True,
    max_nodes: int = DEFAULT_MAX_NODES,
    spot_check: bool = False,
    budget=None,
) -> EliminationResult:
    """An equivalent formula built from classical leaves with ``~`` and ``⤳`` only."""
    if mode == STRICT:
        raise EliminationError(
            "strict mode is refused: strict semantics can count team members, "
            "which no Boolean-closure formula of finite size can express"
        )
    if mode != LAX:
        raise EliminationError(f"unknown semantics mode {mode!r}")
    base = fragment_base(classify(f))
    chain = _Chain(f)

    def guard(g):
        n = size(g)
        if n > max_nodes:
            raise SizeCeilingExceeded(n, max_nodes)

    def lift(result: EliminationResult, path):
        for step in result.trace:
            chain.to(step.rule, replace_at(chain.current, path, step.after))
        guard(chain.current)

    def rec(g, path):
        if is_classical(g):
            return g
        kids = tuple(rec(k, path + (i,)) for i, k in enumerate(children(g)))
        if isinstance(g, (StrongNeg, MaterialImpl)):
            return rebuild(g, kids)
        if isinstance(g, LinearImpl):
            res = eliminate_limp(*kids)
        elif isinstance(g, Box):
            res = eliminate_box(kids[0])
        elif isinstance(g, Delta):
            res = eliminate_delta(kids[0])
        elif isinstance(g, ForAll):
            res = eliminate_forall(g.var, kids[0])
        elif isinstance(g, Shriek):
            res = eliminate_shriek(g.var, kids[0])
        else:
            raise FragmentError(f"classical {type(g).__name__} over team operands in {render(g)}")
        lift(res, path)
        return res.output

    out = rec(f, ())
    assert out == chain.current
    if expand_qbf and base == "QBF":
        lift(qbf_expand_trace(chain.current), ())
    result = chain.result()
    if fragment_level(result.fragment) > 1:
        raise EliminationError(f"elimination left {result.fragment} material in {render(result.output)}")
    if spot_check:
        bad = check_trace(result.trace, budget)
        if bad:
            step = bad[0]
            raise EliminationError(f"trace step {step.rule} is not an equivalence: {render(step.before)}")
    return result


def check_trace(trace, budget=None) -> list:
    """Steps whose two sides the oracle can tell apart."""
    from .oracle import SearchBudget, equiv

    bad = []
    for step in trace:
        b = budget
        if b is None:
            names = propositions_of(step.before) | propositions_of(step.after)
            b = SearchBudget(max_props=len(names), props=tuple(sorted(names)))
        if not equiv(step.before, step.after, b).holds:
            bad.append(step)
    return bad


# -- negation-free form ---------------------------------------------------------------


def to_splus(f: Formula) -> Formula:
    """A formula over classical material and NE using only ⊼, ⊻ and ⊗."""
    _require_closure(f)
    unit = top_for(f)
    form = dnf_boolean_closure(f, unit)
    atom = unit.left
    excluded_middle = disj(atom, ClassicalNeg(atom))
    ne = nonempty(unit)
    if not form.clauses:
        return wedge(ne, ClassicalNeg(unit))

    def literal_some(b):
        return tensor(excluded_middle, wedge(ne, b))

    clauses = []
    for c in form.clauses:
        lits = list(c.classical) + [literal_some(b) for b in c.some]
        clauses.append(big(wedge, lits, unit))
    return big(vee, clauses)


def is_splus(f: Formula) -> bool:
    """Built from classical formulas and NE with ⊼, ⊻ and ⊗ alone."""
    if is_classical(f):
        return True
    body = as_some(f)
    if body is not None:
        return isinstance(body, ClassicalImpl) and body.left == body.right and is_classical(body.left)
    from .formula import as_tensor, as_vee, as_wedge

    for recognise in (as_wedge, as_vee, as_tensor):
        parts = recognise(f)
        if parts is not None:
            return is_splus(parts[0]) and is_splus(parts[1])
    return False


# -- first-order translation ----------------------------------------------------------


def _free_vars(f: Formula) -> list:
    seen = []
    for g in subformulas(f):
        for v in sorted(free_term_vars(g)):
            if v in free_term_vars(f) and v not in seen:
                seen.append(v)
    return seen


def separate_bound_names(f: Formula) -> Formula:
    """Rename bound variables that clash with free variable names."""
    free = free_term_vars(f)

    def go(g, used):
        if isinstance(g, (ForAll, Shriek)) and g.var in free:
            new = fresh_name(g.var, used | all_names(g))
            used = used | {new}
            return type(g)(new, go(rename_free(g.body, g.var, new), used))
        kids = children(g)
        return rebuild(g, tuple(go(k, used) for k in kids)) if kids else g

    return go(f, set(all_names(f)))


def _clashes(f: Formula) -> bool:
    free = free_term_vars(f)
    return any(isinstance(g, (ForAll, Shriek)) and g.var in free for g in subformulas(f))


def first_order_translation(formulas, sig: Optional[Signature] = None, *, auto_rename: bool = False) -> tuple:
    """``(sentences, signature)``: classical sentences satisfiable iff the team set is.

    Each strongly negated ``~δ`` (numbered from 1 in input order) gets fresh
    constants ``c_<index>_<variable>`` naming the member that falsifies δ.
    """
    formulas = list(formulas)
    positives, negatives = [], []
    for f in formulas:
        if auto_rename:
            f = separate_bound_names(f) if is_classical(f) else StrongNeg(separate_bound_names(f.body))
        if is_classical(f):
            target = positives
        elif isinstance(f, StrongNeg) and is_classical(f.body):
            target = negatives
            f = f.body
        else:
            raise FragmentError(f"{render(f)} is neither first-order nor a strongly negated first-order formula")
        if _clashes(f):
            raise FragmentError(f"bound and free variable names overlap in {render(f)}; use auto_rename")
        target.append(f)
    variables = sorted(set().union(set(), *(free_term_vars(f) for f in positives + negatives)))
    if sig is None:
        from .oracle import infer_signature

        sig = infer_signature(positives + negatives)
    taken = set(sig.constants) | set(sig.relations) | set(sig.functions)
    for f in formulas:
        taken |= all_names(f)
    out = []
    constants = list(sig.constants)
    for index, delta in enumerate(negatives, start=1):
        names = {}
        for v in variables:
            name = f"c_{index}_{v}"
            if name in taken:
                name = fresh_name(name, taken)
            taken.add(name)
            names[v] = name
            constants.append(name)

        def ground(g):
            for v in sorted(free_term_vars(g)):
                g = substitute_var(g, v, Constant(names[v]))
            return g

        for gamma in positives:
            out.append(ground(gamma))
        out.append(ClassicalNeg(ground(delta)))
    return out, sig.extended(constants[len(sig.constants):])


def sentence_interpolant(delta, alpha: Formula) -> Formula:
    """The universal closure of ``alpha`` over its free variables in order of appearance."""
    order = _free_vars(alpha)
    out = alpha
    for v in reversed(order):
        out = ForAll(v, out)
    return out


__all__ = [
    "Clause",
    "DEFAULT_MAX_NODES",
    "DnfForm",
    "EliminationError",
    "EliminationResult",
    "SizeCeilingExceeded",
    "TraceStep",
    "check_trace",
    "dnf_boolean_closure",
    "dnf_trace",
    "eliminate_box",
    "eliminate_delta",
    "eliminate_forall",
    "eliminate_limp",
    "eliminate_shriek",
    "first_order_translation",
    "is_splus",
    "qbf_expand",
    "qbf_expand_trace",
    "sentence_interpolant",
    "separate_bound_names",
    "to_boolean_closure",
    "to_splus",
    "Variable",
]
