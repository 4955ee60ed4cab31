"""Checker for explicit proof scripts.

Each step records the set of premises and open hypotheses it depends on.  A
step is a theorem exactly when that set is empty; rules restricted to
theorems look at this set rather than at any flag written in the script.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..formula import (
    Box,
    ClassicalImpl,
    ClassicalNeg,
    Constant,
    Delta,
    FoEquality,
    FoPredicate,
    ForAll,
    Formula,
    LinearImpl,
    MaterialImpl,
    MetaVar,
    Shriek,
    Signature,
    StrongNeg,
    Variable,
    as_dia,
    as_exists,
    as_strong_iff,
    as_tensor,
    big,
    children,
    conj,
    dia,
    exists,
    is_classical,
    subformulas,
    substitute_var,
    tensor,
)
from ..oracle import taut_boolean_closure
from ..schema import (
    AxiomSchema,
    InstantiationError,
    _fill,
    apply_schema,
    parse_term,
)
from ..syntax import ParseError, parse, render, render_term
from .classical import classically_valid
from .systems import DERIVED, canonical_name, expand_systems, find_rule, system


class ProofError(ValueError):
    """A step that does not check."""


class MalformedScript(ValueError):
    """A script that cannot be read at all."""


@dataclass
class Premise:
    label: str
    formula: Formula
    theorem: bool = False


@dataclass
class ProofScript:
    name: str
    systems: tuple
    premises: list
    goal: Optional[Formula]
    steps: list
    signature: Optional[Signature] = None
    description: str = ""
    source: dict = field(default_factory=dict, repr=False)


@dataclass
class StepStatus:
    id: str
    formula: str
    ok: bool
    theorem: bool = False
    reason: str = ""

    def to_json(self) -> dict:
        out = {"id": self.id, "formula": self.formula, "ok": self.ok, "theorem": self.theorem}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class CheckReport:
    name: str
    accepted: bool
    steps: list = field(default_factory=list)
    failure: Optional[StepStatus] = None
    reason: str = ""

    def __bool__(self):
        return self.accepted

    def to_json(self) -> dict:
        out = {"name": self.name, "accepted": self.accepted, "steps": [s.to_json() for s in self.steps]}
        if not self.accepted:
            out["failure"] = self.failure.to_json() if self.failure else None
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class _Record:
    formula: Formula
    deps: frozenset

    @property
    def theorem(self) -> bool:
        return not self.deps


# -- reading scripts ----------------------------------------------------------------


def read_formula(text: str, inst: dict, sig: Optional[Signature] = None) -> Formula:
    """Parse ``text`` and fill its metavariables from ``inst``."""
    try:
        f = parse(text, sig, allow_meta=True)
    except ParseError as exc:
        raise ProofError(f"cannot parse {text!r}: {exc}") from exc
    if inst:
        full = {g.name: g for g in subformulas(f) if isinstance(g, MetaVar)}
        full.update({g.var[1:]: g.var for g in subformulas(f) if isinstance(g, (ForAll, Shriek)) and g.var.startswith("$")})
        full.update(inst)
        f = _fill(f, full)
    return f


def load_script(data: dict, inst: Optional[dict] = None) -> ProofScript:
    """Build a script from its JSON form, filling metavariables from ``inst``."""
    if not isinstance(data, dict) or "steps" not in data:
        raise MalformedScript("a proof script is an object with a 'steps' list")
    sig = Signature.from_json(data["signature"]) if "signature" in data else None
    inst = dict(inst or {})
    premises = []
    for i, p in enumerate(data.get("premises", [])):
        if isinstance(p, str):
            p = {"label": f"P{i + 1}", "formula": p}
        premises.append(Premise(p["label"], read_formula(p["formula"], inst, sig), bool(p.get("theorem", False))))
    goal = read_formula(data["goal"], inst, sig) if data.get("goal") else None
    return ProofScript(
        data.get("name", "script"),
        tuple(data.get("systems", ("L",))),
        premises,
        goal,
        list(data["steps"]),
        sig,
        data.get("description", ""),
        {"data": data, "inst": inst},
    )


# -- helpers for macros ---------------------------------------------------------------


def _peel(law: Formula, antecedents) -> Formula:
    """Detach each antecedent in turn from a chain of ``~>``."""
    for a in antecedents:
        if not (isinstance(law, MaterialImpl) and law.left == a):
            raise ProofError(f"{render(a)} is not the next antecedent of {render(law)}")
        law = law.right
    return law


def _chain(antecedents, conclusion: Formula, op=MaterialImpl) -> Formula:
    out = conclusion
    for a in reversed(list(antecedents)):
        out = op(a, out)
    return out


def _directed(law: Formula, direction: Optional[str]) -> Formula:
    if direction in (None, "both"):
        return law
    parts = as_strong_iff(law)
    if parts is None:
        raise ProofError(f"{render(law)} is not a biconditional")
    a, b = parts
    if direction == "lr":
        return MaterialImpl(a, b)
    if direction == "rl":
        return MaterialImpl(b, a)
    raise ProofError(f"unknown direction {direction!r}")


_MP_SHAPES = {
    # kind: (recogniser returning (context, operand), rebuild(context, operand))
    "limp": (
        lambda f: (f.left, f.right) if isinstance(f, LinearImpl) else None,
        lambda ctx, g: LinearImpl(ctx, g),
    ),
    "tensor": (as_tensor, lambda ctx, g: tensor(ctx, g)),
    "box": (lambda f: (None, f.body) if isinstance(f, Box) else None, lambda ctx, g: Box(g)),
    "delta": (lambda f: (None, f.body) if isinstance(f, Delta) else None, lambda ctx, g: Delta(g)),
    "dia": (lambda f: (None, as_dia(f)) if as_dia(f) is not None else None, lambda ctx, g: dia(g)),
    "forall": (lambda f: (f.var, f.body) if isinstance(f, ForAll) else None, lambda ctx, g: ForAll(ctx, g)),
    "shriek": (lambda f: (f.var, f.body) if isinstance(f, Shriek) else None, lambda ctx, g: Shriek(ctx, g)),
    "exists": (as_exists, lambda ctx, g: exists(ctx, g)),
}

_MP_ALIASES = {
    "⊸": "limp", "-o": "limp", "⊗": "tensor", "*": "tensor", "□": "box", "Δ": "delta",
    "◇": "dia", "∀": "forall", "!": "shriek", "∃": "exists",
}

_MP_SYSTEMS = {
    "limp": "S", "tensor": "S", "box": "M", "delta": "M", "dia": "M",
    "forall": "Q", "shriek": "Q", "exists": "Q",
}



def mp_kind(kind: str) -> str:
    k = kind[3:] if kind.lower().startswith("mp-") else kind
    k = _MP_ALIASES.get(k, k).lower()
    if k not in _MP_SHAPES:
        raise ProofError(f"unknown modus ponens macro {kind!r}")
    return k


def replaced_positions(source: Formula, target: Formula, old: Formula, new: Formula) -> Optional[int]:
    """How many occurrences of ``old`` in ``source`` become ``new`` in ``target``.

    Returns None when ``target`` is not such a rewrite of ``source``.  Positions
    under classical connectives are allowed only for classical replacements.
    """
    classical_ok = is_classical(old) and is_classical(new)

    def go(s, t, under_classical):
        if s == t:
            return 0
        if s == old and t == new and (classical_ok or not under_classical):
            return 1
        if type(s) is not type(t):
            return None
        if isinstance(s, (ForAll, Shriek)) and s.var != t.var:
            return None
        ks, kt = children(s), children(t)
        if not ks or len(ks) != len(kt):
            return None
        inner = under_classical or isinstance(s, (ClassicalNeg, ClassicalImpl))
        total = 0
        for a, b in zip(ks, kt):
            n = go(a, b, inner)
            if n is None:
                return None
            total += n
        return total

    return go(source, target, False)


# -- the checker -------------------------------------------------------------------------


class Checker:
    def __init__(self, script: ProofScript, systems=None, premises=None, lemmas=None):
        self.script = script
        names = systems if systems is not None else script.systems
        try:
            self.systems = expand_systems(names)
        except KeyError as exc:
            raise MalformedScript(str(exc)) from exc
        self.system_names = {s.name for s in self.systems}
        self.premises = {p.label: p for p in script.premises}
        for extra in premises or ():
            if isinstance(extra, Premise):
                self.premises[extra.label] = extra
            else:
                label = f"P{len(self.premises) + 1}"
                self.premises[label] = Premise(label, extra)
        self.lemmas = lemmas if lemmas is not None else {}
        self.inst = script.source.get("inst", {})
        self.sig = script.signature
        self.statuses: list = []

    # -- utilities

    def formula(self, text) -> Formula:
        if isinstance(text, Formula):
            return text
        return read_formula(text, self.inst, self.sig)

    def lookup(self, scope: dict, ref) -> _Record:
        ref = str(ref)
        if ref in scope:
            return scope[ref]
        if ref in self.premises:
            p = self.premises[ref]
            return _Record(p.formula, frozenset() if p.theorem else frozenset({("premise", ref)}))
        raise ProofError(f"reference to unknown step {ref}")

    def sources(self, scope, refs) -> list:
        if not isinstance(refs, (list, tuple)):
            refs = [refs]
        return [self.lookup(scope, r) for r in refs]

    def require_system(self, name: str):
        if system(name).name not in self.system_names:
            raise ProofError(f"system {name} is not available in this proof")

    @staticmethod
    def union(records) -> frozenset:
        out = frozenset()
        for r in records:
            out |= r.deps
        return out

    @staticmethod
    def require_theorem(record: _Record, what: str):
        if not record.theorem:
            raise ProofError(f"theorem-flag violation: {what} {render(record.formula)} depends on premises or hypotheses")

    # -- entry point

    def run(self) -> CheckReport:
        scope: dict = {}
        last = None
        try:
            for step in self.script.steps:
                last = self.step(step, scope)
        except ProofError as exc:
            failing = self.statuses[-1] if self.statuses and not self.statuses[-1].ok else None
            return CheckReport(self.script.name, False, self.statuses, failing, str(exc))
        if last is None:
            return CheckReport(self.script.name, False, self.statuses, None, "the script has no steps")
        goal = self.script.goal
        if goal is not None and last.formula != goal:
            return CheckReport(
                self.script.name, False, self.statuses, self.statuses[-1],
                f"last step proves {render(last.formula)}, not the goal {render(goal)}",
            )
        return CheckReport(self.script.name, True, self.statuses)

    # -- steps

    def step(self, raw: dict, scope: dict) -> _Record:
        if not isinstance(raw, dict):
            raise MalformedScript(f"step {raw!r} is not an object")
        if "block" in raw:
            return self.block(raw, scope)
        sid = str(raw.get("id", len(scope) + 1))
        status = StepStatus(sid, raw.get("formula", ""), False)
        self.statuses.append(status)
        if sid in scope:
            status.reason = f"duplicate step id {sid}"
            raise ProofError(status.reason)
        try:
            formula = self.formula(raw["formula"])
            status.formula = render(formula)
            record = self.justify(formula, raw.get("by"), scope)
            if raw.get("theorem") and not record.theorem:
                raise ProofError("theorem-flag violation: the step is marked as a theorem but depends on premises or hypotheses")
        except (ProofError, InstantiationError, KeyError, TypeError) as exc:
            status.reason = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
            raise ProofError(f"step {sid}: {status.reason}") from exc
        status.ok = True
        status.theorem = record.theorem
        scope[sid] = record
        return record

    def justify(self, formula: Formula, by, scope) -> _Record:
        if not isinstance(by, dict) or len(by) != 1:
            raise ProofError("justification must name exactly one of premise, axiom, rule or macro")
        (kind, data), = by.items()
        if kind == "premise":
            rec = self.lookup({}, data if isinstance(data, str) else data["label"])
            if rec.formula != formula:
                raise ProofError(f"premise is {render(rec.formula)}")
            return rec
        if kind == "axiom":
            return self.axiom(formula, data, scope)
        if kind == "rule":
            return self.rule(formula, data, scope)
        if kind == "macro":
            return self.macro(formula, data, scope)
        raise ProofError(f"unknown justification {kind!r}")

    def instantiate(self, s: AxiomSchema, raw_inst: dict) -> Formula:
        raw_inst = raw_inst or {}
        sorts = s.slots()
        inst = {}
        for key, value in raw_inst.items():
            sort = sorts.get(key)
            if sort is None:
                raise ProofError(f"{s.name} has no slot {key}")
            if sort == "variable":
                inst[key] = value
            elif sort == "term":
                inst[key] = parse_term(value, self.sig)
            else:
                inst[key] = self.formula(value)
        return apply_schema(s, inst)

    def axiom(self, formula, data, scope) -> _Record:
        sys_name = data.get("system")
        if sys_name is None:
            raise ProofError("axiom justification needs a system")
        self.require_system(sys_name)
        s = system(sys_name).axiom(data["name"])
        if s is None:
            raise ProofError(f"unknown axiom {data['name']} in {sys_name}")
        if "inst" not in data:
            raise ProofError(f"axiom {s.name} needs an explicit instantiation")
        law = _directed(self.instantiate(s, data["inst"]), data.get("direction"))
        froms = self.sources(scope, data.get("from", []))
        if _peel(law, [r.formula for r in froms]) != formula:
            raise ProofError(f"instance of {s.name} does not yield this formula")
        return _Record(formula, self.union(froms))

    def rule(self, formula, data, scope) -> _Record:
        name = data["name"]
        rule = find_rule(name, self.systems)
        if rule is None:
            raise ProofError(f"rule {name} is not available in this proof")
        froms = self.sources(scope, data.get("from", []))
        if len(froms) != rule.arity:
            raise ProofError(f"{rule.name} takes {rule.arity} premises")
        if rule.theorem_only:
            self.require_theorem(froms[0], f"{rule.name} applied to")
        key = canonical_name(rule.name)
        a = froms[0].formula
        if key in ("e->", "e~>"):
            op = ClassicalImpl if key == "e->" else MaterialImpl
            b = froms[1].formula
            if b != op(a, formula):
                raise ProofError(f"second premise must be {render(op(a, formula))}")
            if op is ClassicalImpl and not is_classical(b):
                raise ProofError("E-> applies to classical formulas only")
        elif key == "nec":
            if not is_classical(a) or formula != Box(a):
                raise ProofError("Nec derives box alpha from a classical theorem alpha")
        elif key == "ug" + "forall":
            self.generalize(formula, a, data)
        elif key == "nec-o":
            if not (isinstance(formula, LinearImpl) and formula.right == a):
                raise ProofError("Nec-o derives psi -o phi from a theorem phi")
        elif key == "necbox":
            if formula != Box(a):
                raise ProofError("Nec□ derives box phi from phi")
        elif key == "necdelta":
            if formula != Delta(a):
                raise ProofError("NecΔ derives delta phi from phi")
        elif key == "ugshriek":
            if not (isinstance(formula, Shriek) and formula.body == a):
                raise ProofError("UG! derives shriek x. phi from phi")
        else:
            raise ProofError(f"no checker for rule {rule.name}")
        return _Record(formula, self.union(froms))

    def generalize(self, formula, premise, data):
        if not (isinstance(formula, ForAll) and is_classical(premise)):
            raise ProofError("UG∀ derives forall x. beta from a classical theorem")
        body = formula.body
        if "term" not in data:
            if body != premise:
                raise ProofError("UG∀ without a term needs the premise to equal the body")
            return
        t = parse_term(data["term"], self.sig)
        if not isinstance(t, (Constant, Variable)):
            raise ProofError("the generalized term must be a constant or a variable")
        if render_term(t) in {n for g in subformulas(body) for n in _term_names(g)}:
            raise ProofError(f"term {render_term(t)} already occurs in the body")
        if substitute_var(body, formula.var, t) != premise:
            raise ProofError("premise is not the body with the term substituted")

    # -- macros

    def macro(self, formula, data, scope) -> _Record:
        kind = data.get("kind", "")
        froms = self.sources(scope, data.get("from", []))
        deps = self.union(froms)
        k = canonical_name(kind)
        if k == "taut-l":
            self.require_system("L")
            if not taut_boolean_closure(_chain([r.formula for r in froms], formula)):
                raise ProofError("not a Boolean consequence of the cited steps")
        elif k in ("taut-classical", "taut-h0", "taut-hbox"):
            fs = [r.formula for r in froms] + [formula]
            if not all(is_classical(f) for f in fs):
                raise ProofError("classical reasoning needs classical formulas")
            self.require_system("H0")
            if any(isinstance(g, Box) for f in fs for g in subformulas(f)):
                self.require_system("HBox")
            target = formula if not froms else ClassicalImpl(big(conj, [r.formula for r in froms]), formula)
            if not classically_valid(target):
                raise ProofError("not a classical consequence of the cited steps")
        elif k.startswith("mp-") or k.startswith("mp"):
            deps = self.modus_ponens(formula, kind, froms)
        elif k == "def":
            if len(froms) != 1 or froms[0].formula != formula:
                raise ProofError("a definitional step restates its source")
        elif k == "sub":
            deps = self.substitution(formula, froms)
        elif k == "thm":
            name = data.get("name", "")
            derived = DERIVED.get(str(data.get("system", "")).replace("′", "'"))
            s = derived.axiom(name) if derived else None
            if s is None:
                raise ProofError(f"unknown derived law {data.get('system')}:{name}")
            self.require_system("S" if derived.name == "S'" else "M")
            law = _directed(self.instantiate(s, data.get("inst", {})), data.get("direction"))
            if _peel(law, [r.formula for r in froms]) != formula:
                raise ProofError(f"instance of {s.name} does not yield this formula")
        elif k == "lemma":
            deps = self.lemma(formula, data, froms)
        else:
            raise ProofError(f"unknown macro {kind!r}")
        return _Record(formula, deps)

    def modus_ponens(self, formula, kind, froms) -> frozenset:
        k = mp_kind(kind)
        self.require_system(_MP_SYSTEMS[k])
        if len(froms) != 2:
            raise ProofError("modus ponens in a connective takes the connective step and a theorem implication")
        major, impl = froms
        self.require_theorem(impl, "the implication")
        if not isinstance(impl.formula, MaterialImpl):
            raise ProofError("the second step must be an implication phi ~> psi")
        recognise, build = _MP_SHAPES[k]
        parts = recognise(major.formula)
        if parts is None:
            raise ProofError(f"the first step is not of the form required by MP {k}")
        ctx, operand = parts
        if operand != impl.formula.left:
            raise ProofError("the implication's antecedent does not match the operand")
        if build(ctx, impl.formula.right) != formula:
            raise ProofError("the conclusion does not replace the operand by the consequent")
        return major.deps

    def substitution(self, formula, froms) -> frozenset:
        if len(froms) not in (2, 3):
            raise ProofError("sub takes a formula and an equivalence (or two implications)")
        source, *eqs = froms
        for e in eqs:
            self.require_theorem(e, "the equivalence")
        if len(eqs) == 1:
            parts = as_strong_iff(eqs[0].formula)
            if parts is None:
                raise ProofError("the equivalence must have the form phi <~> psi")
            old, new = parts
        else:
            a, b = eqs[0].formula, eqs[1].formula
            if not (isinstance(a, MaterialImpl) and isinstance(b, MaterialImpl) and a.left == b.right and a.right == b.left):
                raise ProofError("the two implications must be converse")
            old, new = a.left, a.right
        for x, y in ((old, new), (new, old)):
            n = replaced_positions(source.formula, formula, x, y)
            if n:
                return source.deps
        raise ProofError("the formula is not the source with equivalents substituted")

    def lemma(self, formula, data, froms) -> frozenset:
        name = data.get("name", "")
        entry = self.lemmas.get(canonical_name(name))
        if entry is None:
            raise ProofError(f"unknown lemma {name}")
        pattern, theorem_premises = entry
        law = self.instantiate(pattern, data.get("inst", {}))
        for i in theorem_premises:
            if i >= len(froms):
                raise ProofError(f"premise {i + 1} of {name} must be discharged by a cited theorem")
            self.require_theorem(froms[i], f"premise {i + 1} of {name}")
        if _peel(law, [r.formula for r in froms]) != formula:
            raise ProofError(f"lemma {name} does not yield this formula from the cited steps")
        return self.union(froms)

    # -- hypothesis blocks

    def block(self, raw: dict, scope: dict) -> _Record:
        data = raw["block"]
        bid = str(data.get("id", raw.get("id", len(scope) + 1)))
        assume = data["assume"]
        hid = str(assume.get("id", bid + "h")) if isinstance(assume, dict) else bid + "h"
        atext = assume["formula"] if isinstance(assume, dict) else assume
        status = StepStatus(hid, atext, False)
        self.statuses.append(status)
        try:
            hyp = self.formula(atext)
        except ProofError as exc:
            status.reason = str(exc)
            raise
        status.formula = render(hyp)
        status.ok = True
        token = ("hypothesis", hid)
        inner = dict(scope)
        inner[hid] = _Record(hyp, frozenset({token}))
        last = inner[hid]
        for step in data.get("steps", []):
            last = self.step(step, inner)
        discharge = data.get("discharge", "ded")
        conclusion = StepStatus(bid, data.get("formula", ""), False)
        self.statuses.append(conclusion)
        try:
            result = self.discharge(discharge, hyp, last, data, inner)
            if "formula" in data:
                claimed = self.formula(data["formula"])
                if claimed != result.formula:
                    raise ProofError(f"block concludes {render(result.formula)}, not {render(claimed)}")
            result = _Record(result.formula, result.deps - {token})
        except ProofError as exc:
            conclusion.reason = str(exc)
            raise ProofError(f"block {bid}: {exc}") from exc
        conclusion.formula = render(result.formula)
        conclusion.ok = True
        conclusion.theorem = result.theorem
        if bid in scope:
            raise ProofError(f"duplicate step id {bid}")
        scope[bid] = result
        return result

    def discharge(self, kind, hyp, last, data, inner) -> _Record:
        if kind == "ded":
            self.require_system("L")
            return _Record(MaterialImpl(hyp, last.formula), last.deps)
        if kind not in ("raa-pos", "raa-neg", "raa"):
            raise ProofError(f"unknown discharge {kind!r}")
        self.require_system("L")
        refs = data.get("contradiction")
        if not refs or len(refs) != 2:
            raise ProofError("RAA needs the two contradictory steps")
        a, b = self.sources(inner, refs)
        if b.formula != StrongNeg(a.formula) and a.formula != StrongNeg(b.formula):
            raise ProofError("the cited steps are not of the form psi and ~psi")
        deps = a.deps | b.deps
        if kind == "raa-neg" or (kind == "raa" and isinstance(hyp, StrongNeg)):
            if not isinstance(hyp, StrongNeg):
                raise ProofError("raa-neg assumes a strongly negated formula")
            return _Record(hyp.body, deps)
        return _Record(StrongNeg(hyp), deps)


def _subterms(t):
    yield t
    for a in getattr(t, "args", ()):
        yield from _subterms(a)


def _term_names(g) -> set:
    if isinstance(g, FoPredicate):
        terms = g.terms
    elif isinstance(g, FoEquality):
        terms = (g.left, g.right)
    else:
        return set()
    return {render_term(s) for t in terms for s in _subterms(t)}


def check_proof(script, systems=None, premises=None, lemmas=None) -> CheckReport:
    """Check a script given as :class:`ProofScript`, a JSON object or JSON text."""
    if isinstance(script, str):
        try:
            script = json.loads(script)
        except json.JSONDecodeError as exc:
            raise MalformedScript(f"invalid JSON: {exc}") from exc
    if not isinstance(script, ProofScript):
        script = load_script(script)
    if lemmas is None:
        from .corpus import lemma_table

        lemmas = lemma_table()
    return Checker(script, systems, premises, lemmas).run()


__all__ = [
    "CheckReport",
    "Checker",
    "MalformedScript",
    "Premise",
    "ProofError",
    "ProofScript",
    "StepStatus",
    "check_proof",
    "load_script",
    "read_formula",
    "replaced_positions",
]
