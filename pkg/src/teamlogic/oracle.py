"""Brute-force semantic ground truth.

Everything here enumerates contexts exhaustively within a :class:`SearchBudget`
and evaluates with the team tables.  A query whose context count exceeds the
budget ceiling is refused rather than sampled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Iterator, Optional

from .formula import (
    Constant,
    FoEquality,
    FoPredicate,
    Formula,
    FragmentError,
    FunctionApp,
    MaterialImpl,
    PropAtom,
    Signature,
    StrongNeg,
    classify,
    fragment_base,
    free_names,
    free_term_vars,
    subformulas,
    QUANTIFIERS,
)
from .semantics import (
    LAX,
    FoContext,
    FoStructure,
    KripkeContext,
    KripkeStructure,
    PropContext,
    assignment,
    canonical_team,
    context_to_json,
    eval_classical,
    eval_team,
)
from .tables import MAX_TABLE_POINTS, TeamTables

DEFAULT_CEILING = 2**24
_PAD_NAMES = ("p", "q", "r", "s", "t", "u", "v", "w")


class BudgetExceeded(ValueError):
    """The exhaustive search would visit more contexts than the ceiling allows."""


@dataclass(frozen=True)
class SearchBudget:
    max_props: int = 2
    max_worlds: int = 2
    max_domain: int = 2
    max_team_size: Optional[int] = None
    mode: str = LAX
    ceiling: int = DEFAULT_CEILING
    props: tuple = ()
    signature: Optional[Signature] = field(default=None, compare=False)
    min_worlds: int = 1

    def __post_init__(self):
        for name in ("max_props", "max_worlds", "max_domain", "ceiling"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.max_team_size is not None and self.max_team_size < 0:
            raise ValueError("max_team_size must be non-negative")
        object.__setattr__(self, "props", tuple(self.props))


@dataclass
class Verdict:
    holds: bool
    witness: object = None
    contexts_checked: int = 0
    key: str = "holds"
    values: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {self.key: self.holds, "contexts_checked": self.contexts_checked}
        out["witness"] = context_to_json(self.witness) if self.witness is not None else None
        if self.values:
            out["values"] = self.values
        return out


# -- frames: one table universe plus the teams to visit ----------------------


@dataclass
class Frame:
    """A structure (or propositional universe) and the teams enumerated over it."""

    make: Callable[[tuple], object]
    base: tuple
    tables: Optional[TeamTables]
    max_team_size: Optional[int] = None

    def team_masks(self) -> Iterator[int]:
        size = len(self.base)
        limit = self.max_team_size
        for mask in range(1 << size):
            if limit is None or bin(mask).count("1") <= limit:
                yield mask

    def team(self, mask: int) -> tuple:
        return tuple(p for i, p in enumerate(self.base) if mask >> i & 1)

    def context(self, mask: int):
        return self.make(self.team(mask))

    def truths(self, f: Formula, mode: str) -> Callable[[int], bool]:
        if self.tables is not None:
            table = self.tables.table(f)
            bits = [1 << self.tables.index[self.tables.lift(p)] for p in self.base]

            def lookup(mask: int) -> bool:
                u = 0
                i = 0
                m = mask
                while m:
                    if m & 1:
                        u |= bits[i]
                    m >>= 1
                    i += 1
                return bool(table[u])

            return lookup
        return lambda mask: eval_team(self.context(mask), f, mode)


def _quantified_names(formulas) -> set:
    return {g.var for f in formulas for g in subformulas(f) if isinstance(g, QUANTIFIERS)}


def _prop_names(formulas) -> set:
    names = set()
    for f in formulas:
        names |= {n for n in free_names(f) if any(isinstance(g, PropAtom) and g.name == n for g in subformulas(f))}
    return names


def choose_props(formulas, b: SearchBudget) -> tuple:
    """Team support: the budget's props, else the free propositions padded to ``max_props``."""
    if b.props:
        return tuple(b.props)
    names = sorted(_prop_names(formulas))
    if len(names) > b.max_props:
        raise BudgetExceeded(f"formulas use {len(names)} propositions, budget allows {b.max_props}")
    used = set(names) | _quantified_names(formulas)
    for cand in _PAD_NAMES:
        if len(names) >= b.max_props:
            break
        if cand not in used:
            names.append(cand)
            used.add(cand)
    return tuple(sorted(names))


def _team_count(n: int, limit: Optional[int]) -> int:
    if limit is None or limit >= n:
        return 1 << n
    return sum(comb(n, i) for i in range(limit + 1))


def infer_signature(formulas) -> Signature:
    relations, functions, constants = {}, {}, set()

    def visit_term(t):
        if isinstance(t, Constant):
            constants.add(t.name)
        elif isinstance(t, FunctionApp):
            if t.args:
                functions[t.name] = len(t.args)
            else:
                constants.add(t.name)
            for a in t.args:
                visit_term(a)

    for f in formulas:
        for g in subformulas(f):
            if isinstance(g, FoPredicate):
                relations[g.name] = len(g.terms)
                for t in g.terms:
                    visit_term(t)
            elif isinstance(g, FoEquality):
                visit_term(g.left)
                visit_term(g.right)
    return Signature(relations, functions, tuple(sorted(constants)))


def fragment_of(formulas) -> str:
    bases = {fragment_base(classify(f)) for f in formulas}
    if "FO" in bases:
        return "FO"
    if "ML" in bases and "QBF" in bases:
        raise FragmentError("cannot mix modal and quantified formulas")
    if "ML" in bases:
        return "ML"
    if "QBF" in bases:
        return "QBF"
    return "PL"


# -- frame enumeration ------------------------------------------------------------


def _prop_frames(formulas, b: SearchBudget):
    props = choose_props(formulas, b)
    bound = _quantified_names(formulas) - set(props)
    universe = set(props) | bound
    base = tuple(assignment(dict(zip(props, bits))) for bits in itertools.product((0, 1), repeat=len(props)))
    tables = TeamTables.for_assignments(universe, b.mode) if 2 ** len(universe) <= MAX_TABLE_POINTS else None
    count = _team_count(len(base), b.max_team_size)
    make = lambda team: PropContext(props, canonical_team(team))  # noqa: E731
    return count, [Frame(make, base, tables, b.max_team_size)]


def _kripke_structures(n: int, props):
    worlds = tuple(range(n))
    pairs = [(w, v) for w in worlds for v in worlds]
    for rel in range(1 << len(pairs)):
        edges = frozenset(p for i, p in enumerate(pairs) if rel >> i & 1)
        for vals in itertools.product(range(1 << n), repeat=len(props)):
            val = {p: frozenset(w for w in worlds if m >> w & 1) for p, m in zip(props, vals)}
            yield KripkeStructure(worlds, edges, val)


def _kripke_frames(formulas, b: SearchBudget):
    props = tuple(sorted(_prop_names(formulas) | set(b.props)))
    count = 0
    for n in range(b.min_worlds, b.max_worlds + 1):
        count += (1 << (n * n)) * (1 << (n * len(props))) * _team_count(n, b.max_team_size)

    def frames():
        for n in range(b.min_worlds, b.max_worlds + 1):
            for k in _kripke_structures(n, props):
                tables = TeamTables.for_kripke(k, b.mode) if n <= MAX_TABLE_POINTS else None
                yield Frame(lambda team, k=k: KripkeContext(k, canonical_team(team)), tuple(range(n)), tables, b.max_team_size)

    return count, frames()


def _fo_structures(domain, sig: Signature):
    rel_names = sorted(sig.relations)
    fun_names = sorted(sig.functions)
    const_names = sorted(sig.constants)
    rel_spaces = []
    for r in rel_names:
        tuples = list(itertools.product(domain, repeat=sig.relations[r]))
        rel_spaces.append([frozenset(t for i, t in enumerate(tuples) if m >> i & 1) for m in range(1 << len(tuples))])
    fun_spaces = []
    for fn in fun_names:
        args = list(itertools.product(domain, repeat=sig.functions[fn]))
        fun_spaces.append([dict(zip(args, outs)) for outs in itertools.product(domain, repeat=len(args))])
    for rels in itertools.product(*rel_spaces):
        for funs in itertools.product(*fun_spaces):
            for consts in itertools.product(domain, repeat=len(const_names)):
                yield FoStructure(
                    tuple(domain),
                    dict(zip(rel_names, rels)),
                    dict(zip(fun_names, funs)),
                    dict(zip(const_names, consts)),
                )


def _fo_structure_count(d: int, sig: Signature) -> int:
    count = 1
    for r, arity in sig.relations.items():
        count *= 1 << (d**arity)
    for fn, arity in sig.functions.items():
        count *= d ** (d**arity)
    count *= d ** len(sig.constants)
    return count


def _fo_frames(formulas, b: SearchBudget, variables=()):
    sig = b.signature or infer_signature(formulas)
    free = sorted(set(variables) | set().union(*(free_term_vars(f) for f in formulas)) if formulas else set(variables))
    bound = _quantified_names(formulas) - set(free)
    count = 0
    for d in range(1, b.max_domain + 1):
        count += _fo_structure_count(d, sig) * _team_count(d ** len(free), b.max_team_size)

    def frames():
        for d in range(1, b.max_domain + 1):
            domain = tuple(range(d))
            base = tuple(assignment(dict(zip(free, vals))) for vals in itertools.product(domain, repeat=len(free)))
            use_tables = d ** (len(free) + len(bound)) <= MAX_TABLE_POINTS
            for a in _fo_structures(domain, sig):
                tables = TeamTables.for_assignments(set(free) | bound, b.mode, a, domain) if use_tables else None
                yield Frame(lambda team, a=a: FoContext(a, canonical_team(team)), base, tables, b.max_team_size)

    return count, frames()


def frames_for(formulas, b: SearchBudget, fragment: Optional[str] = None, variables=()):
    """``(count, frames)`` covering every context the budget allows."""
    formulas = list(formulas)
    base = fragment_base(fragment) if fragment else fragment_of(formulas)
    if base in ("PL", "QBF"):
        count, frames = _prop_frames(formulas, b)
    elif base == "ML":
        count, frames = _kripke_frames(formulas, b)
    else:
        count, frames = _fo_frames(formulas, b, variables)
    if count > b.ceiling:
        raise BudgetExceeded(f"{count} contexts exceed the ceiling of {b.ceiling}")
    return count, frames


def enumerate_contexts(fragment: str, b: SearchBudget, formulas: Iterable[Formula] = ()) -> Iterator:
    """Every team context of ``fragment`` within the budget, in canonical order."""
    _, frames = frames_for(list(formulas), b, fragment)
    for frame in frames:
        for mask in frame.team_masks():
            yield frame.context(mask)


def count_contexts(fragment: str, b: SearchBudget, formulas: Iterable[Formula] = ()) -> int:
    return frames_for(list(formulas), b, fragment)[0]


# -- queries -------------------------------------------------------------------


def _search(formulas, b, test, fragment=None, variables=()) -> tuple:
    """First context where ``test(values)`` fails; ``(witness, values, checked)``."""
    _, frames = frames_for(formulas, b, fragment, variables)
    checked = 0
    for frame in frames:
        lookups = [frame.truths(f, b.mode) for f in formulas]
        for mask in frame.team_masks():
            checked += 1
            values = [look(mask) for look in lookups]
            if not test(values):
                return frame.context(mask), values, checked
    return None, None, checked


def equiv(f: Formula, g: Formula, b: SearchBudget = SearchBudget(), fragment: Optional[str] = None) -> Verdict:
    witness, values, checked = _search([f, g], b, lambda v: v[0] == v[1], fragment)
    if witness is None:
        return Verdict(True, None, checked, "equivalent")
    return Verdict(False, witness, checked, "equivalent", {"left": values[0], "right": values[1]})


def valid(f: Formula, b: SearchBudget = SearchBudget(), fragment: Optional[str] = None) -> Verdict:
    witness, _, checked = _search([f], b, lambda v: v[0], fragment)
    return Verdict(witness is None, witness, checked, "valid")


def entails(premises, conclusion: Formula, b: SearchBudget = SearchBudget(), fragment: Optional[str] = None) -> Verdict:
    formulas = list(premises) + [conclusion]
    witness, _, checked = _search(formulas, b, lambda v: not all(v[:-1]) or v[-1], fragment)
    return Verdict(witness is None, witness, checked, "entails")


def consistency_probe(formulas, b: SearchBudget = SearchBudget()) -> Verdict:
    """Satisfiable iff some enumerated context satisfies every formula."""
    formulas = list(formulas)
    if not formulas:
        return Verdict(True, None, 0, "satisfiable")
    witness, _, checked = _search(formulas, b, lambda v: not all(v))
    return Verdict(witness is not None, witness, checked, "satisfiable")


def classically_satisfiable(sentences, sig: Optional[Signature] = None, max_domain: int = 2):
    """A structure of size at most ``max_domain`` satisfying every sentence, or None."""
    sentences = list(sentences)
    sig = sig or infer_signature(sentences)
    for f in sentences:
        if free_term_vars(f):
            raise FragmentError("classical satisfiability expects sentences")
    for d in range(1, max_domain + 1):
        for a in _fo_structures(tuple(range(d)), sig):
            if all(eval_classical((a, assignment()), f) for f in sentences):
                return a
    return None


# -- truth tables over opaque leaves --------------------------------------------------


def boolean_leaves(f: Formula) -> list:
    """Maximal subformulas not built with ``~`` or ``~>``, in first-occurrence order."""
    out = []

    def go(g):
        if isinstance(g, StrongNeg):
            go(g.body)
        elif isinstance(g, MaterialImpl):
            go(g.left)
            go(g.right)
        elif g not in out:
            out.append(g)

    go(f)
    return out


def truth_value(f: Formula, leaves: dict) -> bool:
    if isinstance(f, StrongNeg):
        return not truth_value(f.body, leaves)
    if isinstance(f, MaterialImpl):
        return (not truth_value(f.left, leaves)) or truth_value(f.right, leaves)
    return leaves[f]


def taut_boolean_closure(f: Formula) -> bool:
    """True iff ``f`` holds under every 0/1 valuation of its opaque leaves."""
    leaves = boolean_leaves(f)
    for bits in itertools.product((False, True), repeat=len(leaves)):
        if not truth_value(f, dict(zip(leaves, bits))):
            return False
    return True


# -- counter-model merging --------------------------------------------------------------


@dataclass
class MergeResult:
    ok: bool
    context: object = None
    missing: Optional[Formula] = None
    parts: list = field(default_factory=list)


def _countermodel(gamma, delta, b: SearchBudget, fragment: Optional[str] = None):
    """A context satisfying all of ``gamma`` and falsifying ``delta``."""
    formulas = list(gamma) + [delta]
    witness, _, _ = _search(formulas, b, lambda v: not (all(v[:-1]) and not v[-1]), fragment)
    return witness


def merge_countermodels(gamma, delta, b: SearchBudget = SearchBudget()) -> MergeResult:
    """One context satisfying every formula of ``gamma`` and falsifying every one of ``delta``.

    Propositional countermodels are merged by team union, modal ones by the
    disjoint union of their structures with the union of their teams.
    """
    gamma, delta = list(gamma), list(delta)
    fragment = fragment_of(gamma + delta) if gamma + delta else "PL"
    if fragment not in ("PL", "ML"):
        raise FragmentError("counter-model merging is implemented for PL and ML")
    parts = []
    if fragment == "PL":
        b = SearchBudget(**{**b.__dict__, "props": choose_props(gamma + delta, b)})
    for d in delta:
        ctx = _countermodel(gamma, d, b, fragment)
        if ctx is None:
            return MergeResult(False, None, d, parts)
        parts.append(ctx)
    if fragment == "PL":
        props = b.props
        team = canonical_team(m for ctx in parts for m in ctx.team)
        if not parts:
            return MergeResult(True, PropContext(props, ()), None, parts)
        return MergeResult(True, PropContext(props, team), None, parts)
    worlds, edges, val, team = [], set(), {}, []
    offset = 0
    names = sorted(_prop_names(gamma + delta))
    for ctx in parts:
        k = ctx.structure
        ids = {w: offset + i for i, w in enumerate(k.worlds)}
        worlds.extend(ids.values())
        edges |= {(ids[w], ids[v]) for w, v in k.edges}
        for p in names:
            val.setdefault(p, set()).update(ids[w] for w in k.val.get(p, ()))
        team.extend(ids[w] for w in ctx.team)
        offset += len(k.worlds)
    if not parts:
        merged = KripkeContext(KripkeStructure((0,), frozenset(), {p: frozenset() for p in names}), ())
        return MergeResult(True, merged, None, parts)
    k = KripkeStructure(tuple(worlds), frozenset(edges), {p: frozenset(v) for p, v in val.items()})
    return MergeResult(True, KripkeContext(k, canonical_team(team)), None, parts)


__all__ = [
    "BudgetExceeded",
    "DEFAULT_CEILING",
    "MergeResult",
    "SearchBudget",
    "Verdict",
    "boolean_leaves",
    "choose_props",
    "consistency_probe",
    "count_contexts",
    "entails",
    "enumerate_contexts",
    "equiv",
    "frames_for",
    "infer_signature",
    "merge_countermodels",
    "taut_boolean_closure",
    "truth_value",
    "valid",
]
