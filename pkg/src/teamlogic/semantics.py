"""Team semantics, evaluated directly from the recursive definitions.

This is the reference evaluator. It walks splits, successor teams and
supplement teams explicitly; :mod:`teamlogic.tables` computes the same values
for all teams of a context at once and is checked against this module.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Union

from .formula import (
    Box,
    ClassicalImpl,
    ClassicalNeg,
    Constant,
    Delta,
    FoEquality,
    FoPredicate,
    ForAll,
    Formula,
    FragmentError,
    FunctionApp,
    LinearImpl,
    MaterialImpl,
    PropAtom,
    Shriek,
    Signature,
    StrongNeg,
    Term,
    Variable,
    is_classical,
)

LAX, STRICT = "lax", "strict"
MODES = (LAX, STRICT)


def _elem_key(v):
    return (type(v).__name__, v)


# -- assignments ------------------------------------------------------------

Assignment = tuple  # sorted tuple of (name, value) pairs


def assignment(mapping=None, **values) -> Assignment:
    items = dict(mapping or {}, **values)
    return tuple(sorted(items.items()))


def extend(s: Assignment, name: str, value) -> Assignment:
    d = dict(s)
    d[name] = value
    return tuple(sorted(d.items()))


def point_key(point):
    if isinstance(point, tuple):
        return tuple((name, _elem_key(v)) for name, v in point)
    return _elem_key(point)


def canonical_team(members) -> tuple:
    """Duplicate-free members in canonical order."""
    return tuple(sorted(set(members), key=point_key))


# -- structures and contexts ------------------------------------------------


@dataclass(frozen=True)
class KripkeStructure:
    worlds: tuple
    edges: frozenset
    val: dict = field(hash=False)

    def __post_init__(self):
        ws = set(self.worlds)
        for w, v in self.edges:
            if w not in ws or v not in ws:
                raise ValueError(f"edge ({w}, {v}) leaves the set of worlds")
        for p, ext in self.val.items():
            if not set(ext) <= ws:
                raise ValueError(f"valuation of {p} leaves the set of worlds")

    def successors(self, w) -> tuple:
        return canonical_team(v for u, v in self.edges if u == w)

    def holds(self, p: str, w) -> bool:
        return w in self.val.get(p, ())


@dataclass(frozen=True)
class FoStructure:
    domain: tuple
    relations: dict = field(default_factory=dict, hash=False)
    functions: dict = field(default_factory=dict, hash=False)
    constants: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if not self.domain:
            raise ValueError("first-order structures need a non-empty domain")
        dom = set(self.domain)
        for name, tuples in self.relations.items():
            for t in tuples:
                if not set(t) <= dom:
                    raise ValueError(f"relation {name} has a tuple outside the domain")
        for name, table in self.functions.items():
            for args, out in table.items():
                if out not in dom or not set(args) <= dom:
                    raise ValueError(f"function {name} leaves the domain")
        for name, c in self.constants.items():
            if c not in dom:
                raise ValueError(f"constant {name} is outside the domain")

    def term_value(self, t: Term, s: dict):
        if isinstance(t, Variable):
            if t.name not in s:
                raise KeyError(f"variable {t.name} is unassigned")
            return s[t.name]
        if isinstance(t, Constant):
            return self.constants[t.name]
        if isinstance(t, FunctionApp):
            args = tuple(self.term_value(a, s) for a in t.args)
            if not t.args:
                return self.constants[t.name]
            return self.functions[t.name][args]
        raise TypeError(f"not a term: {t!r}")


@dataclass(frozen=True)
class PropContext:
    """A team of propositional (or quantified Boolean) assignments."""

    props: tuple
    team: tuple

    @property
    def domain(self):
        return (0, 1)


@dataclass(frozen=True)
class KripkeContext:
    structure: KripkeStructure
    team: tuple


@dataclass(frozen=True)
class FoContext:
    structure: FoStructure
    team: tuple

    @property
    def domain(self):
        return self.structure.domain


Context = Union[PropContext, KripkeContext, FoContext]


def with_team(ctx: Context, team) -> Context:
    return type(ctx)(ctx.props if isinstance(ctx, PropContext) else ctx.structure, canonical_team(team))


# -- JSON model files -------------------------------------------------------


def _tuple_keys(table: dict) -> dict:
    out = {}
    for key, value in table.items():
        if isinstance(key, str):
            parts = json.loads(key) if key.startswith("[") else [key]
        else:
            parts = key
        out[tuple(parts)] = value
    return out


def load_context(data: dict) -> Context:
    """Build a context from the model-file JSON formats."""
    if "worlds" in data:
        k = KripkeStructure(
            tuple(data["worlds"]),
            frozenset((w, v) for w, v in data.get("edges", [])),
            {p: frozenset(ws) for p, ws in data.get("val", {}).items()},
        )
        return KripkeContext(k, canonical_team(data.get("team", [])))
    if "domain" in data:
        functions = {}
        for name, table in data.get("functions", {}).items():
            if isinstance(table, dict):
                functions[name] = _tuple_keys(table)
            else:
                functions[name] = {tuple(row[:-1]): row[-1] for row in table}
        a = FoStructure(
            tuple(data["domain"]),
            {name: frozenset(tuple(t) if isinstance(t, list) else (t,) for t in ts)
             for name, ts in data.get("relations", {}).items()},
            functions,
            dict(data.get("constants", {})),
        )
        return FoContext(a, canonical_team(assignment(s) for s in data.get("team", [{}])))
    if "props" in data or "team" in data:
        team = canonical_team(assignment({k: int(v) for k, v in s.items()}) for s in data.get("team", []))
        props = tuple(data.get("props") or sorted({k for s in team for k, _ in s}))
        return PropContext(props, team)
    raise ValueError("unrecognised model file: expected props, worlds or domain")


def context_to_json(ctx: Context) -> dict:
    if isinstance(ctx, PropContext):
        return {"props": list(ctx.props), "team": [dict(s) for s in ctx.team]}
    if isinstance(ctx, KripkeContext):
        k = ctx.structure
        return {
            "worlds": list(k.worlds),
            "edges": [list(e) for e in sorted(k.edges, key=lambda e: (point_key(e[0]), point_key(e[1])))],
            "val": {p: sorted(ws, key=_elem_key) for p, ws in sorted(k.val.items())},
            "team": list(ctx.team),
        }
    a = ctx.structure
    return {
        "domain": list(a.domain),
        "relations": {r: sorted([list(t) for t in ts]) for r, ts in sorted(a.relations.items())},
        "functions": {f: [list(args) + [out] for args, out in sorted(t.items())] for f, t in sorted(a.functions.items())},
        "constants": dict(sorted(a.constants.items())),
        "team": [dict(s) for s in ctx.team],
    }


# -- classical evaluation ---------------------------------------------------


def _classical(f: Formula, point, ctx_kind, structure) -> bool:
    if isinstance(f, ClassicalNeg):
        return not _classical(f.body, point, ctx_kind, structure)
    if isinstance(f, ClassicalImpl):
        return (not _classical(f.left, point, ctx_kind, structure)) or _classical(f.right, point, ctx_kind, structure)
    if isinstance(f, PropAtom):
        if ctx_kind == "kripke":
            return structure.holds(f.name, point)
        s = dict(point)
        if f.name not in s:
            if ctx_kind == "fo" and f.name in structure.relations:
                return () in structure.relations[f.name]
            raise KeyError(f"proposition {f.name} is unassigned")
        return bool(s[f.name])
    if isinstance(f, Box):
        if ctx_kind != "kripke":
            raise FragmentError("box needs a Kripke structure")
        return all(_classical(f.body, v, ctx_kind, structure) for v in structure.successors(point))
    if isinstance(f, ForAll):
        if ctx_kind == "kripke":
            raise FragmentError("quantifiers need assignments, not worlds")
        dom = (0, 1) if ctx_kind == "prop" else structure.domain
        return all(_classical(f.body, extend(point, f.var, a), ctx_kind, structure) for a in dom)
    if isinstance(f, FoPredicate):
        if ctx_kind != "fo":
            raise FragmentError(f"relation {f.name} needs a first-order structure")
        s = dict(point)
        args = tuple(structure.term_value(t, s) for t in f.terms)
        return args in structure.relations.get(f.name, frozenset())
    if isinstance(f, FoEquality):
        if ctx_kind != "fo":
            raise FragmentError("equality needs a first-order structure")
        s = dict(point)
        return structure.term_value(f.left, s) == structure.term_value(f.right, s)
    raise FragmentError(f"{type(f).__name__} is not classical")


def eval_classical(valuation, f: Formula) -> bool:
    """Tarskian truth of a classical formula.

    ``valuation`` is a dict of propositional values, a ``(KripkeStructure,
    world)`` pair, or an ``(FoStructure, assignment)`` pair.
    """
    if not is_classical(f):
        raise FragmentError("eval_classical needs a classical formula")
    if isinstance(valuation, dict):
        return _classical(f, assignment(valuation), "prop", None)
    structure, point = valuation
    if isinstance(structure, KripkeStructure):
        return _classical(f, point, "kripke", structure)
    if isinstance(structure, FoStructure):
        if isinstance(point, dict):
            point = assignment(point)
        return _classical(f, point, "fo", structure)
    raise TypeError("unsupported valuation")


def _kind(ctx: Context) -> str:
    if isinstance(ctx, PropContext):
        return "prop"
    if isinstance(ctx, KripkeContext):
        return "kripke"
    return "fo"


# -- enumerators -------------------------------------------------------------


def splits(team, mode: str = LAX) -> Iterator[tuple]:
    """All divisions ``(S, U)`` of ``team``; lax covers, strict partitions."""
    team = canonical_team(team)
    # per member: in U only, in S only, or (lax) in both
    choices = (0, 1, 2) if mode == LAX else (0, 1)
    for pattern in itertools.product(choices, repeat=len(team)):
        s = tuple(m for m, c in zip(team, pattern) if c >= 1)
        u = tuple(m for m, c in zip(team, pattern) if c != 1)
        yield s, u


def global_successor(k: KripkeStructure, team) -> tuple:
    members = set(team)
    return canonical_team(v for w, v in k.edges if w in members)


def successor_teams(k: KripkeStructure, team, mode: str = LAX) -> Iterator[tuple]:
    """Successor teams of ``team``; strict mode picks one successor per world."""
    team = canonical_team(team)
    succ = [k.successors(w) for w in team]
    if any(not s for s in succ):
        return
    if mode == STRICT:
        seen = set()
        for pick in itertools.product(*succ):
            t = canonical_team(pick)
            if t not in seen:
                seen.add(t)
                yield t
        return
    image = global_successor(k, team)
    for mask in range(1 << len(image)):
        cand = {v for i, v in enumerate(image) if mask >> i & 1}
        if all(cand.intersection(s) for s in succ):
            yield canonical_team(cand)


def duplicate_team(ctx: Context, team, x: str) -> tuple:
    return canonical_team(extend(s, x, a) for s in team for a in ctx.domain)


def supplement_choices(domain, team, mode: str = LAX) -> Iterator[tuple]:
    """Raw supplementing functions as tuples of value sets, before deduplication."""
    if mode == LAX:
        options = [frozenset(c) for r in range(1, len(domain) + 1) for c in itertools.combinations(domain, r)]
    else:
        options = [frozenset((a,)) for a in domain]
    return itertools.product(options, repeat=len(team))


def supplement_teams(ctx: Context, team, x: str, mode: str = LAX) -> Iterator[tuple]:
    """Every ``T[f/x]``, deduplicated, in first-occurrence order."""
    team = canonical_team(team)
    seen = set()
    for f in supplement_choices(ctx.domain, team, mode):
        t = canonical_team(extend(s, x, a) for s, vals in zip(team, f) for a in vals)
        if t not in seen:
            seen.add(t)
            yield t


# -- team evaluation ----------------------------------------------------------


class _Evaluator:
    def __init__(self, ctx: Context, mode: str):
        if mode not in MODES:
            raise ValueError(f"unknown semantics mode {mode!r}")
        self.ctx = ctx
        self.mode = mode
        self.kind = _kind(ctx)
        self.structure = None if self.kind == "prop" else ctx.structure
        self.memo = {}

    def classical(self, f, team) -> bool:
        return all(_classical(f, m, self.kind, self.structure) for m in team)

    def eval(self, f: Formula, team: tuple) -> bool:
        key = (f, team)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._eval(f, team)
        return hit

    def _eval(self, f, team) -> bool:
        if is_classical(f):
            return self.classical(f, team)
        if isinstance(f, StrongNeg):
            return not self.eval(f.body, team)
        if isinstance(f, MaterialImpl):
            return (not self.eval(f.left, team)) or self.eval(f.right, team)
        if isinstance(f, LinearImpl):
            return all(
                not self.eval(f.left, s) or self.eval(f.right, u)
                for s, u in splits(team, self.mode)
            )
        if isinstance(f, Box):
            self._need("kripke", "box")
            return self.eval(f.body, global_successor(self.structure, team))
        if isinstance(f, Delta):
            self._need("kripke", "delta")
            return all(self.eval(f.body, t) for t in successor_teams(self.structure, team, self.mode))
        if isinstance(f, ForAll):
            self._need_assignments("forall")
            return self.eval(f.body, duplicate_team(self.ctx, team, f.var))
        if isinstance(f, Shriek):
            self._need_assignments("shriek")
            return all(self.eval(f.body, t) for t in supplement_teams(self.ctx, team, f.var, self.mode))
        raise FragmentError(
            f"classical {type(f).__name__} over team-level operands has no team semantics"
        )

    def _need(self, kind, op):
        if self.kind != kind:
            raise FragmentError(f"{op} needs a Kripke context")

    def _need_assignments(self, op):
        if self.kind == "kripke":
            raise FragmentError(f"{op} needs a team of assignments")


def eval_team(ctx: Context, f: Formula, mode: str = LAX) -> bool:
    """Whether the team of ``ctx`` satisfies ``f``."""
    return _Evaluator(ctx, mode).eval(f, canonical_team(ctx.team))


def team_evaluator(ctx: Context, mode: str = LAX):
    """A memoising ``(formula, team) -> bool`` function sharing one cache."""
    ev = _Evaluator(ctx, mode)
    return lambda f, team: ev.eval(f, canonical_team(team))


def prop_universe(props) -> tuple:
    """All assignments over ``props`` in canonical order."""
    props = sorted(props)
    return tuple(assignment(dict(zip(props, bits))) for bits in itertools.product((0, 1), repeat=len(props)))


def signature_of(ctx: Context) -> Signature:
    if isinstance(ctx, FoContext):
        a = ctx.structure
        arities = {r: (len(next(iter(ts))) if ts else 1) for r, ts in a.relations.items()}
        funcs = {f: (len(next(iter(t))) if t else 1) for f, t in a.functions.items()}
        return Signature(arities, funcs, tuple(sorted(a.constants)))
    return Signature()
