"""Evaluate a formula on every team of a small universe at once.

A universe is a fixed tuple of points (assignments or worlds).  Teams are
bitmasks over it, so a formula becomes a table of ``2**n`` truth values
computed bottom-up by the kernels in :mod:`teamlogic.kernels`.
"""

from __future__ import annotations

import itertools

from . import kernels
from .formula import (
    QUANTIFIERS,
    Box,
    Delta,
    FoEquality,
    FoPredicate,
    ForAll,
    Formula,
    FragmentError,
    LinearImpl,
    MaterialImpl,
    PropAtom,
    StrongNeg,
    free_term_vars,
    is_classical,
    subformulas,
)
from .semantics import (
    LAX,
    MODES,
    STRICT,
    FoContext,
    FoStructure,
    KripkeContext,
    KripkeStructure,
    PropContext,
    _classical,
    assignment,
    canonical_team,
    eval_team,
    point_key,
)

MAX_TABLE_POINTS = 12


class TeamTables:
    """Memoised all-teams evaluation over one universe of points."""

    def __init__(self, kind: str, points, structure=None, domain=(0, 1), mode: str = LAX):
        if mode not in MODES:
            raise ValueError(f"unknown semantics mode {mode!r}")
        points = tuple(points)
        if len(points) > MAX_TABLE_POINTS:
            raise ValueError(f"universe of {len(points)} points exceeds the table limit {MAX_TABLE_POINTS}")
        self.kind = kind
        self.points = points
        self.n = len(points)
        self.structure = structure
        self.domain = tuple(domain)
        self.mode = mode
        self.index = {p: i for i, p in enumerate(points)}
        self._tables: dict = {}
        self._succ_var: dict = {}
        self._succ_box = None

    # -- construction --------------------------------------------------------

    @classmethod
    def for_assignments(cls, variables, mode=LAX, structure=None, domain=(0, 1)):
        variables = tuple(sorted(set(variables)))
        points = tuple(
            assignment(dict(zip(variables, values)))
            for values in itertools.product(domain, repeat=len(variables))
        )
        points = tuple(sorted(points, key=point_key))
        kind = "fo" if structure is not None else "prop"
        out = cls(kind, points, structure, domain, mode)
        out.variables = variables
        return out

    @classmethod
    def for_kripke(cls, k: KripkeStructure, mode=LAX):
        out = cls("kripke", canonical_team(k.worlds), k, (), mode)
        out.variables = ()
        return out

    # -- teams ---------------------------------------------------------------

    def lift(self, member):
        """Extend an assignment by the universe's default values for missing variables."""
        if self.kind == "kripke":
            return member
        d = dict(member)
        for v in self.variables:
            d.setdefault(v, self.domain[0])
        return assignment(d)

    def team_mask(self, team) -> int:
        mask = 0
        for m in team:
            mask |= 1 << self.index[self.lift(m)]
        return mask

    def team_of(self, mask: int) -> tuple:
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    # -- relations -----------------------------------------------------------

    def box_successors(self):
        if self._succ_box is None:
            k = self.structure
            self._succ_box = [self.team_mask(k.successors(w)) for w in self.points]
        return self._succ_box

    def var_successors(self, x: str):
        succ = self._succ_var.get(x)
        if succ is None:
            if x not in self.variables:
                raise FragmentError(f"variable {x} is outside the table universe")
            succ = []
            for p in self.points:
                d = dict(p)
                mask = 0
                for a in self.domain:
                    d[x] = a
                    mask |= 1 << self.index[assignment(d)]
                succ.append(mask)
            self._succ_var[x] = succ
        return succ

    # -- evaluation ----------------------------------------------------------

    def point_mask(self, f: Formula) -> int:
        mask = 0
        for i, p in enumerate(self.points):
            if _classical(f, p, self.kind, self.structure):
                mask |= 1 << i
        return mask

    def table(self, f: Formula) -> bytearray:
        hit = self._tables.get(f)
        if hit is None:
            hit = self._tables[f] = self._table(f)
        return hit

    def _table(self, f: Formula) -> bytearray:
        n = self.n
        if is_classical(f):
            return kernels.flat_table(self.point_mask(f), n)
        if isinstance(f, StrongNeg):
            return kernels.negate_table(self.table(f.body))
        if isinstance(f, MaterialImpl):
            return kernels.implies_table(self.table(f.left), self.table(f.right))
        if isinstance(f, LinearImpl):
            return kernels.limp_table(self.table(f.left), self.table(f.right), n, self.mode == STRICT)
        if isinstance(f, (Box, Delta)):
            if self.kind != "kripke":
                raise FragmentError("modalities need a Kripke context")
            succ = self.box_successors()
        elif isinstance(f, QUANTIFIERS):
            if self.kind == "kripke":
                raise FragmentError("quantifiers need a team of assignments")
            succ = self.var_successors(f.var)
        else:
            raise FragmentError(f"classical {type(f).__name__} over team-level operands has no team semantics")
        body = self.table(f.body)
        if isinstance(f, (Box, ForAll)):
            return kernels.image_table(body, succ, n)
        if self.mode == STRICT:
            return kernels.choice_table(body, succ, n)
        return kernels.cover_table(body, succ, n)

    def holds(self, f: Formula, team) -> bool:
        return bool(self.table(f)[self.team_mask(team)])


def formula_variables(f: Formula) -> set:
    """Propositions and variables a table universe must cover for ``f``."""
    names = set()
    for g in subformulas(f):
        if isinstance(g, PropAtom):
            names.add(g.name)
        elif isinstance(g, QUANTIFIERS):
            names.add(g.var)
        elif isinstance(g, (FoPredicate, FoEquality)):
            names |= free_term_vars(g)
    return names


def tables_for(ctx, formulas, mode: str = LAX) -> TeamTables:
    """A table universe large enough for ``ctx`` and every formula given."""
    if isinstance(ctx, KripkeContext):
        return TeamTables.for_kripke(ctx.structure, mode)
    team_vars = {name for s in ctx.team for name, _ in s}
    names = set(team_vars)
    for f in formulas:
        if isinstance(ctx, FoContext):
            names |= {g.var for g in subformulas(f) if isinstance(g, QUANTIFIERS)}
            names |= free_term_vars(f)
        else:
            names |= formula_variables(f)
    if isinstance(ctx, PropContext):
        names |= set(ctx.props)
        return TeamTables.for_assignments(names, mode)
    return TeamTables.for_assignments(names, mode, ctx.structure, ctx.structure.domain)


def universe_size(ctx, formulas) -> int:
    if isinstance(ctx, KripkeContext):
        return len(ctx.structure.worlds)
    team_vars = {name for s in ctx.team for name, _ in s}
    names = set(team_vars)
    for f in formulas:
        names |= formula_variables(f)
    if isinstance(ctx, PropContext):
        names |= set(ctx.props)
    return len(ctx.domain) ** len(names)


def fast_eval(ctx, f: Formula, mode: str = LAX) -> bool:
    """``eval_team`` through the table kernels, falling back for large universes."""
    if universe_size(ctx, [f]) > MAX_TABLE_POINTS:
        return eval_team(ctx, f, mode)
    return TeamTables.holds(tables_for(ctx, [f], mode), f, ctx.team)


__all__ = [
    "MAX_TABLE_POINTS",
    "TeamTables",
    "fast_eval",
    "formula_variables",
    "tables_for",
    "universe_size",
    "FoStructure",
]
