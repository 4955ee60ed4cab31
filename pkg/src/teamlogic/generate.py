"""Exhaustive and seeded-random formula generators for testing and fuzzing.

Classical connectives are only ever applied to classical operands, so every
generated formula has team semantics.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .formula import (
    Box,
    ClassicalImpl,
    ClassicalNeg,
    Delta,
    FoEquality,
    FoPredicate,
    ForAll,
    Formula,
    LinearImpl,
    MaterialImpl,
    PropAtom,
    Shriek,
    Signature,
    StrongNeg,
    Variable,
    is_classical,
)

CLASSICAL_UNARY = (ClassicalNeg,)
CLASSICAL_BINARY = (ClassicalImpl,)
TEAM_UNARY = (StrongNeg,)
TEAM_BINARY = (MaterialImpl, LinearImpl)

LANGUAGES = {
    # name: (classical unary, team unary, classical binary, team binary)
    "PL": ((ClassicalNeg,), (), (ClassicalImpl,), ()),
    "B(PL)": ((ClassicalNeg,), (StrongNeg,), (ClassicalImpl,), (MaterialImpl,)),
    "PTL": ((ClassicalNeg,), (StrongNeg,), (ClassicalImpl,), (MaterialImpl, LinearImpl)),
    "ML": ((ClassicalNeg, Box), (), (ClassicalImpl,), ()),
    "MTL": ((ClassicalNeg, Box), (StrongNeg, Delta), (ClassicalImpl,), (MaterialImpl, LinearImpl)),
}


def _builders(language: str, variables=()):
    cu, tu, cb, tb = LANGUAGES[language]
    return cu, tu, cb, tb


def enumerate_formulas(max_size: int, atoms, language: str = "PTL") -> list:
    """Every formula with at most ``max_size`` nodes, smallest first."""
    cu, tu, cb, tb = _builders(language)
    atoms = tuple(PropAtom(a) for a in atoms)

    @lru_cache(maxsize=None)
    def exact(size: int) -> tuple:
        if size == 1:
            return atoms
        out = []
        for body in exact(size - 1):
            classical = is_classical(body)
            for op in cu:
                if classical:
                    out.append(op(body))
            for op in tu:
                out.append(op(body))
        for left_size in range(1, size - 1):
            lefts = exact(left_size)
            rights = exact(size - 1 - left_size)
            for a in lefts:
                ca = is_classical(a)
                for b in rights:
                    if ca and is_classical(b):
                        for op in cb:
                            out.append(op(a, b))
                    for op in tb:
                        out.append(op(a, b))
        return tuple(out)

    result = []
    for s in range(1, max_size + 1):
        result.extend(exact(s))
    return result


def random_formula(rng: random.Random, size: int, atoms, language: str = "PTL") -> Formula:
    """A random formula with exactly ``size`` nodes (``size >= 1``)."""
    cu, tu, cb, tb = _builders(language)
    atoms = tuple(atoms)

    def build(n: int, classical_only: bool) -> Formula:
        if n == 1:
            return PropAtom(rng.choice(atoms))
        unary = list(cu) + ([] if classical_only else list(tu))
        binary = list(cb) + ([] if classical_only else list(tb))
        if n == 2 or not binary or (unary and rng.random() < 0.35):
            op = rng.choice(unary)
            return op(build(n - 1, classical_only or op in cu))
        op = rng.choice(binary)
        left = rng.randint(1, n - 2)
        inner = classical_only or op in cb
        return op(build(left, inner), build(n - 1 - left, inner))

    return build(size, False)


def random_qptl(rng: random.Random, size: int, variables=("x", "y"), max_quantifiers: int = 2) -> Formula:
    """A random quantified propositional team formula."""
    quantifiers = [0]

    def build(n: int, classical_only: bool) -> Formula:
        if n == 1:
            return PropAtom(rng.choice(variables))
        choices = ["neg", "impl"]
        if not classical_only:
            choices += ["sneg", "mimpl", "limp"]
        if quantifiers[0] < max_quantifiers:
            choices += ["forall"] + ([] if classical_only else ["shriek"])
        if n == 2:
            choices = [c for c in choices if c in ("neg", "sneg", "forall", "shriek")]
        kind = rng.choice(choices)
        if kind in ("neg", "sneg"):
            op = ClassicalNeg if kind == "neg" else StrongNeg
            return op(build(n - 1, classical_only or kind == "neg"))
        if kind in ("forall", "shriek"):
            quantifiers[0] += 1
            op = ForAll if kind == "forall" else Shriek
            return op(rng.choice(variables), build(n - 1, classical_only))
        left = rng.randint(1, n - 2)
        op = {"impl": ClassicalImpl, "mimpl": MaterialImpl, "limp": LinearImpl}[kind]
        inner = classical_only or kind == "impl"
        return op(build(left, inner), build(n - 1 - left, inner))

    return build(size, False)


def random_classical(rng: random.Random, depth: int, atoms, modal: bool = False) -> Formula:
    """A random classical formula of depth at most ``depth``."""
    if depth == 0 or rng.random() < 0.3:
        return PropAtom(rng.choice(tuple(atoms)))
    kinds = ["neg", "impl"] + (["box"] if modal else [])
    kind = rng.choice(kinds)
    if kind == "neg":
        return ClassicalNeg(random_classical(rng, depth - 1, atoms, modal))
    if kind == "box":
        return Box(random_classical(rng, depth - 1, atoms, modal))
    return ClassicalImpl(random_classical(rng, depth - 1, atoms, modal), random_classical(rng, depth - 1, atoms, modal))


def random_by_depth(
    rng: random.Random, depth: int, atoms, language: str = "PTL", variables=(), classical: bool = False
) -> Formula:
    """A random formula of depth at most ``depth``; ``variables`` enables quantifiers."""
    cu, tu, cb, tb = _builders(language)
    atoms = tuple(atoms)

    def build(d: int, classical_only: bool) -> Formula:
        if d == 0 or rng.random() < 0.25:
            return PropAtom(rng.choice(atoms))
        kinds = [("cu", op) for op in cu] + [("cb", op) for op in cb]
        if not classical_only:
            kinds += [("tu", op) for op in tu] + [("tb", op) for op in tb]
        if variables:
            kinds.append(("q", ForAll))
            if not classical_only:
                kinds.append(("q", Shriek))
        kind, op = rng.choice(kinds)
        inner = classical_only or kind in ("cu", "cb")
        if kind == "q":
            return op(rng.choice(tuple(variables)), build(d - 1, inner))
        if kind in ("cu", "tu"):
            return op(build(d - 1, inner))
        return op(build(d - 1, inner), build(d - 1, inner))

    return build(depth, classical)


def random_classical_by_depth(rng: random.Random, depth: int, atoms, language: str = "PL", variables=()) -> Formula:
    """Classical counterpart of :func:`random_by_depth` (``ML`` adds box)."""
    base = "ML" if language in ("ML", "MTL") else "PL"
    return random_by_depth(rng, depth, atoms, base, variables, classical=True)


def random_fo(rng: random.Random, depth: int, sig: Signature, variables=("x", "y"), equality: bool = True) -> Formula:
    """A random first-order formula over the relations of ``sig``.

    Only variables occur as terms; quantifiers bind names from ``variables``.
    """
    relations = sorted(sig.relations.items())
    variables = tuple(variables)

    def atom() -> Formula:
        if equality and rng.random() < 0.2:
            return FoEquality(Variable(rng.choice(variables)), Variable(rng.choice(variables)))
        name, arity = rng.choice(relations)
        return FoPredicate(name, tuple(Variable(rng.choice(variables)) for _ in range(arity)))

    def build(d: int) -> Formula:
        if d == 0 or rng.random() < 0.3:
            return atom()
        kind = rng.choice(("neg", "impl", "forall"))
        if kind == "neg":
            return ClassicalNeg(build(d - 1))
        if kind == "impl":
            return ClassicalImpl(build(d - 1), build(d - 1))
        return ForAll(rng.choice(variables), build(d - 1))

    return build(depth)
