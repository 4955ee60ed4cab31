"""The Hilbert-style systems as data: axiom schemas and inference rules."""

from __future__ import annotations

from dataclasses import dataclass

from ..formula import ClassicalNeg, Variable, free_names, free_term_vars, substitute_var
from ..schema import (
    AxiomSchema,
    aligned_formula,
    aligned_term,
    expansion_top,
    is_sentence,
    schema,
)


@dataclass(frozen=True)
class Rule:
    name: str
    arity: int
    theorem_only: bool
    description: str = ""


@dataclass(frozen=True)
class ProofSystem:
    name: str
    axioms: tuple
    rules: tuple = ()

    def axiom(self, name: str) -> AxiomSchema | None:
        key = canonical_name(name)
        for s in self.axioms:
            if canonical_name(s.name) == key:
                return s
        return None


_ASCII = {
    "⊗": "*", "⊸": "-o", "⤳": "~>", "→": "->", "□": "box", "◇": "dia",
    "Δ": "delta", "∀": "forall", "∃": "exists", "⊼": "&&", "⊻": "||",
    "!": "shriek", "′": "'",
}


def canonical_name(name: str) -> str:
    """ASCII spelling used to compare axiom and rule names."""
    out = name.strip().strip("()")
    for uni, asc in _ASCII.items():
        out = out.replace(uni, asc)
    return out.replace(" ", "").lower()


# -- side-condition hooks ---------------------------------------------------


def _instance_derive(inst):
    if "t" not in inst:
        return {}
    return {"beta": substitute_var(inst["alpha"], inst["x"], inst["t"])}


def _instance_solve(inst):
    if inst["x"] not in free_term_vars(inst["alpha"]):
        return dict(inst, t=Variable(inst["x"]))
    t = aligned_term(inst["alpha"], inst["beta"], inst["x"])
    return None if t is None else dict(inst, t=t)


def _not_free(inst):
    return inst["x"] not in free_names(inst["alpha"])


def _equality_derive(inst):
    return {"beta": substitute_var(inst["alpha"], inst["x"], Variable(inst["y"]))}


def _expansion_derive(inst):
    t = expansion_top(inst)
    return {
        "beta": substitute_var(inst["alpha"], inst["x"], t),
        "gamma": substitute_var(inst["alpha"], inst["x"], ClassicalNeg(t)),
    }


def _expansion_solve(inst):
    found = aligned_formula(inst["alpha"], inst["beta"], inst["x"])
    return dict(inst, top=found) if found is not None else inst


def _sentence(inst):
    return is_sentence(inst["alpha"])


# -- the systems ------------------------------------------------------------

H0_AXIOMS = (
    schema("A1", "$alpha -> ($beta -> $alpha)"),
    schema("A2", "($alpha -> ($beta -> $gamma)) -> (($alpha -> $beta) -> ($alpha -> $gamma))"),
    schema("A3", "(!$alpha -> !$beta) -> ($beta -> $alpha)"),
)

HBOX_AXIOMS = (schema("K", "box($alpha -> $beta) -> (box $alpha -> box $beta)"),)

H_AXIOMS = (
    schema(
        "A4", "forall $x. $alpha -> $beta", side_condition="t is a term",
        derive=_instance_derive, solve=_instance_solve, params=("t",),
    ),
    schema(
        "A5", "forall $x. ($alpha -> $beta) -> ($alpha -> forall $x. $beta)",
        side_condition="x not free in alpha", side=_not_free,
    ),
    schema("A6", "$x = $x"),
    schema("A7", "$x = $y -> ($alpha -> $beta)", derive=_equality_derive),
)

L_AXIOMS = (
    schema("L1", "$phi ~> ($psi ~> $phi)"),
    schema("L2", "($phi ~> ($psi ~> $theta)) ~> (($phi ~> $psi) ~> ($phi ~> $theta))"),
    schema("L3", "(~$phi ~> ~$psi) ~> ($psi ~> $phi)"),
    schema("L4", "($alpha -> $beta) ~> ($alpha ~> $beta)"),
)

S_AXIOMS = (
    schema("F⊗", "($alpha * $beta) <~> ($alpha | $beta)"),
    schema("F⊸", "$alpha ~> ($phi -o $alpha)"),
    schema("Lax", "$phi ~> (($phi -o $psi) ~> ($theta -o $psi))"),
    schema("Ex⊸", "($phi -o ($psi -o $theta)) ~> ($psi -o ($phi -o $theta))"),
    schema("C⊸", "($phi -o ~$psi) ~> ($psi -o ~$phi)"),
    schema("Dis⊸", "($phi -o ($psi ~> $theta)) ~> (($phi -o $psi) ~> ($phi -o $theta))"),
)

S_PRIME_AXIOMS = (
    schema("Com⊗", "($phi * $psi) <~> ($psi * $phi)"),
    schema("Ass⊗", "(($phi * $psi) * $theta) <~> ($phi * ($psi * $theta))"),
    schema("D⊼⊗", "$alpha && ($phi * $psi) <~> ($alpha && $phi) * ($alpha && $psi)"),
    schema("D⊻⊗", "$phi * ($psi || $theta) <~> ($phi * $psi) || ($phi * $theta)"),
    schema("Aug⊗", "($phi * $psi) && ($phi -o $theta) ~> ($phi * ($psi && $theta))"),
    schema("Abs⊗", "(E($alpha) * $phi) ~> E($alpha)"),
    schema("JoinE", "($alpha && E($beta)) ~> E($alpha & $beta)"),
    schema("IsolateE", "($phi * ($alpha && E($beta))) <~> ($phi * $alpha) && E($alpha & $beta)"),
)

M_AXIOMS = (
    schema("Lin□", "box ~$phi <~> ~box $phi"),
    schema("F◇", "dia $alpha <~> !box !$alpha"),
    schema("D◇⊗", "dia($phi * $psi) <~> dia $phi * dia $psi"),
    schema("E□", "box $alpha ~> delta $alpha"),
    schema("I□", "dia $phi ~> (delta $psi ~> box $psi)"),
    schema("Dis□", "box($phi ~> $psi) ~> (box $phi ~> box $psi)"),
    schema("DisΔ", "delta($phi ~> $psi) ~> (delta $phi ~> delta $psi)"),
)

M_PRIME_AXIOMS = (
    schema("D□⤳", "box($phi ~> $psi) <~> (box $phi ~> box $psi)"),
    schema("D◇⊻", "dia($phi || $psi) <~> (dia $phi || dia $psi)"),
    schema("◇IsolateE", "dia($alpha && E($beta)) <~> dia $alpha && E(!box !($alpha & $beta))"),
)

Q_AXIOMS = (
    schema("Lin∀", "forall $x. ~$phi <~> ~forall $x. $phi"),
    schema("F∃", "exists $x. $alpha <~> !forall $x. !$alpha"),
    schema("D∃⊗", "exists $x. ($phi * $psi) <~> exists $x. $phi * exists $x. $psi"),
    schema("E∀", "forall $x. $alpha ~> shriek $x. $alpha"),
    schema("I∀", "shriek $x. $psi ~> forall $x. $psi"),
    schema("Dis∀", "forall $x. ($phi ~> $psi) ~> (forall $x. $phi ~> forall $x. $psi)"),
    schema("Dis!", "shriek $x. ($phi ~> $psi) ~> (shriek $x. $phi ~> shriek $x. $psi)"),
)

X_AXIOMS = (
    schema(
        "X", "forall $x. $alpha <-> ($beta & $gamma)",
        derive=_expansion_derive, solve=_expansion_solve,
    ),
)

U_AXIOMS = (
    schema("U", "~$alpha ~> !$alpha", side_condition="alpha is a sentence", side=_sentence),
)

MODUS_PONENS = Rule("E->", 2, False, "from alpha and alpha -> beta infer beta")
LAX_MODUS_PONENS = Rule("E~>", 2, False, "from phi and phi ~> psi infer psi")
NEC = Rule("Nec", 1, True, "from a classical theorem alpha infer box alpha")
UG_FORALL = Rule("UG∀", 1, True, "from a theorem alpha[t/x] infer forall x. alpha")
NEC_LIMP = Rule("Nec⊸", 1, True, "from a theorem phi infer psi -o phi")
NEC_BOX = Rule("Nec□", 1, True, "from a theorem phi infer box phi")
NEC_DELTA = Rule("NecΔ", 1, True, "from a theorem phi infer delta phi")
UG_SHRIEK = Rule("UG!", 1, True, "from a theorem phi infer shriek x. phi")

SYSTEMS = {
    "H0": ProofSystem("H0", H0_AXIOMS, (MODUS_PONENS,)),
    "HBox": ProofSystem("HBox", HBOX_AXIOMS, (NEC,)),
    "H": ProofSystem("H", H_AXIOMS, (UG_FORALL,)),
    "L": ProofSystem("L", L_AXIOMS, (LAX_MODUS_PONENS,)),
    "S": ProofSystem("S", S_AXIOMS, (NEC_LIMP,)),
    "M": ProofSystem("M", M_AXIOMS, (NEC_BOX, NEC_DELTA)),
    "Q": ProofSystem("Q", Q_AXIOMS, (UG_SHRIEK,)),
    "X": ProofSystem("X", X_AXIOMS),
    "U": ProofSystem("U", U_AXIOMS),
}

# Derived theorem families, usable through the ``thm`` macro only.
DERIVED = {
    "S'": ProofSystem("S'", S_PRIME_AXIOMS),
    "M'": ProofSystem("M'", M_PRIME_AXIOMS),
}

# Systems that are only meaningful together with a classical base.
IMPLIED = {"HBox": ("H0",), "H": ("H0",)}


def system(name: str) -> ProofSystem:
    key = name.replace("′", "'").replace("□", "Box").replace("⁰", "0")
    if key in SYSTEMS:
        return SYSTEMS[key]
    if key in DERIVED:
        return DERIVED[key]
    raise KeyError(f"unknown proof system {name!r}")


def expand_systems(names) -> list:
    out = []
    for n in names:
        s = system(n)
        for dep in IMPLIED.get(s.name, ()):
            if SYSTEMS[dep] not in out:
                out.append(SYSTEMS[dep])
        if s not in out:
            out.append(s)
    return out


def find_rule(name: str, systems) -> Rule | None:
    key = canonical_name(name)
    for s in systems:
        for r in s.rules:
            if canonical_name(r.name) == key:
                return r
    return None


def find_axiom(system_name: str, axiom_name: str) -> AxiomSchema | None:
    try:
        return system(system_name).axiom(axiom_name)
    except KeyError:
        return None


def all_schemas():
    for s in list(SYSTEMS.values()) + list(DERIVED.values()):
        for a in s.axioms:
            yield s.name, a
