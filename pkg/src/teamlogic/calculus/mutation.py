"""Single-step mutations of proof scripts, used to test that the checker rejects them.

Three kinds are generated:

* ``premise-swap`` swaps the first two cited steps of an order-sensitive justification;
* ``flag-drop`` makes a step that is cited where a theorem is required depend on
  a premise (its theorem claim is removed, so only the later use can catch it);
* ``formula-typo`` replaces one schematic letter in a step formula, or strongly
  negates the formula.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

from .checker import CheckReport, Checker, load_script
from .corpus import _raw_corpus, lemma_entry
from .systems import canonical_name

_ORDERED_MACROS = ("mp-", "lemma", "sub", "thm")
_TYPOS = (("$phi", "$psi"), ("$psi", "$phi"), ("$alpha", "$beta"), ("$beta", "$alpha"), ("$theta", "$phi"))


@dataclass
class Mutation:
    script: str
    kind: str
    step: str
    description: str
    data: dict


def _walk_steps(steps, path=()):
    """Yield (path, step) for every step, descending into blocks."""
    for i, step in enumerate(steps):
        yield path + (i,), step
        if "block" in step:
            yield from _walk_steps(step["block"].get("steps", []), path + (i, "block"))


def _step_at(data: dict, path) -> dict:
    steps = data["steps"]
    i = 0
    while True:
        step = steps[path[i]]
        if i + 1 == len(path):
            return step
        steps = step["block"]["steps"]
        i += 2


def _justification(step):
    by = step.get("by") or {}
    if not by:
        return None, None
    (kind, body), = by.items()
    return kind, body


def _order_sensitive(kind, body) -> bool:
    refs = body.get("from", []) if isinstance(body, dict) else []
    if len(refs) < 2 or refs[0] == refs[1]:
        return False
    if kind == "rule":
        return True
    if kind == "axiom":
        return True
    if kind == "macro":
        return any(canonical_name(body.get("kind", "")).startswith(p) for p in _ORDERED_MACROS)
    return False


def _theorem_citations(data: dict) -> set:
    """Ids of steps cited where the checker demands a theorem."""
    cited = set()
    for _, step in _walk_steps(data["steps"]):
        kind, body = _justification(step)
        if kind == "macro":
            k = canonical_name(body.get("kind", ""))
            refs = body.get("from", [])
            if k.startswith("mp") and len(refs) == 2:
                cited.add(str(refs[1]))
            elif k == "sub":
                cited.update(str(r) for r in refs[1:])
        elif kind == "rule" and canonical_name(body.get("name", "")) not in ("e->", "e~>"):
            cited.update(str(r) for r in body.get("from", []))
    return cited


def mutations(data: dict):
    """All single-step mutations of one script, in a fixed order."""
    name = data.get("name", "script")
    hypothesis_free = [p["label"] for p in data.get("premises", []) if isinstance(p, dict) and not p.get("theorem")]
    theorem_cited = _theorem_citations(data)
    for i, premise in enumerate(data.get("premises", [])):
        if isinstance(premise, dict) and premise.get("theorem"):
            m = copy.deepcopy(data)
            m["premises"][i]["theorem"] = False
            yield Mutation(name, "flag-drop", premise["label"], f"premise {premise['label']} is no longer a theorem", m)
    for path, step in _walk_steps(data["steps"]):
        if "block" in step:
            continue
        sid = str(step.get("id"))
        kind, body = _justification(step)
        if _order_sensitive(kind, body):
            m = copy.deepcopy(data)
            refs = _step_at(m, path)["by"][kind]["from"]
            refs[0], refs[1] = refs[1], refs[0]
            yield Mutation(name, "premise-swap", sid, f"swap {refs[1]} and {refs[0]}", m)
        if sid in theorem_cited and kind == "macro" and body.get("kind") == "taut-L" and hypothesis_free:
            m = copy.deepcopy(data)
            target = _step_at(m, path)
            target.pop("theorem", None)
            target["by"]["macro"]["from"] = [hypothesis_free[0]] + list(target["by"]["macro"].get("from", []))
            yield Mutation(name, "flag-drop", sid, f"make step {sid} depend on premise {hypothesis_free[0]}", m)
        text = step.get("formula", "")
        for old, new in _TYPOS:
            if old in text:
                m = copy.deepcopy(data)
                _step_at(m, path)["formula"] = text.replace(old, new, 1)
                yield Mutation(name, "formula-typo", sid, f"{old} -> {new} in step {sid}", m)
                break
        else:
            if text:
                m = copy.deepcopy(data)
                _step_at(m, path)["formula"] = f"~({text})"
                yield Mutation(name, "formula-typo", sid, f"negate step {sid}", m)


def check_mutant(mutation: Mutation, lemmas: dict) -> CheckReport:
    return Checker(load_script(mutation.data), lemmas=lemmas).run()


def mutation_suite(limit_per_script: int | None = None):
    """Every corpus mutation paired with its check report."""
    table: dict = {}
    out = []
    for data in _raw_corpus():
        produced = list(mutations(data))
        if limit_per_script is not None:
            produced = produced[:limit_per_script]
        for mutation in produced:
            out.append((mutation, check_mutant(mutation, dict(table))))
        table[canonical_name(data["name"])] = lemma_entry(load_script(data))
    return out


__all__ = ["Mutation", "check_mutant", "mutation_suite", "mutations"]
