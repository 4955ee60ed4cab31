"""The bundled derivation corpus and the lemma registry built from it.

Scripts live in ``scripts/`` as JSON, one derivation per file; ``index.json``
fixes their order.  A script may cite any script listed before it as a lemma.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Optional

from ..formula import MaterialImpl, wedge
from ..schema import AxiomSchema
from .checker import CheckReport, Checker, MalformedScript, ProofScript, _chain, _directed, load_script
from .systems import DERIVED, canonical_name


class CorpusError(MalformedScript):
    """A corpus file is missing or cannot be read."""


def _scripts_dir():
    return resources.files(__package__).joinpath("scripts")


@lru_cache(maxsize=1)
def _raw_corpus() -> tuple:
    root = _scripts_dir()
    try:
        order = json.loads(root.joinpath("index.json").read_text(encoding="utf-8"))
        return tuple(json.loads(root.joinpath(name).read_text(encoding="utf-8")) for name in order)
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"corpus file corrupt: {exc}") from exc


def load_corpus() -> list:
    """All bundled scripts, in dependency order, with schematic letters left open."""
    try:
        return [load_script(data) for data in _raw_corpus()]
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"corpus file corrupt: {exc}") from exc


def script_law(script: ProofScript) -> MaterialImpl:
    """Premises chained by ``~>`` in front of the goal."""
    return _chain([p.formula for p in script.premises], script.goal)


def lemma_entry(script: ProofScript) -> tuple:
    theorem_premises = tuple(i for i, p in enumerate(script.premises) if p.theorem)
    return AxiomSchema(script.name, script_law(script)), theorem_premises


def lemma_table(before: Optional[str] = None) -> dict:
    """Lemma name -> (pattern, indices of premises that must be theorems).

    With ``before`` only scripts preceding that one are included, which keeps
    corpus checking free of circular citations.
    """
    out = {}
    for script in load_corpus():
        if before is not None and script.name == before:
            break
        out[canonical_name(script.name)] = lemma_entry(script)
    return out


def schema_law(script: ProofScript):
    """The figure schema a script proves, in the stated direction, or None."""
    ref = script.source.get("data", {}).get("schema")
    if not ref:
        return None
    s = DERIVED[ref["system"].replace("′", "'")].axiom(ref["name"])
    return _directed(s.pattern, ref.get("direction"))


def matches_schema(script: ProofScript) -> bool:
    """Does the script's premises-to-goal law coincide with its figure schema?

    Several premises may appear curried or joined by ``&&`` in the schema.
    """
    law = schema_law(script)
    if law is None:
        return False
    if script_law(script) == law:
        return True
    premises = [p.formula for p in script.premises]
    if len(premises) > 1:
        joined = premises[0]
        for p in premises[1:]:
            joined = wedge(joined, p)
        return MaterialImpl(joined, script.goal) == law
    return False


def check_corpus(inst: Optional[dict] = None) -> list:
    """Check every bundled script; each may cite only its predecessors."""
    reports = []
    table: dict = {}
    for data in _raw_corpus():
        script = load_script(data, inst)
        reports.append(Checker(script, lemmas=dict(table)).run())
        table[canonical_name(script.name)] = lemma_entry(load_script(data))
    return reports


__all__ = [
    "CheckReport",
    "CorpusError",
    "check_corpus",
    "lemma_table",
    "load_corpus",
    "matches_schema",
    "schema_law",
    "script_law",
]
