"""Randomised soundness checks for axiom schemas.

Every schema of a system is instantiated with seeded random formulas (classical
slots receive classical formulas) and each instance is checked for validity by
exhaustive search.  Failures carry the instantiation and a witness context.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from ..formula import ForAll, free_names
from ..generate import random_by_depth, random_classical_by_depth
from ..oracle import SearchBudget, valid
from ..schema import InstantiationError, apply_schema, render_instantiation
from ..semantics import STRICT, context_to_json
from ..syntax import render
from .systems import ProofSystem, system

_LANGUAGE = {"H0": "PL", "L": "PTL", "S": "PTL", "S'": "PTL", "HBox": "MTL", "M": "MTL", "M'": "MTL", "Q": "QPTL", "X": "QPTL", "U": "QPTL"}
_PROPS = ("p", "q")
_VARIABLES = ("x", "y")


@dataclass
class Counterexample:
    instantiation: dict
    formula: str
    witness: dict

    def to_json(self) -> dict:
        return {"instantiation": self.instantiation, "formula": self.formula, "witness": self.witness}


@dataclass
class SchemaResult:
    name: str
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": self.name,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": [c.to_json() for c in self.failures],
        }


@dataclass
class SoundnessReport:
    system: str
    mode: str
    samples: int
    seed: int
    results: list = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(len(r.failures) for r in self.results)

    @property
    def sound(self) -> bool:
        return self.failures == 0

    def result(self, name: str) -> Optional[SchemaResult]:
        return next((r for r in self.results if r.name == name), None)

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "failures": self.failures,
            "schemas": [r.to_json() for r in self.results],
        }


def _sample_slot(rng: random.Random, sort: str, language: str, depth: int):
    quantified = language == "QPTL"
    atoms = _VARIABLES if quantified else _PROPS
    variables = _VARIABLES if quantified else ()
    if sort == "variable":
        return rng.choice(_VARIABLES)
    if sort == "classical":
        return random_classical_by_depth(rng, depth, atoms, "ML" if language == "MTL" else "PL", variables)
    if sort == "general":
        base = "MTL" if language == "MTL" else "PTL"
        return random_by_depth(rng, depth, atoms, base, variables)
    raise InstantiationError(f"cannot sample a {sort} slot")


def _close(f):
    """Universally close the free propositions; used for sentence-only slots."""
    for name in sorted(free_names(f)):
        f = ForAll(name, f)
    return f


def soundness_fuzz(
    target,
    budget: Optional[SearchBudget] = None,
    samples: int = 100,
    seed: int = 0,
    *,
    depth: int = 3,
    schemas=None,
    max_tries: int = 20,
) -> SoundnessReport:
    """Instantiate each schema of ``target`` ``samples`` times and check validity.

    ``target`` is a :class:`ProofSystem` or its name.  Instances whose side
    condition fails are resampled up to ``max_tries`` times and then counted
    as skipped.
    """
    sys_ = target if isinstance(target, ProofSystem) else system(target)
    language = _LANGUAGE.get(sys_.name)
    if language is None:
        raise ValueError(f"no sampler for system {sys_.name}")
    b = budget or SearchBudget()
    rng = random.Random(seed)
    report = SoundnessReport(sys_.name, b.mode, samples, seed)
    for s in sys_.axioms:
        if schemas is not None and s.name not in schemas:
            continue
        result = SchemaResult(s.name)
        report.results.append(result)
        slots = s.slots()
        sentence_slot = s.side_condition.startswith("alpha is a sentence")
        for _ in range(samples):
            instance = None
            for _attempt in range(max_tries):
                inst = {k: _sample_slot(rng, sort, language, depth) for k, sort in slots.items()}
                if sentence_slot:
                    inst["alpha"] = _close(inst["alpha"])
                if s.derive is not None:
                    for key in s.derive(inst):
                        inst.pop(key, None)
                try:
                    instance = apply_schema(s, inst)
                    break
                except InstantiationError:
                    continue
            if instance is None:
                result.skipped += 1
                continue
            verdict = valid(instance, b)
            result.checked += 1
            if not verdict.holds:
                result.failures.append(
                    Counterexample(render_instantiation(inst), render(instance), context_to_json(verdict.witness))
                )
    return report


def strict_lax_witness(samples: int = 100, seed: int = 0) -> Optional[Counterexample]:
    """First counterexample to (Lax) under strict semantics, if sampling finds one."""
    report = soundness_fuzz("S", SearchBudget(mode=STRICT), samples, seed, schemas=("Lax",))
    failures = report.result("Lax").failures
    return failures[0] if failures else None


__all__ = [
    "Counterexample",
    "SchemaResult",
    "SoundnessReport",
    "soundness_fuzz",
    "strict_lax_witness",
]
