import json
import random

import pytest

from teamlogic.calculus import (
    MalformedScript,
    check_corpus,
    check_proof,
    lemma_table,
    load_script,
    mutations,
    soundness_fuzz,
)
from teamlogic.calculus.checker import Checker
from teamlogic.calculus.corpus import _raw_corpus, lemma_entry
from teamlogic.calculus.systems import canonical_name
from teamlogic.generate import random_by_depth, random_classical_by_depth
from teamlogic.oracle import SearchBudget, entails, valid
from teamlogic.syntax import parse


def l1(phi, psi):
    return {"axiom": {"system": "L", "name": "L1", "inst": {"phi": phi, "psi": psi}}}


def script(steps, premises=(), systems=("L",)):
    return {"name": "t", "systems": list(systems), "premises": list(premises), "steps": steps}


class TestBasics:
    def test_axiom_step(self):
        r = check_proof(script([{"id": "1", "formula": "p ~> (q ~> p)", "by": l1("p", "q")}]), lemmas={})
        assert r.accepted
        assert r.steps[0].theorem

    def test_wrong_instance_rejected(self):
        r = check_proof(script([{"id": "1", "formula": "p ~> (p ~> q)", "by": l1("p", "q")}]), lemmas={})
        assert not r.accepted
        assert r.failure.id == "1"

    def test_modus_ponens_carries_dependency(self):
        steps = [
            {"id": "1", "formula": "p ~> (q ~> p)", "by": l1("p", "q")},
            {"id": "2", "formula": "q ~> p", "by": {"rule": {"name": "E~>", "from": ["A", "1"]}}},
        ]
        r = check_proof(script(steps, [{"label": "A", "formula": "p"}]), lemmas={})
        assert r.accepted
        assert not r.steps[-1].theorem

    def test_system_outside_script_rejected(self):
        steps = [{"id": "1", "formula": "p ~> (q ~> p)", "by": l1("p", "q")}]
        assert not check_proof(script(steps, systems=("H0",)), lemmas={}).accepted

    def test_report_json(self):
        r = check_proof(script([{"id": "1", "formula": "p ~> p", "by": l1("p", "q")}]), lemmas={})
        data = json.loads(json.dumps(r.to_json()))
        assert data["accepted"] is False and data["failure"]["id"] == "1"


class TestDeduction:
    def test_discharge_removes_hypothesis(self):
        block = {
            "block": {
                "id": "3",
                "assume": {"id": "1", "formula": "p"},
                "steps": [{"id": "2", "formula": "q ~> p", "by": {"rule": {"name": "E~>", "from": ["1", "0"]}}}],
                "formula": "p ~> (q ~> p)",
            }
        }
        steps = [{"id": "0", "formula": "p ~> (q ~> p)", "by": l1("p", "q")}, block]
        r = check_proof(script(steps), lemmas={})
        assert r.accepted
        assert r.steps[-1].theorem

    def test_hypothesis_not_visible_outside(self):
        block = {"block": {"id": "2", "assume": {"id": "1", "formula": "p"}, "steps": [], "formula": "p ~> p"}}
        steps = [block, {"id": "3", "formula": "p", "by": {"rule": {"name": "E~>", "from": ["1", "2"]}}}]
        r = check_proof(script(steps), lemmas={})
        assert not r.accepted
        assert r.failure.id == "3"

    def test_wrong_conclusion(self):
        block = {"block": {"id": "2", "assume": {"id": "1", "formula": "p"}, "steps": [], "formula": "p ~> q"}}
        assert not check_proof(script([block]), lemmas={}).accepted


class TestTheoremFlag:
    @pytest.mark.parametrize("rule", ["nec", "nec_limp", "ug_shriek"])
    def test_rule_requires_theorem(self, rule, load_json):
        assert check_proof(load_json(f"theorem_flag/{rule}_axiom.json"), lemmas={}).accepted
        r = check_proof(load_json(f"theorem_flag/{rule}_premise.json"), lemmas={})
        assert not r.accepted
        assert "theorem-flag violation" in r.reason


class TestMalformed:
    @pytest.mark.parametrize("text", ["not json", "[]", '{"name": "x"}'])
    def test_unreadable(self, text):
        with pytest.raises(MalformedScript):
            check_proof(text, lemmas={})

    def test_unknown_justification_is_rejection(self):
        r = check_proof(script([{"id": "1", "formula": "p", "by": {"magic": {}}}]), lemmas={})
        assert not r.accepted


class TestCorpus:
    def test_all_accepted(self):
        reports = check_corpus()
        assert len(reports) == 27
        assert all(r.accepted for r in reports)

    def test_lemma_table_is_ordered(self):
        first = _raw_corpus()[0]["name"]
        assert lemma_table(before=first) == {}

    def test_mutations_rejected_for_first_scripts(self):
        table = {}
        for data in _raw_corpus()[:4]:
            produced = list(mutations(data))
            assert produced
            for m in produced:
                assert not Checker(load_script(m.data), lemmas=dict(table)).run().accepted, m.description
            table[canonical_name(data["name"])] = lemma_entry(load_script(data))


class TestCheckerSoundness:
    """Accepted steps are valid (theorems) or entailed by the premises, on random instances."""

    BUDGET = SearchBudget(max_props=2, max_worlds=2)

    def instance(self, rng, modal):
        lang, atoms = ("MTL", "p") if modal else ("PTL", "pq")
        inst = {n: random_by_depth(rng, 2, atoms, lang) for n in ("phi", "psi", "theta")}
        classical = "ML" if modal else "PL"
        inst.update({n: random_classical_by_depth(rng, 2, atoms, classical) for n in ("alpha", "beta")})
        return inst

    def test_invariant(self):
        rng = random.Random(1)
        table = {}
        checked = 0
        for data in _raw_corpus():
            modal = "M" in data["systems"]
            top = {str(s.get("id", s.get("block", {}).get("id"))) for s in data["steps"]}
            good = 0
            for _ in range(60):
                if good >= 2:
                    break
                s = load_script(data, self.instance(rng, modal))
                if not all(valid(p.formula, self.BUDGET).holds for p in s.premises if p.theorem):
                    continue
                good += 1
                r = Checker(s, lemmas=dict(table)).run()
                assert r.accepted, (s.name, r.reason)
                premises = [p.formula for p in s.premises]
                for st in r.steps:
                    if st.id not in top:
                        continue
                    f = parse(st.formula)
                    v = valid(f, self.BUDGET) if st.theorem else entails(premises, f, self.BUDGET)
                    assert v.holds, (s.name, st.id, st.formula)
                    checked += 1
            table[canonical_name(data["name"])] = lemma_entry(load_script(data))
        assert checked > 100


class TestSoundnessFuzz:
    @pytest.mark.parametrize("name", ["L", "S"])
    def test_quick_sound(self, name):
        report = soundness_fuzz(name, samples=5, seed=3, depth=2)
        assert report.sound
        assert all(r.checked for r in report.results)

    def test_deterministic(self):
        a = soundness_fuzz("L", samples=3, seed=7, depth=2).to_json()
        b = soundness_fuzz("L", samples=3, seed=7, depth=2).to_json()
        assert a == b
