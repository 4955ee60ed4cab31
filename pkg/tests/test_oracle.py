import random

import pytest

from teamlogic import kernels
from teamlogic._kernels_py import choice_table, cover_table, flat_table, image_table, implies_table, limp_table, negate_table
from teamlogic.formula import Signature, subformulas
from teamlogic.generate import enumerate_formulas
from teamlogic.oracle import (
    BudgetExceeded,
    SearchBudget,
    consistency_probe,
    count_contexts,
    entails,
    equiv,
    merge_countermodels,
    taut_boolean_closure,
    valid,
)
from teamlogic.semantics import STRICT, eval_team
from teamlogic.syntax import parse
from teamlogic.tables import TeamTables, fast_eval


class TestEnumeration:
    def test_propositional_counts(self):
        for k in range(4):
            props = ("p", "q", "r")[:k]
            assert count_contexts("PL", SearchBudget(max_props=k, props=props)) == 2 ** (2**k)

    def test_kripke_counts(self):
        one = SearchBudget(max_worlds=1, props=("p",))
        assert count_contexts("ML", one, [parse("p")]) == 8
        two = SearchBudget(max_worlds=2, props=("p",))
        assert count_contexts("ML", two, [parse("p")]) == 8 + 16 * 4 * 4

    def test_first_order_counts(self):
        b = SearchBudget(max_domain=2, signature=Signature({"R": 1}))
        # domain 1: 2 structures x 2 teams; domain 2: 4 structures x 4 teams
        assert count_contexts("FO", b, [parse("R(x)", Signature({"R": 1}))]) == 4 + 16

    def test_ceiling(self):
        with pytest.raises(BudgetExceeded):
            valid(parse("p"), SearchBudget(max_worlds=3, ceiling=100), fragment="ML")

    def test_too_many_props(self):
        with pytest.raises(BudgetExceeded):
            valid(parse("p & q & r"), SearchBudget(max_props=2))


class TestVerdicts:
    def test_splitting_flatness(self):
        assert equiv(parse("a * b"), parse("a | b")).holds

    def test_limp_with_atoms(self):
        assert equiv(parse("p -o q"), parse("q")).holds

    def test_nonempty_witness_is_empty_team(self):
        v = equiv(parse("NE"), parse("T"), SearchBudget(max_props=1))
        assert not v.holds
        assert v.witness.team == ()

    @pytest.mark.parametrize("text", ["(a -> b) ~> (a ~> b)", "p ~> (q ~> p)"])
    def test_valid(self, text):
        assert valid(parse(text)).holds

    def test_unanimity_fails_on_mixed_team(self):
        v = valid(parse("~p ~> !p"), SearchBudget(max_props=1))
        assert not v.holds
        assert not eval_team(v.witness, parse("~p ~> !p"))

    def test_witness_reproduces(self):
        for f in enumerate_formulas(4, ("p", "q"), "PTL"):
            v = valid(f)
            if not v.holds:
                assert not eval_team(v.witness, f)

    def test_strict_mode(self):
        from teamlogic.calculus.systems import find_axiom
        from teamlogic.schema import apply_schema

        # instance of (Lax) found by the strict soundness fuzz
        inst = {"phi": parse("~p"), "psi": parse("!p & q"), "theta": parse("q")}
        lax = apply_schema(find_axiom("S", "Lax"), inst)
        assert valid(lax).holds
        v = valid(lax, SearchBudget(mode=STRICT))
        assert not v.holds
        assert [dict(s) for s in v.witness.team] == [{"p": 0, "q": 0}]

    def test_entails_and_consistency(self):
        assert entails([parse("p"), parse("p -> q")], parse("q")).holds
        assert not consistency_probe([parse("p"), parse("~p")]).holds
        assert consistency_probe([parse("p"), parse("~q")]).holds
        assert not consistency_probe([parse("NE"), parse("FF")]).holds

    def test_json(self):
        data = equiv(parse("p"), parse("q")).to_json()
        assert data["equivalent"] is False
        assert set(data["witness"]) == {"props", "team"}


class TestTautologies:
    @pytest.mark.parametrize(
        "text, expected",
        [("~~X ~> X", True), ("X ~> (Y ~> X)", True), ("X ~> Y", False), ("(p -o q) ~> (p -o q)", True)],
    )
    def test_leaf_abstraction(self, text, expected):
        assert taut_boolean_closure(parse(text)) is expected

    def test_agrees_with_validity_on_distinct_propositions(self):
        for f in enumerate_formulas(6, ("p", "q", "r"), "B(PL)"):
            if all(type(g).__name__ in ("StrongNeg", "MaterialImpl", "PropAtom") for g in subformulas(f)):
                assert taut_boolean_closure(f) == valid(f, SearchBudget(max_props=3)).holds


class TestMerging:
    def test_merge_pl(self):
        r = merge_countermodels([parse("p")], [parse("q"), parse("r")], SearchBudget(max_props=3))
        assert r.ok
        assert eval_team(r.context, parse("p"))
        assert not eval_team(r.context, parse("q"))
        assert not eval_team(r.context, parse("r"))

    def test_merge_failure_names_formula(self):
        r = merge_countermodels([parse("p")], [parse("p")])
        assert not r.ok and r.missing == parse("p")

    def test_merge_bottom(self):
        r = merge_countermodels([], [parse("F")])
        assert r.ok and r.context.team

    def test_merge_modal(self):
        r = merge_countermodels([parse("box p")], [parse("p"), parse("box !p")], SearchBudget(max_worlds=2))
        assert r.ok
        assert eval_team(r.context, parse("box p"))
        assert not eval_team(r.context, parse("p"))
        assert not eval_team(r.context, parse("box !p"))


class TestKernels:
    def test_backend(self):
        assert kernels.BACKEND in ("cython", "python")

    @pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")
    def test_backends_agree(self):
        from teamlogic import _kernels

        rng = random.Random(0)
        for n in range(1, 8):
            left = bytearray(rng.getrandbits(1) for _ in range(1 << n))
            right = bytearray(rng.getrandbits(1) for _ in range(1 << n))
            succ = [rng.getrandbits(n) for _ in range(n)]
            mask = rng.getrandbits(n)
            assert _kernels.flat_table(mask, n) == flat_table(mask, n)
            for strict in (False, True):
                assert _kernels.limp_table(left, right, n, strict) == limp_table(left, right, n, strict)
            assert _kernels.image_table(left, succ, n) == image_table(left, succ, n)
            assert _kernels.cover_table(left, succ, n) == cover_table(left, succ, n)
            assert _kernels.choice_table(left, succ, n) == choice_table(left, succ, n)
            assert _kernels.negate_table(left) == negate_table(left)
            assert _kernels.implies_table(left, right) == implies_table(left, right)

    def test_tables_match_reference_evaluator(self):
        from teamlogic.semantics import PropContext, canonical_team, prop_universe

        tables = TeamTables.for_assignments(("p", "q"))
        points = prop_universe(("p", "q"))
        for f in enumerate_formulas(5, ("p", "q"), "PTL"):
            table = tables.table(f)
            for mask in range(16):
                ctx = PropContext(("p", "q"), canonical_team(p for i, p in enumerate(points) if mask >> i & 1))
                assert bool(table[tables.team_mask(ctx.team)]) == eval_team(ctx, f)
                assert fast_eval(ctx, f) == eval_team(ctx, f)
