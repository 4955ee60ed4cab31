import pytest

from teamlogic.elimination import (
    EliminationError,
    SizeCeilingExceeded,
    check_trace,
    dnf_boolean_closure,
    eliminate_box,
    eliminate_delta,
    eliminate_forall,
    eliminate_limp,
    eliminate_shriek,
    first_order_translation,
    is_splus,
    qbf_expand,
    sentence_interpolant,
    to_boolean_closure,
    to_splus,
)
from teamlogic.formula import (
    ClassicalNeg,
    FragmentError,
    LinearImpl,
    Signature,
    StrongNeg,
    classify,
    fragment_leq,
    subformulas,
)
from teamlogic.oracle import SearchBudget, classically_satisfiable, consistency_probe, entails, equiv
from teamlogic.semantics import STRICT
from teamlogic.syntax import parse, render

MODAL = SearchBudget(max_worlds=2)


class TestDnf:
    def test_de_morgan(self):
        form = dnf_boolean_closure(parse("~(a && b)"))
        assert sorted((c.classical, tuple(map(render, c.some))) for c in form.clauses) == [
            ((), ("!a",)),
            ((), ("!b",)),
        ]

    def test_classical(self):
        form = dnf_boolean_closure(parse("a"))
        assert [(c.classical, c.some) for c in form.clauses] == [((parse("a"),), ())]

    def test_negated_some_becomes_classical(self):
        form = dnf_boolean_closure(parse("~(a ~> E(b))"))
        assert len(form.clauses) == 1
        assert set(form.clauses[0].classical) == {parse("a"), parse("!b")}
        assert form.clauses[0].some == ()

    def test_rejects_team_connectives(self):
        with pytest.raises(FragmentError):
            dnf_boolean_closure(parse("p -o q"))


class TestLimp:
    def test_atoms(self):
        res = eliminate_limp(parse("p"), parse("q"))
        assert equiv(res.output, parse("q")).holds

    def test_classical_operands(self):
        a, b = parse("a & !b"), parse("b | a")
        res = eliminate_limp(a, b)
        assert equiv(res.output, LinearImpl(a, b)).holds
        assert fragment_leq(res.fragment, "B(PL)")

    def test_vacuous(self):
        res = eliminate_limp(parse("FF"), parse("p"))
        assert equiv(res.output, parse("T")).holds

    def test_trace_is_local(self):
        res = to_boolean_closure(parse("(p -o q) ~> ~q"))
        assert res.trace[0].before == parse("(p -o q) ~> ~q")
        assert res.trace[-1].after == res.output
        assert check_trace(res.trace) == []


class TestModal:
    def test_box_linear(self):
        assert eliminate_box(parse("~p")).output == parse("~box p")

    def test_box_distributes(self):
        assert eliminate_box(parse("p ~> q")).output == parse("box p ~> box q")

    def test_box_classical_unchanged(self):
        assert eliminate_box(parse("p")).output == parse("box p")

    @pytest.mark.parametrize("inner", ["F", "~p", "T", "p", "E(p) && ~q"])
    def test_delta(self, inner):
        f = parse(inner)
        res = eliminate_delta(f)
        assert fragment_leq(classify(res.output), "B(ML)")
        assert equiv(res.output, parse(f"delta ({inner})"), MODAL, fragment="ML").holds

    def test_pipeline(self):
        f = parse("delta(~p) && box q")
        res = to_boolean_closure(f, spot_check=True, budget=MODAL)
        assert fragment_leq(res.fragment, "B(ML)")
        assert equiv(f, res.output, MODAL).holds


class TestQuantifiers:
    def test_forall_linear(self):
        assert eliminate_forall("x", parse("~x")).output == parse("~forall x. x")

    def test_forall_distributes(self):
        res = eliminate_forall("x", parse("x ~> y"))
        assert res.output == parse("forall x. x ~> forall x. y")

    def test_shriek_on_classical(self):
        res = eliminate_shriek("x", parse("x | y"))
        assert equiv(res.output, parse("forall x. (x | y)"), SearchBudget(props=("y",))).holds

    def test_shriek_top(self):
        assert equiv(eliminate_shriek("x", parse("T")).output, parse("T")).holds

    def test_qbf_expansion(self):
        out = qbf_expand(parse("forall x. (x | y)"))
        assert not any(type(g).__name__ == "ForAll" for g in subformulas(out))
        assert equiv(out, parse("y")).holds
        assert qbf_expand(parse("p -> q")) == parse("p -> q")

    def test_pipeline(self):
        f = parse("shriek x. (x * ~y)")
        res = to_boolean_closure(f)
        assert res.fragment in ("PL", "B(PL)")
        assert equiv(f, res.output, SearchBudget(props=("x", "y"))).holds


class TestGuards:
    def test_strict_refused(self):
        with pytest.raises(EliminationError, match="strict"):
            to_boolean_closure(parse("p -o q"), STRICT)

    def test_node_ceiling(self):
        with pytest.raises(SizeCeilingExceeded) as info:
            to_boolean_closure(parse("(p -o q) -o (q -o p)"), max_nodes=5)
        assert info.value.ceiling == 5

    def test_spot_check_passes(self):
        res = to_boolean_closure(parse("(p -o ~q) -o E(p)"), spot_check=True)
        assert equiv(res.output, parse("(p -o ~q) -o E(p)")).holds


class TestSplus:
    def test_some(self):
        out = to_splus(parse("E(b)"))
        assert is_splus(out)
        assert equiv(out, parse("(p | !p) * (NE && b)"), SearchBudget(props=("b", "p"))).holds

    def test_classical(self):
        assert equiv(to_splus(parse("a")), parse("a")).holds

    @pytest.mark.parametrize("text", ["a && E(b)", "~(a ~> E(b))", "~a || E(!b)", "~(a && b)"])
    def test_negation_free_and_equivalent(self, text):
        f = parse(text)
        out = to_splus(f)
        assert is_splus(out)
        # the AST desugars ⊼/⊻ through ~ and ~>, so the check is on the sugared form
        assert "~" not in render(out)
        assert equiv(out, f).holds


class TestFirstOrder:
    sig = Signature({"R": 1, "S": 1})

    def test_translation(self):
        out, ext = first_order_translation([parse("R(x)", self.sig), parse("~S(x)", self.sig)], self.sig)
        assert [render(f) for f in out] == ["R(c_1_x)", "!S(c_1_x)"]
        assert "c_1_x" in ext.constants

    def test_no_negated_formulas(self):
        assert first_order_translation([parse("R(x)", self.sig)], self.sig)[0] == []

    def test_satisfiability_transfer(self):
        phi = [parse("R(x)", self.sig), parse("~R(x)", self.sig)]
        out, ext = first_order_translation(phi, self.sig)
        assert classically_satisfiable(out, ext) is None
        assert not consistency_probe(phi, SearchBudget(signature=self.sig)).holds

    def test_name_clash(self):
        f = parse("R(x) & forall x. S(x)", self.sig)
        with pytest.raises(FragmentError):
            first_order_translation([StrongNeg(f)], self.sig)
        out, _ = first_order_translation([StrongNeg(f)], self.sig, auto_rename=True)
        assert isinstance(out[0], ClassicalNeg)

    def test_interpolant(self):
        r2 = Signature({"R": 2})
        assert render(sentence_interpolant([], parse("R(x, y)", r2))) == "forall x. forall y. R(x, y)"
        sentence = parse("forall x. R(x, x)", r2)
        assert sentence_interpolant([], sentence) == sentence

    def test_interpolant_entailments(self):
        sig = Signature({"R": 1})
        delta = [parse("~!forall x. R(x)", sig)]
        alpha = parse("R(y)", sig)
        eps = sentence_interpolant(delta, alpha)
        b = SearchBudget(signature=sig)
        assert entails(delta, alpha, b).holds
        assert entails(delta, eps, b).holds
        assert entails([eps], alpha, b).holds
