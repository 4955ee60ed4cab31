import pytest

from teamlogic.calculus.systems import find_axiom
from teamlogic.formula import (
    Constant,
    Delta,
    FoEquality,
    FoPredicate,
    ForAll,
    LinearImpl,
    MaterialImpl,
    PropAtom,
    Signature,
    StrongNeg,
    Variable,
    classify,
    fragment_leq,
    is_classical,
    subformulas,
    substitute_subformula,
    substitute_var,
)
from teamlogic.schema import apply_schema, match_schema
from teamlogic.syntax import ParseError, parse, render

p, q, a, b = PropAtom("p"), PropAtom("q"), PropAtom("a"), PropAtom("b")
R2 = Signature({"R": 2})


class TestParse:
    def test_material_implication_is_right_associative(self):
        assert parse("a ~> (b ~> a)") == MaterialImpl(a, MaterialImpl(b, a))
        assert parse("a ~> b ~> a") == parse("a ~> (b ~> a)")

    def test_tensor_desugars_to_dual_of_linear_implication(self):
        assert parse("p * q") == StrongNeg(LinearImpl(p, StrongNeg(q)))

    def test_diamond_desugars(self):
        assert parse("dia p") == StrongNeg(Delta(StrongNeg(p)))

    def test_some_and_nonempty(self):
        assert parse("E(p)") == parse("~!p")
        assert parse("NE") == parse("~F")

    def test_top_uses_first_identifier(self):
        assert parse("T && q") == parse("(q -> q) && q")
        assert parse("T") == parse("p -> p")

    @pytest.mark.parametrize("text", ["p ->", "(p", "p q", "box", "forall . p"])
    def test_syntax_errors_carry_position(self, text):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert "line 1" in str(info.value)

    def test_unknown_relation(self):
        with pytest.raises(ParseError, match="unknown symbol"):
            parse("R(x)")

    def test_arity_mismatch(self):
        with pytest.raises(ParseError):
            parse("R(x)", R2)


class TestRender:
    def test_resugars(self):
        assert render(StrongNeg(LinearImpl(p, StrongNeg(q)))) == "p * q"
        assert render(PropAtom("a")) == "a"
        assert render(ForAll("x", FoEquality(Variable("x"), Variable("x")))) == "forall x. x = x"

    @pytest.mark.parametrize(
        "text",
        [
            "p * q -o ~r",
            "(p -o q) -o r",
            "p -o (q -o r)",
            "box (p ~> q) && delta ~p",
            "dia (p || E(q))",
            "shriek x. (x * ~y)",
            "forall x. (x | !y)",
            "p <~> q",
            "NE && ~(NE * NE)",
        ],
    )
    def test_round_trip(self, text):
        f = parse(text)
        assert parse(render(f)) == f


class TestSubstitution:
    def test_no_capture(self):
        f = parse("forall y. R(x, y)", R2)
        assert render(substitute_var(f, "x", Constant("c"))) == "forall y. R(c, y)"

    def test_capture_renames_with_least_suffix(self):
        f = parse("forall y. R(x, y)", R2)
        g = substitute_var(f, "x", Variable("y"))
        assert g == ForAll("y1", FoPredicate("R", (Variable("y"), Variable("y1"))))

    def test_equality(self):
        assert render(substitute_var(parse("x = x"), "x", Constant("c"))) == "c = c"

    def test_subformula_replacement(self):
        f = parse("p ~> p")
        assert substitute_subformula(f, f, f) == f
        assert substitute_subformula(f, p, q) == parse("q ~> q")


class TestClassify:
    @pytest.mark.parametrize(
        "text, tag",
        [
            ("a -> b", "PL"),
            ("~a ~> b", "B(PL)"),
            ("box(~p)", "MTL"),
            ("box p -> p", "ML"),
            ("~box p", "B(ML)"),
            ("p -o q", "PTL"),
            ("forall x. x", "QBF"),
            ("shriek x. x", "QPTL"),
            ("~forall x. x", "B(QBF)"),
        ],
    )
    def test_tags(self, text, tag):
        assert classify(parse(text)) == tag

    def test_first_order(self):
        sig = Signature({"R": 1})
        assert classify(parse("forall x. R(x)", sig)) == "FO"
        assert classify(parse("~R(x) ~> R(x)", sig)) == "B(FO)"
        assert classify(parse("R(x) -o R(x)", sig)) == "Q(FO)"

    def test_monotone_over_subformulas(self):
        f = parse("box (p ~> (q -o ~p)) ~> delta q")
        for g in subformulas(f):
            assert fragment_leq(classify(g), classify(f))

    def test_classical_iff_no_team_connectives(self):
        assert is_classical(parse("box !p -> forall x. x"))
        assert not is_classical(parse("p ~> p"))


class TestSchemaMatching:
    def test_l1(self):
        assert match_schema(find_axiom("L", "L1"), parse("p ~> (q ~> p)")) == {"phi": p, "psi": q}

    def test_a5_side_condition(self):
        sig = Signature({"R": 1, "S": 1})
        f = parse("forall x.(R(x) -> S(y)) -> (R(x) -> forall x. S(y))", sig)
        assert match_schema(find_axiom("H", "A5"), f) is None

    def test_classical_slot_rejects_team_formula(self):
        assert match_schema(find_axiom("L", "L4"), parse("(~p -> q) ~> (~p ~> q)")) is None

    def test_left_inverse_of_instantiation(self):
        s = find_axiom("S", "Lax")
        inst = {"phi": parse("p * q"), "psi": parse("~q"), "theta": parse("box p -> p")}
        assert match_schema(s, apply_schema(s, inst)) == inst
