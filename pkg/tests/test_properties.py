import itertools
import random

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from teamlogic.calculus import system
from teamlogic.calculus.soundness import _sample_slot
from teamlogic.generate import random_by_depth, random_classical_by_depth
from teamlogic.schema import InstantiationError, apply_schema, match_schema
from teamlogic.semantics import LAX, STRICT, PropContext, canonical_team, eval_team, prop_universe
from teamlogic.syntax import parse, render
from teamlogic.tables import fast_eval

PQ = ("p", "q")
TEAMS = [
    PropContext(PQ, canonical_team(members))
    for r in range(5)
    for members in itertools.combinations(prop_universe(PQ), r)
]
seeds = st.integers(min_value=0, max_value=2**32 - 1)
languages = st.sampled_from(["PL", "B(PL)", "PTL", "ML", "MTL"])


def general(seed, language="PTL", depth=3):
    return random_by_depth(random.Random(seed), depth, PQ, language)


@given(seeds, languages)
def test_render_parse_round_trip(seed, language):
    f = general(seed, language)
    assert parse(render(f)) == f


@given(seeds, st.integers(min_value=1, max_value=3))
def test_quantified_round_trip(seed, depth):
    f = random_by_depth(random.Random(seed), depth, ("x", "y"), "PTL", ("x", "y"))
    assert parse(render(f)) == f


@given(seeds, seeds)
def test_sugared_connectives_have_their_meaning(s1, s2):
    a, b = general(s1, depth=2), general(s2, depth=2)
    for ctx in TEAMS:
        ea, eb = eval_team(ctx, a), eval_team(ctx, b)
        assert eval_team(ctx, parse(f"({render(a)}) && ({render(b)})")) == (ea and eb)
        assert eval_team(ctx, parse(f"({render(a)}) || ({render(b)})")) == (ea or eb)
        assert eval_team(ctx, parse(f"~({render(a)})")) == (not ea)


@given(seeds, seeds)
def test_tensor_of_classical_formulas_is_disjunction(s1, s2):
    a = random_classical_by_depth(random.Random(s1), 2, PQ)
    b = random_classical_by_depth(random.Random(s2), 2, PQ)
    tensor, disj = parse(f"({render(a)}) * ({render(b)})"), parse(f"({render(a)}) | ({render(b)})")
    for ctx in TEAMS:
        for mode in (LAX, STRICT):
            assert eval_team(ctx, tensor, mode) == eval_team(ctx, disj, mode)


@given(seeds)
def test_fast_evaluator_agrees(seed):
    f = general(seed)
    for ctx in TEAMS:
        assert fast_eval(ctx, f) == eval_team(ctx, f)


AXIOMS = [(name, s) for name in "LSMQX" for s in system(name).axioms]
LANGUAGE = {"L": "PTL", "S": "PTL", "M": "MTL", "Q": "QPTL", "X": "QPTL"}


@settings(max_examples=200)
@given(st.sampled_from(AXIOMS), seeds)
def test_matching_inverts_instantiation(axiom, seed):
    name, s = axiom
    rng = random.Random(seed)
    inst = {k: _sample_slot(rng, sort, LANGUAGE[name], 2) for k, sort in s.slots().items()}
    try:
        instance = apply_schema(s, inst)
    except InstantiationError:
        assume(False)
    found = match_schema(s, instance)
    assert found is not None
    assert apply_schema(s, found) == instance
    assert {k: found[k] for k in inst} == inst
