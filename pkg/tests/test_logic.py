import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amrplus.contexts import validate
from amrplus.drs import translate
from amrplus.errors import LogicError
from amrplus.logic import (
    And,
    Atom,
    Exists,
    Forall,
    Implies,
    Model,
    NoCountermodelUpTo,
    Not,
    Refuted,
    Truth,
    check_entailment,
    drs_to_fol,
    evaluate,
    find_model,
    free_variables,
    vocabulary,
)
from amrplus.penman import Constant, parse
from docgen import random_document

MARY = Constant('"Mary"')


def fol(text, mode="global"):
    doc = parse(text)
    local = "local" if mode == "local" else "none"
    return drs_to_fol(translate(doc, validate(doc), accommodate=local), mode)


def brute_force_countermodel(premise, conclusion, max_size):
    """Smallest domain size with a countermodel, by enumerating every interpretation."""
    preds, consts = vocabulary(premise, conclusion)
    for n in range(1, max_size + 1):
        dom = tuple(f"d{i + 1}" for i in range(n))
        atoms = [(p, args) for p, a in preds.items() for args in product(dom, repeat=a)]
        for values in product((False, True), repeat=len(atoms)):
            unary, binary = {}, {}
            for (p, args), v in zip(atoms, values):
                if v:
                    (unary if len(args) == 1 else binary).setdefault(p, set()).add(
                        args[0] if len(args) == 1 else args
                    )
            for cvals in product(dom, repeat=len(consts)):
                m = Model(dom, unary, binary, dict(zip(consts, cvals)))
                if evaluate(premise, m) and not evaluate(conclusion, m):
                    return n
    return None


def test_mary_formula():
    f = fol('(e /1/ smile-01 :ARG0 (x /2/ person :name "Mary")) {2<3,3:~1}')
    assert f == Exists(
        ("x",),
        And(
            (
                Atom("person.n.01", ("x",)),
                Atom("Name", ("x", MARY)),
                Not(Exists(("e",), And((Atom("smile.v.01", ("e",)), Atom("Agent", ("e", "x")))))),
            )
        ),
    )
    assert free_variables(f) == set()


def test_conditional_formula():
    f = fol("(e /1/ smile-01 :ARG0 (x /2/ person)) {3:2=>1}")
    assert f == Forall(
        ("x",),
        Implies(
            Atom("person.n.01", ("x",)),
            Exists(("e",), And((Atom("smile.v.01", ("e",)), Atom("Agent", ("e", "x"))))),
        ),
    )


def test_free_variable_without_accommodation():
    # with presuppositions kept apart, x is free inside the main box
    with pytest.raises(LogicError) as info:
        fol('(e /1/ smile-01 :ARG0 (x /2/ person :name "Mary")) {2<3,3:~1}', mode="none")
    assert info.value.code == "FREE_VARIABLE"


def test_evaluate_snake_model():
    every_itself = fol("(b /1/ bite-01 :ARG0 (s /2/ snake) :ARG1 s) {3:2=>1}")
    every_every = fol("(b /1/ bite-01 :ARG0 (s /2/ snake) :ARG1 (t /3/ snake)) {5:3=>4,4:2=>1}")
    m = Model(
        ("a", "b", "e1", "e2"),
        {"snake.n.01": {"a", "b"}, "bite.v.01": {"e1", "e2"}},
        {"Agent": {("e1", "a"), ("e2", "b")}, "Patient": {("e1", "a"), ("e2", "b")}},
    )
    assert evaluate(every_itself, m)
    assert not evaluate(every_every, m)


def test_evaluate_constants_and_errors():
    m = Model(("d1",), {"p": {"d1"}}, {}, {'"Mary"': "d1"})
    assert evaluate(Atom("p", (MARY,)), m)
    assert evaluate(Truth(True), m) and not evaluate(Truth(False), m)
    with pytest.raises(LogicError):
        evaluate(Atom("p", (Constant('"Sue"'),)), m)
    with pytest.raises(LogicError):
        evaluate(Atom("p", ("x",)), m)
    with pytest.raises(ValueError):
        Model((), {}, {})
    with pytest.raises(ValueError):
        Model(("d1",), {"p": {"d9"}})


def test_refuted_countermodel_is_real():
    left = fol('(l /1/ leave-11 :ARG0 "Mary")')
    not_left = fol('(l /1/ leave-11 :ARG0 "Mary") {2:~1}')
    v = check_entailment(not_left, left)
    assert isinstance(v, Refuted)
    assert evaluate(not_left, v.countermodel) and not evaluate(left, v.countermodel)
    assert str(v).startswith("REFUTED\ndomain d1")


def test_no_countermodel_text():
    f = fol("(x /1/ dog)")
    v = check_entailment(f, f, max_domain=2)
    assert v == NoCountermodelUpTo(2) and str(v) == "ENTAILED-UP-TO 2"


def test_bit_budget():
    f = fol("(e /1/ scare-01 :ARG0 (x /1/ dog) :ARG1 (y /1/ cat) :mod (z /1/ bird))")
    with pytest.raises(LogicError) as info:
        check_entailment(f, f, max_domain=4, max_bits=20)
    assert info.value.code == "VOCABULARY_TOO_LARGE"
    with pytest.raises(ValueError):
        check_entailment(f, f, max_domain=0)


def test_find_model_sizes():
    two_things = fol("(x /1/ dog :ARG0 (y /2/ cat)) {2:~1}")
    m = find_model(two_things, 1)
    assert m is not None and evaluate(two_things, m)
    contradiction = And((Exists(("x",), Atom("p", ("x",))), Not(Exists(("y",), Atom("p", ("y",))))))
    assert find_model(contradiction, 3) is None


def _small_pairs(count):
    rng = random.Random(3)
    pairs = []
    seed = 0
    while len(pairs) < count:
        seed += 1
        docs = [random_document(rng.randrange(10**6), max_nodes=2, max_contexts=3) for _ in range(2)]
        forms = [drs_to_fol(translate(d, validate(d)), "global") for d in docs]
        preds, _ = vocabulary(*forms)
        if sum(2 ** a for a in preds.values()) <= 12:
            pairs.append(forms)
    return pairs


def test_entailment_matches_brute_force():
    for premise, conclusion in _small_pairs(60):
        expected = brute_force_countermodel(premise, conclusion, 2)
        v = check_entailment(premise, conclusion, max_domain=2)
        if expected is None:
            assert v == NoCountermodelUpTo(2)
        else:
            assert isinstance(v, Refuted)
            assert len(v.countermodel.domain) == expected
            assert evaluate(premise, v.countermodel)
            assert not evaluate(conclusion, v.countermodel)


def test_random_formulas_are_closed():
    for seed in range(300):
        doc = random_document(seed)
        s = validate(doc)
        assert free_variables(drs_to_fol(translate(doc, s), "global")) == set()
        doc = random_document(seed, local=True)
        out = translate(doc, validate(doc), accommodate="local")
        assert free_variables(drs_to_fol(out, "local")) == set()


# small formula generator for semantic identities

VARS = ["x", "y"]
atoms = st.one_of(
    st.builds(lambda p, v: Atom(p, (v,)), st.sampled_from(["p", "q"]), st.sampled_from(VARS)),
    st.builds(lambda v, w: Atom("r", (v, w)), st.sampled_from(VARS), st.sampled_from(VARS)),
)
formulas = st.recursive(
    atoms,
    lambda sub: st.one_of(
        st.builds(Not, sub),
        st.builds(lambda a, b: And((a, b)), sub, sub),
        st.builds(Implies, sub, sub),
        st.builds(lambda v, b: Exists((v,), b), st.sampled_from(VARS), sub),
        st.builds(lambda v, b: Forall((v,), b), st.sampled_from(VARS), sub),
    ),
    max_leaves=6,
)


@st.composite
def models(draw):
    n = draw(st.integers(1, 3))
    dom = tuple(range(n))
    sub = st.sets(st.sampled_from(dom))
    pairs = st.sets(st.tuples(st.sampled_from(dom), st.sampled_from(dom)))
    return Model(dom, {"p": draw(sub), "q": draw(sub)}, {"r": draw(pairs)})


def _close(f):
    return Forall(("x", "y"), f)


@settings(max_examples=200, deadline=None)
@given(formulas, models())
def test_quantifier_duality(f, m):
    for v in VARS:
        assert evaluate(Not(Exists((v,), f)), m, {"x": 0, "y": 0}) == evaluate(
            Forall((v,), Not(f)), m, {"x": 0, "y": 0}
        )
    closed = _close(f)
    assert evaluate(Not(Not(closed)), m) == evaluate(closed, m)


@settings(max_examples=60, deadline=None)
@given(formulas)
def test_find_model_agrees_with_evaluate(f):
    closed = Exists(("x", "y"), f)
    for size in (1, 2):
        m = find_model(closed, size)
        if m is not None:
            assert evaluate(closed, m)
        else:
            # no model at this size: spot-check the empty and full interpretations
            dom = tuple(f"d{i + 1}" for i in range(size))
            full = Model(dom, {"p": set(dom), "q": set(dom)}, {"r": set(product(dom, dom))})
            assert not evaluate(closed, full)
            assert not evaluate(closed, Model(dom))
