import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finheyt.congruence import product
from finheyt.errors import TermEvalError, TermParseError
from finheyt.fixtures import b4_prod, c3_hdp, c3_hri, c3_simple, catalog_fixtures, two_ws5
from finheyt.morphism import subalgebra_closure
from finheyt.terms import (
    CONST0,
    CONST1,
    Box,
    DefiningPair,
    Diamond,
    Dimpl,
    Dualneg,
    Impl,
    Invol,
    Join,
    Meet,
    Neg,
    Quasiidentity,
    Var,
    check_quasiidentity,
    eval_term,
    parse_term,
    print_term,
    satisfy_atoms,
    term_vars,
)


def test_parse_examples():
    assert parse_term("[]x & []!x") == Meet(Box(Var("x")), Box(Neg(Var("x"))))
    assert parse_term("x -> y -> z") == Impl(Var("x"), Impl(Var("y"), Var("z")))
    assert parse_term("x -< (y | 1)") == Dimpl(Var("x"), Join(Var("y"), CONST1))


def test_parse_precedence_and_prefixes():
    assert parse_term("x & y | z") == Join(Meet(Var("x"), Var("y")), Var("z"))
    assert parse_term("~+x") == Invol(Dualneg(Var("x")))
    assert parse_term("<>[]x") == Diamond(Box(Var("x")))
    assert parse_term("!0 -> 1") == Impl(Neg(CONST0), CONST1)
    assert parse_term("a & b & c") == Meet(Meet(Var("a"), Var("b")), Var("c"))


def test_parse_errors_carry_positions():
    with pytest.raises(TermParseError) as e:
        parse_term("x &")
    assert e.value.position == 3
    with pytest.raises(TermParseError):
        parse_term("")
    with pytest.raises(TermParseError):
        parse_term("(x | y")
    with pytest.raises(TermParseError) as e:
        parse_term("x ? y")
    assert e.value.position == 2
    with pytest.raises(TermParseError):
        parse_term("x y")
    with pytest.raises(TermParseError):
        parse_term("2")


_LEAVES = st.one_of(
    st.sampled_from([CONST0, CONST1]),
    st.sampled_from(["x", "y", "z", "foo", "b_1"]).map(Var),
)


def _terms():
    unary = [Neg, Invol, Dualneg, Box, Diamond]
    binary = [Meet, Join, Impl, Dimpl]
    return st.recursive(
        _LEAVES,
        lambda kids: st.one_of(
            st.tuples(st.sampled_from(unary), kids).map(lambda p: p[0](p[1])),
            st.tuples(st.sampled_from(binary), kids, kids).map(lambda p: p[0](p[1], p[2])),
        ),
        max_leaves=25,
    )


@given(_terms())
@settings(max_examples=300)
def test_print_parse_roundtrip(term):
    assert parse_term(print_term(term)) == term


def test_eval_examples():
    assert eval_term(c3_simple(), parse_term("[]x"), {"x": 1}) == 0
    assert eval_term(two_ws5(), parse_term("<>x"), {"x": 1}) == 1
    assert eval_term(b4_prod(), parse_term("!x"), {"x": 1}) == 2
    assert eval_term(c3_hri(), parse_term("~x"), {"x": 0}) == 2
    assert eval_term(c3_hdp(), parse_term("+x"), {"x": 1}) == 2


def test_eval_errors():
    with pytest.raises(TermEvalError):
        eval_term(two_ws5(), parse_term("~x"), {"x": 0})
    with pytest.raises(TermEvalError):
        eval_term(two_ws5(), parse_term("x"), {})


@given(st.integers(0, 2), st.integers(0, 2))
def test_eval_respects_subalgebras(a, b):
    # closure of any carrier is closed under every term operation of the class
    alg = c3_hri()
    carrier = subalgebra_closure(alg, (a,))
    t = parse_term("~(x & y) -> []y")
    if b in carrier:
        assert eval_term(alg, t, {"x": a, "y": b}) in carrier


RHO = Quasiidentity(((Meet(Neg(Box(Var("x"))), Neg(Box(Neg(Var("x"))))), CONST1),),
                    (CONST0, CONST1))


def test_quasiidentity_rho_examples():
    from finheyt.fixtures import b4_disc

    assert check_quasiidentity(two_ws5(), RHO).holds
    failed = check_quasiidentity(b4_disc(), RHO)
    assert not failed.holds and failed.witness == {"x": 1}
    assert check_quasiidentity(b4_prod(), RHO).holds


def test_quasiidentity_witness_is_lex_first():
    from finheyt.fixtures import b4_disc

    chk = check_quasiidentity(b4_disc(), RHO)
    # elements 0 and 1 scanned in order; 0 does not satisfy the premise
    assert chk.witness == {"x": 1}


def test_quasiidentities_persist_under_products():
    # Persistence is one-directional: holding in both factors forces holding in
    # the product (equivalently a failure in the product traces to a factor).
    two, c3 = two_ws5(), c3_simple()
    from finheyt.fixtures import b4_disc, b4_prod

    pairs = [(two, two), (two, c3), (c3, c3), (two, b4_disc()), (c3, b4_disc()),
             (b4_prod(), two), (b4_disc(), b4_disc())]
    for a, b in pairs:
        prod_holds = check_quasiidentity(product(a, b), RHO).holds
        if check_quasiidentity(a, RHO).holds and check_quasiidentity(b, RHO).holds:
            assert prod_holds
        if not prod_holds:
            assert not (check_quasiidentity(a, RHO).holds and check_quasiidentity(b, RHO).holds)


def test_rho_in_product_does_not_reflect_to_factors():
    # Pinned counterexample: rho holds in 2 x C3simple (the first coordinate of
    # any witness would need box a = box !a = 0 in the two-element algebra)
    # although it fails in the factor C3simple.
    prod = product(two_ws5(), c3_simple())
    assert check_quasiidentity(prod, RHO).holds
    assert not check_quasiidentity(c3_simple(), RHO).holds


def test_satisfy_atoms_examples():
    two = two_ws5()
    assert satisfy_atoms(two, DefiningPair(("x",), ((parse_term("[]x"), Var("x")),))) == {"x": 0}
    assert satisfy_atoms(
        two, DefiningPair(("x",), ((parse_term("![]x & ![]!x"), CONST1),))
    ) is None
    env = satisfy_atoms(
        c3_simple(),
        DefiningPair(("x",), ((Neg(Var("x")), CONST0), (Box(Var("x")), CONST0))),
    )
    assert env == {"x": 1}


def test_satisfy_atoms_empty_presentation():
    assert satisfy_atoms(two_ws5(), DefiningPair((), ())) == {}


def test_satisfy_atoms_matches_bruteforce_on_fixtures():
    pairs = [
        DefiningPair(("x", "y"), ((parse_term("x & y"), CONST1),)),
        DefiningPair(("x", "y"), ((parse_term("x | y"), CONST1), (parse_term("x & y"), CONST0))),
        DefiningPair(("x",), ((parse_term("[]x"), CONST0), (parse_term("x"), CONST1))),
    ]
    for alg in catalog_fixtures():
        for pair in pairs:
            got = satisfy_atoms(alg, pair)
            expect = None
            for values in itertools.product(alg.elements, repeat=len(pair.variables)):
                env = dict(zip(pair.variables, values))
                if all(eval_term(alg, l, env) == eval_term(alg, r, env) for l, r in pair.atoms):
                    expect = env
                    break
            assert got == expect


def test_defining_pair_rejects_undeclared_variables():
    with pytest.raises(ValueError):
        DefiningPair(("x",), ((Var("x"), Var("y")),))


def test_term_vars_first_occurrence_order():
    assert term_vars(parse_term("y & x -> y")) == ("y", "x")
