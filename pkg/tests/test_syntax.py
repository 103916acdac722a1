import itertools

import pytest
from hypothesis import given

import model_oracle
from natded.formats import parse_formula, print_formula
from natded.subst import sub
from natded.syntax import (
    Con,
    Dis,
    Exi,
    Falsity,
    Fun,
    Imp,
    Pre,
    Uni,
    Var,
    iff,
    max_var_index,
    max_var_index_term,
    neg,
    truth,
)
from strategies import formulas, rand_formula

P = Pre("P", ())
Q = Pre("Q", ())


class TestAbbreviations:
    def test_truth_unfolds(self):
        assert truth() == Imp(Falsity(), Falsity())

    def test_truth_equals_parsed_text(self):
        assert truth() == parse_formula("Imp Falsity Falsity")

    def test_truth_holds_in_every_interpretation(self):
        assert model_oracle.holds_everywhere(truth(), 3)

    def test_neg_unfolds(self):
        assert neg(P) == Imp(P, Falsity())

    def test_neg_truth_fails_everywhere(self):
        assert model_oracle.fails_everywhere(neg(truth()), 3)

    def test_neg_falsity_is_truth(self):
        assert neg(Falsity()) == truth()

    def test_iff_unfolds(self):
        assert iff(P, Q) == Con(Imp(P, Q), Imp(Q, P))

    def test_iff_reflexive_is_valid(self):
        import random

        rng = random.Random(7)
        for _ in range(25):
            p = rand_formula(rng, 2)
            assert model_oracle.holds_everywhere(iff(p, p), 2)

    def test_iff_falsity(self):
        assert iff(Falsity(), Falsity()) == Con(truth(), truth())

    def test_macros_build_plain_constructors(self):
        # No extra constructors exist: abbreviations expand immediately.
        assert isinstance(truth(), Imp)
        assert isinstance(neg(P), Imp)
        assert isinstance(iff(P, Q), Con)


class TestIdentifiers:
    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Fun("", ())

    def test_quote_rejected(self):
        with pytest.raises(ValueError):
            Pre('a"b', ())

    def test_control_rejected(self):
        with pytest.raises(ValueError):
            Fun("a\nb", ())

    def test_arity_overloading_is_legal(self):
        unary = Fun("f", (Var(0),))
        binary = Fun("f", (Var(0), Var(1)))
        assert unary != binary


class TestEquality:
    def test_structural(self):
        assert Imp(P, Q) == Imp(Pre("P", ()), Pre("Q", ()))
        assert Imp(P, Q) != Imp(Q, P)

    @given(formulas)
    def test_hash_consistent_with_serialization(self, p):
        q = parse_formula(print_formula(p))
        assert p == q
        assert hash(p) == hash(q)
        assert print_formula(p) == print_formula(q)


class TestMaxVarIndex:
    def test_single_free_variable(self):
        assert max_var_index(Pre("P", (Var(3),))) == 3

    def test_bound_variable_is_not_free(self):
        assert max_var_index(Uni(Pre("P", (Var(0),)))) is None

    def test_free_under_binder_shifts_down(self):
        assert max_var_index(Uni(Pre("P", (Var(0), Var(2))))) == 1

    def test_closed_formula(self):
        assert max_var_index(truth()) is None

    def test_term_variant(self):
        assert max_var_index_term(Fun("f", (Var(4), Fun("a", ())))) == 4
        assert max_var_index_term(Fun("a", ())) is None


def _all_formulas_up_to_depth_3():
    # Two-symbol signature: predicate P (arities 0..1) and constant a.
    atoms = [
        Falsity(),
        Pre("P", ()),
        Pre("P", (Var(0),)),
        Pre("P", (Var(1),)),
        Pre("P", (Var(2),)),
        Pre("P", (Fun("a", ()),)),
    ]
    level = list(atoms)
    for _ in range(2):
        bigger = list(level)
        for p in level:
            bigger.append(Exi(p))
            bigger.append(Uni(p))
        for p, q in itertools.product(level, level):
            bigger.append(Imp(p, q))
            bigger.append(Dis(p, q))
            bigger.append(Con(p, q))
        level = bigger
    return level


def test_substitution_strictly_lowers_free_indices():
    constant = Fun("c", ())
    for p in _all_formulas_up_to_depth_3():
        before = max_var_index(p)
        after = max_var_index(sub(0, constant, p))
        if before is None or before == 0:
            assert after is None
        else:
            assert after == before - 1
