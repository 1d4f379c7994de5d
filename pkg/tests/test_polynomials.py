"""Monomial order, form parsing, operator actions, catalecticants."""

import random

import pytest

from levelalg.fields import FieldSpec
from levelalg.linalg import rank, row_space
from levelalg.polynomials import (
    DerivativeAction,
    Form,
    FormParseError,
    ParameterMismatchError,
    apply_operator,
    catalecticant,
    derivative_space,
    monomial_index,
    monomials_of_degree,
    parse_form,
    space_dim,
)

MOD = FieldSpec.modular()
RAT = FieldSpec.rational()
DIFF = DerivativeAction.DIFFERENTIATE
CONT = DerivativeAction.CONTRACT


# ---------------------------------------------------------------- monomials


def test_monomial_order_degree_two_three_vars():
    assert monomials_of_degree(3, 2) == (
        (2, 0, 0),
        (1, 1, 0),
        (0, 2, 0),
        (1, 0, 1),
        (0, 1, 1),
        (0, 0, 2),
    )


def test_monomial_order_first_is_pure_power_and_sorted():
    for n in (1, 2, 3, 4):
        for d in (1, 2, 3, 5):
            monos = monomials_of_degree(n, d)
            assert monos[0] == (d,) + (0,) * (n - 1)
            assert len(monos) == space_dim(n, d)
            assert len(set(monos)) == len(monos)
            assert all(sum(m) == d for m in monos)
            # descending order == ascending lex on reversed exponents
            keys = [tuple(reversed(m)) for m in monos]
            assert keys == sorted(keys)


def test_monomial_index_is_inverse():
    monos = monomials_of_degree(3, 4)
    idx = monomial_index(3, 4)
    for i, m in enumerate(monos):
        assert idx[m] == i


def test_space_dim_values():
    assert space_dim(3, 2) == 6
    assert space_dim(1, 5) == 1
    assert space_dim(4, 0) == 1
    assert space_dim(2, 7) == 8
    assert space_dim(3, -1) == 0


# -------------------------------------------------------------------- Form


def test_form_constructor_validation():
    with pytest.raises(ValueError):
        Form(0, 2, MOD, {})
    with pytest.raises(ValueError):
        Form(2, -1, MOD, {})
    with pytest.raises(ValueError):
        Form(2, 2, MOD, {(1, 1, 0): 1})  # wrong tuple length
    with pytest.raises(ValueError):
        Form(2, 2, MOD, {(3, -1): 1})
    with pytest.raises(ValueError):
        Form(2, 2, MOD, {(1, 0): 1})  # inhomogeneous


def test_form_drops_zero_coefficients():
    f = Form(2, 2, MOD, {(2, 0): MOD.prime, (1, 1): 3})
    assert f.terms == {(1, 1): 3}
    z = Form(2, 2, MOD, {(2, 0): 0})
    assert z.is_zero


def test_form_equality_and_hash():
    a = Form(2, 3, MOD, {(3, 0): 1, (0, 3): -1})
    b = Form(2, 3, MOD, {(0, 3): MOD.prime - 1, (3, 0): 1})
    assert a == b
    assert hash(a) == hash(b)
    assert a != Form(2, 3, RAT, {(3, 0): 1, (0, 3): -1})


def test_coefficient_vector_layout():
    f = Form(2, 2, MOD, {(2, 0): 5, (0, 2): 7})
    assert f.coefficient_vector() == [5, 0, 7]


# ----------------------------------------------------------------- parsing


def test_parse_simple_sum():
    f = parse_form("y1^3 + 2*y2^3", 2, 3, MOD)
    assert f.terms == {(3, 0): 1, (0, 3): 2}


def test_parse_leading_minus_and_products():
    f = parse_form("-y1^2*y2 + 4*y1*y2^2", 2, 3, RAT)
    assert f.terms == {(2, 1): -1, (1, 2): 4}


def test_parse_whitespace_insensitive():
    assert parse_form("y1^2+y2^2", 2, 2, MOD) == parse_form(
        "  y1^2   +   y2^2 ", 2, 2, MOD
    )


def test_parse_repeated_factor_accumulates():
    f = parse_form("y1*y1*y2", 2, 3, MOD)
    assert f.terms == {(2, 1): 1}


def test_parse_cancellation_rejected():
    with pytest.raises(FormParseError, match="zero after combining"):
        parse_form("y1*y2 - y1*y2", 2, 2, MOD)


def test_parse_inhomogeneous_term_position():
    with pytest.raises(FormParseError) as err:
        parse_form("y1^2 + y2", 2, 2, MOD)
    assert err.value.pos == 7


def test_parse_bad_character_position():
    with pytest.raises(FormParseError) as err:
        parse_form("y1 & y2", 2, 2, MOD)
    assert err.value.pos == 3


def test_parse_index_out_of_range():
    with pytest.raises(FormParseError, match="out of range 1..2"):
        parse_form("y3^2", 2, 2, MOD)


def test_parse_requires_star_after_coefficient():
    with pytest.raises(FormParseError, match="after a coefficient") as err:
        parse_form("2y1", 1, 1, MOD)
    assert err.value.pos == 1


def test_parse_empty_and_dangling():
    with pytest.raises(FormParseError, match="empty"):
        parse_form("", 2, 2, MOD)
    with pytest.raises(FormParseError, match="empty"):
        parse_form("   ", 2, 2, MOD)
    with pytest.raises(FormParseError):
        parse_form("y1^2 +", 2, 2, MOD)
    with pytest.raises(FormParseError, match="between terms"):
        parse_form("y1 y2", 2, 1, MOD)


def test_to_text_round_trip_integer_coefficients():
    rng = random.Random(808)
    for field in (MOD, RAT):
        for _ in range(20):
            n = rng.randint(1, 3)
            d = rng.randint(1, 4)
            monos = monomials_of_degree(n, d)
            terms = {}
            for m in rng.sample(monos, rng.randint(1, len(monos))):
                terms[m] = rng.choice([c for c in range(-9, 10) if c])
            f = Form(n, d, field, terms)
            assert parse_form(f.to_text(), n, d, field) == f


# --------------------------------------------------------------- operators


def test_apply_operator_identity():
    f = parse_form("y1^2*y2 + y2^3", 2, 3, MOD)
    for action in (DIFF, CONT):
        assert apply_operator((0, 0), f, action) == f


def test_differentiate_uses_falling_factorials():
    f = Form(1, 3, MOD, {(3,): 1})
    g = apply_operator((2,), f, DIFF)
    assert g.terms == {(1,): 6}


def test_contract_lowers_exponents_with_unit_coefficient():
    f = Form(1, 3, MOD, {(3,): 1})
    g = apply_operator((2,), f, CONT)
    assert g.terms == {(1,): 1}


def test_operator_kills_non_divisible_terms():
    f = parse_form("y1^2", 2, 2, MOD)
    g = apply_operator((0, 1), f, CONT)
    assert g.is_zero
    assert g.degree == 1


def test_operator_degree_and_arity_errors():
    f = Form(1, 3, MOD, {(3,): 1})
    with pytest.raises(ValueError):
        apply_operator((4,), f)
    with pytest.raises(ParameterMismatchError):
        apply_operator((1, 0), f)


def test_operator_composition_seeded():
    rng = random.Random(1618)
    for trial in range(40):
        n = rng.randint(1, 3)
        d = rng.randint(2, 5)
        monos = monomials_of_degree(n, d)
        terms = {
            m: rng.choice([c for c in range(-5, 6) if c])
            for m in rng.sample(monos, rng.randint(1, len(monos)))
        }
        field = (MOD, RAT)[trial % 2]
        f = Form(n, d, field, terms)
        total = rng.randint(0, d)
        a_deg = rng.randint(0, total)
        combined = rng.choice(monomials_of_degree(n, total) or ((0,) * n,))
        # split the combined operator into two stages
        a = []
        rem = a_deg
        for e in combined:
            take = min(e, rem)
            a.append(take)
            rem -= take
        a = tuple(a)
        b = tuple(x - y for x, y in zip(combined, a))
        for action in (DIFF, CONT):
            assert apply_operator(combined, f, action) == apply_operator(
                a, apply_operator(b, f, action), action
            )


def test_operator_output_is_homogeneous():
    f = parse_form("y1^2*y2^2 + y1^4", 2, 4, MOD)
    g = apply_operator((1, 1), f, DIFF)
    assert g.degree == 2
    assert all(sum(m) == 2 for m in g.terms)


# ----------------------------------------------------------- catalecticant


def test_catalecticant_pure_power_rank_one():
    f = Form(2, 3, MOD, {(3, 0): 1})
    for i in range(4):
        for action in (DIFF, CONT):
            assert rank(catalecticant([f], i, action)) == 1


def test_catalecticant_two_cubics():
    fs = [Form(2, 3, MOD, {(3, 0): 1}), Form(2, 3, MOD, {(0, 3): 1})]
    assert rank(catalecticant(fs, 2)) == 2


def test_catalecticant_differentiate_rows():
    f = parse_form("y1^2*y2 + y1*y2^2", 2, 3, MOD)
    m = catalecticant([f], 1, DIFF)
    assert m.entries == ((0, 2, 1), (1, 2, 0))
    assert rank(m) == 2


def test_catalecticant_binary_cubic_contract_rows():
    f = parse_form("y1^3 + 2*y1^2*y2 + 5*y1*y2^2 + 7*y2^3", 2, 3, MOD)
    m = catalecticant([f], 1, CONT)
    assert m.entries == ((1, 2, 5), (2, 5, 7))
    assert rank(m) == 2


def test_catalecticant_shape_and_range():
    fs = [Form(3, 3, MOD, {(3, 0, 0): 1}), Form(3, 3, MOD, {(0, 0, 3): 1})]
    m = catalecticant(fs, 2)
    assert m.rows == 2 * space_dim(3, 2)
    assert m.cols == space_dim(3, 1)
    with pytest.raises(ValueError):
        catalecticant(fs, 4)
    with pytest.raises(ValueError):
        catalecticant([], 1)
    with pytest.raises(ParameterMismatchError):
        catalecticant([fs[0], Form(2, 3, MOD, {(3, 0): 1})], 1)


# ------------------------------------------------------- derivative spaces


def test_derivative_space_endpoints():
    fs = [Form(2, 3, MOD, {(3, 0): 1}), Form(2, 3, MOD, {(0, 3): 1})]
    top = derivative_space(fs, 3)
    assert top.dim == 2
    assert derivative_space(fs, 0).dim == 1
    with pytest.raises(ValueError):
        derivative_space(fs, 4)


def test_derivative_space_three_quadric_generators():
    # y1^2*y2, y1^2*y3, y1^2*y4: first-order pieces span
    # {y1*y2, y1*y3, y1*y4, y1^2}
    gens = [
        Form(4, 3, MOD, {(2, 1, 0, 0): 1}),
        Form(4, 3, MOD, {(2, 0, 1, 0): 1}),
        Form(4, 3, MOD, {(2, 0, 0, 1): 1}),
    ]
    assert derivative_space(gens, 2).dim == 4
    # second-order pieces reach every variable: x1*x2 on the first
    # generator already gives y1, and x1^2 gives y2, y3, y4
    assert derivative_space(gens, 1).dim == 4


def test_derivative_space_matches_catalecticant_row_space():
    rng = random.Random(2024)
    for trial in range(25):
        n = rng.randint(2, 3)
        d = rng.randint(2, 4)
        monos = monomials_of_degree(n, d)
        forms = []
        for _ in range(rng.randint(1, 3)):
            terms = {
                m: rng.randint(1, 9)
                for m in rng.sample(monos, rng.randint(1, len(monos)))
            }
            forms.append(Form(n, d, MOD, terms))
        for u in range(d + 1):
            for action in (DIFF, CONT):
                s = derivative_space(forms, u, action)
                assert s == row_space(catalecticant(forms, d - u, action))


def test_actions_agree_on_monomial_forms():
    rng = random.Random(55)
    for _ in range(20):
        n = rng.randint(2, 4)
        d = rng.randint(2, 5)
        monos = monomials_of_degree(n, d)
        forms = [
            Form(n, d, MOD, {m: 1})
            for m in rng.sample(monos, rng.randint(1, 3))
        ]
        for u in range(d + 1):
            assert (
                derivative_space(forms, u, DIFF).dim
                == derivative_space(forms, u, CONT).dim
            )


def test_actions_can_disagree_on_general_forms():
    # (y1 + y2)^2 written out: contraction sees a two-dimensional space of
    # first-order pieces, differentiation a one-dimensional one
    f = parse_form("y1^2 + 2*y1*y2 + y2^2", 2, 2, MOD)
    assert derivative_space([f], 1, CONT).dim == 2
    assert derivative_space([f], 1, DIFF).dim == 1
