from fractions import Fraction

import pytest

from lpatrace.errors import ParseError, PreconditionError
from lpatrace.scalars import (
    CONJUGATION,
    IDENTITY,
    QI,
    Q,
    fe,
    fe_i,
    fe_one,
    fe_zero,
    field_star,
    format_scalar,
    is_positive_definite,
    is_positive_nonzero,
    laurent,
    laurent_a0,
    laurent_one,
    laurent_star,
    laurent_x,
    parse_scalar,
)

from conftest import fresh_rng, random_scalar


def test_field_star_examples():
    assert field_star(fe(Fraction(3, 4)), IDENTITY) == fe(Fraction(3, 4))
    assert field_star(fe(1, 2, QI), CONJUGATION) == fe(1, -2, QI)
    assert field_star(fe(1, 2, QI), IDENTITY) == fe(1, 2, QI)


def test_field_star_is_an_involution():
    rng = fresh_rng(1)
    for _ in range(100):
        a = random_scalar(rng, QI)
        assert field_star(field_star(a, CONJUGATION), CONJUGATION) == a


def test_q_rejects_imaginary_part():
    with pytest.raises(ValueError):
        fe(1, 1, Q)


def test_field_axioms_random():
    rng = fresh_rng(2)
    for field in (Q, QI):
        for _ in range(100):
            a, b, c = (random_scalar(rng, field) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * b == b * a
            if a:
                assert a * (fe_one(field) / a) == fe_one(field)


def test_star_is_additive_and_multiplicative():
    rng = fresh_rng(3)
    for inv in (IDENTITY, CONJUGATION):
        for _ in range(100):
            a, b = random_scalar(rng, QI), random_scalar(rng, QI)
            assert field_star(a + b, inv) == field_star(a, inv) + field_star(b, inv)
            assert field_star(a * b, inv) == field_star(b, inv) * field_star(a, inv)


def test_positive_definiteness_of_the_two_good_configurations():
    rng = fresh_rng(4)
    for field, inv in ((Q, IDENTITY), (QI, CONJUGATION)):
        assert is_positive_definite(field, inv)
        for _ in range(100):
            tup = [random_scalar(rng, field) for _ in range(rng.randint(1, 4))]
            total = fe_zero(field)
            for a in tup:
                total = total + a * field_star(a, inv)
            if not any(tup):
                assert not total
            else:
                assert total


def test_qi_identity_is_not_positive_definite():
    assert not is_positive_definite(QI, IDENTITY)
    one, i = fe_one(QI), fe_i()
    # the witness tuple (1, i): 1*1 + i*i = 0
    total = one * field_star(one, IDENTITY) + i * field_star(i, IDENTITY)
    assert not total


def test_is_positive_nonzero_examples():
    assert is_positive_nonzero(fe(Fraction(5, 3)), IDENTITY)
    assert not is_positive_nonzero(fe_zero(Q), IDENTITY)
    assert not is_positive_nonzero(fe(-1), IDENTITY)
    with pytest.raises(PreconditionError):
        is_positive_nonzero(fe_one(QI), IDENTITY)


def test_laurent_star_examples():
    assert laurent_star(laurent(QI, {}), CONJUGATION) == laurent(QI, {})
    p = laurent(QI, {1: fe(1, 2, QI)})
    assert laurent_star(p, CONJUGATION) == laurent(QI, {-1: fe(1, -2, QI)})
    q = laurent(Q, {2: fe_one(Q), 0: fe(3)})
    assert laurent_star(q, IDENTITY) == laurent(Q, {-2: fe_one(Q), 0: fe(3)})


def test_laurent_a0_examples():
    p = laurent(Q, {0: fe(3), 1: fe(2), -1: fe(-1)})
    assert laurent_a0(p) == fe(3)
    assert laurent_a0(laurent(Q, {})) == fe_zero(Q)
    # a0 of (1+x)(1+x)^* over Q: expand (1+x)(1+x^-1) = x^-1 + 2 + x
    one_plus_x = laurent_one(Q) + laurent_x(Q)
    assert laurent_a0(one_plus_x * laurent_star(one_plus_x, IDENTITY)) == fe(2)


def test_laurent_a0_matches_coefficient_norm_sum():
    rng = fresh_rng(5)
    for _ in range(100):
        coeffs = {
            rng.randint(-3, 3): random_scalar(rng, QI)
            for _ in range(rng.randint(0, 4))
        }
        p = laurent(QI, coeffs)
        expected = fe_zero(QI)
        for _, c in p.coeffs:
            expected = expected + c * field_star(c, CONJUGATION)
        assert laurent_a0(p * laurent_star(p, CONJUGATION)) == expected


def test_laurent_star_involution_and_antimultiplicative():
    rng = fresh_rng(6)
    for _ in range(100):
        def rand_poly():
            return laurent(QI, {
                rng.randint(-3, 3): random_scalar(rng, QI)
                for _ in range(rng.randint(0, 3))
            })
        p, q = rand_poly(), rand_poly()
        assert laurent_star(laurent_star(p, CONJUGATION), CONJUGATION) == p
        assert laurent_star(p * q, CONJUGATION) == \
            laurent_star(q, CONJUGATION) * laurent_star(p, CONJUGATION)


def test_laurent_strips_zero_coefficients():
    p = laurent(Q, {0: fe_zero(Q), 2: fe(1)})
    assert p.coeffs == ((2, fe_one(Q)),)
    assert not laurent(Q, {5: fe_zero(Q)})


def test_scalar_parse_and_format():
    cases = ["3", "-3", "1/2", "-7/3", "0"]
    for text in cases:
        assert format_scalar(parse_scalar(text, Q)) == text
    qi_cases = ["1/2-3i", "2+2i", "0+1i", "-1+1/2i"]
    for text in qi_cases:
        assert format_scalar(parse_scalar(text, QI)) == text
    assert parse_scalar("3i", QI) == fe(0, 3, QI)
    with pytest.raises(ParseError):
        parse_scalar("1+2i", Q)
    with pytest.raises(ParseError):
        parse_scalar("x", Q)
    with pytest.raises(ParseError):
        parse_scalar("1/2/3", Q)


def test_format_round_trip_random():
    rng = fresh_rng(7)
    for _ in range(200):
        a = random_scalar(rng, QI)
        assert parse_scalar(format_scalar(a), QI) == a
