import itertools
import random

import pytest

from crowell.errors import DimensionError, ParseError
from crowell.laurent import (
    LaurentPoly,
    determinant,
    format_combination,
    format_poly,
    gcd,
    is_unit,
    parse_combination,
    parse_poly,
    unit_normalize,
)


def random_poly(rng, mu, terms=4, span=2, coeff=3):
    data = {}
    for _ in range(rng.randint(0, terms)):
        monomial = tuple(rng.randint(-span, span) for _ in range(mu))
        data[monomial] = data.get(monomial, 0) + rng.randint(-coeff, coeff)
    return LaurentPoly(data, mu)


def test_parse_and_format_canonical_order():
    p = parse_poly("t1*t2 - t2 - t1 + 1", 2)
    assert format_poly(p) == "1 - t1 - t2 + t1*t2"
    assert parse_poly(format_poly(p), 2) == p


def test_parse_negative_exponents_and_alias():
    assert parse_poly("t^-1", 1) == LaurentPoly.monomial((-1,))
    assert parse_poly("t1^(-2)*t2", 2) == LaurentPoly.monomial((-2, 1))
    assert parse_poly("(1 - t)^2", 1) == parse_poly("1 - 2*t + t^2", 1)


@pytest.mark.parametrize("text", ["t3", "1 +", "t1^", "(1 - t1", "t1 t2"])
def test_parse_rejects_bad_text(text):
    with pytest.raises(ParseError):
        parse_poly(text, 2)


def test_parse_combination():
    combo = parse_combination("(1 - t2)*a5 + t1*a3 - a1", 2, ["a1", "a3", "a5"])
    assert combo["a5"] == parse_poly("1 - t2", 2)
    assert combo["a3"] == LaurentPoly.variable(1, 2)
    assert combo["a1"] == -1
    assert format_combination(combo, ["a5", "a3", "a1"]) == "(1 - t2)*a5 + t1*a3 - a1"


def test_parse_combination_distributes_over_parentheses():
    combo = parse_combination("t1*(a1 + a2 - a7)", 2, ["a1", "a2", "a7"])
    t1 = LaurentPoly.variable(1, 2)
    assert combo == {"a1": t1, "a2": t1, "a7": -t1}


def test_parse_combination_rejects_bare_scalars():
    with pytest.raises(ParseError):
        parse_combination("a1 + 1", 1, ["a1"])
    with pytest.raises(ParseError):
        parse_combination("a1*a2", 1, ["a1", "a2"])
    assert parse_combination("0", 2, ["a1"]) == {}


def test_units_and_inverse():
    t = LaurentPoly.variable(1, 2)
    assert is_unit(-t)
    assert not is_unit(t + 1)
    assert not is_unit(LaurentPoly.constant(2, 2))
    assert (t * t.inverse()) == 1
    with pytest.raises(ZeroDivisionError):
        (t + 1).inverse()


def test_unit_normalize():
    p = parse_poly("-t1^-1 + t1^-2*t2", 2)
    n = unit_normalize(p)
    assert n.min_exponents() == (0, 0)
    assert n.leading_coefficient() > 0
    assert format_poly(n) == "-t1 + t2"


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        LaurentPoly.variable(1, 1) + LaurentPoly.variable(1, 2)
    with pytest.raises(DimensionError):
        LaurentPoly({(1,): 1}, 2)


def test_augmentation():
    assert parse_poly("1 - t1 + t1*t2^3", 2).augmentation() == 1


def test_exact_divide():
    p = parse_poly("1 - t1 + t1^2", 1)
    q = parse_poly("1 + t1", 1)
    assert (p * q).shift((-3,)).exact_divide(p) == q.shift((-3,))
    assert p.exact_divide(q) is None
    with pytest.raises(ZeroDivisionError):
        p.exact_divide(LaurentPoly.zero(1))


def test_gcd_recovers_common_factor():
    common = parse_poly("1 - t1 + t1*t2", 2)
    a = common * parse_poly("2 + t2", 2)
    b = common * parse_poly("t1 - 3", 2).shift((-1, 2))
    assert gcd(a, b) == unit_normalize(common)
    assert gcd(a, LaurentPoly.zero(2)) == unit_normalize(a)


def test_ring_axioms_randomized():
    rng = random.Random(1)
    for _ in range(1000):
        mu = rng.randint(1, 3)
        a, b, c = (random_poly(rng, mu) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0
        assert (a + b).augmentation() == a.augmentation() + b.augmentation()
        assert (a * b).augmentation() == a.augmentation() * b.augmentation()


def test_parse_format_round_trip_randomized():
    rng = random.Random(2)
    for _ in range(1000):
        mu = rng.randint(1, 3)
        p = random_poly(rng, mu)
        assert parse_poly(format_poly(p), mu) == p


def test_exact_divide_randomized():
    rng = random.Random(3)
    for _ in range(1000):
        mu = rng.randint(1, 2)
        a = random_poly(rng, mu)
        b = random_poly(rng, mu)
        if b.is_zero():
            continue
        assert (a * b).exact_divide(b) == a


def test_normalization_is_unit_invariant_randomized():
    rng = random.Random(4)
    for _ in range(1000):
        mu = rng.randint(1, 3)
        p = random_poly(rng, mu)
        u = LaurentPoly.monomial(tuple(rng.randint(-3, 3) for _ in range(mu)), rng.choice((1, -1)))
        assert unit_normalize(p * u) == unit_normalize(p)


def test_gcd_divides_and_is_symmetric_randomized():
    rng = random.Random(12)
    for _ in range(1000):
        mu = rng.randint(1, 2)
        a, b, c = (random_poly(rng, mu, terms=3) for _ in range(3))
        g = gcd(a, b)
        assert g == gcd(b, a)
        assert g == unit_normalize(g)
        if g.is_zero():
            assert a.is_zero() and b.is_zero()
            continue
        assert a.exact_divide(g) is not None
        assert b.exact_divide(g) is not None
        if not c.is_zero():
            assert gcd(a * c, b * c).exact_divide(unit_normalize(c)) is not None


def test_units_are_exactly_the_invertible_elements_randomized():
    rng = random.Random(13)
    for _ in range(1000):
        mu = rng.randint(1, 3)
        if rng.random() < 0.3:
            p = LaurentPoly.monomial(tuple(rng.randint(-3, 3) for _ in range(mu)), rng.choice((1, -1, 2)))
        else:
            p = random_poly(rng, mu)
        if p.is_zero():
            continue
        quotient = LaurentPoly.one(mu).exact_divide(p)
        assert is_unit(p) == (quotient is not None)
        if is_unit(p):
            assert p * p.inverse() == 1
            assert quotient == p.inverse()


def leibniz(matrix, mu):
    size = len(matrix)
    total = LaurentPoly.zero(mu)
    for perm in itertools.permutations(range(size)):
        inversions = sum(1 for i, j in itertools.combinations(range(size), 2) if perm[i] > perm[j])
        term = LaurentPoly.constant((-1) ** inversions, mu)
        for row, col in enumerate(perm):
            term = term * matrix[row][col]
        total = total + term
    return total


def test_determinant():
    m = [[parse_poly("1 - t", 1), parse_poly("t", 1)], [LaurentPoly.one(1), LaurentPoly.one(1)]]
    assert determinant(m, 1) == parse_poly("1 - 2*t", 1)
    shifted = [[parse_poly("t1^-1", 2), parse_poly("t2^-2", 2)], [parse_poly("t2", 2), parse_poly("t1", 2)]]
    assert determinant(shifted, 2) == parse_poly("1 - t2^-1", 2)
    assert determinant([], 2) == 1
    assert determinant([[LaurentPoly.zero(1)]], 1) == 0


def test_determinant_matches_permutation_expansion_randomized():
    rng = random.Random(14)
    for _ in range(300):
        mu = rng.randint(1, 2)
        size = rng.randint(1, 3)
        matrix = [[random_poly(rng, mu, terms=2) for _ in range(size)] for _ in range(size)]
        assert determinant(matrix, mu) == leibniz(matrix, mu)
