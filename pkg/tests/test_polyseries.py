import math
import random
from fractions import Fraction as Q

import pytest

from vermasv import (
    AffineExponent,
    LambdaPoly,
    Series,
    TruncationRequired,
    Weight,
    cartan_entry,
    d_op,
    eta,
    eta_pow,
    falling_factorial,
    series_from_json,
    series_text,
    series_to_json,
    weight_decompose,
    zeta,
    zeta_eigenvalue,
)

from helpers import rand_affine, rand_fraction, rand_series

L1 = AffineExponent.symbol(1)
L2 = AffineExponent.symbol(2)
L3 = AffineExponent.symbol(3)


def test_lambda_poly_arithmetic():
    l1 = LambdaPoly.symbol(1)
    assert (l1 + 1) * (l1 - 1) == l1 * l1 - 1
    assert (l1 - l1).is_zero()
    assert LambdaPoly.const(Q(2, 3)) * 3 == 2
    p = l1 * l1 + 2 * LambdaPoly.symbol(2)
    assert p.evaluate([Q(1, 2), Q(3)]) == Q(1, 4) + 6
    assert (p / 2) * 2 == p


def test_affine_exponent_predicates():
    assert AffineExponent.const(3).is_nonneg_integer()
    assert not AffineExponent.const(Q(1, 2)).is_integer()
    assert not AffineExponent.const(-1).is_nonneg_integer()
    assert AffineExponent.const(-1).is_integer()
    assert not (L1 + 1).is_integer()
    assert (L1 - L1).is_zero()
    assert (L1 + 2 - L1).as_integer() == 2


def test_falling_factorial_values():
    gamma = rand_affine(random.Random(7), 2)
    assert falling_factorial(gamma, 0) == 1
    assert falling_factorial(3, 2) == 6
    l1 = LambdaPoly.symbol(1)
    assert falling_factorial(L1, 2) == l1 * l1 - l1


def test_falling_factorial_recurrence():
    rng = random.Random(11)
    for _ in range(20):
        gamma = rand_affine(rng, 3)
        k = rng.randint(0, 5)
        assert falling_factorial(gamma, k + 1) == \
            falling_factorial(gamma, k) * (gamma.to_poly() - k)


def test_eta_trivial_and_derived_cases():
    one = Series.one(2)
    assert eta(1, one) == Series.term(2, 1, sub={1: 1})
    # one derivation term: lowering through x21^c picks up the factor c
    f = Series.term(3, 1, sub={1: L1})
    expected = (Series.term(3, 1, sub={1: L1, 2: AffineExponent.const(1)})
                + Series.term(3, LambdaPoly.symbol(1), off={(3, 1): 1},
                              sub={1: L1 - 1}))
    assert eta(2, f) == expected


def test_eta_pow_on_constants():
    one = Series.one(4)
    c = L1 + L2 - Q(1, 2)
    for i in (1, 2, 3):
        assert eta_pow(i, c, one) == Series.term(4, 1, sub={i: c})


def test_eta_pow_worked_expansion():
    # the displayed expansion before the outer subdiagonal factor
    f = Series.term(3, 1, sub={1: L1})
    got = eta_pow(2, L1 + L2, f, max_degree=6)
    expected = Series.zero(3)
    for p in range(7):
        coeff = (falling_factorial(L1 + L2, p) * falling_factorial(L1, p)
                 / math.factorial(p))
        expected = expected + Series.term(
            3, coeff, off={(3, 1): p}, sub={1: L1 - p, 2: L1 + L2 - p})
    assert got == expected


def test_eta_pow_exponent_additivity():
    rng = random.Random(23)
    for _ in range(10):
        f = rand_series(rng, 3, nterms=2)
        c1 = rand_affine(rng, 2)
        c2 = rand_affine(rng, 2)
        i = rng.choice([1, 2])
        bound = f.max_off_degree() + 3
        lhs = eta_pow(i, c1, eta_pow(i, c2, f, max_degree=bound), max_degree=bound)
        rhs = eta_pow(i, c1 + c2, f, max_degree=bound)
        assert lhs.truncate(bound) == rhs.truncate(bound)


def test_eta_pow_truncation_contract():
    f = Series.term(3, 1, sub={1: L1})
    with pytest.raises(TruncationRequired):
        eta_pow(2, Q(1, 2), f)
    # nonnegative-integer exponents terminate on their own
    g = eta_pow(2, 3, f)
    assert g.max_off_degree() == 3
    # integer exponents on the differentiated variable: derivation dies
    h = eta_pow(2, Q(1, 2), Series.term(3, 1, sub={1: 2}))
    assert len(h.terms) == 3


def test_d_op_kills_constants():
    lam = Weight.symbolic(4)
    for i in (1, 2, 3):
        assert d_op(i, Series.one(4), lam).is_zero()


def test_d_op_rank_two_formula():
    lam = Weight.symbolic(2)
    l1 = LambdaPoly.symbol(1)
    for c in (AffineExponent.const(Q(5, 2)), L1 - 2):
        f = Series.term(2, 1, sub={1: c})
        cp = c.to_poly()
        expected = Series.term(2, cp * (l1 - cp), sub={1: c - 1})
        assert d_op(1, f, lam) == expected


def test_zeta_basic_values():
    lam = Weight.symbolic(3)
    l1 = LambdaPoly.symbol(1)
    for i in (1, 2):
        li = LambdaPoly.symbol(i)
        assert zeta(i, Series.one(3), lam) == Series.one(3) * (li - 1)
    f = Series.term(3, 1, sub={1: 1})
    assert zeta(1, f, lam) == f * (l1 - 3)


def test_zeta_shift_under_eta_pow():
    # eigenvalue moves by -c * (Cartan entry) when a power of a lowering
    # operator is applied to a weighted element
    rng = random.Random(31)
    lam = Weight.symbolic(4)
    for _ in range(10):
        f = rand_series(rng, 4, nterms=1)
        c = rand_affine(rng, 3)
        i = rng.choice([1, 2, 3])
        j = rng.choice([1, 2, 3])
        bound = f.max_off_degree() + 3
        lhs = zeta(i, eta_pow(j, c, f, max_degree=bound), lam)
        rhs = eta_pow(j, c, zeta(i, f, lam), max_degree=bound)
        shift = c.to_poly() * (-cartan_entry(4, i, j))
        rhs = rhs + eta_pow(j, c, f, max_degree=bound) * shift
        assert lhs == rhs


def test_commutator_identity_spot_check():
    rng = random.Random(37)
    lam = Weight.symbolic(3)
    for _ in range(10):
        f = rand_series(rng, 3, nterms=1)
        c = rand_affine(rng, 2)
        i = rng.choice([1, 2])
        j = rng.choice([1, 2])
        bound = f.max_off_degree() + 3
        cp = c.to_poly()
        lhs = d_op(i, eta_pow(j, c, f, max_degree=bound), lam) \
            - eta_pow(j, c, d_op(i, f, lam), max_degree=bound)
        if i == j:
            inner = f * (1 - cp) + zeta(j, f, lam)
            rhs = eta_pow(j, c - 1, inner, max_degree=bound) * cp
        else:
            rhs = Series.zero(3)
        assert lhs.truncate(bound - 1) == rhs.truncate(bound - 1)


def test_braid_identity_spot_check():
    rng = random.Random(41)
    lam = Weight.symbolic(3)
    for _ in range(6):
        f = rand_series(rng, 3, nterms=1)
        c1 = rand_affine(rng, 2)
        c2 = rand_affine(rng, 2)
        bound = f.max_off_degree() + 3

        def chain(a, b, ca, cb, cc):
            g = eta_pow(a, cc, f, max_degree=bound)
            g = eta_pow(b, cb, g, max_degree=bound)
            return eta_pow(a, ca, g, max_degree=bound)

        lhs = chain(1, 2, c1, c1 + c2, c2)
        rhs = chain(2, 1, c2, c1 + c2, c1)
        assert lhs == rhs


def test_weight_decompose_cases():
    lam = Weight.symbolic(3)
    parts = weight_decompose(Series.one(3), lam)
    assert len(parts) == 1
    w, comp = parts[0]
    assert w == lam and comp == Series.one(3)

    f = Series.term(3, 1, sub={1: 1}) + Series.term(3, 1, sub={2: 1})
    assert len(weight_decompose(f, lam)) == 2

    rng = random.Random(43)
    g = rand_series(rng, 3, nterms=1)
    assert len(weight_decompose(g, lam)) == 1


def test_zeta_eigenvalue_matches_operator():
    rng = random.Random(47)
    lam = Weight.symbolic(4)
    for _ in range(10):
        f = rand_series(rng, 4, nterms=1)
        mono = next(iter(f.terms))
        for i in (1, 2, 3):
            ev = zeta_eigenvalue(i, mono, lam)
            assert zeta(i, f, lam) == f * ev.to_poly()


def test_series_json_round_trip():
    rng = random.Random(53)
    for _ in range(10):
        f = rand_series(rng, 4, nterms=3)
        assert series_from_json(series_to_json(f)) == f


def test_series_text_simple_cases():
    assert series_text(Series.one(3)) == "1"
    f = Series.term(3, Q(-1, 2), off={(3, 1): 2}, sub={1: L1 + L2 - 1})
    assert series_text(f) == "-1/2 x21^(l1 + l2 - 1) x31^2"


def test_series_rank_mismatch_rejected():
    with pytest.raises(ValueError):
        Series.one(2) + Series.one(3)
    with pytest.raises(ValueError):
        eta(3, Series.one(3))
