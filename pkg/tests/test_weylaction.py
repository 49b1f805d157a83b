import math
import random
from fractions import Fraction as Q

import pytest

from vermasv import (
    AffineExponent,
    GammaIndex,
    LambdaPoly,
    Root,
    Series,
    SymbolicWeightError,
    TruncationRequired,
    Weight,
    closed_form_complete,
    d_op,
    dot_apply_word,
    enumerate_gamma_kl,
    falling_factorial,
    pairing,
    polynomiality_check,
    positive_roots,
    reduced_word,
    s_alpha_closed_form,
    sigma_of_one,
    simple_reflection,
    zeta,
)

from helpers import rand_fraction, rand_series, weight_with_pairing

L1 = AffineExponent.symbol(1)
L2 = AffineExponent.symbol(2)


def worked_series_rank3(bound: int) -> Series:
    """The rank-3 reflection series for the long root, degree <= bound."""
    out = Series.zero(3)
    for p in range(bound + 1):
        coeff = (falling_factorial(L1 + L2, p) * falling_factorial(L1, p)
                 / math.factorial(p))
        expo = L1 + L2 - p
        out = out + Series.term(3, coeff, off={(3, 1): p},
                                sub={1: expo, 2: expo})
    return out


def mirror_word(alpha: Root) -> list[int]:
    """The other palindromic reduced word, descending first."""
    k, l = alpha.k, alpha.l
    return list(range(l - 1, k - 1, -1)) + list(range(k + 1, l))


def test_simple_reflection_of_one():
    lam = Weight.symbolic(3)
    for i in (1, 2):
        got = simple_reflection(i, Series.one(3), lam)
        assert got == Series.term(3, 1, sub={i: AffineExponent.symbol(i)})


def test_simple_reflection_involution():
    rng = random.Random(61)
    lam = Weight.symbolic(3)
    for _ in range(8):
        f = rand_series(rng, 3, nterms=2)
        bound = f.max_off_degree() + 3
        i = rng.choice([1, 2])
        g = simple_reflection(i, f, lam, max_degree=bound)
        assert simple_reflection(i, g, lam, max_degree=bound) == f


def test_simple_reflection_braid():
    rng = random.Random(67)
    lam = Weight.symbolic(3)
    for _ in range(5):
        f = rand_series(rng, 3, nterms=1)
        bound = f.max_off_degree() + 3

        def s(i, g):
            return simple_reflection(i, g, lam, max_degree=bound)

        assert s(1, s(2, s(1, f))) == s(2, s(1, s(2, f)))


def test_sigma_of_one_empty_word():
    assert sigma_of_one([], Weight.symbolic(3)) == Series.one(3)


def test_sigma_of_one_worked_example():
    got = sigma_of_one([1, 2, 1], Weight.symbolic(3), max_degree=5)
    assert got == worked_series_rank3(5)


def test_sigma_word_independence_rank3():
    lam = Weight.symbolic(3)
    a = sigma_of_one([1, 2, 1], lam, max_degree=4)
    b = sigma_of_one([2, 1, 2], lam, max_degree=4)
    assert a == b


def test_sigma_weight_covariance():
    lam = Weight.symbolic(3)
    for word in ([1], [2, 1], [1, 2, 1]):
        f = sigma_of_one(word, lam, max_degree=4)
        target = dot_apply_word(word, lam)
        for j in (1, 2):
            expected = f * (target.coords[j - 1] - 1).to_poly()
            assert zeta(j, f, lam) == expected


def test_sigma_solves_the_system_symbolic():
    lam = Weight.symbolic(3)
    bound = 5
    f = sigma_of_one([1, 2, 1], lam, max_degree=bound)
    for i in (1, 2):
        residual = d_op(i, f, lam)
        assert residual.truncate(bound - 1).is_zero()


def test_sigma_polynomial_case_solves_exactly():
    lam = Weight.numeric([2, 3])
    for word in ([1], [2], [1, 2], [2, 1], [1, 2, 1]):
        f = sigma_of_one(word, lam)  # no bound needed
        for i in (1, 2):
            assert d_op(i, f, lam).is_zero()


def test_enumerate_gamma_kl_examples():
    assert enumerate_gamma_kl(2, 3, 5) == [GammaIndex.make({})]
    got = enumerate_gamma_kl(1, 3, 2)
    assert got == [GammaIndex.make({}),
                   GammaIndex.make({(3, 1): 1}),
                   GammaIndex.make({(3, 1): 2})]
    got = enumerate_gamma_kl(1, 4, 1)
    assert set(got) == {GammaIndex.make({}),
                        GammaIndex.make({(3, 1): 1}),
                        GammaIndex.make({(4, 1): 1}),
                        GammaIndex.make({(4, 2): 1})}


def test_closed_form_simple_root():
    lam = Weight.symbolic(4)
    for k in (1, 2, 3):
        got = s_alpha_closed_form(Root(k, k + 1), lam)
        assert got == Series.term(4, 1, sub={k: AffineExponent.symbol(k)})


def test_closed_form_matches_worked_example():
    got = s_alpha_closed_form(Root(1, 3), Weight.symbolic(3), bound=6)
    assert got == worked_series_rank3(6)


def test_closed_form_equals_operator_chain():
    for n in (2, 3, 4):
        lam = Weight.symbolic(n)
        for alpha in positive_roots(n):
            cf = s_alpha_closed_form(alpha, lam, bound=4)
            oc = sigma_of_one(reduced_word(alpha), lam, max_degree=4)
            assert cf == oc.truncate(4)


def test_closed_form_numeric_complete():
    rng = random.Random(71)
    for (k, l, n) in ((1, 2, 2), (1, 3, 3), (2, 4, 4), (1, 4, 4)):
        for m in (0, 1, 2):
            lam = weight_with_pairing(rng, n, k, l, Q(m))
            alpha = Root(k, l)
            assert closed_form_complete(alpha, lam)
            got = s_alpha_closed_form(alpha, lam)  # bound ignored
            # complete polynomial output: every exponent a plain integer >= 0
            for mono, _ in got.sorted_terms():
                assert all(c.is_nonneg_integer() for _, c in mono.sub)
            # and it matches the truncated series computed the hard way
            oc = sigma_of_one(reduced_word(alpha), lam,
                              max_degree=max(4, got.max_off_degree()))
            assert oc.truncate(got.max_off_degree() + 1) == got


def test_closed_form_requires_bound_when_infinite():
    lam = Weight.numeric([Q(1, 3), Q(1, 3)])
    with pytest.raises(TruncationRequired):
        s_alpha_closed_form(Root(1, 3), lam)
    got = s_alpha_closed_form(Root(1, 3), lam, bound=4)
    assert not closed_form_complete(Root(1, 3), lam)
    assert got.max_off_degree() == 4


def test_polynomiality_check_cases():
    rng = random.Random(73)
    lam = weight_with_pairing(rng, 4, 1, 4, Q(1))
    assert polynomiality_check(Root(1, 4), lam)
    lam2 = weight_with_pairing(rng, 4, 1, 4, Q(1, 2))
    assert not polynomiality_check(Root(1, 4), lam2)
    lam3 = weight_with_pairing(rng, 3, 1, 3, Q(-2))
    assert not polynomiality_check(Root(1, 3), lam3)
    with pytest.raises(SymbolicWeightError):
        polynomiality_check(Root(1, 3), Weight.symbolic(3))


def test_polynomiality_matches_term_scan():
    rng = random.Random(79)
    for _ in range(12):
        n = rng.choice([2, 3, 4])
        roots = positive_roots(n)
        alpha = rng.choice(roots)
        if rng.random() < 0.5:
            target = Q(rng.randint(0, 3))
        else:
            target = rand_fraction(rng)
        lam = weight_with_pairing(rng, n, alpha.k, alpha.l, target)
        expected = polynomiality_check(alpha, lam)
        series = s_alpha_closed_form(alpha, lam, bound=6)
        scan = all(c.is_nonneg_integer()
                   for mono, _ in series.sorted_terms()
                   for _, c in mono.sub)
        assert scan == expected


def test_word_independence_both_palindromes():
    for n in (3, 4):
        lam = Weight.symbolic(n)
        for alpha in positive_roots(n):
            w1 = reduced_word(alpha)
            w2 = mirror_word(alpha)
            a = sigma_of_one(w1, lam, max_degree=4)
            b = sigma_of_one(w2, lam, max_degree=4)
            assert a == b
