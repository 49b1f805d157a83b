"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from vermasv import (
    AffineExponent,
    GammaIndex,
    LambdaPoly,
    Monomial,
    PBWVector,
    Series,
    Weight,
    eta,
    pairing,
)


def rand_fraction(rng: random.Random, lo: int = -4, hi: int = 4,
                  dens=(1, 1, 2, 3, 4)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rand_affine(rng: random.Random, nsyms: int, symbolic: bool = True) -> AffineExponent:
    a = AffineExponent.const(rand_fraction(rng))
    if symbolic and nsyms:
        for i in range(1, nsyms + 1):
            if rng.random() < 0.5:
                a = a + AffineExponent.symbol(i).scaled(rng.choice([1, 1, -1]))
    return a


def rand_poly(rng: random.Random, nsyms: int) -> LambdaPoly:
    out = LambdaPoly.zero()
    for _ in range(rng.randint(1, 2)):
        term = LambdaPoly.const(rand_fraction(rng, -3, 3))
        for i in range(1, nsyms + 1):
            if rng.random() < 0.3:
                term = term * LambdaPoly.symbol(i)
        out = out + term
    return out if out else LambdaPoly.one()


def off_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(3, n + 1) for j in range(1, i - 1)]


def rand_monomial(rng: random.Random, n: int, symbolic: bool = True) -> Monomial:
    off = {}
    for pos in off_positions(n):
        if rng.random() < 0.4:
            off[pos] = rng.randint(1, 2)
    sub = {}
    for i in range(1, n):
        if rng.random() < 0.6:
            a = rand_affine(rng, n - 1, symbolic=symbolic)
            if not a.is_zero():
                sub[i] = a
    return Monomial.make(off, sub)


def rand_series(rng: random.Random, n: int, nterms: int = 2,
                symbolic: bool = True) -> Series:
    terms = {}
    for _ in range(nterms):
        terms[rand_monomial(rng, n, symbolic=symbolic)] = rand_poly(rng, n - 1)
    return Series(n, terms)


def rand_gamma(rng: random.Random, n: int, max_degree: int = 4) -> GammaIndex:
    positions = [(i, j) for i in range(2, n + 1) for j in range(1, i)]
    counts = {}
    budget = rng.randint(0, max_degree)
    for _ in range(budget):
        pos = rng.choice(positions)
        counts[pos] = counts.get(pos, 0) + 1
    return GammaIndex.make(counts)


def rand_pbw(rng: random.Random, n: int, nterms: int = 3,
             max_degree: int = 4, symbolic: bool = False) -> PBWVector:
    terms = {}
    for _ in range(nterms):
        coeff = rand_poly(rng, n - 1) if symbolic else LambdaPoly.const(rand_fraction(rng, -3, 3) or 1)
        terms[rand_gamma(rng, n, max_degree)] = coeff
    v = PBWVector(n, terms)
    return v if v else PBWVector.highest_weight(n)


def weight_with_pairing(rng: random.Random, n: int, k: int, l: int,
                        target: Fraction) -> Weight:
    """Random numeric weight whose pairing on e_k - e_l equals target."""
    vals = [rand_fraction(rng) for _ in range(n - 1)]
    vals[l - 2] = Fraction(target) - sum(vals[j - 1] for j in range(k, l - 1))
    return Weight.numeric(vals)


def lowering_series_operator(i: int, j: int):
    """The action of E[i,j] (i > j) on series, built only from nested
    commutators of the simple lowering operators; independent of the
    straightening code."""
    if i == j + 1:
        return lambda f: eta(j, f)
    inner = lowering_series_operator(i, j + 1)
    return lambda f: inner(eta(j, f)) - eta(j, inner(f))


def apply_lowering_word(n: int, word) -> Series:
    """word acting on 1 through the commutator-built operators."""
    f = Series.one(n)
    for (i, j) in reversed(list(word)):
        f = lowering_series_operator(i, j)(f)
    return f


def proportional(v: PBWVector, w: PBWVector) -> bool:
    """Whether two nonzero vectors differ by a scalar polynomial ratio
    on a common index (cross-multiplication test)."""
    if set(v.terms) != set(w.terms):
        return False
    a0 = next(iter(v.terms))
    cv, cw = v.terms[a0], w.terms[a0]
    return all(v.terms[a] * cw == w.terms[a] * cv for a in v.terms)
