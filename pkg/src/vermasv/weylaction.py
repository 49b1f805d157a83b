"""Reflection action on the series space and the closed-form solution.

A weighted element of weight mu reflects as the mu_i-th formal power of
the i-th lowering operator; words act rightmost letter first.  The
closed form for a single reflection of 1 sums over band indices with
zero subdiagonal and carries falling-factorial coefficients; it equals
the operator-chain result term by term.

Infinite-series cases take an explicit off-degree bound; results that
terminate on their own never need one.
"""

from __future__ import annotations

import math
from typing import Sequence

from .polyseries import (
    AffineExponent,
    LambdaPoly,
    Monomial,
    Series,
    TruncationRequired,
    _add_term,
    falling_factorial,
    weight_decompose,
)
from .pbw import GammaIndex
from .rootdata import Root, SymbolicWeightError, Weight, pairing


def simple_reflection(i: int, f: Series, lam: Weight, max_degree: int | None = None) -> Series:
    """Reflect f: apply the weight-dependent power of the i-th lowering
    operator to each weight component and resum."""
    if lam.n != f.n:
        raise ValueError("rank mismatch")
    from .polyseries import eta_pow

    out = Series.zero(f.n)
    for mu, component in weight_decompose(f, lam):
        out = out + eta_pow(i, mu.coords[i - 1], component, max_degree=max_degree)
    return out


def sigma_of_one(word: Sequence[int], lam: Weight, max_degree: int | None = None) -> Series:
    """Apply a word of simple reflections to 1, rightmost letter first."""
    f = Series.one(lam.n)
    for letter in reversed(list(word)):
        f = simple_reflection(letter, f, lam, max_degree=max_degree)
    return f


def band_positions(k: int, l: int) -> list[tuple[int, int]]:
    """Off-subdiagonal index pairs supported inside the (k, l) band."""
    return [(q, j) for q in range(k + 2, l + 1) for j in range(k, q - 1)]


def enumerate_gamma_kl(k: int, l: int, bound: int) -> list[GammaIndex]:
    """Indices with zero subdiagonal, support in the (k, l) band and total
    degree at most bound."""
    if not 1 <= k < l:
        raise ValueError(f"invalid band ({k}, {l})")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    positions = band_positions(k, l)
    out: list[GammaIndex] = []

    def rec(idx: int, budget: int, acc: dict):
        if idx == len(positions):
            out.append(GammaIndex.make(dict(acc)))
            return
        pos = positions[idx]
        for e in range(budget + 1):
            if e:
                acc[pos] = e
            rec(idx + 1, budget - e, acc)
        acc.pop(pos, None)

    rec(0, bound, {})
    out.sort(key=lambda a: a.sort_key())
    return out


def _stats(a: GammaIndex, k: int, l: int):
    """Per-level statistics r_i (strict crossings) and t_i (all crossings)
    for i = k..l-1."""
    rs, ts = {}, {}
    for i in range(k, l):
        r = 0
        t = 0
        for (q, j), e in a.entries:
            if j <= i and q >= i + 2:
                r += e
            if j <= i < q:
                t += e
        rs[i] = r
        ts[i] = t
    return rs, ts


def _partial_pairings(alpha: Root, lam: Weight) -> dict[int, AffineExponent]:
    """u_i = sum of shifted coordinates from k through i, for i = k..l-1."""
    u = {}
    total = AffineExponent.const(0)
    for i in range(alpha.k, alpha.l):
        total = total + lam.coords[i - 1]
        u[i] = total
    return u


def closed_form_complete(alpha: Root, lam: Weight) -> bool:
    """Whether the closed form for this root and weight is a finite sum."""
    if alpha.is_simple:
        return True
    if not lam.is_numeric:
        return False
    p = pairing(lam, alpha).as_fraction()
    return p.denominator == 1 and p >= 0


def s_alpha_closed_form(alpha: Root, lam: Weight, bound: int | None = None) -> Series:
    """Closed form of the reflection of 1 for a positive root.

    In the finite cases (simple root, or numeric weight with
    nonnegative-integer pairing) the sum is complete and `bound` is
    ignored; otherwise terms are emitted for indices of degree <= bound.
    """
    alpha.validate(lam.n)
    k, l = alpha.k, alpha.l
    u = _partial_pairings(alpha, lam)
    top = u[l - 1]
    if alpha.is_simple:
        bound = 0  # single index, any weight
    elif closed_form_complete(alpha, lam):
        # support satisfies t_i <= pairing for every level, which caps the
        # degree at pairing*(l-k)/2 since band factors cross >= 2 levels
        m = int(pairing(lam, alpha).as_fraction())
        bound = (m * (l - k)) // 2
    elif bound is None:
        raise TruncationRequired(
            f"closed form for {alpha} is an infinite series here; pass a bound")

    acc: dict[Monomial, LambdaPoly] = {}
    for a in enumerate_gamma_kl(k, l, bound):
        rs, ts = _stats(a, k, l)
        coeff = LambdaPoly.one()
        for i in range(k, l):
            coeff = coeff * falling_factorial(u[i], rs[i])
            if coeff.is_zero():
                break
            coeff = coeff * falling_factorial(top - rs[i], ts[i] - rs[i])
            if coeff.is_zero():
                break
        if coeff.is_zero():
            continue
        for _, e in a.entries:
            coeff = coeff / math.factorial(e)
        off = {key: e for key, e in a.entries}
        sub = {i: top - ts[i] for i in range(k, l)}
        _add_term(acc, Monomial.make(off, sub), coeff)
    return Series(lam.n, acc)


def polynomiality_check(alpha: Root, lam: Weight) -> bool:
    """True iff the reflected series collapses to a polynomial, i.e. the
    pairing is a nonnegative integer.  Symbolic weights are refused."""
    alpha.validate(lam.n)
    if not lam.is_numeric:
        raise SymbolicWeightError(
            "polynomiality is undecidable for symbolic weights")
    p = pairing(lam, alpha).as_fraction()
    return p.denominator == 1 and p >= 0
