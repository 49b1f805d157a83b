"""Closed-form singular vectors and composition along linkage chains.

The formula sums over the finite slice of PBW indices whose root content
is m times the root e_k - e_l; its coefficients are falling factorials
of partial pairings divided by factorials of multiplicities.  Chains of
embeddings multiply the corresponding vectors in the lowering algebra,
innermost step first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .polyseries import AffineExponent, LambdaPoly, _add_term, falling_factorial
from .pbw import GammaIndex, PBWVector, pbw_multiply
from .rootdata import Root, SymbolicWeightError, Weight, dot_reflect, pairing


class PairingConstraintError(ValueError):
    """The weight does not pair to the requested integer on the root."""

    def __init__(self, root: Root, expected: int, computed):
        self.root = root
        self.expected = expected
        self.computed = computed
        super().__init__(
            f"pairing with {root} is {computed}, expected {expected}")


class ChainStepError(ValueError):
    """A chain step whose pairing is not a positive integer."""

    def __init__(self, root: Root, weight: Weight, computed):
        self.root = root
        self.weight = weight
        self.computed = computed
        super().__init__(
            f"chain step {root} at weight ({weight}) has pairing {computed}, "
            f"not a positive integer")


def enumerate_gamma_klm(k: int, l: int, m: int) -> list[GammaIndex]:
    """All indices whose root content is m*(e_l - e_k): the sum of
    multiplicities crossing each level i in k..l-1 equals m, and nothing
    lives outside the band."""
    if not 1 <= k < l:
        raise ValueError(f"invalid band ({k}, {l})")
    if m < 0:
        raise ValueError("m must be nonnegative")
    positions = [(q, j) for q in range(k + 1, l + 1) for j in range(k, q)]
    levels = list(range(k, l))
    out: list[GammaIndex] = []

    def rec(idx: int, crossing: dict, acc: dict):
        if any(crossing[i] > m for i in levels):
            return
        if idx == len(positions):
            if all(crossing[i] == m for i in levels):
                out.append(GammaIndex.make(dict(acc)))
            return
        q, j = positions[idx]
        for e in range(m + 1):
            if e:
                acc[(q, j)] = e
                for i in range(j, q):
                    crossing[i] += 1
            rec(idx + 1, crossing, acc)
        # undo the final e = m increments
        for i in range(j, q):
            crossing[i] -= m
        acc.pop((q, j), None)

    rec(0, {i: 0 for i in levels}, {})
    out.sort(key=lambda a: a.sort_key())
    return out


def symbolic_weight_with_pairing(n: int, k: int, l: int, m: int) -> Weight:
    """Symbolic weight with coordinate l-1 eliminated so that the pairing
    on e_k - e_l equals m exactly."""
    coords = [AffineExponent.symbol(i) for i in range(1, n)]
    fixed = AffineExponent.const(m)
    for j in range(k, l - 1):
        fixed = fixed - AffineExponent.symbol(j)
    coords[l - 2] = fixed
    return Weight(n, coords)


def singular_vector(k: int, l: int, m: int, lam: Optional[Weight] = None, n: int | None = None) -> PBWVector:
    """The explicit singular vector of weight s_{e_k-e_l}.lam in the
    module of highest weight lam, for pairing equal to m.

    Numeric weights must satisfy the pairing constraint exactly; passing
    lam=None (or the plain symbolic weight) eliminates coordinate l-1 to
    impose it.  Coefficients come out in the remaining symbols.
    """
    if lam is None:
        if n is None:
            raise ValueError("need a weight or an explicit rank n")
        lam = symbolic_weight_with_pairing(n, k, l, m)
    root = Root(k, l).validate(lam.n)
    p = pairing(lam, root)
    if p != AffineExponent.const(m):
        if lam.is_numeric:
            raise PairingConstraintError(root, m, p.as_fraction())
        if lam == Weight.symbolic(lam.n):
            lam = symbolic_weight_with_pairing(lam.n, k, l, m)
        else:
            raise PairingConstraintError(root, m, p)

    u = {}
    total = AffineExponent.const(0)
    for i in range(k, l):
        total = total + lam.coords[i - 1]
        u[i] = total

    terms: dict[GammaIndex, LambdaPoly] = {}
    for a in enumerate_gamma_klm(k, l, m):
        coeff = LambdaPoly.one()
        for i in range(k, l):
            r = sum(e for (q, j), e in a.entries if j <= i and q >= i + 2)
            coeff = coeff * falling_factorial(u[i], r)
            if coeff.is_zero():
                break
            coeff = coeff * math.factorial(m - r)
        if coeff.is_zero():
            continue
        for _, e in a.entries:
            coeff = coeff / math.factorial(e)
        _add_term(terms, a, coeff)
    return PBWVector(lam.n, terms)


def compose_chain(chain: Sequence[Root], lam: Weight) -> PBWVector:
    """Compose the embeddings along a linkage chain, last root applied
    first; validates that every step pairs to a positive integer."""
    if not lam.is_numeric:
        raise SymbolicWeightError("chain composition needs a numeric weight")
    total = PBWVector.highest_weight(lam.n)
    cur = lam
    for beta in reversed(list(chain)):
        beta.validate(lam.n)
        p = pairing(cur, beta).as_fraction()
        if p.denominator != 1 or p <= 0:
            raise ChainStepError(beta, cur, p)
        step = singular_vector(beta.k, beta.l, int(p), cur)
        total = pbw_multiply(step, total)
        cur = dot_reflect(beta, cur)
    return total
