"""Root-system combinatorics for sl(n).

Positive roots e_k - e_l (k < l), the Cartan matrix, pairings against
shifted weights, the rho-shifted reflection action, breadth-first search
for linkage chains, and a fixed reduced word per root.

Weights are stored in shifted coordinates throughout: coords[i-1] is the
pairing of (weight + rho) with the i-th simple coroot.  Conversion to the
unshifted convention (subtract 1) happens only at the CLI boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .polyseries import AffineExponent, as_fraction


class SymbolicWeightError(ValueError):
    """Raised when an operation needs a numeric weight but got symbols."""


@dataclass(frozen=True, order=True)
class Root:
    """The positive root e_k - e_l with 1 <= k < l."""

    k: int
    l: int

    def __post_init__(self):
        if not 1 <= self.k < self.l:
            raise ValueError(f"invalid root indices ({self.k}, {self.l})")

    def validate(self, n: int) -> "Root":
        if self.l > n:
            raise ValueError(f"root e{self.k}-e{self.l} does not fit in sl({n})")
        return self

    @property
    def is_simple(self) -> bool:
        return self.l == self.k + 1

    @property
    def height(self) -> int:
        return self.l - self.k

    def __str__(self) -> str:
        return f"e{self.k}-e{self.l}"


def positive_roots(n: int) -> list[Root]:
    return [Root(k, l) for k in range(1, n) for l in range(k + 1, n + 1)]


def simple_roots(n: int) -> list[Root]:
    return [Root(k, k + 1) for k in range(1, n)]


def cartan_entry(n: int, i: int, j: int) -> int:
    """Entry (i, j) of the Cartan matrix of sl(n)."""
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
        raise ValueError(f"Cartan index ({i}, {j}) out of range for n={n}")
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


class Weight:
    """A weight in shifted coordinates, numeric or symbolic-affine."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Sequence):
        if n < 2:
            raise ValueError("rank parameter n must be >= 2")
        coords = tuple(AffineExponent.coerce(c) for c in coords)
        if len(coords) != n - 1:
            raise ValueError(f"weight for sl({n}) needs {n - 1} coordinates")
        self.n = n
        self.coords = coords

    @classmethod
    def numeric(cls, values: Iterable) -> "Weight":
        vals = [as_fraction(v) for v in values]
        return cls(len(vals) + 1, [AffineExponent.const(v) for v in vals])

    @classmethod
    def symbolic(cls, n: int) -> "Weight":
        return cls(n, [AffineExponent.symbol(i) for i in range(1, n)])

    @classmethod
    def rho(cls, n: int) -> "Weight":
        return cls(n, [AffineExponent.const(1)] * (n - 1))

    @property
    def is_numeric(self) -> bool:
        return all(c.is_numeric() for c in self.coords)

    def fractions(self) -> tuple[Fraction, ...]:
        if not self.is_numeric:
            raise SymbolicWeightError("weight has symbolic coordinates")
        return tuple(c.as_fraction() for c in self.coords)

    def key(self) -> tuple:
        return self.coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        return self.n == other.n and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.n, self.coords))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"Weight({self.n}, [{self}])"


def pairing(lam: Weight, alpha: Root) -> AffineExponent:
    """Shifted pairing of lam with e_k - e_l: the sum of coords k..l-1."""
    alpha.validate(lam.n)
    total = AffineExponent.const(0)
    for j in range(alpha.k, alpha.l):
        total = total + lam.coords[j - 1]
    return total


def _cum(lam: Weight, p: int, q: int) -> AffineExponent:
    # signed sum of shifted coordinates between positions p and q
    if p == q:
        return AffineExponent.const(0)
    if p < q:
        total = AffineExponent.const(0)
        for j in range(p, q):
            total = total + lam.coords[j - 1]
        return total
    return -_cum(lam, q, p)


def dot_reflect(alpha: Root, lam: Weight) -> Weight:
    """rho-shifted reflection: in shifted coordinates this permutes the
    underlying partial-sum vector by the transposition (k l)."""
    alpha.validate(lam.n)

    def sigma(i: int) -> int:
        if i == alpha.k:
            return alpha.l
        if i == alpha.l:
            return alpha.k
        return i

    return Weight(lam.n, tuple(_cum(lam, sigma(i), sigma(i + 1))
                               for i in range(1, lam.n)))


def dot_apply_word(word: Sequence[int], lam: Weight) -> Weight:
    """Apply the word's permutation via the shifted action, rightmost
    letter first."""
    for letter in reversed(list(word)):
        lam = dot_reflect(Root(letter, letter + 1).validate(lam.n), lam)
    return lam


def word_permutation(word: Sequence[int], n: int) -> tuple[int, ...]:
    """Permutation of 1..n given by composing the letters left to right
    (the rightmost transposition acts first)."""
    perm = list(range(1, n + 1))
    for letter in reversed(list(word)):
        if not 1 <= letter <= n - 1:
            raise ValueError(f"letter {letter} out of range for n={n}")
        perm = [_transpose(letter, v) for v in perm]
    return tuple(perm)


def _transpose(i: int, v: int) -> int:
    if v == i:
        return i + 1
    if v == i + 1:
        return i
    return v


def _is_positive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x > 0


def _linkage_steps(nu: Weight, roots: list[Root]):
    for beta in roots:
        p = pairing(nu, beta).as_fraction()
        if _is_positive_integer(p):
            yield beta, dot_reflect(beta, nu)


def strongly_linked_chain(mu: Weight, lam: Weight) -> Optional[list[Root]]:
    """Shortest chain [b1, ..., br] of positive roots carrying lam to mu
    through integral downward reflections, br applied first; None when mu
    is not linked, [] when mu equals lam.  Ties break lexicographically.
    """
    if mu.n != lam.n:
        raise ValueError("rank mismatch")
    if not (mu.is_numeric and lam.is_numeric):
        raise SymbolicWeightError("linkage search needs numeric weights")
    if mu == lam:
        return []
    found = _linkage_search(lam, target=mu)
    chain = found.get(mu.key())
    return list(chain) if chain is not None else None


def strongly_linked_below(lam: Weight) -> list[tuple[Weight, tuple[Root, ...]]]:
    """Every weight strongly linked to lam (lam included) with one
    witnessing chain each."""
    if not lam.is_numeric:
        raise SymbolicWeightError("linkage search needs numeric weights")
    found = _linkage_search(lam, target=None)
    out = [(Weight(lam.n, key), chain) for key, chain in found.items()]
    out.sort(key=lambda wc: (len(wc[1]),
                             tuple((r.k, r.l) for r in wc[1]),
                             tuple(c.sort_key() for c in wc[0].coords)))
    return out


def _linkage_search(lam: Weight, target: Optional[Weight]) -> dict:
    roots = positive_roots(lam.n)
    best: dict[tuple, tuple[Root, ...]] = {lam.key(): ()}
    frontier = [lam]
    target_key = target.key() if target is not None else None
    while frontier:
        if target_key is not None and target_key in best:
            break
        level: dict[tuple, tuple] = {}
        for nu in frontier:
            base = best[nu.key()]
            for beta, nu2 in _linkage_steps(nu, roots):
                k2 = nu2.key()
                if k2 in best:
                    continue
                cand = (beta,) + base
                prev = level.get(k2)
                if prev is None or cand < prev[0]:
                    level[k2] = (cand, nu2)
        frontier = []
        for k2, (cand, nu2) in level.items():
            best[k2] = cand
            frontier.append(nu2)
        frontier.sort(key=lambda w: tuple(c.sort_key() for c in w.coords))
    return best


def reduced_word(alpha: Root) -> list[int]:
    """The palindromic reduced word [k, k+1, ..., l-1, l-2, ..., k] whose
    permutation is the transposition (k l)."""
    k, l = alpha.k, alpha.l
    return list(range(k, l)) + list(range(l - 2, k - 1, -1))
