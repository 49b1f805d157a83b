"""PBW arithmetic in the lowering subalgebra of sl(n) and the Verma action.

Generators are matrix units E[i,j] with i > j, written as index pairs.
A word is a tuple of such pairs read left to right as an operator
product; the canonical order is row-major, so the normal form of a word
is a combination of indices a with E^a = E[2,1]^a21 E[3,1]^a31
E[3,2]^a32 ... applied to the highest-weight vector.

Straightening rewrites adjacent out-of-order pairs with
[E[i,j], E[p,q]] = d_{jp} E[i,q] - d_{qi} E[p,j] and memoizes subwords.
Raising operators are pushed through a word one factor at a time; the
Cartan element they spawn is diagonal, so each resulting coefficient is
affine in the single shifted coordinate it touches and can be cached
independently of the weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .polyseries import (
    AffineExponent,
    LambdaPoly,
    Monomial,
    Series,
    ZERO,
    ONE,
    _add_term,
    affine_to_json,
    coeff_prefix,
    poly_from_json,
    poly_to_json,
)
from .rootdata import Weight


class NonWeightVectorError(ValueError):
    """Raised when a vector mixes several weights where one is required."""


@dataclass(frozen=True)
class GammaIndex:
    """Exponent map (i, j) -> multiplicity for the PBW monomial E^a."""

    entries: tuple = ()

    @classmethod
    def make(cls, mapping: Mapping) -> "GammaIndex":
        items = []
        for (i, j), a in sorted(mapping.items()):
            if not (1 <= j < i):
                raise ValueError(f"E[{i},{j}] is not a lowering generator")
            if not isinstance(a, int) or a < 0:
                raise ValueError("multiplicities must be nonnegative integers")
            if a:
                items.append(((i, j), a))
        return cls(tuple(items))

    @classmethod
    def from_word(cls, word: Sequence[tuple]) -> "GammaIndex":
        counts: dict[tuple, int] = {}
        for pair in word:
            counts[pair] = counts.get(pair, 0) + 1
        return cls.make(counts)

    def degree(self) -> int:
        return sum(a for _, a in self.entries)

    def entry(self, i: int, j: int) -> int:
        for key, a in self.entries:
            if key == (i, j):
                return a
        return 0

    def as_dict(self) -> dict:
        return dict(self.entries)

    def word(self) -> tuple:
        out = []
        for (i, j), a in self.entries:
            out.extend([(i, j)] * a)
        return tuple(out)

    def max_row(self) -> int:
        return max((i for (i, _), _ in self.entries), default=1)

    def sort_key(self):
        return (self.degree(), self.entries)

    def __str__(self) -> str:
        if not self.entries:
            return "v"
        parts = []
        for (i, j), a in self.entries:
            parts.append(f"E{i}{j}" + (f"^{a}" if a > 1 else ""))
        return " ".join(parts) + " v"


GAMMA_ZERO = GammaIndex()


class PBWVector:
    """Finite combination sum c_a E^a v of PBW basis vectors."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[GammaIndex, LambdaPoly] | None = None):
        if n < 2:
            raise ValueError("rank parameter n must be >= 2")
        self.n = n
        cleaned = {}
        for a, c in (terms or {}).items():
            if a.max_row() > n:
                raise ValueError(f"index {a} does not fit in sl({n})")
            if c:
                cleaned[a] = c
        self.terms = cleaned

    @classmethod
    def zero(cls, n: int) -> "PBWVector":
        return cls(n)

    @classmethod
    def highest_weight(cls, n: int) -> "PBWVector":
        return cls(n, {GAMMA_ZERO: LambdaPoly.one()})

    @classmethod
    def term(cls, n: int, coeff, index: Mapping) -> "PBWVector":
        return cls(n, {GammaIndex.make(index): LambdaPoly.coerce(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PBWVector):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "PBWVector") -> "PBWVector":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        for a, c in other.terms.items():
            _add_term(out, a, c)
        return PBWVector(self.n, out)

    def __neg__(self) -> "PBWVector":
        return PBWVector(self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "PBWVector") -> "PBWVector":
        return self + (-other)

    def __mul__(self, scalar) -> "PBWVector":
        s = LambdaPoly.coerce(scalar)
        return PBWVector(self.n, {a: c * s for a, c in self.terms.items()})

    __rmul__ = __mul__

    def sorted_terms(self) -> list[tuple[GammaIndex, LambdaPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def degree(self) -> int:
        return max((a.degree() for a in self.terms), default=0)

    def max_degree_indices(self) -> list[GammaIndex]:
        d = self.degree()
        return [a for a in self.terms if a.degree() == d]

    def evaluate(self, values) -> "PBWVector":
        """Specialize coefficient symbols at exact rationals."""
        out: dict[GammaIndex, LambdaPoly] = {}
        for a, c in self.terms.items():
            _add_term(out, a, LambdaPoly.const(c.evaluate(values)))
        return PBWVector(self.n, out)

    def __repr__(self) -> str:
        return f"PBWVector(n={self.n}, {pbw_text(self)})"


# ---------------------------------------------------------------------------
# straightening

_NORMAL_CACHE: dict[tuple, dict] = {}


def _bracket(g1: tuple, g2: tuple):
    """[E_g1, E_g2] for lowering generators: None or (coeff, generator)."""
    (i, j), (p, q) = g1, g2
    if j == p:
        return (1, (i, q))
    if q == i:
        return (-1, (p, j))
    return None


def _normal_order(word: tuple) -> Mapping[GammaIndex, int]:
    """Normal form of a lowering word; cached, callers must not mutate."""
    hit = _NORMAL_CACHE.get(word)
    if hit is not None:
        return hit
    descent = -1
    for t in range(len(word) - 1):
        if word[t] > word[t + 1]:
            descent = t
            break
    if descent < 0:
        result = {GammaIndex.from_word(word): 1}
    else:
        t = descent
        result = {}
        swapped = word[:t] + (word[t + 1], word[t]) + word[t + 2:]
        for a, c in _normal_order(swapped).items():
            result[a] = result.get(a, 0) + c
        br = _bracket(word[t], word[t + 1])
        if br is not None:
            sign, gen = br
            shorter = word[:t] + (gen,) + word[t + 2:]
            for a, c in _normal_order(shorter).items():
                acc = result.get(a, 0) + sign * c
                if acc:
                    result[a] = acc
                elif a in result:
                    del result[a]
        result = {a: c for a, c in result.items() if c}
    _NORMAL_CACHE[word] = result
    return result


def straighten_lowering(n: int, word: Sequence[tuple]) -> PBWVector:
    """Express a product of lowering generators in the PBW basis."""
    word = tuple((int(i), int(j)) for i, j in word)
    for i, j in word:
        if not (1 <= j < i <= n):
            raise ValueError(f"E[{i},{j}] is not a lowering generator of sl({n})")
    out = {a: LambdaPoly.const(c) for a, c in _normal_order(word).items()}
    return PBWVector(n, out)


def pbw_multiply(left: PBWVector, right: PBWVector) -> PBWVector:
    """Product of two lowering-algebra elements, restraightened."""
    if left.n != right.n:
        raise ValueError("rank mismatch")
    acc: dict[GammaIndex, LambdaPoly] = {}
    for a, ca in left.terms.items():
        wa = a.word()
        for b, cb in right.terms.items():
            coeff = ca * cb
            for g, c in _normal_order(wa + b.word()).items():
                _add_term(acc, g, coeff * c)
    return PBWVector(left.n, acc)


def lower_action(i: int, v: PBWVector) -> PBWVector:
    """Left multiplication by E[i+1,i] followed by restraightening."""
    if not 1 <= i <= v.n - 1:
        raise ValueError(f"index {i} out of range for n={v.n}")
    acc: dict[GammaIndex, LambdaPoly] = {}
    gen = (i + 1, i)
    for a, ca in v.terms.items():
        for g, c in _normal_order((gen,) + a.word()).items():
            _add_term(acc, g, ca * c)
    return PBWVector(v.n, acc)


# ---------------------------------------------------------------------------
# raising action

_RAISE_CACHE: dict[tuple, dict] = {}


def _h_eigen(i: int, gen: tuple) -> int:
    # (e_p - e_q)(H_i)
    p, q = gen

    def part(x: int) -> int:
        return (1 if x == i else 0) - (1 if x == i + 1 else 0)

    return part(p) - part(q)


def _raise_structural(i: int, word: tuple) -> Mapping[GammaIndex, tuple]:
    """E[i,i+1] . (word)v as {index: (a, b)} meaning coefficient a + b*l_i,
    l_i the shifted coordinate.  Weight independent, so cacheable."""
    key = (i, word)
    hit = _RAISE_CACHE.get(key)
    if hit is not None:
        return hit
    acc: dict[GammaIndex, list] = {}

    def add(g, da, db):
        slot = acc.get(g)
        if slot is None:
            acc[g] = [da, db]
        else:
            slot[0] += da
            slot[1] += db

    for t, (p, q) in enumerate(word):
        if p == i + 1 and q == i:
            # bracket is the Cartan element H_i; commute it to the vacuum:
            # scalar (l_i - 1) + sum of root values over the tail
            shift = sum(_h_eigen(i, g) for g in word[t + 1:])
            rest = word[:t] + word[t + 1:]
            for g, c in _normal_order(rest).items():
                add(g, Fraction(c * (shift - 1)), Fraction(c))
        elif p == i + 1 and q < i:
            nw = word[:t] + ((i, q),) + word[t + 1:]
            for g, c in _normal_order(nw).items():
                add(g, Fraction(c), ZERO)
        elif q == i and p >= i + 2:
            nw = word[:t] + ((p, i + 1),) + word[t + 1:]
            for g, c in _normal_order(nw).items():
                add(g, Fraction(-c), ZERO)
    out = {g: (a, b) for g, (a, b) in acc.items() if a or b}
    _RAISE_CACHE[key] = out
    return out


def raise_action(i: int, v: PBWVector, lam: Weight) -> PBWVector:
    """Image of E[i,i+1] . v in the module of highest weight lam."""
    if lam.n != v.n:
        raise ValueError("rank mismatch")
    if not 1 <= i <= v.n - 1:
        raise ValueError(f"index {i} out of range for n={v.n}")
    li = lam.coords[i - 1].to_poly()
    acc: dict[GammaIndex, LambdaPoly] = {}
    for a, ca in v.terms.items():
        for g, (u, w) in _raise_structural(i, a.word()).items():
            coeff = li * w + u if w else LambdaPoly.const(u)
            _add_term(acc, g, ca * coeff)
    return PBWVector(v.n, acc)


def pbw_weight(a: GammaIndex, lam: Weight) -> Weight:
    """Weight of E^a v: lam plus the (negative) roots of the factors,
    in shifted coordinates."""
    if a.max_row() > lam.n:
        raise ValueError(f"index {a} does not fit in sl({lam.n})")
    deltas = [0] * (lam.n - 1)
    for (i, j), mult in a.entries:
        for p in range(1, lam.n):
            deltas[p - 1] += mult * _h_eigen(p, (i, j))
    return Weight(lam.n, tuple(c + d for c, d in zip(lam.coords, deltas)))


def common_weight(v: PBWVector, lam: Weight) -> Weight:
    """The single weight of v; raises NonWeightVectorError on a mix."""
    weights = {pbw_weight(a, lam).key() for a in v.terms}
    if len(weights) != 1:
        raise NonWeightVectorError(
            f"vector mixes {len(weights)} distinct weights")
    return Weight(lam.n, next(iter(weights)))


def is_singular(v: PBWVector, lam: Weight) -> bool:
    """True iff v is a weight vector killed by every raising generator."""
    if v.is_zero():
        raise ValueError("is_singular needs a nonzero vector")
    common_weight(v, lam)
    return all(raise_action(i, v, lam).is_zero() for i in range(1, v.n))


# ---------------------------------------------------------------------------
# the basis relabeling between PBW vectors and polynomials

def tau_map(v: PBWVector) -> Series:
    """Relabel E^a v -> x^a, coefficients preserved."""
    terms: dict[Monomial, LambdaPoly] = {}
    for a, c in v.terms.items():
        off = {}
        sub = {}
        for (i, j), e in a.entries:
            if j == i - 1:
                sub[j] = AffineExponent.const(e)
            else:
                off[(i, j)] = e
        _add_term(terms, Monomial.make(off, sub), c)
    return Series(v.n, terms)


def tau_inverse(f: Series) -> PBWVector:
    """Relabel x^a -> E^a v; every exponent must be a nonnegative integer."""
    terms: dict[GammaIndex, LambdaPoly] = {}
    for mono, c in f.terms.items():
        index = {key: e for key, e in mono.off}
        for i, expo in mono.sub:
            if not expo.is_nonneg_integer():
                raise ValueError(
                    f"exponent {expo} of x{i + 1}{i} is not a nonnegative integer")
            index[(i + 1, i)] = expo.as_integer()
        _add_term(terms, GammaIndex.make(index), c)
    return PBWVector(f.n, terms)


# ---------------------------------------------------------------------------
# rendering and serialization

def pbw_text(v: PBWVector, latex: bool = False) -> str:
    if v.is_zero():
        return "0"
    parts = []
    ordered = sorted(v.terms.items(), key=lambda kv: (-kv[0].degree(), kv[0].entries))
    for a, c in ordered:
        pre = coeff_prefix(c, latex=latex)
        if latex:
            body = ""
            for (i, j), e in a.entries:
                body += f"E_{{{i},{j}}}" + (f"^{{{e}}}" if e > 1 else "")
            body += "v_\\lambda"
            parts.append(f"{pre}{body}" if pre else body)
        else:
            body = str(a)
            parts.append(f"{pre} {body}" if pre else body)
    return " + ".join(parts)


def pbw_latex(v: PBWVector) -> str:
    return pbw_text(v, latex=True)


def pbw_to_json(v: PBWVector) -> dict:
    terms = []
    for a, c in v.sorted_terms():
        terms.append({
            "index": [[i, j, e] for (i, j), e in a.entries],
            "coeff": poly_to_json(c),
        })
    return {"kind": "pbw", "n": v.n, "terms": terms}


def pbw_from_json(data) -> PBWVector:
    if data.get("kind") != "pbw":
        raise ValueError("not a PBW vector document")
    n = int(data["n"])
    terms: dict[GammaIndex, LambdaPoly] = {}
    for item in data["terms"]:
        index = {(int(i), int(j)): int(e) for i, j, e in item["index"]}
        _add_term(terms, GammaIndex.make(index), poly_from_json(item["coeff"]))
    return PBWVector(n, terms)
