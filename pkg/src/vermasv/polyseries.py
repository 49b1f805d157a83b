"""Exact arithmetic for the series algebra the solver works in.

Coefficients are sparse polynomials over Q in the shifted weight symbols
l1, l2, ... (LambdaPoly).  Exponents of the subdiagonal variables
x_{i+1,i} are affine forms q0 + sum_j q_j*l_j (AffineExponent); all other
variables x_{i,j} with j < i-1 carry plain nonnegative integer exponents.
A Series is a finite map monomial -> coefficient, and the lowering,
raising and weight operators act on it term by term.

Everything here is exact: no floats, eager pruning of zero terms, and
canonical internal forms so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class TruncationRequired(ValueError):
    """Raised when a computation would produce an infinite series and no
    truncation bound was supplied."""


def as_fraction(x) -> Fraction:
    """Coerce an int, string or Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _trim(key: tuple) -> tuple:
    while key and key[-1] == 0:
        key = key[:-1]
    return key


def _key_mul(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


class LambdaPoly:
    """Sparse polynomial in l1, l2, ... with Fraction coefficients.

    Keys are exponent tuples with trailing zeros stripped; values are
    nonzero.  Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        cleaned: dict[tuple, Fraction] = {}
        if terms:
            for key, val in terms.items():
                v = as_fraction(val)
                if v:
                    k = _trim(tuple(key))
                    acc = cleaned.get(k)
                    v = v if acc is None else acc + v
                    if v:
                        cleaned[k] = v
                    elif k in cleaned:
                        del cleaned[k]
        self.terms = cleaned

    @classmethod
    def _raw(cls, terms: dict) -> "LambdaPoly":
        out = object.__new__(cls)
        out.terms = terms
        return out

    @classmethod
    def zero(cls) -> "LambdaPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LambdaPoly":
        return cls._raw({(): ONE})

    @classmethod
    def const(cls, x) -> "LambdaPoly":
        q = as_fraction(x)
        return cls._raw({(): q} if q else {})

    @classmethod
    def symbol(cls, i: int) -> "LambdaPoly":
        """The symbol l_i (1-based)."""
        if i < 1:
            raise ValueError("symbol index must be >= 1")
        return cls._raw({(0,) * (i - 1) + (1,): ONE})

    @classmethod
    def coerce(cls, x) -> "LambdaPoly":
        if isinstance(x, LambdaPoly):
            return x
        if isinstance(x, AffineExponent):
            return x.to_poly()
        return cls.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return ZERO
        if self.is_constant():
            return self.terms[()]
        raise ValueError("polynomial is not constant")

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LambdaPoly.const(other)
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # mutable-dict interior; used as values only

    def __add__(self, other) -> "LambdaPoly":
        other = LambdaPoly.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            acc = out.get(k)
            s = v if acc is None else acc + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return LambdaPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LambdaPoly":
        return LambdaPoly._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "LambdaPoly":
        return self + (-LambdaPoly.coerce(other))

    def __rsub__(self, other) -> "LambdaPoly":
        return LambdaPoly.coerce(other) + (-self)

    def __mul__(self, other) -> "LambdaPoly":
        if isinstance(other, (int, Fraction)):
            q = as_fraction(other)
            if not q:
                return LambdaPoly.zero()
            return LambdaPoly._raw({k: v * q for k, v in self.terms.items()})
        other = LambdaPoly.coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[tuple, Fraction] = {}
        for kb, vb in b.items():
            for ka, va in a.items():
                k = _key_mul(ka, kb)
                v = va * vb
                acc = out.get(k)
                s = v if acc is None else acc + v
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return LambdaPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LambdaPoly":
        q = as_fraction(other)
        return LambdaPoly._raw({k: v / q for k, v in self.terms.items()})

    def __pow__(self, e: int) -> "LambdaPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = LambdaPoly.one()
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        """Evaluate at l_i = values[i-1]."""
        total = ZERO
        for key, coeff in self.terms.items():
            term = coeff
            for idx, e in enumerate(key):
                if e:
                    term *= as_fraction(values[idx]) ** e
            total += term
        return total

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    def __repr__(self) -> str:
        return f"LambdaPoly({self!s})"

    def __str__(self) -> str:
        return poly_text(self)


@dataclass(frozen=True)
class AffineExponent:
    """Affine form q0 + sum_i q_i*l_i, used as a subdiagonal exponent.

    `linear` is a sorted tuple of (symbol index, nonzero Fraction); the
    integer test is decidable exactly.
    """

    constant: Fraction = ZERO
    linear: tuple = ()

    @classmethod
    def make(cls, constant, linear: Mapping[int, Fraction] | None = None) -> "AffineExponent":
        lin = []
        for i, q in sorted((linear or {}).items()):
            q = as_fraction(q)
            if i < 1:
                raise ValueError("symbol index must be >= 1")
            if q:
                lin.append((i, q))
        return cls(as_fraction(constant), tuple(lin))

    @classmethod
    def const(cls, x) -> "AffineExponent":
        return cls(as_fraction(x), ())

    @classmethod
    def symbol(cls, i: int) -> "AffineExponent":
        return cls.make(0, {i: ONE})

    @classmethod
    def coerce(cls, x) -> "AffineExponent":
        if isinstance(x, AffineExponent):
            return x
        return cls.const(as_fraction(x))

    def is_zero(self) -> bool:
        return not self.linear and not self.constant

    def is_numeric(self) -> bool:
        return not self.linear

    def is_integer(self) -> bool:
        return not self.linear and self.constant.denominator == 1

    def is_nonneg_integer(self) -> bool:
        return self.is_integer() and self.constant >= 0

    def as_fraction(self) -> Fraction:
        if self.linear:
            raise ValueError("exponent is symbolic, not a rational")
        return self.constant

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError("exponent is not an integer")
        return int(self.constant)

    def to_poly(self) -> LambdaPoly:
        terms = {(): self.constant} if self.constant else {}
        for i, q in self.linear:
            terms[(0,) * (i - 1) + (1,)] = q
        return LambdaPoly._raw(terms)

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        total = self.constant
        for i, q in self.linear:
            total += q * as_fraction(values[i - 1])
        return total

    def __add__(self, other) -> "AffineExponent":
        other = AffineExponent.coerce(other)
        lin = dict(self.linear)
        for i, q in other.linear:
            s = lin.get(i, ZERO) + q
            if s:
                lin[i] = s
            elif i in lin:
                del lin[i]
        return AffineExponent(self.constant + other.constant,
                              tuple(sorted(lin.items())))

    __radd__ = __add__

    def __neg__(self) -> "AffineExponent":
        return AffineExponent(-self.constant, tuple((i, -q) for i, q in self.linear))

    def __sub__(self, other) -> "AffineExponent":
        return self + (-AffineExponent.coerce(other))

    def __rsub__(self, other) -> "AffineExponent":
        return AffineExponent.coerce(other) + (-self)

    def scaled(self, q) -> "AffineExponent":
        q = as_fraction(q)
        if not q:
            return AffineExponent()
        return AffineExponent(self.constant * q, tuple((i, c * q) for i, c in self.linear))

    def sort_key(self):
        return (self.linear, self.constant)

    def __str__(self) -> str:
        return affine_text(self)


AFFINE_ZERO = AffineExponent()
AFFINE_ONE = AffineExponent(ONE, ())


def falling_factorial(gamma, k: int) -> LambdaPoly:
    """gamma*(gamma-1)*...*(gamma-k+1) as a LambdaPoly; k = 0 gives 1."""
    if k < 0:
        raise ValueError("falling factorial needs k >= 0")
    g = LambdaPoly.coerce(gamma)
    out = LambdaPoly.one()
    for t in range(k):
        out = out * (g - t)
    return out


@dataclass(frozen=True)
class Monomial:
    """A monomial in the x variables.

    off: sorted tuple of ((i, j), e) with 1 <= j < i-1 and e a positive
    integer; sub: sorted tuple of (i, AffineExponent) holding the exponent
    of x_{i+1,i}, the affine part nonzero.
    """

    off: tuple = ()
    sub: tuple = ()

    @classmethod
    def make(cls, off: Mapping | None = None, sub: Mapping | None = None) -> "Monomial":
        off_items = []
        for (i, j), e in sorted((off or {}).items()):
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"off exponent of x[{i},{j}] must be a nonnegative integer")
            if not (1 <= j < i - 1):
                raise ValueError(f"x[{i},{j}] is not an off-subdiagonal variable")
            if e:
                off_items.append(((i, j), e))
        sub_items = []
        for i, c in sorted((sub or {}).items()):
            c = AffineExponent.coerce(c)
            if i < 1:
                raise ValueError("subdiagonal index must be >= 1")
            if not c.is_zero():
                sub_items.append((i, c))
        return cls(tuple(off_items), tuple(sub_items))

    def is_one(self) -> bool:
        return not self.off and not self.sub

    def off_degree(self) -> int:
        return sum(e for _, e in self.off)

    def row_off_degree(self, i: int) -> int:
        return sum(e for (p, _), e in self.off if p == i)

    def off_exp(self, i: int, j: int) -> int:
        for key, e in self.off:
            if key == (i, j):
                return e
        return 0

    def sub_exp(self, i: int) -> AffineExponent:
        for p, c in self.sub:
            if p == i:
                return c
        return AFFINE_ZERO

    def shift_off(self, i: int, j: int, d: int) -> "Monomial":
        items = dict(self.off)
        e = items.get((i, j), 0) + d
        if e < 0:
            raise ValueError("off exponent went negative")
        if e:
            items[(i, j)] = e
        else:
            items.pop((i, j), None)
        return Monomial(tuple(sorted(items.items())), self.sub)

    def shift_sub(self, i: int, delta) -> "Monomial":
        delta = AffineExponent.coerce(delta)
        if delta.is_zero():
            return self
        items = dict(self.sub)
        c = items.get(i, AFFINE_ZERO) + delta
        if c.is_zero():
            items.pop(i, None)
        else:
            items[i] = c
        return Monomial(self.off, tuple(sorted(items.items())))

    def sort_key(self):
        return (self.off, tuple((i, c.sort_key()) for i, c in self.sub))

    def __str__(self) -> str:
        return monomial_text(self)


MONO_ONE = Monomial()


class Series:
    """Finite exact combination of monomials with LambdaPoly coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, LambdaPoly] | None = None):
        if n < 2:
            raise ValueError("rank parameter n must be >= 2")
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, n: int) -> "Series":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "Series":
        return cls(n, {MONO_ONE: LambdaPoly.one()})

    @classmethod
    def term(cls, n: int, coeff, off: Mapping | None = None, sub: Mapping | None = None) -> "Series":
        """Single-term series; handy for building expected values."""
        return cls(n, {Monomial.make(off, sub): LambdaPoly.coerce(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_term(out, m, c)
        return Series(self.n, out)

    def __neg__(self) -> "Series":
        return Series(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, scalar) -> "Series":
        s = LambdaPoly.coerce(scalar)
        return Series(self.n, {m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def _check(self, other: "Series") -> None:
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def truncate(self, max_degree: int) -> "Series":
        """Drop terms whose off-variable degree exceeds max_degree."""
        return Series(self.n, {m: c for m, c in self.terms.items()
                               if m.off_degree() <= max_degree})

    def max_off_degree(self) -> int:
        return max((m.off_degree() for m in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[Monomial, LambdaPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def evaluate(self, values: Sequence[Fraction]) -> "Series":
        """Specialize the coefficient symbols at exact rational values.

        Exponents are left untouched; use this only on series whose
        exponents are already numeric.
        """
        out: dict[Monomial, LambdaPoly] = {}
        for m, c in self.terms.items():
            _add_term(out, m, LambdaPoly.const(c.evaluate(values)))
        return Series(self.n, out)

    def __repr__(self) -> str:
        return f"Series(n={self.n}, {series_text(self)})"


def _add_term(acc: dict, mono, coeff) -> None:
    cur = acc.get(mono)
    acc[mono] = coeff if cur is None else cur + coeff


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n - 1:
        raise ValueError(f"operator index {i} out of range for n={n}")


def _derivation_terms(i: int, mono: Monomial, coeff: LambdaPoly):
    """Terms of sum_{j<i} x_{i+1,j} d/dx_{i,j} applied to coeff*mono.

    x_{i,j} is off-subdiagonal for j < i-1 and the subdiagonal variable
    x_{i,i-1} for j = i-1; the multiplier x_{i+1,j} is always
    off-subdiagonal.
    """
    out = []
    for (p, j), e in mono.off:
        if p == i:  # j < i-1 automatically
            out.append((mono.shift_off(i, j, -1).shift_off(i + 1, j, 1), coeff * e))
    if i >= 2:
        e = mono.sub_exp(i - 1)
        if not e.is_zero():
            m2 = mono.shift_sub(i - 1, AffineExponent.const(-1)).shift_off(i + 1, i - 1, 1)
            out.append((m2, coeff * e.to_poly()))
    return out


def eta(i: int, f: Series) -> Series:
    """The lowering operator x_{i+1,i} + sum_{j<i} x_{i+1,j} d/dx_{i,j}."""
    _check_index(f.n, i)
    acc: dict[Monomial, LambdaPoly] = {}
    for mono, coeff in f.terms.items():
        _add_term(acc, mono.shift_sub(i, AFFINE_ONE), coeff)
        for m2, c2 in _derivation_terms(i, mono, coeff):
            _add_term(acc, m2, c2)
    return Series(f.n, acc)


def _derivation_dies(i: int, f: Series) -> bool:
    # the derivation part of eta is locally nilpotent iff every monomial
    # carries a plain nonnegative-integer exponent on x_{i,i-1}
    if i == 1:
        return True
    return all(m.sub_exp(i - 1).is_nonneg_integer() for m in f.terms)


def eta_pow(i: int, c, f: Series, max_degree: int | None = None) -> Series:
    """The formal c-th power of eta_i, c an affine (or rational) exponent.

    The binomial-type expansion sum_p (ff(c,p)/p!) x_{i+1,i}^{c-p} D^p
    terminates on its own when c is a nonnegative integer or when the
    derivation D kills f after finitely many steps; otherwise the result
    is an infinite downward series and `max_degree` (a cap on the
    off-variable degree of emitted terms) must be given.
    """
    n = f.n
    _check_index(n, i)
    c = AffineExponent.coerce(c)
    natural = c.is_nonneg_integer() or _derivation_dies(i, f)
    if not natural and max_degree is None:
        raise TruncationRequired(
            f"eta_{i}^({c}) produces an infinite series here; pass a truncation bound")

    acc: dict[Monomial, LambdaPoly] = {}
    cur = dict(f.terms)  # holds (ff(c,p)/p!) * D^p f
    if max_degree is not None:
        cur = {m: q for m, q in cur.items() if m.off_degree() <= max_degree}
    p = 0
    while cur:
        expo = c - p
        for mono, q in cur.items():
            _add_term(acc, mono.shift_sub(i, expo), q)
        if c.is_nonneg_integer() and p >= c.as_integer():
            break  # ff(c, p+1) = 0 from here on
        step = c - p  # ff(c,p+1)/(p+1)! = ff(c,p)/p! * (c-p)/(p+1)
        nxt: dict[Monomial, LambdaPoly] = {}
        for mono, q in cur.items():
            for m2, c2 in _derivation_terms(i, mono, q):
                if max_degree is not None and m2.off_degree() > max_degree:
                    continue
                _add_term(nxt, m2, c2 * step / (p + 1))
        cur = {m: q for m, q in nxt.items() if q}
        p += 1
        if p > 100000:
            raise RuntimeError("eta_pow failed to terminate")
    return Series(n, acc)


def d_op(i: int, f: Series, lam) -> Series:
    """The raising operator; lam supplies the shifted coordinate l_i."""
    n = f.n
    _check_index(n, i)
    lam_i = lam.coords[i - 1]
    acc: dict[Monomial, LambdaPoly] = {}
    for mono, coeff in f.terms.items():
        # first-order factor applied after d/dx_{i+1,i}
        e = mono.sub_exp(i)
        if not e.is_zero():
            m1 = mono.shift_sub(i, AffineExponent.const(-1))
            scalar = lam_i - 1 - m1.sub_exp(i)
            for j in range(i + 2, n + 1):
                scalar = scalar - m1.off_exp(j, i)
            s2 = m1.sub_exp(i + 1) if i + 1 <= n - 1 else AFFINE_ZERO
            scalar = scalar + s2
            for j in range(i + 3, n + 1):
                scalar = scalar + m1.off_exp(j, i + 1)
            _add_term(acc, m1, coeff * e.to_poly() * scalar.to_poly())
        # sum_{j<i} x_{i,j} d/dx_{i+1,j}
        for j in range(1, i):
            e2 = mono.off_exp(i + 1, j)
            if e2:
                m2 = mono.shift_off(i + 1, j, -1)
                if j < i - 1:
                    m2 = m2.shift_off(i, j, 1)
                else:
                    m2 = m2.shift_sub(i - 1, AFFINE_ONE)
                _add_term(acc, m2, coeff * e2)
        # -sum_{j>=i+2} x_{j,i+1} d/dx_{j,i}
        for j in range(i + 2, n + 1):
            e3 = mono.off_exp(j, i)
            if e3:
                m3 = mono.shift_off(j, i, -1)
                if j == i + 2:
                    m3 = m3.shift_sub(i + 1, AFFINE_ONE)
                else:
                    m3 = m3.shift_off(j, i + 1, 1)
                _add_term(acc, m3, coeff * (-e3))
    return Series(n, acc)


def zeta_eigenvalue(i: int, mono: Monomial, lam) -> AffineExponent:
    """Eigenvalue of the i-th weight operator on a monomial.

    Every monomial is a simultaneous eigenvector; the eigenvalue is the
    unshifted weight value mu(H_i) as an affine form.
    """
    n = lam.n
    _check_index(n, i)
    ev = lam.coords[i - 1] - 1
    # row i gains, row i+1 loses (variables x_{i,j}, x_{i+1,j}, j < i)
    for j in range(1, i):
        if j < i - 1:
            ev = ev + mono.off_exp(i, j)
        else:
            ev = ev + mono.sub_exp(i - 1)
        ev = ev - mono.off_exp(i + 1, j)
    # columns i+1 gain, i loses (variables x_{j,i+1}, x_{j,i}, j >= i+2)
    for j in range(i + 2, n + 1):
        if j == i + 2:
            ev = ev + (mono.sub_exp(i + 1) if i + 1 <= n - 1 else AFFINE_ZERO)
        else:
            ev = ev + mono.off_exp(j, i + 1)
        ev = ev - mono.off_exp(j, i)
    ev = ev - mono.sub_exp(i).scaled(2)
    return ev


def zeta(i: int, f: Series, lam) -> Series:
    """The i-th weight operator (diagonal on monomials)."""
    _check_index(f.n, i)
    acc: dict[Monomial, LambdaPoly] = {}
    for mono, coeff in f.terms.items():
        ev = zeta_eigenvalue(i, mono, lam)
        _add_term(acc, mono, coeff * ev.to_poly())
    return Series(f.n, acc)


def weight_decompose(f: Series, lam) -> list:
    """Split f into its simultaneous weight components.

    Returns [(Weight, Series)] sorted canonically; each component g
    satisfies zeta_i(g) = mu(H_i) g for its weight mu.
    """
    from .rootdata import Weight

    n = f.n
    groups: dict[tuple, dict] = {}
    for mono, coeff in f.terms.items():
        evs = tuple(zeta_eigenvalue(i, mono, lam) for i in range(1, n))
        groups.setdefault(evs, {})[mono] = coeff
    out = []
    for evs in sorted(groups, key=lambda t: tuple(e.sort_key() for e in t)):
        w = Weight(n, tuple(ev + 1 for ev in evs))
        out.append((w, Series(n, groups[evs])))
    return out


# ---------------------------------------------------------------------------
# rendering and serialization

def _frac_text(q: Fraction) -> str:
    return str(q)


def _symbol_text(i: int) -> str:
    return f"l{i}"


def _symbol_latex(i: int) -> str:
    return f"\\lambda_{{{i}}}"


def poly_text(p: LambdaPoly, latex: bool = False) -> str:
    if not p.terms:
        return "0"
    parts = []
    for key, coeff in p.sorted_terms():
        factors = []
        for idx, e in enumerate(key):
            if not e:
                continue
            sym = _symbol_latex(idx + 1) if latex else _symbol_text(idx + 1)
            if e == 1:
                factors.append(sym)
            else:
                factors.append(f"{sym}^{{{e}}}" if latex else f"{sym}^{e}")
        mono = ("" if latex else "*").join(factors)
        if not mono:
            body = _frac_text(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            sep = "" if latex else "*"
            body = f"{_frac_text(abs(coeff))}{sep}{mono}"
        sign = "-" if coeff < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def affine_text(a: AffineExponent, latex: bool = False) -> str:
    return poly_text(a.to_poly(), latex=latex)


def _exp_text(a: AffineExponent, latex: bool = False) -> str:
    if a.is_integer() and a.constant >= 0:
        return str(a.as_integer())
    body = affine_text(a, latex=latex)
    return body if latex else f"({body})"


def monomial_text(m: Monomial, latex: bool = False) -> str:
    if m.is_one():
        return "1"
    factors = []
    entries = [((i, j), str(e)) for (i, j), e in m.off]
    entries += [((i + 1, i), _exp_text(c, latex=latex)) for i, c in m.sub]
    for (i, j), e in sorted(entries):
        if latex:
            base = f"x_{{{i},{j}}}"
            factors.append(base if e == "1" else f"{base}^{{{e}}}")
        else:
            base = f"x{i}{j}"
            factors.append(base if e == "1" else f"{base}^{e}")
    return ("" if latex else " ").join(factors)


def coeff_prefix(c: LambdaPoly, latex: bool = False) -> str:
    """Render a coefficient as a prefix for a monomial (empty when 1)."""
    if c == 1:
        return ""
    if c.is_constant():
        q = c.constant_value()
        if latex and q.denominator != 1:
            sign = "-" if q < 0 else ""
            return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"
        return _frac_text(q)
    body = poly_text(c, latex=latex)
    return f"\\left({body}\\right)" if latex else f"({body})"


def series_text(f: Series, latex: bool = False) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for mono, coeff in f.sorted_terms():
        pre = coeff_prefix(coeff, latex=latex)
        body = monomial_text(mono, latex=latex)
        if pre and mono.is_one():
            parts.append(pre)
        elif pre:
            parts.append(f"{pre}{body}" if latex else f"{pre} {body}")
        else:
            parts.append(body)
    return " + ".join(parts)


def poly_to_json(p: LambdaPoly) -> list:
    return [[list(key), str(coeff)] for key, coeff in sorted(p.terms.items())]


def poly_from_json(data) -> LambdaPoly:
    terms = {}
    for key, coeff in data:
        terms[tuple(int(e) for e in key)] = Fraction(coeff)
    return LambdaPoly(terms)


def affine_to_json(a: AffineExponent) -> dict:
    return {"constant": str(a.constant),
            "linear": [[i, str(q)] for i, q in a.linear]}


def affine_from_json(data) -> AffineExponent:
    return AffineExponent.make(Fraction(data["constant"]),
                               {int(i): Fraction(q) for i, q in data["linear"]})


def series_to_json(f: Series) -> dict:
    terms = []
    for mono, coeff in f.sorted_terms():
        terms.append({
            "off": [[i, j, e] for (i, j), e in mono.off],
            "sub": [[i, affine_to_json(c)] for i, c in mono.sub],
            "coeff": poly_to_json(coeff),
        })
    return {"kind": "series", "n": f.n, "terms": terms}


def series_from_json(data) -> Series:
    if data.get("kind") != "series":
        raise ValueError("not a series document")
    n = int(data["n"])
    terms: dict[Monomial, LambdaPoly] = {}
    for item in data["terms"]:
        off = {(int(i), int(j)): int(e) for i, j, e in item["off"]}
        sub = {int(i): affine_from_json(c) for i, c in item["sub"]}
        mono = Monomial.make(off, sub)
        coeff = poly_from_json(item["coeff"])
        _add_term(terms, mono, coeff)
    return Series(n, terms)


def series_latex(f: Series) -> str:
    return series_text(f, latex=True)
