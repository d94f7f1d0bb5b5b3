"""Exact group-algebra and rational-fragment arithmetic over the lattice Y.

`LaurentPoly` is the group algebra C[Y] at desk scale (sparse map from
integer exponent vectors to scalars).  `RationalElt` is the fragment of the
fraction field with denominators kept as factored multisets of binomials
1 - c Z^mu: every denominator produced by the commutation coefficients and
their Weyl twists is of this shape, so multivariate GCD is never needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coxeter import WeylElement
from .errors import PoleAtCharacter
from .rootdata import IntVec
from .scalars import ONE, Scalar, as_scalar, is_zero, scalar_key, scalar_sqrt
from .scalars import inv as scalar_inv


def _vec_gcd(v: IntVec) -> int:
    g = 0
    for x in v:
        x = abs(x)
        while x:
            g, x = x, g % x
    return g


class LaurentPoly:
    """Finite scalar combination of monomials Z^lambda, lambda in Z^rank."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict[IntVec, Scalar] | None = None):
        self.rank = rank
        clean: dict[IntVec, Scalar] = {}
        if terms:
            for exp, coeff in terms.items():
                coeff = as_scalar(coeff)
                if coeff:
                    clean[tuple(int(x) for x in exp)] = coeff
        self.terms = clean

    @staticmethod
    def _raw(rank: int, terms: dict[IntVec, Scalar]) -> "LaurentPoly":
        """Internal: terms already have tuple keys and exact scalar values."""
        out = object.__new__(LaurentPoly)
        out.rank = rank
        out.terms = {e: c for e, c in terms.items() if c}
        return out

    @staticmethod
    def zero(rank: int) -> "LaurentPoly":
        return LaurentPoly._raw(rank, {})

    @staticmethod
    def one(rank: int) -> "LaurentPoly":
        return LaurentPoly._raw(rank, {(0,) * rank: ONE})

    @staticmethod
    def monomial(exp, coeff=ONE) -> "LaurentPoly":
        exp = tuple(int(x) for x in exp)
        return LaurentPoly(len(exp), {exp: coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for exp, c in other.terms.items():
            prev = out.get(exp)
            out[exp] = c if prev is None else prev + c
        return LaurentPoly._raw(self.rank, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[IntVec, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = out.get(e)
                c = c1 * c2
                out[e] = c if prev is None else prev + c
        return LaurentPoly._raw(self.rank, out)

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = as_scalar(c)
        if not c:
            return LaurentPoly.zero(self.rank)
        return LaurentPoly._raw(self.rank, {e: v * c for e, v in self.terms.items()})

    def shift(self, exp) -> "LaurentPoly":
        exp = tuple(int(x) for x in exp)
        return LaurentPoly._raw(self.rank, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, self.key()))

    def key(self):
        return tuple(sorted((e, scalar_key(c)) for e, c in self.terms.items()))

    def apply_matrix(self, w: WeylElement) -> "LaurentPoly":
        out: dict[IntVec, Scalar] = {}
        for e, c in self.terms.items():
            img = w.apply(e)
            prev = out.get(img)
            out[img] = c if prev is None else prev + c
        return LaurentPoly._raw(self.rank, out)

    def constant_value(self) -> Scalar | None:
        """The scalar c if self == c * Z^0, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (exp, c), = self.terms.items()
            if not any(exp):
                return c
        return None

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            bits.append(f"{c}*Z^{e}")
        return " + ".join(bits)


@dataclass(frozen=True)
class BinomialFactor:
    """The binomial 1 - scale * Z^direction (direction nonzero)."""

    scale: Scalar
    direction: IntVec

    @staticmethod
    def make(scale, direction) -> "BinomialFactor":
        return BinomialFactor(as_scalar(scale), tuple(int(x) for x in direction))

    def expand(self, rank: int) -> LaurentPoly:
        return LaurentPoly(rank, {(0,) * rank: ONE, self.direction: -self.scale})

    def twist(self, w: WeylElement) -> "BinomialFactor":
        return BinomialFactor(self.scale, w.apply(self.direction))

    @property
    def sort_key(self):
        return (self.direction, scalar_key(self.scale))

    def split(self) -> list["BinomialFactor"]:
        """Factor 1 - c Z^(2 mu) into (1 - a Z^mu)(1 + a Z^mu) when a = sqrt(c)
        exists in the working field; keeps tau-vanishing detectable per factor."""
        return _split_factor(self)

    def __repr__(self):
        return f"(1 - {self.scale}*Z^{self.direction})"


@lru_cache(maxsize=None)
def _split_factor(factor: BinomialFactor) -> list:
    g = _vec_gcd(factor.direction)
    if g % 2 == 0:
        root = scalar_sqrt(factor.scale)
        if root is not None:
            half = tuple(x // 2 for x in factor.direction)
            return _split_factor(BinomialFactor(root, half)) + _split_factor(BinomialFactor(-root, half))
    return [factor]


def divide_binomial(poly: LaurentPoly, factor: BinomialFactor) -> LaurentPoly | None:
    """Exact quotient poly / (1 - c Z^mu), or None when division is inexact.

    The numerator is treated as a univariate polynomial in t = Z^mu over
    monomials transverse to mu; synthetic division per residue class.
    """
    if poly.is_zero:
        return poly
    if len(poly.terms) < 2:
        return None  # a nonzero monomial is never a binomial multiple
    mu = factor.direction
    c = factor.scale
    terms = poly.terms
    # necessary condition, checked cheaply first: in a multiple of 1 - c Z^mu
    # no support exponent is isolated along the mu direction
    for exp in terms:
        up = tuple(a + b for a, b in zip(exp, mu))
        if up in terms:
            continue
        down = tuple(a - b for a, b in zip(exp, mu))
        if down not in terms:
            return None
    j = next(k for k, x in enumerate(mu) if x)
    classes: dict[IntVec, dict[int, Scalar]] = {}
    for exp, coeff in terms.items():
        k = exp[j] // mu[j]
        base = tuple(a - k * b for a, b in zip(exp, mu))
        classes.setdefault(base, {})[k] = coeff
    out: dict[IntVec, Scalar] = {}
    for base, coeffs in classes.items():
        lo = min(coeffs)
        hi = max(coeffs)
        deg = hi - lo
        p = [coeffs.get(lo + t, Fraction(0)) for t in range(deg + 1)]
        if deg == 0:
            return None  # a single power of t is never divisible by 1 - c t
        q: list[Scalar] = [p[0]]
        for t in range(1, deg):
            q.append(p[t] + c * q[t - 1])
        if not is_zero(p[deg] + c * q[deg - 1]):
            return None
        for t, coeff in enumerate(q):
            if not is_zero(coeff):
                exp = tuple(a + (lo + t) * b for a, b in zip(base, mu))
                out[exp] = coeff
    return LaurentPoly(poly.rank, out)


class RationalElt:
    """Laurent numerator over a multiset of binomial denominator factors.

    Instances are always reduced: no stored factor exactly divides the
    numerator.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den=()):
        factors: list[BinomialFactor] = []
        for f in den:
            factors.extend(f.split())
        num, factors = _reduce(num, factors)
        self.num = num
        self.den = tuple(sorted(factors, key=lambda f: f.sort_key))

    # -- constructors ------------------------------------------------------
    @staticmethod
    def from_poly(p: LaurentPoly) -> "RationalElt":
        return RationalElt(p)

    @staticmethod
    def from_scalar(c, rank: int) -> "RationalElt":
        return RationalElt(LaurentPoly(rank, {(0,) * rank: as_scalar(c)}))

    @staticmethod
    def monomial(exp, coeff=ONE) -> "RationalElt":
        return RationalElt(LaurentPoly.monomial(exp, coeff))

    @property
    def rank(self) -> int:
        return self.num.rank

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def den_poly(self) -> LaurentPoly:
        out = LaurentPoly.one(self.rank)
        for f in self.den:
            out = out * f.expand(self.rank)
        return out

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "RationalElt") -> "RationalElt":
        if not isinstance(other, RationalElt):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return RationalElt(self.num + other.num, self.den)
        # cross-multiply only by the factors the other side does not share
        mine = list(self.den)
        rest_other = []
        for f in other.den:
            try:
                mine.remove(f)
            except ValueError:
                rest_other.append(f)
        rest_self = mine  # factors of self.den not matched by other.den
        common = [f for f in self.den]
        for f in rest_self:
            common.remove(f)
        left = self.num
        for f in rest_other:
            left = left * f.expand(self.rank)
        right = other.num
        for f in rest_self:
            right = right * f.expand(self.rank)
        return RationalElt(left + right, tuple(common) + tuple(rest_self) + tuple(rest_other))

    def __neg__(self) -> "RationalElt":
        return RationalElt._raw(-self.num, self.den)

    def __sub__(self, other: "RationalElt") -> "RationalElt":
        return self + (-other)

    def __mul__(self, other: "RationalElt") -> "RationalElt":
        if not isinstance(other, RationalElt):
            return NotImplemented
        return RationalElt(self.num * other.num, self.den + other.den)

    def mul_poly(self, p: LaurentPoly) -> "RationalElt":
        return RationalElt(self.num * p, self.den)

    def scale(self, c: Scalar) -> "RationalElt":
        if is_zero(as_scalar(c)):
            return RationalElt(LaurentPoly.zero(self.rank))
        return RationalElt._raw(self.num.scale(c), self.den)

    @staticmethod
    def _raw(num: LaurentPoly, den: tuple) -> "RationalElt":
        out = object.__new__(RationalElt)
        out.num = num
        out.den = den
        return out

    def __eq__(self, other):
        if not isinstance(other, RationalElt):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den_poly() == other.num * self.den_poly()

    def __hash__(self):
        # hash the reduced numerator support only; cheap and consistent enough
        return hash((self.rank, len(self.den), self.num.key()))

    def key(self):
        return (self.num.key(), tuple(f.sort_key for f in self.den))

    # -- structure ----------------------------------------------------------
    def reduce(self) -> "RationalElt":
        """Already-reduced representative (construction reduces eagerly)."""
        return self

    def is_polynomial(self) -> LaurentPoly | None:
        if not self.den:
            return self.num
        return None

    def twist(self, w: WeylElement) -> "RationalElt":
        """The Weyl twist ^w: exponents lambda -> w(lambda) everywhere."""
        return RationalElt(self.num.apply_matrix(w), tuple(f.twist(w) for f in self.den))

    def constant_value(self) -> Scalar | None:
        if self.den:
            return None
        return self.num.constant_value()

    def __repr__(self):
        if not self.den:
            return repr(self.num)
        return f"({self.num!r}) / {list(self.den)}"


def _reduce(num: LaurentPoly, factors: list[BinomialFactor]) -> tuple[LaurentPoly, list[BinomialFactor]]:
    if num.is_zero:
        return num, []
    remaining = list(factors)
    changed = True
    while changed and remaining:
        changed = False
        for idx, f in enumerate(remaining):
            q = divide_binomial(num, f)
            if q is not None:
                num = q
                del remaining[idx]
                changed = True
                break
    return num, remaining


@dataclass(frozen=True)
class Character:
    """Group morphism Y -> field units, stored by its values on the basis."""

    values: tuple[Scalar, ...]

    @staticmethod
    def make(values) -> "Character":
        vals = tuple(as_scalar(v) for v in values)
        if any(is_zero(v) for v in vals):
            raise ValueError("character values must be nonzero")
        return Character(vals)

    @staticmethod
    def trivial(rank: int) -> "Character":
        return Character(tuple([ONE] * rank))

    @property
    def rank(self) -> int:
        return len(self.values)

    def of_vector(self, exp) -> Scalar:
        out: Scalar = ONE
        for v, e in zip(self.values, exp):
            e = int(e)
            if e > 0:
                out = out * v ** e
            elif e < 0:
                out = out * scalar_inv(v) ** (-e)
        return out

    def of_poly(self, p: LaurentPoly) -> Scalar:
        out: Scalar = Fraction(0)
        for exp, c in p.terms.items():
            out = out + c * self.of_vector(exp)
        return out

    def of_factor(self, f: BinomialFactor) -> Scalar:
        return 1 - f.scale * self.of_vector(f.direction)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def twist(self, w: WeylElement) -> "Character":
        """(w . tau)(lambda) = tau(w^{-1} lambda)."""
        cols = tuple(zip(*w.inv))  # column j = w^{-1}(e_j)
        return Character(tuple(self.of_vector(col) for col in cols))

    def __repr__(self):
        return f"Character{self.values}"


def weyl_twist(w: WeylElement, x: RationalElt) -> RationalElt:
    return x.twist(w)


def evaluate(tau: Character, x: RationalElt) -> Scalar:
    """Value of a reduced rational element at a character; the membership test
    for the local ring at tau."""
    out = tau.of_poly(x.num)
    for f in x.den:
        v = tau.of_factor(f)
        if is_zero(v):
            raise PoleAtCharacter(f"denominator factor {f} vanishes at {tau}", factor=f)
        out = out * scalar_inv(v)
    return out


def is_polynomial(x: RationalElt) -> LaurentPoly | None:
    return x.is_polynomial()
