"""Exact integer polynomials, Sturm chains and real algebraic numbers.

Everything here works on Python ints and Fractions. Equality of two real
algebraic numbers is decided by a polynomial gcd plus a Sturm root count,
never by floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import cached_property
from math import gcd as _igcd
from typing import Iterable

__all__ = [
    "IntPoly",
    "RationalInterval",
    "AlgebraicNumber",
    "SturmChain",
    "Ordering",
    "X",
    "poly_gcd",
    "prem",
    "squarefree_part",
    "sturm_chain",
    "cauchy_bound",
    "isolate_real_roots",
    "largest_real_root",
    "refine",
    "compare",
    "fraction_to_str",
]


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class IntPoly:
    """Dense univariate polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        for v in c:
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"coefficients must be int, got {v!r}")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> IntPoly:
        return cls((0,) * degree + (c,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # -- basic accessors -------------------------------------------------

    def degree(self) -> int:
        """Highest nonzero index; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> IntPoly:
        return IntPoly(tuple(c * v for v in self.coeffs))

    def shift_degree(self, k: int) -> IntPoly:
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose_shift(self, t: int) -> IntPoly:
        """Return p(x + t) (Taylor shift by an integer)."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += t * c[j + 1]
        return IntPoly(tuple(c))

    # -- content / division ----------------------------------------------

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = _igcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Divide by the (positive) content; the sign of the polynomial is kept."""
        g = self.content()
        if g <= 1:
            return self
        return IntPoly(tuple(c // g for c in self.coeffs))

    def normalized(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        p = self.primitive()
        return -p if p.lc < 0 else p

    def exact_div_int(self, d: int) -> IntPoly:
        out = []
        for c in self.coeffs:
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"{d} does not divide {self}")
            out.append(q)
        return IntPoly(tuple(out))

    def divmod_exact(self, other: IntPoly) -> IntPoly:
        """Quotient self / other, which must divide exactly over the integers."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lb = other.degree(), other.lc
        if len(r) - 1 < db:
            if r:
                raise ArithmeticError(f"{other} does not divide {self}")
            return IntPoly()
        q = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == 0:
                continue
            t, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError(f"{other} does not divide {self}")
            q[i - db] = t
            for j, b in enumerate(other.coeffs):
                r[i - db + j] -= t * b
        if any(r):
            raise ArithmeticError(f"{other} does not divide {self}")
        return IntPoly(tuple(q))

    def __floordiv__(self, other):
        if isinstance(other, int):
            return self.exact_div_int(other)
        return self.divmod_exact(other)

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, Fraction):
            return Fraction(self._homogeneous(x.numerator, x.denominator), x.denominator ** max(self.degree(), 0))
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _homogeneous(self, p: int, q: int) -> int:
        """q^deg * self(p/q) as an exact integer (q > 0)."""
        if not self.coeffs:
            return 0
        it = reversed(self.coeffs)
        acc = next(it)
        qp = 1
        for c in it:
            qp *= q
            acc = acc * p + c * qp
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of self(x) for an int or Fraction x."""
        x = Fraction(x)
        return _sign(self._homogeneous(x.numerator, x.denominator))

    # -- presentation --------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


def _coerce(v):
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return IntPoly((v,))
    return NotImplemented


X = IntPoly((0, 1))


def prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    da, db = a.degree(), b.degree()
    if da < db:
        return a
    lb = b.lc
    bc = b.coeffs
    r = list(a.coeffs)
    for i in range(da, db - 1, -1):
        c = r[i]
        r = [v * lb for v in r]
        if c:
            off = i - db
            for j, v in enumerate(bc):
                r[off + j] -= c * v
        r.pop()
    return IntPoly(tuple(r))


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (subresultant PRS)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    a, b = (p, q) if p.degree() >= q.degree() else (q, p)
    a, b = a.primitive(), b.primitive()
    g = h = 1
    while True:
        delta = a.degree() - b.degree()
        r = prem(a, b)
        if r.is_zero():
            return b.normalized()
        if r.degree() == 0:
            return IntPoly((1,))
        a, b = b, r.exact_div_int(g * h ** delta)
        g = a.lc
        if delta == 0:
            continue
        num, den = g ** delta, h ** (delta - 1)
        h = num // den
        if h * den != num:
            raise ArithmeticError("subresultant scaling was not exact")


def squarefree_part(p: IntPoly) -> IntPoly:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    if p.degree() == 0:
        return IntPoly((1,))
    return p.divmod_exact(poly_gcd(p, p.derivative())).normalized()


class SturmChain:
    """Negated pseudo-remainder sequence, each term scaled to primitive form.

    Only positive factors are ever divided out, so sign variations are those
    of the classical Sturm sequence.
    """

    def __init__(self, p: IntPoly):
        if p.is_zero():
            raise ValueError("Sturm chain of the zero polynomial")
        chain = [p]
        d = p.derivative()
        if not d.is_zero():
            chain.append(d.primitive())
        while len(chain) >= 2 and chain[-1].degree() > 0:
            a, b = chain[-2], chain[-1]
            r = prem(a, b)
            if r.is_zero():
                break
            if b.lc < 0 and (a.degree() - b.degree() + 1) % 2:
                r = -r
            chain.append((-r).primitive())
        self.polys: tuple[IntPoly, ...] = tuple(chain)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    @staticmethod
    def _variations(signs: Iterable[int]) -> int:
        v, last = 0, 0
        for s in signs:
            if s == 0:
                continue
            if last and s != last:
                v += 1
            last = s
        return v

    def variations(self, x) -> int:
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        return self._variations(_sign(f._homogeneous(p, q)) for f in self.polys)

    def variations_at_infinity(self, direction: int) -> int:
        if direction > 0:
            return self._variations(_sign(f.lc) for f in self.polys)
        return self._variations(_sign(f.lc) * (-1) ** f.degree() for f in self.polys)

    def count(self, lo=None, hi=None) -> int:
        """Distinct real roots in (lo, hi]; None means an infinite endpoint."""
        vlo = self.variations_at_infinity(-1) if lo is None else self.variations(lo)
        vhi = self.variations_at_infinity(1) if hi is None else self.variations(hi)
        return vlo - vhi


def sturm_chain(p: IntPoly) -> SturmChain:
    return SturmChain(p)


def cauchy_bound(p: IntPoly) -> int:
    """Smallest power of two strictly above every root modulus (>= 1 + max|c_i|/|lc|)."""
    if p.degree() < 1:
        return 1
    lead = abs(p.lc)
    m = max(abs(c) for c in p.coeffs[:-1])
    bound = Fraction(lead + m, lead)
    b = 1
    while b < bound:
        b <<= 1
    return b


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True, eq=False)
class AlgebraicNumber:
    """A real root of ``minpoly`` singled out by ``interval``.

    Either the interval is a point (an exact rational root), or the minpoly
    has opposite nonzero signs at the two endpoints and exactly one root
    strictly between them.
    """

    minpoly: IntPoly
    interval: RationalInterval

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi

    @property
    def is_exact(self) -> bool:
        return self.interval.lo == self.interval.hi

    @cached_property
    def _lo_sign(self) -> int:
        return self.minpoly.sign_at(self.lo)

    @classmethod
    def rational(cls, value) -> AlgebraicNumber:
        v = Fraction(value)
        return cls(IntPoly((-v.numerator, v.denominator)), RationalInterval(v, v))

    def validate(self) -> AlgebraicNumber:
        """Check the representation invariants; raise ValueError on failure."""
        p = self.minpoly
        if p.degree() < 1 or p.lc <= 0 or p.content() != 1:
            raise ValueError("minpoly must be primitive, non-constant, positive leading coefficient")
        if poly_gcd(p, p.derivative()).degree() != 0:
            raise ValueError("minpoly is not square-free")
        if self.is_exact:
            if p.sign_at(self.lo) != 0:
                raise ValueError("point interval is not a root of minpoly")
            return self
        slo, shi = p.sign_at(self.lo), p.sign_at(self.hi)
        if slo == 0 or shi == 0 or slo == shi:
            raise ValueError("interval endpoints do not bracket a sign change")
        if SturmChain(p).count(self.lo, self.hi) != 1:
            raise ValueError("interval does not isolate exactly one root")
        return self

    def bisect(self) -> AlgebraicNumber:
        if self.is_exact:
            return self
        mid = self.interval.midpoint
        s = self.minpoly.sign_at(mid)
        if s == 0:
            return AlgebraicNumber(self.minpoly, RationalInterval(mid, mid))
        if s == self._lo_sign:
            return AlgebraicNumber(self.minpoly, RationalInterval(mid, self.hi))
        return AlgebraicNumber(self.minpoly, RationalInterval(self.lo, mid))

    def refine(self, width) -> AlgebraicNumber:
        """Same number, interval no wider than ``width``."""
        width = Fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        a = self
        while a.interval.width > width:
            a = a.bisect()
        return a

    def is_root_of(self, poly: IntPoly) -> bool:
        if poly.is_zero():
            return True
        g = poly_gcd(self.minpoly, poly)
        if g.degree() < 1:
            return False
        return _has_root_in_closed(g, self.lo, self.hi)

    def sign_of(self, poly: IntPoly) -> int:
        """Exact sign of poly evaluated at this number."""
        if poly.degree() < 1:
            return _sign(poly.lc)
        if self.is_root_of(poly):
            return 0
        chain = SturmChain(squarefree_part(poly))
        a = self
        while not a.is_exact and (poly.sign_at(a.lo) == 0 or chain.count(a.lo, a.hi) > 0):
            a = a.bisect()
        return poly.sign_at(a.lo)

    def to_fraction(self, width=Fraction(1, 10**12)) -> Fraction:
        return self.refine(width).interval.midpoint

    def __float__(self):
        return float(self.to_fraction(Fraction(1, 2**60)))

    def decimal(self, digits: int = 6) -> str:
        """Decimal rendering rounded to ``digits`` places (display only)."""
        return decimal_str(self.refine(Fraction(1, 10 ** (digits + 3))).interval.midpoint, digits)

    def to_dict(self, digits: int = 6) -> dict:
        return {
            "minpoly": list(self.minpoly.coeffs),
            "interval": [fraction_to_str(self.lo), fraction_to_str(self.hi)],
            "decimal": self.decimal(digits),
        }

    @classmethod
    def from_dict(cls, d: dict) -> AlgebraicNumber:
        lo, hi = (Fraction(s) for s in d["interval"])
        return cls(IntPoly(tuple(int(c) for c in d["minpoly"])), RationalInterval(lo, hi)).validate()

    def __repr__(self):
        if self.is_exact:
            return f"AlgebraicNumber({self.lo})"
        return f"AlgebraicNumber(root of {self.minpoly} in ({self.lo}, {self.hi}))"


def decimal_str(x: Fraction, digits: int = 6) -> str:
    """Round a rational to ``digits`` places, half to even."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = max(50, digits + 30)
        d = Decimal(x.numerator) / Decimal(x.denominator)
        d = d.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
    if d.is_zero():
        d = abs(d)
    return str(d)


def fraction_to_str(x: Fraction) -> str:
    """Exact decimal string when the denominator has only factors 2 and 5, else 'p/q'."""
    x = Fraction(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    places = max(twos, fives)
    scaled = x * 10**places
    num = scaled.numerator
    neg = num < 0
    digits = str(abs(num)).rjust(places + 1, "0")
    text = digits if places == 0 else f"{digits[:-places]}.{digits[-places:]}"
    return ("-" if neg else "") + text


def _has_root_in_closed(g: IntPoly, lo: Fraction, hi: Fraction) -> bool:
    if g.sign_at(lo) == 0:
        return True
    if lo == hi:
        return False
    return SturmChain(g).count(lo, hi) > 0


def _tighten(sf: IntPoly, chain: SturmChain, lo: Fraction, hi: Fraction) -> AlgebraicNumber:
    """Turn a (lo, hi] holding exactly one root into an AlgebraicNumber."""
    if sf.sign_at(hi) == 0:
        return AlgebraicNumber(sf, RationalInterval(hi, hi))
    # lo may be the root belonging to the neighbouring interval
    while sf.sign_at(lo) == 0:
        mid = (lo + hi) / 2
        if sf.sign_at(mid) == 0:
            return AlgebraicNumber(sf, RationalInterval(mid, mid))
        if chain.count(mid, hi) == 1:
            lo = mid
        else:
            hi = mid
    return AlgebraicNumber(sf, RationalInterval(lo, hi))


def isolate_real_roots(p: IntPoly) -> list[AlgebraicNumber]:
    """All distinct real roots of p in ascending order."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    sf = squarefree_part(p)
    if sf.degree() < 1:
        return []
    chain = SturmChain(sf)
    b = cauchy_bound(sf)
    out: list[AlgebraicNumber] = []

    def split(lo: Fraction, hi: Fraction, vlo: int, vhi: int):
        n = vlo - vhi
        if n == 0:
            return
        if n == 1:
            out.append(_tighten(sf, chain, lo, hi))
            return
        mid = (lo + hi) / 2
        vmid = chain.variations(mid)
        split(lo, mid, vlo, vmid)
        split(mid, hi, vmid, vhi)

    lo, hi = Fraction(-b), Fraction(b)
    split(lo, hi, chain.variations(lo), chain.variations(hi))
    return out


def largest_real_root(p: IntPoly) -> AlgebraicNumber:
    roots = isolate_real_roots(p)
    if not roots:
        raise ValueError(f"{p} has no real root")
    return roots[-1]


def refine(a: AlgebraicNumber, width) -> AlgebraicNumber:
    return a.refine(width)


def _strictly_below(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    if a.hi < b.lo:
        return True
    return a.hi == b.lo and not (a.is_exact and b.is_exact)


def compare(a: AlgebraicNumber, b: AlgebraicNumber) -> Ordering:
    """Exact trichotomy of two real algebraic numbers."""
    if a is b:
        return Ordering.EQ
    g = None
    while True:
        if _strictly_below(a, b):
            return Ordering.LT
        if _strictly_below(b, a):
            return Ordering.GT
        if g is None:
            g = poly_gcd(a.minpoly, b.minpoly)
        if g.degree() >= 1:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if _has_root_in_closed(g, lo, hi):
                return Ordering.EQ
        elif a.is_exact and b.is_exact:
            # coprime minpolys cannot share a root; unreachable for valid inputs
            raise ValueError("inconsistent algebraic numbers")
        a, b = a.bisect(), b.bisect()


def sort_key(a: AlgebraicNumber):
    """Key adaptor so ``sorted(nums, key=sort_key)`` orders exactly."""
    return _Key(a)


class _Key:
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a

    def __lt__(self, other):
        return compare(self.a, other.a) is Ordering.LT

