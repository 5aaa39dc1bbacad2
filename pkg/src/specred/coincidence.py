"""Pairs of pineapple graphs whose cubic factors share roots.

Two families are generated arithmetically and each pair is then re-verified
with an exact gcd of the two cubics:

* two shared roots (always the two largest of each cubic), indexed by the
  clique difference ``a`` and ``k = a1 + a2 - 2``;
* one shared integer root ``rho``, indexed by the slope
  ``k = (b2 - b1)/(a1 - a2) = r/s`` and a factorisation
  ``(a1 - rho - 2)(a2 - rho - 2) = s*rho*(rho+1)/r``.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from math import gcd
from typing import Union

from .errors import ValidationError
from .graph import PineappleParams
from .pineapple import cubic, is_spectral_radius, spectrum_multiplicities
from .poly import AlgebraicNumber, IntPoly, isolate_real_roots, poly_gcd

__all__ = [
    "Kind",
    "TwoCommonWitness",
    "SlopeParams",
    "OneCommonWitness",
    "CoincidencePair",
    "check_mod4",
    "pair_from_ak",
    "enumerate_two_common",
    "slope_precondition_failure",
    "one_common_candidates",
    "search_one_common",
    "integer_radius_family",
    "divisors",
]

log = logging.getLogger(__name__)


class Kind(str, enum.Enum):
    TWO_COMMON_LARGEST = "TwoCommonLargest"
    ONE_COMMON_RADIUS = "OneCommonRadius"
    ONE_COMMON_NON_RADIUS = "OneCommonNonRadius"


# k mod 4 -> (case label, required residue of (a^2-1)/(k-1) mod 4)
_MOD4_CASES = {0: ("a", 1), 1: ("b", 2), 2: ("c", 3), 3: ("d", 0)}


@dataclass(frozen=True)
class TwoCommonWitness:
    a: int
    k: int
    case: str
    r: int

    def to_dict(self) -> dict:
        return {"a": self.a, "k": self.k, "case": self.case, "r": self.r}


@dataclass(frozen=True)
class SlopeParams:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError("r and s must be positive")
        if gcd(self.r, self.s) != 1:
            raise ValueError(f"r={self.r} and s={self.s} are not coprime")


@dataclass(frozen=True)
class OneCommonWitness:
    slope: SlopeParams
    rho: int
    m: int
    n: int

    def to_dict(self) -> dict:
        return {"r": self.slope.r, "s": self.slope.s, "rho": self.rho, "m": self.m, "n": self.n}


@dataclass(frozen=True)
class CoincidencePair:
    p1: PineappleParams
    p2: PineappleParams
    kind: Kind
    shared: tuple[AlgebraicNumber, ...]
    shared_poly: IntPoly
    a_value: int
    witness: Union[TwoCommonWitness, OneCommonWitness]

    @property
    def key(self) -> tuple[int, int, int, int]:
        lo, hi = sorted((self.p1, self.p2))
        return (lo.alpha, lo.beta, hi.alpha, hi.beta)

    def sign_condition(self) -> bool:
        return (self.p2.alpha - self.p1.alpha) * (self.p2.beta - self.p1.beta) < 0

    def to_dict(self, digits: int = 6) -> dict:
        return {
            "p1": [self.p1.alpha, self.p1.beta],
            "p2": [self.p2.alpha, self.p2.beta],
            "kind": self.kind.value,
            "shared_poly": list(self.shared_poly.coeffs),
            "shared": [x.to_dict(digits) for x in self.shared],
            "A_scaled": self.a_value,
            "witness": self.witness.to_dict(),
            "full_spectrum_multiplicities": [spectrum_multiplicities(self.p1), spectrum_multiplicities(self.p2)],
        }


def divisors(n: int) -> list[int]:
    """Positive divisors of |n| in increasing order."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# -- two common roots ------------------------------------------------------------


def check_mod4(a: int, k: int) -> TwoCommonWitness | None:
    """Witness iff k(k-a)(k-a-2) / (4(k-1)) is an integer."""
    if (a - k) % 2:
        raise ValueError(f"a={a} and k={k} must have the same parity")
    if k < 3 or a == 0:
        raise ValueError("need k >= 3 and a != 0")
    direct = k * (k - a) * (k - a - 2) % (4 * (k - 1)) == 0
    case, residue = _MOD4_CASES[k % 4]
    q, rem = divmod(a * a - 1, k - 1)
    by_residue = rem == 0 and q % 4 == residue
    if by_residue != direct:
        raise ValidationError(f"mod-4 criterion and direct divisibility disagree at a={a}, k={k}")
    if not by_residue:
        return None
    # a^2 - 1 = (4r + residue')(k - 1) with residue' in {1, 2, -1, 0}
    offset = {"a": 1, "b": 2, "c": -1, "d": 0}[case]
    return TwoCommonWitness(a, k, case, (q - offset) // 4)


def _validate_shared(p1: PineappleParams, p2: PineappleParams, expected: IntPoly) -> None:
    g = poly_gcd(cubic(p1), cubic(p2))
    if g != expected.normalized():
        raise ValidationError(f"gcd of cubics of {p1}, {p2} is {g}, expected {expected}")


def pair_from_ak(w: TwoCommonWitness) -> CoincidencePair | None:
    """Build (P(a1, b1), P(a2, b2)); None when a2 < 2 (not a graph)."""
    a, k = w.a, w.k
    a1, a2 = (k + a + 2) // 2, (k - a + 2) // 2
    if a2 < 2 or a1 < 2:
        return None
    b1, r1 = divmod(k * (a2 - 1) * (a2 - 2), k - 1)
    b2, r2 = divmod(k * (a1 - 1) * (a1 - 2), k - 1)
    if r1 or r2:
        raise ValidationError(f"non-integral beta from witness {w}")
    p1, p2 = PineappleParams(a1, b1), PineappleParams(a2, b2)
    quad = IntPoly((-(b1 - k * (a2 - 2)), -(k - 1), 1))
    _validate_shared(p1, p2, quad)
    shared = tuple(isolate_real_roots(quad))
    for p in (p1, p2):
        top_two = isolate_real_roots(cubic(p))[-2:]
        if len(top_two) != 2 or not all(x.is_root_of(quad) for x in top_two):
            raise ValidationError(f"shared roots are not the two largest roots of {p}")
    return CoincidencePair(p1, p2, Kind.TWO_COMMON_LARGEST, shared, quad, 0, w)


def _two_common_at(k: int) -> list[CoincidencePair]:
    out = []
    for a in range(2 - k % 2, k - 1, 2):
        w = check_mod4(a, k)
        if w is not None:
            pair = pair_from_ak(w)
            if pair is not None:
                out.append(pair)
    return out


def _sweep(fn, values, jobs: int) -> list:
    values = list(values)
    if jobs > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(fn, values))
    else:
        chunks = [fn(v) for v in values]
    return [x for chunk in chunks for x in chunk]


def enumerate_two_common(max_k: int, jobs: int = 1) -> list[CoincidencePair]:
    """All two-common pairs with 3 <= k <= max_k, a >= 1, sorted by (k, a)."""
    if max_k < 3:
        raise ValueError("max_k must be >= 3")
    pairs = _sweep(_two_common_at, range(3, max_k + 1), jobs)
    seen, out = set(), []
    for p in pairs:
        if p.key not in seen:
            seen.add(p.key)
            out.append(p)
    out.sort(key=lambda p: (p.witness.k, p.witness.a))
    return out


# -- one common root --------------------------------------------------------------


def slope_precondition_failure(rho: int, sp: SlopeParams, complete: bool = True) -> str | None:
    """Why slope r/s cannot give a pair sharing rho, or None.

    With ``complete`` the test is r*s | rho(rho+1), which is what integrality
    of alpha_i and beta_i actually needs. Otherwise the narrower conditions
    r | rho(rho+1) and s | rho+1 are used.
    """
    if rho < 1:
        return f"rho={rho} must be a positive integer"
    if rho * (rho + 1) % sp.r:
        return f"r={sp.r} does not divide rho(rho+1)={rho * (rho + 1)}"
    if complete:
        if rho * (rho + 1) % (sp.r * sp.s):
            return f"r*s={sp.r * sp.s} does not divide rho(rho+1)={rho * (rho + 1)}"
    elif (rho + 1) % sp.s:
        return f"s={sp.s} does not divide rho+1={rho + 1}"
    return None


def _a_scaled(sp: SlopeParams, a1: int, a2: int) -> int:
    """s^2 * A where A = k(a1 + a2) - k(k + 2), k = r/s."""
    return sp.r * (sp.s * (a1 + a2) - sp.r - 2 * sp.s)


def one_common_candidates(rho: int, sp: SlopeParams, complete: bool = True) -> list[CoincidencePair]:
    """Pairs sharing the single root rho for slope r/s; [] if preconditions fail.

    beta_i is an integer iff s divides alpha_j - rho - 2. With ``complete``
    that is the only filter; otherwise s | alpha_i - 1 is also required.
    """
    reason = slope_precondition_failure(rho, sp, complete)
    if reason:
        log.debug("no candidates: %s", reason)
        return []
    r, s = sp.r, sp.s
    target = s * rho * (rho + 1) // r
    found: dict[tuple, CoincidencePair] = {}
    for d in divisors(target):
        for m, n in ((d, target // d), (-d, -(target // d))):
            a1, a2 = rho + 2 + m, rho + 2 + n
            if a1 < 2 or a2 < 2 or (not complete and ((a1 - 1) % s or (a2 - 1) % s)):
                continue
            b1, rem1 = divmod(s * rho * (rho + 1) + r * (a2 - 1) - r * (rho + 1), s)
            b2, rem2 = divmod(s * rho * (rho + 1) + r * (a1 - 1) - r * (rho + 1), s)
            if rem1 or rem2 or b1 < 0 or b2 < 0 or (a1, b1) == (a2, b2):
                continue
            a_val = _a_scaled(sp, a1, a2)
            if a_val == 0:
                continue
            if a1 > a2:
                a1, b1, a2, b2, m, n = a2, b2, a1, b1, n, m
            key = (a1, b1, a2, b2)
            if key in found:
                continue
            p1, p2 = PineappleParams(a1, b1), PineappleParams(a2, b2)
            linear = IntPoly((-rho, 1))
            _validate_shared(p1, p2, linear)
            kind = Kind.ONE_COMMON_RADIUS if m < 0 and n < 0 else Kind.ONE_COMMON_NON_RADIUS
            root = AlgebraicNumber.rational(rho)
            certified = is_spectral_radius(p1, root) and is_spectral_radius(p2, root)
            if certified != (kind is Kind.ONE_COMMON_RADIUS):
                raise ValidationError(f"{p1}, {p2}: factor signs say {kind.value} but Sturm certification disagrees")
            found[key] = CoincidencePair(p1, p2, kind, (root,), linear, a_val, OneCommonWitness(sp, rho, m, n))
    return [found[k] for k in sorted(found)]


def _one_common_at(rho: int, complete: bool = True) -> list[CoincidencePair]:
    n = rho * (rho + 1)
    out = []
    for r in divisors(n):
        for s in divisors(n // r if complete else rho + 1):
            if gcd(r, s) == 1:
                out.extend(one_common_candidates(rho, SlopeParams(r, s), complete))
    return out


def search_one_common(max_rho: int, jobs: int = 1, complete: bool = True) -> list[CoincidencePair]:
    """Union of one-common candidates over rho <= max_rho and admissible r, s.

    ``complete=False`` restricts s to divisors of rho+1, which misses pairs
    such as P(2,15), P(4,10) (common radius 4, slope 5/2).
    """
    if max_rho < 1:
        raise ValueError("max_rho must be >= 1")
    pairs = _sweep(partial(_one_common_at, complete=complete), range(1, max_rho + 1), jobs)
    unique: dict[tuple, CoincidencePair] = {}
    for p in pairs:
        unique.setdefault(p.key, p)
    return [unique[k] for k in sorted(unique)]


def integer_radius_family(rho: int) -> CoincidencePair:
    """(P(rho+1, 0), P(rho, rho(rho+1)/2)), both with spectral radius rho."""
    if rho < 3:
        raise ValueError("rho must be > 2")
    r = rho * (rho + 1) // 2
    sp = SlopeParams(r, 1)
    p1, p2 = PineappleParams(rho + 1, 0), PineappleParams(rho, r)
    linear = IntPoly((-rho, 1))
    _validate_shared(p1, p2, linear)
    root = AlgebraicNumber.rational(rho)
    if not (is_spectral_radius(p1, root) and is_spectral_radius(p2, root)):
        raise ValidationError(f"{rho} is not the radius of both {p1} and {p2}")
    return CoincidencePair(
        p1, p2, Kind.ONE_COMMON_RADIUS, (root,), linear, _a_scaled(sp, p1.alpha, p2.alpha),
        OneCommonWitness(sp, rho, -1, -2),
    )
