"""Closed-form spectral data for the pineapple family P(alpha, beta).

The characteristic polynomial of P(alpha, beta) factors as
x^(beta-1) (x+1)^(alpha-2) times a cubic, and the spectral radius is the
largest root of that cubic. Since induced subgraphs of pineapples are again
pineapples, b and c of P(alpha, beta) follow from the radii of the family
P(i, j), 2 <= i <= alpha, 0 <= j <= beta, plus the single vertex.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .graph import PineappleParams
from .poly import (
    AlgebraicNumber,
    IntPoly,
    Ordering,
    RationalInterval,
    compare,
    largest_real_root,
)

__all__ = [
    "K1",
    "FactoredCharpoly",
    "PineappleSpectrum",
    "RadiusCertificate",
    "cubic",
    "spectral_radius",
    "pineapple_spectrum",
    "b_count",
    "subgraph_family",
    "member_radius",
    "radius_collisions",
    "c_count",
    "redundancy",
    "radius_certificate",
    "is_spectral_radius",
    "critical_point",
    "radius_sign_polynomial",
    "spectrum_multiplicities",
    "redundancy_curve",
    "stable_tail_start",
]

log = logging.getLogger(__name__)

_RADIUS_WIDTH = Fraction(1, 2**40)


class _SingleVertex:
    """Marker for K1 in pineapple subgraph families."""

    def __repr__(self):
        return "K1"

    __str__ = __repr__

    def __reduce__(self):
        return "K1"


K1 = _SingleVertex()


def _params(p) -> PineappleParams:
    if isinstance(p, PineappleParams):
        return p
    return PineappleParams(*p)


def cubic(p) -> IntPoly:
    """x^3 - (a-2)x^2 - (a+b-1)x + b(a-2)."""
    p = _params(p)
    a, b = p.alpha, p.beta
    return IntPoly((b * (a - 2), -(a + b - 1), -(a - 2), 1))


@dataclass(frozen=True)
class FactoredCharpoly:
    """x^x_power * (x+1)^xp1_power * cubic; x_power is -1 when beta = 0."""

    x_power: int
    xp1_power: int
    cubic: IntPoly

    def expand(self) -> IntPoly:
        body = IntPoly((1, 1)) ** self.xp1_power * self.cubic
        if self.x_power >= 0:
            return body.shift_degree(self.x_power)
        if body[0] != 0:
            raise ArithmeticError("negative x power on a polynomial without root 0")
        return IntPoly(body.coeffs[1:])

    def __str__(self):
        return f"x^{self.x_power} (x+1)^{self.xp1_power} ({self.cubic})"


@lru_cache(maxsize=None)
def _radius(p: PineappleParams) -> AlgebraicNumber:
    if (p.alpha, p.beta) == (2, 0):
        # K2; the cubic x^3 - x would give the same root
        return AlgebraicNumber(IntPoly((-1, 1)), RationalInterval(1, 1))
    return largest_real_root(cubic(p)).refine(_RADIUS_WIDTH)


def spectral_radius(p) -> AlgebraicNumber:
    return _radius(_params(p))


@dataclass(frozen=True)
class PineappleSpectrum:
    params: PineappleParams
    cubic: IntPoly
    radius: AlgebraicNumber
    full_charpoly: FactoredCharpoly

    def to_dict(self, digits: int = 6) -> dict:
        return {
            "alpha": self.params.alpha,
            "beta": self.params.beta,
            "cubic": list(self.cubic.coeffs),
            "charpoly_factors": {
                "x_power": self.full_charpoly.x_power,
                "x_plus_1_power": self.full_charpoly.xp1_power,
                "cubic": list(self.cubic.coeffs),
            },
            "radius": self.radius.to_dict(digits),
        }


def pineapple_spectrum(p) -> PineappleSpectrum:
    p = _params(p)
    c = cubic(p)
    return PineappleSpectrum(p, c, spectral_radius(p), FactoredCharpoly(p.beta - 1, p.alpha - 2, c))


def spectrum_multiplicities(p) -> dict[str, int]:
    """Multiplicities of the eigenvalues 0 and -1 in the full adjacency spectrum."""
    p = _params(p)
    a, b = p.alpha, p.beta
    zero = (b - 1) + (1 if b * (a - 2) == 0 else 0)
    minus_one = (a - 2) + (1 if b == 0 else 0)
    return {"0": zero, "-1": minus_one}


def b_count(p) -> int:
    p = _params(p)
    return (p.alpha - 1) * (p.beta + 1) + 1


def subgraph_family(p) -> list:
    """K1 followed by every P(i, j) with 2 <= i <= alpha, 0 <= j <= beta."""
    p = _params(p)
    return [K1] + [PineappleParams(i, j) for i in range(2, p.alpha + 1) for j in range(p.beta + 1)]


def member_radius(m) -> AlgebraicNumber:
    if m is K1:
        return AlgebraicNumber.rational(0)
    return spectral_radius(m)


def radius_collisions(p) -> list[list[PineappleParams]]:
    """Groups of family members sharing one spectral radius (size >= 2).

    Only pairs with (a2-a1)(b2-b1) < 0 are compared: a pair ordered the
    other way has one member inside the other, and a proper induced
    subgraph always has strictly smaller radius.
    """
    members = subgraph_family(p)[1:]
    parent = list(range(len(members)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    radii = [spectral_radius(m) for m in members]
    for i, m1 in enumerate(members):
        for j in range(i + 1, len(members)):
            m2 = members[j]
            if (m2.alpha - m1.alpha) * (m2.beta - m1.beta) >= 0:
                continue
            r1, r2 = radii[i], radii[j]
            if r1.hi < r2.lo or r2.hi < r1.lo:
                continue
            if compare(r1, r2) is Ordering.EQ:
                parent[find(i)] = find(j)
    groups: dict[int, list] = {}
    for i, m in enumerate(members):
        groups.setdefault(find(i), []).append(m)
    return sorted((sorted(g) for g in groups.values() if len(g) > 1), key=lambda g: g[0])


def c_count(p) -> int:
    """Distinct spectral radii over the subgraph family (K1 contributes 0)."""
    b = b_count(p)
    merged = sum(len(g) - 1 for g in radius_collisions(p))
    return b - merged


def redundancy(p) -> Fraction:
    return Fraction(b_count(p), c_count(p))


def radius_sign_polynomial(p) -> IntPoly:
    """3x^2 - 2(a-2)x - a - b + 1, which equals the cubic's derivative."""
    p = _params(p)
    a, b = p.alpha, p.beta
    return IntPoly((-a - b + 1, -2 * (a - 2), 3))


def critical_point(p) -> AlgebraicNumber:
    """Largest root of the cubic's derivative: ((a-2) + sqrt((a-2)^2 + 3(a+b-1))) / 3."""
    return largest_real_root(cubic(p).derivative())


@dataclass(frozen=True)
class RadiusCertificate:
    params: PineappleParams
    is_radius: bool
    sign_test_positive: bool
    above_critical_point: bool

    @property
    def disagreements(self) -> list[str]:
        out = []
        if self.is_radius and not self.sign_test_positive:
            out.append("radius certified but 3rho^2-2rho(a-2)-a-b+1 <= 0")
        if self.is_radius != self.above_critical_point:
            out.append("radius certification and critical-point test disagree")
        return out


def radius_certificate(p, rho: AlgebraicNumber) -> RadiusCertificate:
    p = _params(p)
    c = cubic(p)
    if not rho.is_root_of(c):
        raise ValueError(f"{rho!r} is not a root of the cubic of {p}")
    is_radius = compare(rho, spectral_radius(p)) is Ordering.EQ
    sign_ok = rho.sign_of(radius_sign_polynomial(p)) > 0
    above = compare(rho, critical_point(p)) is Ordering.GT
    cert = RadiusCertificate(p, is_radius, sign_ok, above)
    for msg in cert.disagreements:
        log.warning("%s, rho=%r: %s", p, rho, msg)
    if sign_ok and not is_radius:
        log.info("%s: sign condition holds at non-largest root %r", p, rho)
    return cert


def is_spectral_radius(p, rho: AlgebraicNumber) -> bool:
    """True iff rho is the largest root of the cubic of P(alpha, beta)."""
    return radius_certificate(p, rho).is_radius


@dataclass(frozen=True)
class CurveRow:
    param: int
    b: int
    c: int
    redundancy: Fraction

    @property
    def excess(self) -> int:
        return self.b - self.c


def redundancy_curve(alpha: int | None = None, beta: int | None = None, start: int = 0, stop: int = 0) -> list[CurveRow]:
    """Rows (param, b, c, r) with one parameter fixed and the other ranging over [start, stop]."""
    if (alpha is None) == (beta is None):
        raise ValueError("fix exactly one of alpha, beta")
    rows = []
    for t in range(start, stop + 1):
        p = PineappleParams(alpha, t) if alpha is not None else PineappleParams(t, beta)
        b, c = b_count(p), c_count(p)
        rows.append(CurveRow(t, b, c, Fraction(b, c)))
    return rows


def stable_tail_start(rows: list[CurveRow]) -> int | None:
    """Index of the first row after which b - c never changes; None if empty."""
    if not rows:
        return None
    i = len(rows) - 1
    while i > 0 and rows[i - 1].excess == rows[-1].excess:
        i -= 1
    return i
