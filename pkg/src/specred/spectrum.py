"""Brute-force complementarity spectrum of a small connected graph.

Every connected induced subgraph is enumerated, bucketed by canonical form,
and its spectral radius computed exactly. Distinct radii are counted with
exact comparisons, so this module is the ground truth for the pineapple
fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .graph import (
    DEFAULT_CANON_MAX_N,
    Graph,
    bits,
    canonical_form,
    charpoly,
    connected_induced_subsets,
    induced_subgraph,
    is_connected,
    parse_graph6,
)
from .poly import AlgebraicNumber, Ordering, compare, decimal_str, largest_real_root, sort_key
from .errors import ResourceGuardError

__all__ = [
    "SubgraphClass",
    "SpectrumReport",
    "spectral_radius",
    "complementarity_spectrum",
    "verify_bounds",
    "is_elementary",
    "group_equal",
]

# radii are pre-refined so most comparisons separate on interval bounds alone
_RADIUS_WIDTH = Fraction(1, 2**40)


@dataclass(frozen=True)
class SubgraphClass:
    canonical: bytes
    vertices: int
    order: int
    radius: AlgebraicNumber

    def to_dict(self, digits: int = 6) -> dict:
        return {
            "canonical": self.canonical.decode("ascii"),
            "vertices": list(bits(self.vertices)),
            "order": self.order,
            "radius": self.radius.to_dict(digits),
        }


@dataclass(frozen=True)
class SpectrumReport:
    n: int
    b: int
    c: int
    redundancy: Fraction
    classes: tuple[SubgraphClass, ...]
    collisions: tuple[tuple[bytes, ...], ...]
    radii: tuple[AlgebraicNumber, ...]

    def to_dict(self, digits: int = 6) -> dict:
        return {
            "n": self.n,
            "b": self.b,
            "c": self.c,
            "redundancy": str(self.redundancy),
            "redundancy_decimal": decimal_str(self.redundancy, digits),
            "classes": [cl.to_dict(digits) for cl in self.classes],
            "collisions": [[cf.decode("ascii") for cf in grp] for grp in self.collisions],
            "spectrum": [r.to_dict(digits) for r in self.radii],
        }


@lru_cache(maxsize=1 << 14)
def _radius_of_class(canonical: bytes) -> AlgebraicNumber:
    g = parse_graph6(canonical.split(b":", 1)[1])
    return largest_real_root(charpoly(g)).refine(_RADIUS_WIDTH)


def spectral_radius(g: Graph, max_n: int = DEFAULT_CANON_MAX_N) -> AlgebraicNumber:
    """Exact largest adjacency eigenvalue (cached per isomorphism class)."""
    return _radius_of_class(canonical_form(g, max_n))


def group_equal(items, radius_of=lambda x: x):
    """Sort by radius and group runs of exactly equal values."""
    ordered = sorted(items, key=lambda it: sort_key(radius_of(it)))
    groups: list[list] = []
    for it in ordered:
        if groups and compare(radius_of(groups[-1][0]), radius_of(it)) is Ordering.EQ:
            groups[-1].append(it)
        else:
            groups.append([it])
    return groups


def complementarity_spectrum(g: Graph, max_n: int = DEFAULT_CANON_MAX_N) -> SpectrumReport:
    if g.n > max_n:
        raise ResourceGuardError(f"oracle limited to {max_n} vertices, got {g.n}")
    if g.n == 0 or not is_connected(g):
        raise ValueError("complementarity spectrum needs a connected graph")
    reps: dict[bytes, int] = {}
    for s in connected_induced_subsets(g, max_n=max(max_n, g.n)):
        cf = canonical_form(induced_subgraph(g, s), max_n)
        if cf not in reps or s < reps[cf]:
            reps[cf] = s
    classes = tuple(
        SubgraphClass(cf, s, s.bit_count(), _radius_of_class(cf)) for cf, s in sorted(reps.items())
    )
    groups = group_equal(classes, lambda cl: cl.radius)
    collisions = tuple(
        tuple(sorted(cl.canonical for cl in grp)) for grp in groups if len(grp) > 1
    )
    b, c = len(classes), len(groups)
    return SpectrumReport(
        n=g.n,
        b=b,
        c=c,
        redundancy=Fraction(b, c),
        classes=classes,
        collisions=collisions,
        radii=tuple(grp[0].radius for grp in groups),
    )


def verify_bounds(g: Graph, report: SpectrumReport | None = None, max_n: int = DEFAULT_CANON_MAX_N) -> bool:
    """c <= b and n <= b <= 2^n - 1."""
    rep = report if report is not None else complementarity_spectrum(g, max_n)
    return rep.c <= rep.b and g.n <= rep.b <= 2**g.n - 1


def is_elementary(g: Graph) -> bool:
    """Path, star, cycle or complete graph (connected input assumed)."""
    n, deg = g.n, g.degrees()
    m = sum(deg) // 2
    if m == n * (n - 1) // 2:
        return True
    if n >= 3 and all(d == 2 for d in deg):
        return True
    if m == n - 1:
        if max(deg) <= 2:
            return True
        if max(deg) == n - 1:
            return True
    return False
