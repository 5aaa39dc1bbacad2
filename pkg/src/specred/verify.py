"""Self-check suites behind ``specred verify``.

Each check returns ``(ok, detail)``. Suites are lists of named checks so the
CLI can report them one per line and stop at the first failure.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .coincidence import (
    Kind,
    SlopeParams,
    enumerate_two_common,
    integer_radius_family,
    one_common_candidates,
    search_one_common,
)
from .graph import (
    Graph,
    PineappleParams,
    build_pineapple,
    charpoly,
    coalescence,
    connected_induced_subsets,
    induced_subgraph,
)
from .pineapple import (
    b_count,
    c_count,
    critical_point,
    radius_collisions,
    redundancy,
    spectral_radius,
)
from .poly import AlgebraicNumber, IntPoly, Ordering, compare
from .spectrum import complementarity_spectrum, verify_bounds
from .spectrum import spectral_radius as graph_radius

Check = Callable[[], tuple[bool, str]]

X = IntPoly((0, 1))


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    # random spanning tree plus random extra edges
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges |= {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    return Graph.from_edges(n, edges)


def coalescence_identity_holds(g: Graph, u: int, h: Graph, v: int) -> bool:
    lhs = charpoly(coalescence(g, u, h, v))
    pg, ph = charpoly(g), charpoly(h)
    pgu, phv = charpoly(g.remove_vertex(u)), charpoly(h.remove_vertex(v))
    return lhs == pg * phv + pgu * ph - X * pgu * phv


def monotone_subgraphs(g: Graph) -> bool:
    """Every proper connected induced subgraph has strictly smaller radius."""
    rho = graph_radius(g)
    full = (1 << g.n) - 1
    for s in connected_induced_subsets(g):
        if s != full and compare(graph_radius(induced_subgraph(g, s)), rho) is not Ordering.LT:
            return False
    return True


# -- examples suite ------------------------------------------------------------


def check_p43_subgraph_count() -> tuple[bool, str]:
    rep = complementarity_spectrum(build_pineapple(PineappleParams(4, 3)))
    ok = rep.b == 13 == b_count((4, 3)) and rep.c == 12
    return ok, f"b(P(4,3))={rep.b}, c={rep.c}"


def check_two_common_16_44() -> tuple[bool, str]:
    pairs = enumerate_two_common(22)
    hit = [p for p in pairs if (p.p1, p.p2) == (PineappleParams(16, 44), PineappleParams(8, 220))]
    if not hit:
        return False, "pair (P(16,44), P(8,220)) not found"
    pair = hit[0]
    lo, hi = (Fraction(x.decimal(4)) for x in pair.shared)
    ok = (
        pair.shared_poly == IntPoly((88, -21, 1))
        and abs(lo - Fraction("5.783")) <= Fraction(5, 10**4)
        and abs(hi - Fraction("15.217")) <= Fraction(5, 10**4)
    )
    return ok, f"shared minpoly {pair.shared_poly}, roots {lo} and {hi}"


def check_one_common_rho11() -> tuple[bool, str]:
    cands = {(p.p1, p.p2): p for p in one_common_candidates(11, SlopeParams(11, 2))}
    radius = cands.get((PineappleParams(7, 110), PineappleParams(9, 99)))
    other = cands.get((PineappleParams(17, 165), PineappleParams(19, 154)))
    if radius is None or other is None:
        return False, "rho=11 pairs missing"
    eleven = AlgebraicNumber.rational(11)
    crit = sorted(float(critical_point(p)) for p in ((7, 110), (9, 99)))
    ok = (
        radius.kind is Kind.ONE_COMMON_RADIUS
        and other.kind is Kind.ONE_COMMON_NON_RADIUS
        and compare(radius.shared[0], eleven) is Ordering.EQ
        and compare(other.shared[0], eleven) is Ordering.EQ
        and abs(crit[0] - 8.10) <= 1e-2
        and abs(crit[1] - 8.74) <= 1e-2
    )
    return ok, f"kinds {radius.kind.value}/{other.kind.value}, critical points {crit[0]:.4f}, {crit[1]:.4f}"


def check_integer_radius_family() -> tuple[bool, str]:
    for rho in range(3, 21):
        pair = integer_radius_family(rho)
        value = AlgebraicNumber.rational(rho)
        if any(compare(spectral_radius(p), value) is not Ordering.EQ for p in (pair.p1, pair.p2)):
            return False, f"rho={rho} fails"
    return True, "rho = 3..20 certified"


def check_alpha3_distinct_radii() -> tuple[bool, str]:
    bad = [b for b in range(8, 41) if c_count((3, b)) != 2 * b + 1]
    return not bad, "c(P(3,b)) = 2b+1 for b in 8..40" if not bad else f"fails at {bad}"


# -- lemmas suite ----------------------------------------------------------------


def check_coalescence(trials: int = 200, seed: int = 7) -> tuple[bool, str]:
    rng = random.Random(seed)
    for t in range(trials):
        g = random_graph(rng, rng.randint(1, 6))
        h = random_graph(rng, rng.randint(1, 6))
        u, v = rng.randrange(g.n), rng.randrange(h.n)
        if not coalescence_identity_holds(g, u, h, v):
            return False, f"identity fails on trial {t}"
    return True, f"{trials} random pairs"


def check_monotonicity(trials: int = 60, seed: int = 11) -> tuple[bool, str]:
    rng = random.Random(seed)
    for t in range(trials):
        g = random_connected_graph(rng, rng.randint(2, 7))
        if not monotone_subgraphs(g):
            return False, f"monotonicity fails on trial {t}"
    return True, f"{trials} random connected graphs"


def check_bounds(trials: int = 100, seed: int = 13) -> tuple[bool, str]:
    rng = random.Random(seed)
    for t in range(trials):
        g = random_connected_graph(rng, 7)
        if not verify_bounds(g):
            return False, f"bounds fail on trial {t}"
    return True, f"{trials} random connected graphs on 7 vertices"


def check_sign_condition() -> tuple[bool, str]:
    pairs = enumerate_two_common(60) + search_one_common(30)
    bad = [p for p in pairs if not p.sign_condition()]
    return not bad, f"{len(pairs)} pairs checked"


def check_closure(amax: int = 10, bmax: int = 100) -> tuple[bool, str]:
    """Radius collisions from the pairwise scan equal those the searches predict."""
    scanned = set()
    for group in radius_collisions((amax, bmax)):
        for i, p in enumerate(group):
            for q in group[i + 1:]:
                scanned.add((p.alpha, p.beta, q.alpha, q.beta))

    def inside(pair):
        return all(m.alpha <= amax and m.beta <= bmax for m in (pair.p1, pair.p2))

    # no member has radius above that of P(amax, bmax)
    max_rho = int(spectral_radius((amax, bmax)).hi)
    predicted = {p.key for p in enumerate_two_common(2 * amax) if inside(p)}
    predicted |= {
        p.key for p in search_one_common(max_rho) if p.kind is Kind.ONE_COMMON_RADIUS and inside(p)
    }
    ok = scanned == predicted
    return ok, f"{len(scanned)} radius coincidences in P({amax},{bmax})" if ok else f"scan-only {sorted(scanned - predicted)[:3]}, search-only {sorted(predicted - scanned)[:3]}"


# -- oracle suite ------------------------------------------------------------------


def check_oracle_grid() -> tuple[bool, str]:
    for a in range(2, 6):
        for b in range(0, 7):
            rep = complementarity_spectrum(build_pineapple(PineappleParams(a, b)), max_n=16)
            if (rep.b, rep.c, rep.redundancy) != (b_count((a, b)), c_count((a, b)), redundancy((a, b))):
                return False, f"P({a},{b}): oracle ({rep.b},{rep.c}) vs fast path ({b_count((a, b))},{c_count((a, b))})"
    return True, "2<=a<=5, 0<=b<=6"


SUITES: dict[str, list[tuple[str, Check]]] = {
    "examples": [
        ("p43-subgraph-count", check_p43_subgraph_count),
        ("two-common-16-44", check_two_common_16_44),
        ("one-common-rho11", check_one_common_rho11),
        ("integer-radius-family", check_integer_radius_family),
        ("alpha3-distinct-radii", check_alpha3_distinct_radii),
    ],
    "lemmas": [
        ("coalescence-identity", check_coalescence),
        ("radius-monotonicity", check_monotonicity),
        ("subgraph-count-bounds", check_bounds),
        ("sign-condition", check_sign_condition),
        ("closure-cross-check", check_closure),
    ],
    "oracle": [
        ("fast-path-vs-oracle", check_oracle_grid),
    ],
}


def run_suite(name: str):
    """Yield (check name, ok, detail) for every check of a suite."""
    names = list(SUITES) if name == "all" else [name]
    for suite in names:
        for check_name, fn in SUITES[suite]:
            ok, detail = fn()
            yield f"{suite}/{check_name}", ok, detail
