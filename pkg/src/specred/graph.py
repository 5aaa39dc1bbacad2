"""Small simple graphs as bit rows, graph6 I/O, pineapples, canonical forms.

Vertex sets are plain ``int`` bitmasks (bit v set means vertex v is in the
set). Graphs are immutable and hashable so results keyed on them can be
cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator

from .errors import ResourceGuardError
from .poly import IntPoly

__all__ = [
    "Graph",
    "PineappleParams",
    "Graph6Error",
    "build_pineapple",
    "parse_graph6",
    "emit_graph6",
    "induced_subgraph",
    "is_connected",
    "connected_induced_subsets",
    "canonical_form",
    "canonical_form_exhaustive",
    "charpoly",
    "coalescence",
    "bits",
    "mask_of",
    "CANONICAL_VERSION",
]

DEFAULT_SUBSET_MAX_N = 16
DEFAULT_CANON_MAX_N = 10
EXHAUSTIVE_MAX_N = 8
CHARPOLY_MAX_N = 16
CANONICAL_VERSION = "c1"


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``rows[v]`` is the neighbour bitmask of v."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise ValueError("rows must have exactly n entries")
        full = (1 << self.n) - 1
        for v, r in enumerate(self.rows):
            if r & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if r >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(r):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def adjacency_matrix(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex v renamed perm[v]."""
        rows = [0] * self.n
        for v, r in enumerate(self.rows):
            nr = 0
            for u in bits(r):
                nr |= 1 << perm[u]
            rows[perm[v]] = nr
        return Graph(self.n, tuple(rows))

    def remove_vertex(self, v: int) -> Graph:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        return induced_subgraph(self, ((1 << self.n) - 1) ^ (1 << v), allow_empty=True)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True, order=True)
class PineappleParams:
    """P(alpha, beta): K_alpha with beta pendant vertices on one clique vertex."""

    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha < 2:
            raise ValueError(f"alpha must be >= 2, got {self.alpha}")
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")

    @property
    def order(self) -> int:
        return self.alpha + self.beta

    def __str__(self):
        return f"P({self.alpha},{self.beta})"


def build_pineapple(p: PineappleParams) -> Graph:
    """Vertices 0..alpha-1 form the clique; the pendants hang off vertex 0."""
    a, b = p.alpha, p.beta
    n = a + b
    clique = (1 << a) - 1
    pend = ((1 << n) - 1) ^ clique
    rows = [clique ^ (1 << v) for v in range(a)]
    rows[0] |= pend
    rows.extend(1 for _ in range(b))
    return Graph(n, tuple(rows))


# -- graph6 ------------------------------------------------------------------


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


_HEADER = ">>graph6<<"


def parse_graph6(text) -> Graph:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    base = 0
    if text.startswith(_HEADER):
        text = text[len(_HEADER):]
        base = len(_HEADER)
    text = text.rstrip("\r\n")
    data = []
    for i, ch in enumerate(text):
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise Graph6Error(f"invalid graph6 character {ch!r}", base + i)
        data.append(v)
    if not data:
        raise Graph6Error("empty graph6 string", base)
    pos = 0
    if data[0] == 63:
        if len(data) >= 2 and data[1] == 63:
            if len(data) < 8:
                raise Graph6Error("truncated size header", base + len(data))
            n = 0
            for v in data[2:8]:
                n = n << 6 | v
            pos = 8
        else:
            if len(data) < 4:
                raise Graph6Error("truncated size header", base + len(data))
            n = data[1] << 12 | data[2] << 6 | data[3]
            pos = 4
    else:
        n = data[0]
        pos = 1
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error(f"truncated adjacency data: need {need} bytes, got {len(body)}", base + len(data))
    if len(body) > need:
        raise Graph6Error("trailing data after adjacency bits", base + pos + need)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need and body[-1] & ((1 << (6 * need - nbits)) - 1):
        raise Graph6Error("nonzero padding bits", base + pos + need - 1)
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph, header: bool = False) -> str:
    n = g.n
    if n < 63:
        out = [n]
    elif n < 258048:
        out = [63, n >> 12 & 63, n >> 6 & 63, n & 63]
    else:
        out = [63, 63] + [n >> s & 63 for s in range(30, -1, -6)]
    acc = nacc = 0
    for j in range(1, n):
        row = g.rows[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc)
                acc = nacc = 0
    if nacc:
        out.append(acc << (6 - nacc))
    s = "".join(chr(v + 63) for v in out)
    return _HEADER + s if header else s


# -- subgraphs and connectivity ------------------------------------------------


def induced_subgraph(g: Graph, s: int, allow_empty: bool = False) -> Graph:
    """Subgraph induced on vertex set ``s``, relabelled in increasing order."""
    if not s and not allow_empty:
        raise ValueError("empty vertex set")
    if s >> g.n:
        raise ValueError("vertex set not contained in the graph")
    verts = list(bits(s))
    index = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        r = 0
        for u in bits(g.rows[v] & s):
            r |= 1 << index[u]
        rows.append(r)
    return Graph(len(verts), tuple(rows))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise ValueError("connectivity of the null graph is undefined")
    return _reach(g.rows, 1, (1 << g.n) - 1) == (1 << g.n) - 1


def _reach(rows, start: int, within: int) -> int:
    seen = frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def connected_induced_subsets(g: Graph, max_n: int = DEFAULT_SUBSET_MAX_N) -> Iterator[int]:
    """Every vertex set inducing a connected subgraph, each exactly once.

    Sets are grown from their minimum vertex; at each step the candidate
    extension is split into "take w" and "never take w", so no set is
    produced twice and no disconnected set is ever visited.
    """
    if g.n > max_n:
        raise ResourceGuardError(f"graph has {g.n} vertices, subset enumeration limited to {max_n}")
    rows = g.rows

    def grow(s: int, ext: int, banned: int) -> Iterator[int]:
        yield s
        while ext:
            w = ext & -ext
            ext ^= w
            s2 = s | w
            ext2 = (ext | rows[w.bit_length() - 1]) & ~s2 & ~banned
            yield from grow(s2, ext2, banned)
            banned |= w

    for v in range(g.n):
        below = (1 << v) - 1
        yield from grow(1 << v, rows[v] & ~below, below)


# -- canonical forms -------------------------------------------------------------


def _refine(rows, n: int, colors: list[int]) -> list[int]:
    """Colour refinement; cells keep their relative order so the result is equivariant."""
    ncells = len(set(colors))
    while True:
        sig = [(colors[v], tuple(sorted(colors[u] for u in bits(rows[v])))) for v in range(n)]
        keys = sorted(set(sig))
        if len(keys) == ncells:
            index = {k: i for i, k in enumerate(keys)}
            return [index[s] for s in sig]
        index = {k: i for i, k in enumerate(keys)}
        colors = [index[s] for s in sig]
        ncells = len(keys)


def _code(g: Graph, perm: list[int]) -> str:
    return emit_graph6(g.relabel(perm))


@lru_cache(maxsize=1 << 16)
def _canonical_cached(g: Graph) -> bytes:
    n, rows = g.n, g.rows
    best: list[str] = []

    def search(colors: list[int]):
        colors = _refine(rows, n, colors)
        if len(set(colors)) == n:
            code = _code(g, colors)
            if not best or code < best[0]:
                best[:] = [code]
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, k in sizes.items() if k > 1)
        reps: list[int] = []
        for v in range(n):
            if colors[v] != target:
                continue
            # swapping twins is an automorphism fixing the partition: one branch suffices
            if any(rows[u] & ~(1 << v) == rows[v] & ~(1 << u) for u in reps):
                continue
            reps.append(v)
        for v in reps:
            nc = [2 * c + 1 for c in colors]
            nc[v] -= 1
            search(nc)

    search([0] * n)
    return f"{CANONICAL_VERSION}:{best[0] if n else ''}".encode("ascii")


def canonical_form(g: Graph, max_n: int = DEFAULT_CANON_MAX_N) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic.

    Individualisation-refinement: colour refinement, then branch on the
    vertices of the first non-singleton cell (one per twin class), keeping
    the lexicographically least graph6 code over all leaves.
    """
    if g.n > max_n:
        raise ResourceGuardError(f"canonical form limited to {max_n} vertices, got {g.n}")
    return _canonical_cached(g)


def canonical_form_exhaustive(g: Graph, max_n: int = EXHAUSTIVE_MAX_N) -> bytes:
    """Least graph6 code over all n! labelings; a slow independent check."""
    if g.n > max_n:
        raise ResourceGuardError(f"exhaustive canonical form limited to {max_n} vertices, got {g.n}")
    best = min((_code(g, list(p)) for p in permutations(range(g.n))), default="")
    return f"x1:{best}".encode("ascii")


# -- characteristic polynomial ---------------------------------------------------


def charpoly(g: Graph, max_n: int = CHARPOLY_MAX_N) -> IntPoly:
    """det(xI - A) by Faddeev-LeVerrier in exact integers."""
    n = g.n
    if n > max_n:
        raise ResourceGuardError(f"charpoly limited to {max_n} vertices, got {n}")
    c = [0] * (n + 1)
    c[n] = 1
    nbrs = [list(bits(r)) for r in g.rows]
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = [[sum(m[t][j] for t in nbrs[i]) for j in range(n)] for i in range(n)]
        ck = c[n - k + 1]
        m = [[am[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
        tr = sum(m[t][i] for i in range(n) for t in nbrs[i])
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("non-integral trace step in Faddeev-LeVerrier")
        c[n - k] = q
    return IntPoly(tuple(c))


def coalescence(g: Graph, u: int, h: Graph, v: int) -> Graph:
    """Identify vertex u of g with vertex v of h.

    Vertices of g keep their labels; the other vertices of h follow in order.
    """
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} not in first graph")
    if not 0 <= v < h.n:
        raise ValueError(f"vertex {v} not in second graph")
    label = {}
    nxt = g.n
    for w in range(h.n):
        if w == v:
            label[w] = u
        else:
            label[w] = nxt
            nxt += 1
    edges = list(g.edges())
    edges.extend((label[a], label[b]) for a, b in h.edges())
    return Graph.from_edges(g.n + h.n - 1, edges)
