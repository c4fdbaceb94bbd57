"""Undirected simple graphs on vertices 1..n and the set machinery shared by
the rest of the library.

Vertices are 1-indexed integers.  Vertex sets travel as sorted tuples, set
families as lists of such tuples in canonical order (cardinality first, then
lexicographic).  Adjacency is kept as one Python int bitmask per vertex (bit
v-1 stands for vertex v), which covers any n without a word-size split.
The empty set is excluded from every family the library returns.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations


class GraphFormatError(ValueError):
    """Raised on malformed graph text; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VertexRangeError(ValueError):
    """A vertex index fell outside 1..n."""


class ShapeMismatchError(ValueError):
    """Graphs that must share a vertex count do not."""


class CapacityError(ValueError):
    """Input exceeds a guard bound meant to keep brute-force work finite."""


class ContractError(ValueError):
    """A documented precondition was violated by the caller."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph: vertex count plus normalized edges."""

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for e in self.edges:
            u, v = e
            if not (1 <= u < v <= self.n):
                raise GraphFormatError(f"edge {e} invalid for n={self.n}")

    @staticmethod
    def from_edges(n, edge_list):
        norm = set()
        for u, v in edge_list:
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise VertexRangeError(f"edge ({u},{v}) outside 1..{n}")
            norm.add((u, v) if u < v else (v, u))
        return Graph(n, frozenset(norm))

    @property
    def m(self):
        return len(self.edges)

    def has_edge(self, u, v):
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def degree(self, v):
        return bin(adjacency_masks(self)[v - 1]).count("1")

    def neighbors(self, v):
        return set_of_mask(adjacency_masks(self)[v - 1])

    @property
    def vertices(self):
        return tuple(range(1, self.n + 1))


@lru_cache(maxsize=4096)
def adjacency_masks(g):
    """Per-vertex neighbor bitmasks; masks[v-1] has bit u-1 set iff {u,v} edge."""
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u - 1] |= 1 << (v - 1)
        masks[v - 1] |= 1 << (u - 1)
    return tuple(masks)


def mask_of(s):
    m = 0
    for v in s:
        m |= 1 << (v - 1)
    return m


def set_of_mask(m):
    out = []
    v = 1
    while m:
        if m & 1:
            out.append(v)
        m >>= 1
        v += 1
    return tuple(out)


def _check_set(g, s):
    for v in s:
        if not (1 <= v <= g.n):
            raise VertexRangeError(f"vertex {v} outside 1..{g.n}")


def canonical_family(sets):
    """Deduplicate and sort a collection of vertex sets canonically."""
    uniq = {tuple(sorted(s)) for s in sets}
    uniq.discard(())
    return sorted(uniq, key=lambda t: (len(t), t))


def family_equal(f1, f2):
    return canonical_family(f1) == canonical_family(f2)


def complement(g):
    comp = {(u, v) for u, v in combinations(range(1, g.n + 1), 2)} - set(g.edges)
    return Graph(g.n, frozenset(comp))


def is_independent_set(g, s):
    _check_set(g, s)
    m = mask_of(s)
    adj = adjacency_masks(g)
    return all(adj[v - 1] & m == 0 for v in s)


def is_clique(g, s):
    _check_set(g, s)
    m = mask_of(s)
    adj = adjacency_masks(g)
    # every member must see all the others
    return all(adj[v - 1] & m == m & ~(1 << (v - 1)) for v in s)


def neighborhood(g, v, s):
    """N(v,S): members of s adjacent to v."""
    if not (1 <= v <= g.n):
        raise VertexRangeError(f"vertex {v} outside 1..{g.n}")
    _check_set(g, s)
    return set_of_mask(adjacency_masks(g)[v - 1] & mask_of(s))


def non_neighborhood(g, v, s):
    """N̄(v,S) = S - (N(v,S) ∪ {v})."""
    if not (1 <= v <= g.n):
        raise VertexRangeError(f"vertex {v} outside 1..{g.n}")
    _check_set(g, s)
    m = mask_of(s) & ~adjacency_masks(g)[v - 1] & ~(1 << (v - 1))
    return set_of_mask(m)


def _shared_n(gs):
    gs = list(gs)
    if not gs:
        raise ShapeMismatchError("need at least one graph")
    n = gs[0].n
    for g in gs[1:]:
        if g.n != n:
            raise ShapeMismatchError(f"vertex counts differ: {g.n} vs {n}")
    return n, gs


def union_graphs(gs):
    n, gs = _shared_n(gs)
    edges = frozenset().union(*(g.edges for g in gs))
    return Graph(n, edges)


def intersect_graphs(gs):
    n, gs = _shared_n(gs)
    edges = set(gs[0].edges)
    for g in gs[1:]:
        edges &= g.edges
    return Graph(n, frozenset(edges))


def induced_subgraph(g, s):
    """Subgraph on s with vertices relabeled 1..|s| in sorted order."""
    _check_set(g, s)
    verts = sorted(set(s))
    index = {v: i + 1 for i, v in enumerate(verts)}
    edges = {(index[u], index[v]) for u, v in g.edges if u in index and v in index}
    return Graph(len(verts), frozenset(edges))


def parse_graph(text):
    """Parse the text graph format: `p <n> <m>` then m lines `e <u> <v>`, u < v.

    Blank lines and lines starting with '#' are ignored.
    """
    n = None
    m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("header must be `p <n> <m>`", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer header fields", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative header fields", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("edge must be `e <u> <v>`", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer edge endpoints", lineno) from None
            if not (1 <= u < v <= n):
                raise GraphFormatError(
                    f"edge endpoints must satisfy 1 <= u < v <= {n}, got {u} {v}", lineno
                )
            edges.append((u, v))
        else:
            raise GraphFormatError(f"unknown record `{parts[0]}`", lineno)
    if n is None:
        raise GraphFormatError("missing `p <n> <m>` header")
    if m != len(edges):
        raise GraphFormatError(f"header promises {m} edges, found {len(edges)}")
    if len(set(edges)) != len(edges):
        raise GraphFormatError("duplicate edge lines")
    return Graph(n, frozenset(edges))


def format_graph(g):
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def maximal_cliques(g):
    """All maximal cliques, canonical order (Bron-Kerbosch with pivoting)."""
    adj = adjacency_masks(g)
    full = (1 << g.n) - 1
    out = []

    def expand(r, p, x):
        if p == 0 and x == 0:
            out.append(r)
            return
        # pivot: vertex of p|x with most neighbors inside p
        pux = p | x
        best, best_cnt = -1, -1
        m = pux
        while m:
            low = m & -m
            v = low.bit_length() - 1
            cnt = bin(adj[v] & p).count("1")
            if cnt > best_cnt:
                best, best_cnt = v, cnt
            m ^= low
        cand = p & ~adj[best]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & adj[v], x & adj[v])
            p ^= low
            x |= low
            cand ^= low

    if g.n:
        expand(0, full, 0)
    return canonical_family(set_of_mask(m) for m in out)


def clique_number(g):
    """Exact ω(g); 0 for the empty graph."""
    if g.n == 0:
        return 0
    return max(len(c) for c in maximal_cliques(g))
