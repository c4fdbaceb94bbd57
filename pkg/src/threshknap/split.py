"""Split graphs: recognition via the degree-sequence splittance test,
partition normalization along the classic trichotomy, and maximal
independent set enumeration driven by the clique side.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import (
    ContractError,
    adjacency_masks,
    canonical_family,
    mask_of,
    set_of_mask,
)
from .threshold import RecognitionFailure, SplitPartition


@dataclass(frozen=True)
class NormalizedPartition:
    partition: SplitPartition
    case: int  # 1 unique, 2 a vertex moved from S into K, 3 K has a loner
    moved: int | None


def _split_witness(g):
    """Induced 2K2 or C4 on a 4-subset, else C5 on a 5-subset.  Opt-in."""
    adj = adjacency_masks(g)
    for quad in combinations(range(1, g.n + 1), 4):
        qm = 0
        for v in quad:
            qm |= 1 << (v - 1)
        degs = sorted(bin(adj[v - 1] & qm).count("1") for v in quad)
        ecount = sum(degs) // 2
        if ecount == 2 and degs == [1, 1, 1, 1]:
            return quad, "2K2"
        if ecount == 4 and degs == [2, 2, 2, 2]:
            return quad, "C4"
    for five in combinations(range(1, g.n + 1), 5):
        fm = 0
        for v in five:
            fm |= 1 << (v - 1)
        degs = [bin(adj[v - 1] & fm).count("1") for v in five]
        # five vertices, five edges, all degree 2: the only option is C5
        if sum(degs) == 10 and all(d == 2 for d in degs):
            return five, "C5"
    return None, None


def recognize_split(g, want_witness=False):
    """Split iff the splittance of the degree sequence is zero: with degrees
    d_1 >= ... >= d_n and m = max{i : d_i >= i-1}, the graph splits exactly
    when sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i.  The top-m vertices then
    form the clique side."""
    degs = sorted(
        ((g.degree(v), -v) for v in g.vertices), reverse=True
    )  # ties: smaller vertex index first
    m = 0
    for i, (d, _negv) in enumerate(degs, start=1):
        if d >= i - 1:
            m = i
    top = sum(d for d, _ in degs[:m])
    rest = sum(d for d, _ in degs[m:])
    if top != m * (m - 1) + rest:
        if want_witness:
            sub, tag = _split_witness(g)
            return RecognitionFailure(sub, tag)
        return RecognitionFailure()
    K = tuple(sorted(-negv for _, negv in degs[:m]))
    S = tuple(sorted(-negv for _, negv in degs[m:]))
    p = SplitPartition(K, S)
    _validate_partition(g, p)  # the criterion guarantees this; keep the guard
    return p


def _validate_partition(g, p):
    km = mask_of(p.K)
    sm = mask_of(p.S)
    if km & sm or (km | sm) != (1 << g.n) - 1:
        raise ContractError("K and S must partition the vertex set")
    adj = adjacency_masks(g)
    for v in p.K:
        if (adj[v - 1] & km) != km & ~(1 << (v - 1)):
            raise ContractError(f"K is not a clique: vertex {v}")
    for v in p.S:
        if adj[v - 1] & sm:
            raise ContractError(f"S is not independent: vertex {v}")


def normalize_partition(g, p):
    """Classify a valid split partition and return one with |K| = ω(G).

    Exactly one of three situations holds: some vertex of S is adjacent to
    all of K (case 2; the smallest such vertex is moved into K), some vertex
    of K has no neighbor in S (case 3; nothing moves), or neither (case 1,
    the partition is the unique one).  Moving in case 2 cannot create a new
    movable vertex, since K was one short of a maximum clique.
    """
    _validate_partition(g, p)
    adj = adjacency_masks(g)
    km = mask_of(p.K)
    movable = [x for x in p.S if (adj[x - 1] & km) == km]
    if movable:
        x = min(movable)
        newp = SplitPartition(
            tuple(sorted(p.K + (x,))), tuple(v for v in p.S if v != x)
        )
        return NormalizedPartition(newp, 2, x)
    sm = mask_of(p.S)
    loners = [y for y in p.K if not (adj[y - 1] & sm)]
    if loners:
        return NormalizedPartition(p, 3, None)
    return NormalizedPartition(p, 1, None)


def _require_normalized(g, p):
    _validate_partition(g, p)
    adj = adjacency_masks(g)
    km = mask_of(p.K)
    for x in p.S:
        if (adj[x - 1] & km) == km:
            raise ContractError(
                f"partition not normalized: vertex {x} of S is adjacent to all of K"
            )


def enumerate_mis_split(g, p):
    """Maximal independent sets of a split graph from a normalized partition:
    loners of K (no S-neighbor) each extend S; every other clique vertex v
    contributes its non-neighbors in S plus v; S itself appears only when K
    has no loner.  Emissions are guarded for maximality and deduplicated."""
    _require_normalized(g, p)
    adj = adjacency_masks(g)
    sm = mask_of(p.S)
    full = (1 << g.n) - 1
    loners = [v for v in p.K if not (adj[v - 1] & sm)]
    out = []
    if not loners:
        out.append(sm)  # empty masks are filtered below, so n=0 stays empty
    for v in p.K:
        vb = 1 << (v - 1)
        if not (adj[v - 1] & sm):
            out.append(sm | vb)
        else:
            out.append((sm & ~adj[v - 1]) | vb)
    kept = []
    for m in out:
        if not m:
            continue
        rest = full & ~m
        maximal = True
        while rest:
            low = rest & -rest
            if not (adj[low.bit_length() - 1] & m):
                maximal = False
                break
            rest ^= low
        if maximal:
            kept.append(m)
    return canonical_family(set_of_mask(m) for m in kept)


def count_mis_split(g, p):
    """|K| when some clique vertex misses S entirely, else |K| + 1."""
    _require_normalized(g, p)
    if g.n == 0:
        return 0
    adj = adjacency_masks(g)
    sm = mask_of(p.S)
    loners = any(not (adj[v - 1] & sm) for v in p.K)
    return len(p.K) + (0 if loners else 1)
