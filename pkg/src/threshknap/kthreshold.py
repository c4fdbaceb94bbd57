"""Graphs covered by (or intersected from) several threshold graphs.

A cover holds k creation sequences over one vertex set.  Union semantics
give the k-threshold enumerators (independent sets); intersection semantics
give maximal cliques.  Families from members are combined by intersecting
every tuple of the Cartesian product, realized as bitmask AND.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .graphs import (
    CapacityError,
    ContractError,
    GraphFormatError,
    adjacency_masks,
    canonical_family,
    intersect_graphs,
    mask_of,
    parse_graph,
    set_of_mask,
    union_graphs,
)
from .threshold import (
    RecognitionFailure,
    complement_sequence,
    creation_sequence_to_graph,
    enumerate_is,
    enumerate_mis,
    parse_sequence,
    recognize_threshold,
    serialize_sequence,
    split_partition,
)


class CoverFormatError(ValueError):
    """Malformed cover text."""


@dataclass(frozen=True)
class ThresholdCover:
    members: tuple

    def __post_init__(self):
        if not self.members:
            raise ContractError("a cover needs at least one member")
        n0 = self.members[0].n
        if any(cs.n != n0 for cs in self.members):
            raise ContractError("cover members must share the vertex count")

    @property
    def k(self):
        return len(self.members)

    @property
    def n(self):
        return self.members[0].n

    @cached_property
    def member_graphs(self):
        return tuple(creation_sequence_to_graph(cs) for cs in self.members)

    @cached_property
    def covered(self):
        return union_graphs(self.member_graphs)

    @cached_property
    def intersected(self):
        return intersect_graphs(self.member_graphs)


def cover_from_sequences(seqs):
    return ThresholdCover(tuple(seqs))


def cover_from_graphs(graphs):
    members = []
    for i, g in enumerate(graphs, start=1):
        got = recognize_threshold(g)
        if isinstance(got, RecognitionFailure):
            raise ValueError(f"cover member {i} is not a threshold graph")
        members.append(got)
    return ThresholdCover(tuple(members))


def parse_cover(text):
    """`k <k>` then k blocks, each either a creation sequence (bits line plus
    optional `v` line) or a graph in the text format, recognized on load."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            lines.append((lineno, s))
    if not lines:
        raise CoverFormatError("empty cover text")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "k":
        raise CoverFormatError(f"line {lineno}: expected `k <count>`, got {head!r}")
    try:
        k = int(parts[1])
    except ValueError:
        raise CoverFormatError(f"line {lineno}: non-integer member count") from None
    if k < 1:
        raise CoverFormatError(f"line {lineno}: member count must be >= 1")
    pos = 1
    members = []
    for i in range(1, k + 1):
        if pos >= len(lines):
            raise CoverFormatError(f"cover ends before member {i}")
        lineno, first = lines[pos]
        if first.split()[0] == "p":
            try:
                m_edges = int(first.split()[2])
            except (IndexError, ValueError):
                raise CoverFormatError(
                    f"line {lineno}: bad graph header in member {i}"
                ) from None
            block = [first] + [s for _, s in lines[pos + 1 : pos + 1 + m_edges]]
            pos += 1 + m_edges
            try:
                g = parse_graph("\n".join(block))
            except GraphFormatError as e:
                raise CoverFormatError(f"member {i}: {e}") from None
            got = recognize_threshold(g)
            if isinstance(got, RecognitionFailure):
                raise CoverFormatError(f"member {i} is not a threshold graph")
            members.append(got)
        else:
            block = [first]
            pos += 1
            if pos < len(lines) and lines[pos][1].split()[0] == "v":
                block.append(lines[pos][1])
                pos += 1
            try:
                members.append(parse_sequence("\n".join(block)))
            except ValueError as e:
                raise CoverFormatError(f"member {i}: {e}") from None
    if pos != len(lines):
        raise CoverFormatError(f"line {lines[pos][0]}: trailing content after member {k}")
    try:
        return ThresholdCover(tuple(members))
    except ContractError as e:
        raise CoverFormatError(str(e)) from None


def format_cover(cover):
    out = [f"k {cover.k}\n"]
    for cs in cover.members:
        out.append(serialize_sequence(cs))
    return "".join(out)


# ---------------------------------------------------------------------------
# union-semantics enumerators


def _member_mis_masks(cover):
    return [
        [mask_of(s) for s in enumerate_mis(cs)] for cs in cover.members
    ]


def _intersections(families):
    seen = set()
    for tup in product(*families):
        m = tup[0]
        for x in tup[1:]:
            m &= x
        seen.add(m)
    seen.discard(0)
    return seen


def _drop_subsets(masks):
    order = sorted(masks, key=lambda m: -bin(m).count("1"))
    kept = []
    for m in order:
        if not any(m & ~big == 0 for big in kept):
            kept.append(m)
    return kept


def enumerate_mis_k(cover):
    """Maximal independent sets of the union: intersect every tuple of
    per-member maximal sets, then discard subsets of other results."""
    inters = _intersections(_member_mis_masks(cover))
    return canonical_family(set_of_mask(m) for m in _drop_subsets(inters))


def enumerate_im_k(cover):
    """Maximum independent sets: the largest of the tuple intersections."""
    inters = _intersections(_member_mis_masks(cover))
    if not inters:
        return []
    best = max(bin(m).count("1") for m in inters)
    return canonical_family(
        set_of_mask(m) for m in inters if bin(m).count("1") == best
    )


def alpha_k(cover):
    inters = _intersections(_member_mis_masks(cover))
    if not inters:
        return 0
    return max(bin(m).count("1") for m in inters)


def enumerate_is_k(cover):
    """All nonempty independent sets of the union: the first member's sets,
    filtered by independence in every other member."""
    if cover.n > 20:
        raise CapacityError(
            f"independent-set enumeration guarded at n <= 20, got {cover.n}"
        )
    base = [mask_of(s) for s in enumerate_is(cover.members[0])]
    others = [adjacency_masks(g) for g in cover.member_graphs[1:]]
    out = []
    for m in base:
        good = True
        for adj in others:
            mm = m
            while mm:
                low = mm & -mm
                if adj[low.bit_length() - 1] & m:
                    good = False
                    break
                mm ^= low
            if not good:
                break
        if good:
            out.append(m)
    return canonical_family(set_of_mask(m) for m in out)


def count_is_k(cover):
    return len(enumerate_is_k(cover))


# ---------------------------------------------------------------------------
# intersection-semantics enumerators


def enumerate_mc_intersection(cover):
    """Maximal cliques of the intersection of the members, via maximal
    independent sets of the complements."""
    fams = [
        [mask_of(s) for s in enumerate_mis(complement_sequence(cs))]
        for cs in cover.members
    ]
    inters = _intersections(fams)
    return canonical_family(set_of_mask(m) for m in _drop_subsets(inters))


def omega_intersection(cover):
    fam = enumerate_mc_intersection(cover)
    return max((len(s) for s in fam), default=0)


# ---------------------------------------------------------------------------
# the specialized 2-member algorithm


@dataclass(frozen=True)
class TwoThresholdPartition:
    """Vertex classes from clique-max split partitions (K1,S1), (K2,S2) of
    the two members: K = K1∩K2, S = S1∩S2, A = K1∩S2, B = S1∩K2."""

    K: tuple
    S: tuple
    A: tuple
    B: tuple


def two_threshold_partition(cover):
    if cover.k != 2:
        raise ContractError(f"two-member cover required, got k = {cover.k}")
    p1 = split_partition(cover.members[0], "clique-max")
    p2 = split_partition(cover.members[1], "clique-max")
    k1, s1 = mask_of(p1.K), mask_of(p1.S)
    k2, s2 = mask_of(p2.K), mask_of(p2.S)
    part = TwoThresholdPartition(
        set_of_mask(k1 & k2),
        set_of_mask(s1 & s2),
        set_of_mask(k1 & s2),
        set_of_mask(s1 & k2),
    )
    adj = adjacency_masks(cover.covered)
    for grp in (part.K, part.A, part.B):
        gm = mask_of(grp)
        for v in grp:
            assert (adj[v - 1] & gm) == gm & ~(1 << (v - 1))
    sm = mask_of(part.S)
    for v in part.S:
        assert not (adj[v - 1] & sm)
    return part


def enumerate_mis_2t(cover):
    """Maximal independent sets of a 2-member cover via the four-class
    partition: emit candidate sets per class pattern (S alone; S plus one
    vertex without S-neighbors; S plus a nonadjacent A/B pair; shrunken
    variants through common non-neighborhoods), then keep the ones that
    survive independence and maximality checks.  Agrees with
    enumerate_mis_k; the candidate cases are cheaper than the product when
    ω is large."""
    part = two_threshold_partition(cover)
    adj = adjacency_masks(cover.covered)
    S = mask_of(part.S)
    full = (1 << cover.n) - 1

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length()
            mask ^= low

    def nbar(v):
        return S & ~adj[v - 1]

    Km, Am, Bm = mask_of(part.K), mask_of(part.A), mask_of(part.B)
    Kp = 0
    for v in bits(Km):
        if not (adj[v - 1] & S):
            Kp |= 1 << (v - 1)
    Ap = 0
    for v in bits(Am):
        if not (adj[v - 1] & S):
            Ap |= 1 << (v - 1)
    Bp = 0
    for v in bits(Bm):
        if not (adj[v - 1] & S):
            Bp |= 1 << (v - 1)

    emit = set()
    # sets avoiding all of K, A, B
    if not Kp and not Ap and not Bp:
        emit.add(S)
    # one vertex with no S-neighbor
    for v in bits(Kp):
        emit.add(S | 1 << (v - 1))
    if (not Ap) != (not Bp):
        for v in bits(Ap | Bp):
            emit.add(S | 1 << (v - 1))
    if Ap and Bp:
        for v1 in bits(Ap):
            b1 = 1 << (v1 - 1)
            if not (Bp & ~adj[v1 - 1]):  # adjacent to all of B'
                emit.add(S | b1)
            for v2 in bits(Bp & ~adj[v1 - 1]):
                emit.add(S | b1 | 1 << (v2 - 1))
        for v2 in bits(Bp):
            if not (Ap & ~adj[v2 - 1]):
                emit.add(S | 1 << (v2 - 1))
    # one vertex with S-neighbors, keeping its non-neighbors in S
    for v in bits(Km & ~Kp):
        emit.add(nbar(v) | 1 << (v - 1))
    An, Bn = Am & ~Ap, Bm & ~Bp
    if (not An) != (not Bn):
        for v in bits(An | Bn):
            emit.add(nbar(v) | 1 << (v - 1))
    # nonadjacent cross pairs where at least one side has S-neighbors
    for P, Q in ((An, Bn), (Ap, Bn), (An, Bp)):
        if P and Q:
            for v1 in bits(P):
                b1 = 1 << (v1 - 1)
                for v2 in bits(Q & ~adj[v1 - 1]):
                    emit.add((nbar(v1) & nbar(v2)) | b1 | 1 << (v2 - 1))
    # lone A-side (resp. B-side) vertex whose set no B-side vertex can join
    if An and Bn:
        for v1 in bits(An):
            ns1 = adj[v1 - 1] & S
            alone = True
            for v2 in bits(Bn & ~adj[v1 - 1]):
                if not ((adj[v2 - 1] & S) & ~ns1):
                    alone = False
                    break
            if alone:
                emit.add(nbar(v1) | 1 << (v1 - 1))
        for v2 in bits(Bn):
            ns2 = adj[v2 - 1] & S
            alone = True
            for v1 in bits(An & ~adj[v2 - 1]):
                if not ((adj[v1 - 1] & S) & ~ns2):
                    alone = False
                    break
            if alone:
                emit.add(nbar(v2) | 1 << (v2 - 1))

    kept = []
    for m in emit:
        if not m:
            continue
        ok = True
        for v in bits(m):
            if adj[v - 1] & m:
                ok = False
                break
        if not ok:
            continue
        rest = full & ~m
        for v in bits(rest):
            if not (adj[v - 1] & m):
                ok = False
                break
        if ok:
            kept.append(m)
    return canonical_family(set_of_mask(m) for m in kept)
