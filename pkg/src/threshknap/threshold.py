"""Threshold graphs: recognition by degree peeling, creation sequences, the
linear counting/enumeration algorithms, split partitions, and the export of an
equivalent knapsack instance.

A creation sequence is a bit string t_1..t_n with t_1 = 1 plus a position ->
vertex map v(i).  The graph it builds has an edge {v(i), v(j)} for i < j
exactly when t_j = 1: a 1-bit vertex arrives dominating everything before it,
a 0-bit vertex arrives isolated.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import (
    CapacityError,
    Graph,
    adjacency_masks,
    canonical_family,
    set_of_mask,
)


class SequenceFormatError(ValueError):
    """Malformed creation-sequence text or bit string."""


@dataclass(frozen=True)
class CreationSequence:
    bits: str
    vmap: tuple

    def __post_init__(self):
        if not self.bits:
            raise SequenceFormatError("empty bit string")
        if any(b not in "01" for b in self.bits):
            raise SequenceFormatError(f"bits must be 0/1, got {self.bits!r}")
        if self.bits[0] != "1":
            raise SequenceFormatError("t1 must be 1")
        n = len(self.bits)
        if sorted(self.vmap) != list(range(1, n + 1)):
            raise SequenceFormatError("vmap must be a permutation of 1..n")

    @property
    def n(self):
        return len(self.bits)

    def vertex(self, i):
        """v(i) for a 1-based position i."""
        return self.vmap[i - 1]


def sequence_from_bits(bits, vmap=None):
    """CreationSequence with an identity vertex map unless one is given."""
    if vmap is None:
        vmap = tuple(range(1, len(bits) + 1))
    return CreationSequence(bits, tuple(vmap))


@dataclass(frozen=True)
class RecognitionFailure:
    """Negative recognition result; witness is a forbidden induced subgraph."""

    witness: tuple = None
    tag: str = None  # '2K2' | 'P4' | 'C4'


@dataclass(frozen=True)
class SplitPartition:
    K: tuple
    S: tuple


def creation_sequence_to_graph(cs):
    edges = []
    for j in range(2, cs.n + 1):
        if cs.bits[j - 1] == "1":
            vj = cs.vertex(j)
            for i in range(1, j):
                vi = cs.vertex(i)
                edges.append((vi, vj) if vi < vj else (vj, vi))
    return Graph(cs.n, frozenset(edges))


def _forbidden_witness(g):
    """Search 4-subsets for an induced 2K2, P4, or C4.  O(n^4), opt-in."""
    adj = adjacency_masks(g)
    for quad in combinations(range(1, g.n + 1), 4):
        qm = 0
        for v in quad:
            qm |= 1 << (v - 1)
        degs = sorted(bin(adj[v - 1] & qm).count("1") for v in quad)
        ecount = sum(degs) // 2
        if ecount == 2 and degs == [1, 1, 1, 1]:
            return quad, "2K2"
        if ecount == 3 and degs == [1, 1, 2, 2]:
            return quad, "P4"
        if ecount == 4 and degs == [2, 2, 2, 2]:
            return quad, "C4"
    return None, None


def recognize_threshold(g, want_witness=False):
    """Reverse peeling: repeatedly drop an isolated (bit 0) or dominating
    (bit 1) vertex; the reversed record is the creation sequence.

    Returns a CreationSequence whose graph equals g, or a RecognitionFailure.
    The witness search behind want_witness costs O(n^4).
    """
    if g.n == 0:
        raise ValueError("the empty graph has no creation sequence")
    adj = list(adjacency_masks(g))
    remaining = (1 << g.n) - 1
    order = []
    rec_bits = []
    for step in range(g.n):
        size = g.n - step
        pick = None
        bit = None
        if size == 1:
            pick = remaining.bit_length()  # the single remaining vertex
            bit = "1"
        else:
            m = remaining
            # smallest-index isolated vertex, else smallest-index dominating
            dominating = None
            while m:
                low = m & -m
                v = low.bit_length()
                deg = bin(adj[v - 1] & remaining).count("1")
                if deg == 0:
                    pick = v
                    bit = "0"
                    break
                if deg == size - 1 and dominating is None:
                    dominating = v
                m ^= low
            if pick is None and dominating is not None:
                pick = dominating
                bit = "1"
        if pick is None:
            if want_witness:
                quad, tag = _forbidden_witness(g)
                return RecognitionFailure(quad, tag)
            return RecognitionFailure()
        order.append(pick)
        rec_bits.append(bit)
        remaining &= ~(1 << (pick - 1))
    bits = "".join(reversed(rec_bits))
    vmap = tuple(reversed(order))
    return CreationSequence(bits, vmap)


def complement_sequence(cs):
    """Sequence of the complement graph: flip every bit after the first.

    The first bit never affects the built graph, so it is pinned back to 1 to
    keep the t_1 = 1 convention.
    """
    flipped = "".join("1" if b == "0" else "0" for b in cs.bits[1:])
    return CreationSequence("1" + flipped, cs.vmap)


def split_partition(cs, mode="clique-max"):
    """(K,S) split partition: 0-positions to S, later 1-positions to K; the
    founding vertex v(1) goes to K (|K| = ω) or to S (|S| = α) by mode."""
    if mode not in ("clique-max", "independent-max"):
        raise ValueError(f"unknown mode {mode!r}")
    K = [cs.vertex(i) for i in range(2, cs.n + 1) if cs.bits[i - 1] == "1"]
    S = [cs.vertex(i) for i in range(2, cs.n + 1) if cs.bits[i - 1] == "0"]
    if mode == "clique-max":
        K.append(cs.vertex(1))
    else:
        S.append(cs.vertex(1))
    return SplitPartition(tuple(sorted(K)), tuple(sorted(S)))


def alpha_omega(cs):
    """(α, ω): 1 + zero-bit count, one-bit count."""
    ones = cs.bits.count("1")
    return (cs.n - ones + 1, ones)


def enumerate_mis(cs):
    """All maximal independent sets: scan positions n..1, accumulate 0-bit
    vertices, emit the accumulator plus v(i) at every 1-bit."""
    acc = []
    fam = []
    for i in range(cs.n, 0, -1):
        v = cs.vertex(i)
        if cs.bits[i - 1] == "0":
            acc.append(v)
        else:
            fam.append(tuple(sorted(acc + [v])))
    return canonical_family(fam)


def count_mis(cs):
    return cs.bits.count("1")


def _first_zero_position(cs):
    j = cs.bits.find("0")
    return cs.n + 1 if j < 0 else j + 1


def enumerate_im(cs):
    """All maximum independent sets: all 0-bit vertices plus one leading
    1-bit vertex each."""
    j = _first_zero_position(cs)
    zeros = [cs.vertex(i) for i in range(1, cs.n + 1) if cs.bits[i - 1] == "0"]
    fam = [tuple(sorted(zeros + [cs.vertex(i)])) for i in range(1, j)]
    return canonical_family(fam)


def count_im(cs):
    return _first_zero_position(cs) - 1


def count_is(cs):
    """Number of nonempty independent sets: +1 per 1-bit, double-plus-one per
    0-bit, scanning left to right from the single-vertex base."""
    total = 1
    for b in cs.bits[1:]:
        total = total + 1 if b == "1" else 2 * total + 1
    return total


def enumerate_is(cs):
    """All nonempty independent sets; guarded, the family is exponential."""
    if cs.n > 24:
        raise CapacityError(f"independent-set enumeration guarded at n <= 24, got {cs.n}")
    fam = [1 << (cs.vertex(1) - 1)]
    for i in range(2, cs.n + 1):
        vbit = 1 << (cs.vertex(i) - 1)
        if cs.bits[i - 1] == "1":
            fam.append(vbit)
        else:
            fam.extend([m | vbit for m in fam])
            fam.append(vbit)
    return canonical_family(set_of_mask(m) for m in fam)


def enumerate_max_cliques(cs):
    """Maximal cliques, via maximal independent sets of the complement."""
    return enumerate_mis(complement_sequence(cs))


def count_mc(cs):
    """Number of maximal cliques = α."""
    return alpha_omega(cs)[0]


def threshold_to_kp(cs, profits=None):
    """Equivalent knapsack instance: item i per position i; a 0-bit doubles
    all earlier sizes and the capacity (c -> 2c+1) then takes size 1, a 1-bit
    takes the current capacity.  Sizes are exact integers and grow as big
    integers.  Unit profits unless a vector is given."""
    from fractions import Fraction

    from .knapsack import KpInstance, KpItem

    sizes = [1]
    c = 1
    for i in range(2, cs.n + 1):
        if cs.bits[i - 1] == "0":
            sizes = [2 * s for s in sizes]
            c = 2 * c + 1
            sizes.append(1)
        else:
            sizes.append(c)
    if profits is None:
        profits = [1] * cs.n
    if len(profits) != cs.n:
        raise ValueError("profit vector length must match the sequence length")
    # position i describes vertex v(i); emit items in vertex order, item a_v
    # matching vertex v of the built graph, profits[v-1] attached to a_v
    size_of = {cs.vertex(i): sizes[i - 1] for i in range(1, cs.n + 1)}
    items = tuple(
        KpItem(f"a{v}", Fraction(profits[v - 1]), Fraction(size_of[v]))
        for v in range(1, cs.n + 1)
    )
    return KpInstance(items, Fraction(c))


def serialize_sequence(cs):
    return cs.bits + "\n" + "v " + " ".join(str(v) for v in cs.vmap) + "\n"


def parse_sequence(text):
    """Parse `<bits>` plus an optional `v <v(1)> ...` map line."""
    bits = None
    vmap = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v":
            if bits is None:
                raise SequenceFormatError(f"line {lineno}: map line before bits")
            if vmap is not None:
                raise SequenceFormatError(f"line {lineno}: duplicate map line")
            try:
                vmap = tuple(int(p) for p in parts[1:])
            except ValueError:
                raise SequenceFormatError(f"line {lineno}: non-integer map entry") from None
        elif bits is None:
            bits = line
        else:
            raise SequenceFormatError(f"line {lineno}: unexpected extra line {line!r}")
    if bits is None:
        raise SequenceFormatError("no bit string found")
    return sequence_from_bits(bits, vmap)
