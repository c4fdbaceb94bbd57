"""Brute-force reference implementations used by the test suite.

Everything here is written for obviousness over speed: subset tables indexed
by bitmask, permutation scans, submask partition dynamic programs.  Each entry
point guards its input size with CapacityError instead of silently taking
forever.  Nothing in the library proper depends on this module.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import lcm

from .graphs import (
    CapacityError,
    adjacency_masks,
    canonical_family,
    complement,
    set_of_mask,
)


def _guard(n, limit, what):
    if n > limit:
        raise CapacityError(f"{what} guarded at n <= {limit}, got n = {n}")


def independence_table(g):
    """bytearray over all 2^n vertex masks; 1 where the mask is independent."""
    _guard(g.n, 24, "subset table")
    adjm = adjacency_masks(g)
    tab = bytearray(1 << g.n)
    tab[0] = 1
    for m in range(1, 1 << g.n):
        low = m & -m
        rest = m ^ low
        tab[m] = tab[rest] and not (adjm[low.bit_length() - 1] & rest)
    return tab


def brute_independent_sets(g):
    tab = independence_table(g)
    return canonical_family(
        set_of_mask(m) for m in range(1, 1 << g.n) if tab[m]
    )


def _maximal_independent_masks(g):
    tab = independence_table(g)
    adjm = adjacency_masks(g)
    full = (1 << g.n) - 1
    out = []
    for m in range(1, 1 << g.n):
        if not tab[m]:
            continue
        rest = full & ~m
        ok = True
        while rest:
            low = rest & -rest
            if not (adjm[low.bit_length() - 1] & m):
                ok = False
                break
            rest ^= low
        if ok:
            out.append(m)
    return out


def brute_maximal_independent_sets(g):
    return canonical_family(set_of_mask(m) for m in _maximal_independent_masks(g))


def brute_alpha(g):
    tab = independence_table(g)
    return max((bin(m).count("1") for m in range(1 << g.n) if tab[m]), default=0)


def brute_maximum_independent_sets(g):
    tab = independence_table(g)
    a = brute_alpha(g)
    if a == 0:
        return []
    return canonical_family(
        set_of_mask(m)
        for m in range(1, 1 << g.n)
        if tab[m] and bin(m).count("1") == a
    )


def brute_omega(g):
    return brute_alpha(complement(g))


def brute_maximal_cliques(g):
    return brute_maximal_independent_sets(complement(g))


def brute_count_independent_sets(g):
    """Number of nonempty independent sets, by branching on a max-degree
    vertex with memoization on the remaining-vertex mask.  Handles larger n
    than the subset table when the graph is dense."""
    _guard(g.n, 30, "independent-set counting")
    adjm = adjacency_masks(g)
    memo = {0: 0}

    def count(rem):
        got = memo.get(rem)
        if got is not None:
            return got
        best_v = -1
        best_deg = -1
        m = rem
        while m:
            low = m & -m
            v = low.bit_length() - 1
            deg = bin(adjm[v] & rem).count("1")
            if deg > best_deg:
                best_deg = deg
                best_v = v
            m ^= low
        without = count(rem & ~(1 << best_v))
        closed = rem & ~(adjm[best_v] | (1 << best_v))
        total = without + count(closed) + 1
        memo[rem] = total
        return total

    return count((1 << g.n) - 1)


def brute_is_isomorphic(g1, g2):
    _guard(max(g1.n, g2.n), 8, "isomorphism scan")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degree(v) for v in g1.vertices) != sorted(
        g2.degree(v) for v in g2.vertices
    ):
        return False
    e2 = g2.edges
    for perm in permutations(range(1, g1.n + 1)):
        mapped = set()
        for (u, v) in g1.edges:
            a, b = perm[u - 1], perm[v - 1]
            mapped.add((a, b) if a < b else (b, a))
        if mapped == e2:
            return True
    return False


# ---------------------------------------------------------------------------
# knapsack-side oracles.  Instances are consumed structurally (items with
# .id/.profit and .size or .sizes, capacity or capacities) so this module
# never imports the library's types.


def _int_sizes(sizes, capacity):
    """Scale rationals by the lcm of denominators; exact, and keeps the mask
    DPs on machine ints."""
    fracs = [Fraction(s) for s in sizes]
    cf = Fraction(capacity)
    mult = lcm(cf.denominator, *(f.denominator for f in fracs)) if fracs else cf.denominator
    return [int(f * mult) for f in fracs], int(cf * mult)


def _pair_conflict_masks(sizes, capacity):
    """bad[j] = mask of j' with s_j + s_j' > capacity (strict)."""
    n = len(sizes)
    bad = [0] * n
    for j in range(n):
        for k in range(j + 1, n):
            if sizes[j] + sizes[k] > capacity:
                bad[j] |= 1 << k
                bad[k] |= 1 << j
    return bad


def brute_check_property_p(instance):
    """Does pairwise compatibility force feasibility for every subset?

    Returns (True, None) or (False, witness) where witness is a tuple of item
    ids whose members are pairwise compatible yet jointly oversized.  A
    single item larger than the capacity is already a witness.
    """
    items = instance.items
    n = len(items)
    _guard(n, 24, "property check")
    sizes, cap = _int_sizes((it.size for it in items), instance.capacity)
    bad = _pair_conflict_masks(sizes, cap)
    ok = bytearray(1 << n)
    total = [0] * (1 << n)
    ok[0] = 1
    for m in range(1, 1 << n):
        low = m & -m
        j = low.bit_length() - 1
        rest = m ^ low
        ok[m] = ok[rest] and not (bad[j] & rest)
        total[m] = total[rest] + sizes[j]
        if ok[m] and total[m] > cap:
            ids = tuple(items[i].id for i in range(n) if m >> i & 1)
            return False, ids
    return True, None


def brute_check_property_pd(instance):
    """Multi-dimensional analogue: pairwise compatibility in every dimension
    versus joint feasibility in every dimension."""
    items = instance.items
    n = len(items)
    _guard(n, 24, "property check")
    d = len(instance.capacities)
    dims = []
    for i in range(d):
        sizes, cap = _int_sizes((it.sizes[i] for it in items), instance.capacities[i])
        dims.append((sizes, cap))
    bad = [0] * n
    for sizes, cap in dims:
        for j, mask in enumerate(_pair_conflict_masks(sizes, cap)):
            bad[j] |= mask
    ok = bytearray(1 << n)
    ok[0] = 1
    totals = [[0] * (1 << n) for _ in range(d)]
    for m in range(1, 1 << n):
        low = m & -m
        j = low.bit_length() - 1
        rest = m ^ low
        ok[m] = ok[rest] and not (bad[j] & rest)
        for i in range(d):
            totals[i][m] = totals[i][rest] + dims[i][0][j]
        if ok[m] and any(totals[i][m] > dims[i][1] for i in range(d)):
            ids = tuple(items[i].id for i in range(n) if m >> i & 1)
            return False, ids
    return True, None


def _best_subset(items, feasible):
    """Max-profit subset among masks accepted by `feasible`, ties broken by
    fewer items then lexicographically smaller index tuple.  The empty set is
    always in the running."""
    n = len(items)
    best_mask = 0
    best_profit = Fraction(0)
    best_key = (0, ())
    for m in range(1, 1 << n):
        if not feasible(m):
            continue
        profit = sum((items[i].profit for i in range(n) if m >> i & 1), Fraction(0))
        idx = tuple(i for i in range(n) if m >> i & 1)
        key = (len(idx), idx)
        if profit > best_profit or (profit == best_profit and key < best_key):
            best_mask = m
            best_profit = profit
            best_key = key
    return best_profit, tuple(items[i].id for i in range(n) if best_mask >> i & 1)


def brute_solve_kp(instance):
    items = instance.items
    n = len(items)
    _guard(n, 20, "knapsack scan")
    sizes, cap = _int_sizes((it.size for it in items), instance.capacity)
    total = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        total[m] = total[m ^ low] + sizes[low.bit_length() - 1]
    return _best_subset(items, lambda m: total[m] <= cap)


def brute_solve_dkp(instance):
    items = instance.items
    n = len(items)
    _guard(n, 20, "knapsack scan")
    d = len(instance.capacities)
    dims = []
    for i in range(d):
        sizes, cap = _int_sizes((it.sizes[i] for it in items), instance.capacities[i])
        total = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            total[m] = total[m ^ low] + sizes[low.bit_length() - 1]
        dims.append((total, cap))
    return _best_subset(items, lambda m: all(t[m] <= c for t, c in dims))


# ---------------------------------------------------------------------------
# packing oracles


def _min_bins(n, group_feasible):
    """Partition-into-feasible-groups minimum via submask DP; the lowest
    remaining item is pinned into the group to kill symmetry."""
    INF = n + 1
    dp = [INF] * (1 << n)
    dp[0] = 0
    for m in range(1, 1 << n):
        low = m & -m
        sub = m
        best = INF
        while sub:
            if sub & low and group_feasible(sub):
                cand = dp[m ^ sub]
                if cand + 1 < best:
                    best = cand + 1
            sub = (sub - 1) & m
        dp[m] = best
    return dp[(1 << n) - 1]


def brute_bin_packing_opt(sizes, capacity):
    """Minimum number of capacity-bounded bins covering every item."""
    n = len(sizes)
    _guard(n, 10, "bin packing")
    isz, cap = _int_sizes(sizes, capacity)
    if any(s > cap for s in isz):
        raise ValueError("item larger than the bin capacity")
    total = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        total[m] = total[m ^ low] + isz[low.bit_length() - 1]
    return _min_bins(n, lambda m: total[m] <= cap)


def brute_vector_packing_opt(size_vectors, capacities):
    """Minimum bins when a group fits iff its sum fits in every dimension."""
    n = len(size_vectors)
    _guard(n, 10, "vector packing")
    d = len(capacities)
    dims = []
    for i in range(d):
        isz, cap = _int_sizes((sv[i] for sv in size_vectors), capacities[i])
        if any(s > cap for s in isz):
            raise ValueError("item larger than the bin capacity")
        total = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            total[m] = total[m ^ low] + isz[low.bit_length() - 1]
        dims.append((total, cap))
    return _min_bins(n, lambda m: all(t[m] <= c for t, c in dims))


def _boxes_fit(boxes, caps):
    """Exact axis-aligned packing feasibility for at most three boxes.

    Any placement of boxes induces, for each pair, an axis on which their
    projections are disjoint; conversely an assignment of pairs to axes is
    realizable iff on each axis the chains it forms fit within the capacity.
    With <= 3 boxes the chain shapes are trivial to enumerate.  Three boxes
    can need three distinct axes (a cyclic, non-guillotine packing), which
    this enumeration covers.
    """
    d = len(caps)
    for b in boxes:
        if any(b[i] > caps[i] for i in range(d)):
            return False
    k = len(boxes)
    if k <= 1:
        return True
    if k == 2:
        a, b = boxes
        return any(a[i] + b[i] <= caps[i] for i in range(d))
    if k != 3:
        raise CapacityError("box-packing feasibility is only decided for <= 3 boxes")
    pairs = ((0, 1), (0, 2), (1, 2))
    for j01 in range(d):
        for j02 in range(d):
            for j12 in range(d):
                assign = (j01, j02, j12)
                good = True
                for axis in set(assign):
                    here = [pairs[t] for t in range(3) if assign[t] == axis]
                    if len(here) == 1:
                        x, y = here[0]
                        if boxes[x][axis] + boxes[y][axis] > caps[axis]:
                            good = False
                    elif len(here) == 2:
                        # two pairs always share a box; it must clear the
                        # larger of the other two
                        shared = set(here[0]) & set(here[1])
                        (s,) = shared
                        others = [v for p in here for v in p if v != s]
                        if boxes[s][axis] + max(
                            boxes[o][axis] for o in others
                        ) > caps[axis]:
                            good = False
                    else:
                        if sum(b[axis] for b in boxes) > caps[axis]:
                            good = False
                    if not good:
                        break
                if good:
                    return True
    return False


def brute_dbp_opt(size_vectors):
    """Minimum unit-cube bins for geometric box packing; exact feasibility is
    only available for groups of <= 3 boxes, so the instance is guarded at
    n <= 3."""
    n = len(size_vectors)
    _guard(n, 3, "box packing")
    d = len(size_vectors[0]) if size_vectors else 1
    caps = tuple(Fraction(1) for _ in range(d))
    boxes = [tuple(Fraction(s) for s in sv) for sv in size_vectors]
    for box in boxes:
        if any(w > cap for w, cap in zip(box, caps)):
            raise ValueError(f"box {box} does not fit a unit bin")
    if n == 0:
        return 0
    groups = {
        m: _boxes_fit([boxes[i] for i in range(n) if m >> i & 1], caps)
        for m in range(1, 1 << n)
    }
    return _min_bins(n, lambda m: groups[m])
