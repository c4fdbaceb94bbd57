"""Knapsack instances over exact rationals, their conflict graphs, the
pairwise-compatibility characterization of when the conflict graph carries
full feasibility information, exact solvers for such instances, and packing
lower bounds derived from clique numbers.

All sizes, profits and capacities are Fractions parsed from decimal strings;
every comparison against a capacity is exact.  The conflict graph of a
one-dimensional instance joins two items when they cannot share the knapsack;
it is always a threshold graph, which is what makes the solvers polynomial.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, clique_number, format_graph
from .kthreshold import ThresholdCover, enumerate_mis_k, omega_intersection
from .threshold import (
    CreationSequence,
    RecognitionFailure,
    alpha_omega,
    enumerate_mis,
    recognize_threshold,
)


class InstanceFormatError(ValueError):
    """Malformed instance JSON."""


class NotEquivalentError(ValueError):
    """A solver or bound was asked for an instance whose conflict graph does
    not capture feasibility; carries the failing report and, for
    per-dimension preconditions, the 1-based dimension."""

    def __init__(self, report, dimension=None):
        self.report = report
        self.dimension = dimension
        where = f" in dimension {dimension}" if dimension is not None else ""
        ids = ", ".join(report.witness) if report.witness else ""
        super().__init__(
            f"instance has no equivalent graph{where}; witness: {{{ids}}}"
        )


def rational(value):
    """Exact Fraction from a decimal string ('3.14'), a ratio ('22/7'), an
    integer string, an int, or a Fraction.  Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InstanceFormatError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InstanceFormatError(f"cannot parse number {value!r}") from None
    raise InstanceFormatError(
        f"numbers must be strings or integers, got {type(value).__name__}"
    )


def format_rational(q):
    """Decimal string when the denominator divides a power of ten, else p/q."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    k = max(twos, fives)
    scaled = abs(q.numerator) * 10**k // q.denominator
    digits = str(scaled).rjust(k + 1, "0")
    whole, frac = digits[:-k], digits[-k:].rstrip("0")
    sign = "-" if q.numerator < 0 else ""
    return f"{sign}{whole}.{frac}"


# ---------------------------------------------------------------------------
# instance model


@dataclass(frozen=True)
class KpItem:
    id: str
    profit: Fraction
    size: Fraction

    def __post_init__(self):
        if not self.id:
            raise ValueError("item id must be nonempty")
        if self.profit < 0 or self.size < 0:
            raise ValueError(f"item {self.id}: profit and size must be non-negative")


@dataclass(frozen=True)
class KpInstance:
    items: tuple
    capacity: Fraction

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError("capacity must be non-negative")
        ids = [it.id for it in self.items]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate item ids")

    @property
    def n(self):
        return len(self.items)


@dataclass(frozen=True)
class DkpItem:
    id: str
    profit: Fraction
    sizes: tuple

    def __post_init__(self):
        if not self.id:
            raise ValueError("item id must be nonempty")
        if self.profit < 0 or any(s < 0 for s in self.sizes):
            raise ValueError(f"item {self.id}: profit and sizes must be non-negative")


@dataclass(frozen=True)
class DkpInstance:
    items: tuple
    capacities: tuple

    def __post_init__(self):
        if len(self.capacities) < 1:
            raise ValueError("at least one dimension required")
        if any(c < 0 for c in self.capacities):
            raise ValueError("capacities must be non-negative")
        d = len(self.capacities)
        for it in self.items:
            if len(it.sizes) != d:
                raise ValueError(f"item {it.id}: expected {d} sizes, got {len(it.sizes)}")
        ids = [it.id for it in self.items]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate item ids")

    @property
    def n(self):
        return len(self.items)

    @property
    def d(self):
        return len(self.capacities)


@dataclass(frozen=True)
class BpInstance:
    """Unit-capacity packing data: sizes in (0, 1]."""

    sizes: tuple

    def __post_init__(self):
        for s in self.sizes:
            if not (0 < s <= 1):
                raise ValueError(f"sizes must lie in (0, 1], got {s}")


@dataclass(frozen=True)
class Solution:
    chosen: tuple
    profit: Fraction
    dimension_totals: tuple


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    conflict_graph: Graph
    witness: tuple | None


# ---------------------------------------------------------------------------
# JSON


def parse_instance(text):
    """KpInstance when the JSON uses singular capacity/size, DkpInstance for
    the plural forms (a one-element capacities list stays multi-dimensional)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"invalid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance must be a JSON object")
    if ("capacity" in obj) == ("capacities" in obj):
        raise InstanceFormatError("exactly one of capacity/capacities required")
    raw_items = obj.get("items")
    if not isinstance(raw_items, list):
        raise InstanceFormatError("items must be a list")

    def item_sizes(entry):
        if ("size" in entry) == ("sizes" in entry):
            raise InstanceFormatError(
                f"item {entry.get('id')!r}: exactly one of size/sizes required"
            )
        if "size" in entry:
            return [rational(entry["size"])]
        if not isinstance(entry["sizes"], list):
            raise InstanceFormatError(f"item {entry.get('id')!r}: sizes must be a list")
        return [rational(s) for s in entry["sizes"]]

    parsed = []
    for entry in raw_items:
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise InstanceFormatError("each item needs a string id")
        if "profit" not in entry:
            raise InstanceFormatError(f"item {entry['id']!r}: missing profit")
        parsed.append((entry["id"], rational(entry["profit"]), item_sizes(entry)))
    try:
        if "capacity" in obj:
            cap = rational(obj["capacity"])
            items = []
            for iid, profit, sizes in parsed:
                if len(sizes) != 1:
                    raise InstanceFormatError(
                        f"item {iid!r}: one size expected for a one-dimensional instance"
                    )
                items.append(KpItem(iid, profit, sizes[0]))
            return KpInstance(tuple(items), cap)
        raw_caps = obj["capacities"]
        if not isinstance(raw_caps, list):
            raise InstanceFormatError("capacities must be a list")
        caps = tuple(rational(c) for c in raw_caps)
        items = tuple(DkpItem(iid, profit, tuple(sizes)) for iid, profit, sizes in parsed)
        return DkpInstance(items, caps)
    except ValueError as e:
        if isinstance(e, InstanceFormatError):
            raise
        raise InstanceFormatError(str(e)) from None


def format_instance(inst):
    if isinstance(inst, KpInstance):
        obj = {
            "capacity": format_rational(inst.capacity),
            "items": [
                {
                    "id": it.id,
                    "profit": format_rational(it.profit),
                    "size": format_rational(it.size),
                }
                for it in inst.items
            ],
        }
    else:
        obj = {
            "capacities": [format_rational(c) for c in inst.capacities],
            "items": [
                {
                    "id": it.id,
                    "profit": format_rational(it.profit),
                    "sizes": [format_rational(s) for s in it.sizes],
                }
                for it in inst.items
            ],
        }
    return json.dumps(obj, indent=2) + "\n"


def format_solution(sol):
    obj = {
        "chosen": list(sol.chosen),
        "profit": format_rational(sol.profit),
        "dimension_totals": [format_rational(t) for t in sol.dimension_totals],
    }
    return json.dumps(obj, indent=2) + "\n"


def format_report(rep):
    obj = {
        "equivalent": rep.equivalent,
        "conflict_graph": format_graph(rep.conflict_graph),
        "witness": list(rep.witness) if rep.witness is not None else None,
    }
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# conflict graphs and equivalence


def conflict_graph_kp(inst):
    """Items as vertices; an edge whenever two items overfill the knapsack
    together (strict comparison)."""
    n = inst.n
    edges = []
    for j in range(n):
        for jp in range(j + 1, n):
            if inst.items[j].size + inst.items[jp].size > inst.capacity:
                edges.append((j + 1, jp + 1))
    return Graph(n, frozenset(edges))


def _recognized(g):
    got = recognize_threshold(g)
    if isinstance(got, RecognitionFailure):
        # conflict graphs of one knapsack constraint are threshold graphs
        raise AssertionError("conflict graph failed threshold recognition")
    return got


def _kp_mis_families(inst):
    """(conflict graph, maximal independent sets as 0-based index tuples)."""
    g = conflict_graph_kp(inst)
    if inst.n == 0:
        return g, []
    fam = enumerate_mis(_recognized(g))
    return g, [tuple(v - 1 for v in s) for s in fam]


def _shrink_witness(members, sizes, violates):
    """Greedily drop small items while the remainder still violates."""
    members = sorted(members, key=lambda j: (sizes[j], j))
    kept = list(members)
    for j in list(members):
        trial = [x for x in kept if x != j]
        if trial and violates(trial):
            kept = trial
    return tuple(sorted(kept))


def check_equivalence_kp(inst):
    """Feasibility of every maximal independent set of the conflict graph is
    enough: feasibility is downward closed and every independent set extends
    to a maximal one.  On failure the witness is a pairwise-compatible but
    oversized item set, shrunk to a minimal one."""
    g, fam = _kp_mis_families(inst)
    sizes = [it.size for it in inst.items]
    c = inst.capacity
    for s in fam:
        if sum(sizes[j] for j in s) > c:
            small = _shrink_witness(
                s, sizes, lambda t: sum(sizes[j] for j in t) > c
            )
            ids = tuple(inst.items[j].id for j in small)
            return EquivalenceReport(False, g, ids)
    return EquivalenceReport(True, g, None)


def _best_candidate(candidates, profits):
    """Max total profit; ties go to fewer items, then lexicographic indices."""
    best = ()
    best_profit = Fraction(0)
    best_key = (0, ())
    for cand in candidates:
        p = sum((profits[j] for j in cand), Fraction(0))
        key = (len(cand), cand)
        if p > best_profit or (p == best_profit and key < best_key):
            best, best_profit, best_key = cand, p, key
    return best, best_profit


def solve_kp_equivalent(inst):
    """Optimum over the maximal independent sets of the conflict graph plus
    the empty set; exact rational profit."""
    rep = check_equivalence_kp(inst)
    if not rep.equivalent:
        raise NotEquivalentError(rep)
    _, fam = _kp_mis_families(inst)
    profits = [it.profit for it in inst.items]
    chosen, profit = _best_candidate(fam + [()], profits)
    total = sum((inst.items[j].size for j in chosen), Fraction(0))
    return Solution(tuple(inst.items[j].id for j in chosen), profit, (total,))


# ---------------------------------------------------------------------------
# d-dimensional instances


def per_dimension_instances(inst):
    out = []
    for i in range(inst.d):
        items = tuple(
            KpItem(it.id, it.profit, it.sizes[i]) for it in inst.items
        )
        out.append(KpInstance(items, inst.capacities[i]))
    return out


def conflict_graph_dkp(inst):
    """Union over dimensions of the per-dimension conflict graphs."""
    n = inst.n
    edges = []
    for j in range(n):
        for jp in range(j + 1, n):
            a, b = inst.items[j], inst.items[jp]
            if any(
                a.sizes[i] + b.sizes[i] > inst.capacities[i]
                for i in range(inst.d)
            ):
                edges.append((j + 1, jp + 1))
    return Graph(n, frozenset(edges))


def conflict_cover_dkp(inst):
    """The same union, kept as a cover whose members are the per-dimension
    conflict graphs' creation sequences."""
    members = tuple(
        _recognized(conflict_graph_kp(sub)) for sub in per_dimension_instances(inst)
    )
    return ThresholdCover(members)


def _dkp_mis_families(inst):
    g = conflict_graph_dkp(inst)
    if inst.n == 0:
        return g, []
    # the union graph is often threshold itself; its single sequence is
    # cheaper than the tuple product
    got = recognize_threshold(g)
    if isinstance(got, CreationSequence):
        fam = enumerate_mis(got)
    else:
        fam = enumerate_mis_k(conflict_cover_dkp(inst))
    return g, [tuple(v - 1 for v in s) for s in fam]


def check_equivalence_dkp(inst):
    g, fam = _dkp_mis_families(inst)
    caps = inst.capacities

    def violates(idxs):
        return any(
            sum(inst.items[j].sizes[i] for j in idxs) > caps[i]
            for i in range(inst.d)
        )

    weight = [sum(it.sizes) for it in inst.items]
    for s in fam:
        if violates(s):
            small = _shrink_witness(s, weight, violates)
            ids = tuple(inst.items[j].id for j in small)
            return EquivalenceReport(False, g, ids)
    return EquivalenceReport(True, g, None)


def solve_dkp_equivalent(inst):
    rep = check_equivalence_dkp(inst)
    if not rep.equivalent:
        raise NotEquivalentError(rep)
    _, fam = _dkp_mis_families(inst)
    profits = [it.profit for it in inst.items]
    chosen, profit = _best_candidate(fam + [()], profits)
    totals = tuple(
        sum((inst.items[j].sizes[i] for j in chosen), Fraction(0))
        for i in range(inst.d)
    )
    return Solution(tuple(inst.items[j].id for j in chosen), profit, totals)


# ---------------------------------------------------------------------------
# packing lower bounds


def bp_lower_bound(inst):
    """Clique number of the conflict graph of the unit-capacity view; a valid
    bin lower bound because conflicting items need distinct bins.  Refuses
    instances whose conflict graph does not capture feasibility."""
    kp = KpInstance(
        tuple(
            KpItem(f"a{j + 1}", Fraction(1), s) for j, s in enumerate(inst.sizes)
        ),
        Fraction(1),
    )
    rep = check_equivalence_kp(kp)
    if not rep.equivalent:
        raise NotEquivalentError(rep)
    if not inst.sizes:
        return 0
    return _recognized(rep.conflict_graph).bits.count("1")


def _require_unit_view(inst):
    if any(c != 1 for c in inst.capacities):
        raise ValueError("packing bounds expect all capacities equal to 1")
    for it in inst.items:
        if any(s > 1 for s in it.sizes) or any(s <= 0 for s in it.sizes):
            raise ValueError(f"item {it.id}: packing sizes must lie in (0, 1]")


def _check_dimensions_equivalent(inst):
    for i, sub in enumerate(per_dimension_instances(inst), start=1):
        rep = check_equivalence_kp(sub)
        if not rep.equivalent:
            raise NotEquivalentError(rep, dimension=i)


def dvp_lower_bound(inst):
    """Vector packing: clique number of the union conflict graph.  When the
    union is itself threshold the number falls out of its sequence; otherwise
    it is computed by maximal-clique enumeration on the union directly."""
    _require_unit_view(inst)
    if inst.n == 0:
        return 0
    _check_dimensions_equivalent(inst)
    g = conflict_graph_dkp(inst)
    got = recognize_threshold(g)
    if isinstance(got, CreationSequence):
        return alpha_omega(got)[1]
    return clique_number(g)


def dbp_lower_bound(inst):
    """Geometric box packing: clique number of the intersection of the
    per-dimension conflict graphs (items conflicting in every dimension
    cannot share a bin even geometrically)."""
    _require_unit_view(inst)
    if inst.n == 0:
        return 0
    _check_dimensions_equivalent(inst)
    return omega_intersection(conflict_cover_dkp(inst))
