"""Finite-type labeling, rank-3 weight-4 recognition, and the cluster
algebra isomorphism decision.

Finite-type labeling searches the quiver mutation class for a member whose
underlying valued graph is an orientation of a Dynkin diagram; for trees
every orientation is mutation equivalent, so the choice of member is
irrelevant.  The isomorphism decision first compares cheap invariants
(rooted group order, coset count, variable count, class weight) and, when
they all match, searches the second seed's pattern for a quiver symmetric
to the first seed's quiver up to a permutation and an optional global
orientation flip.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import GroupCaps, compute_rooted_group, coset_set
from .quiver import (
    Permutation,
    QuiverClass,
    ValuedQuiver,
    build_quiver,
    enumerate_quiver_class,
    find_symmetry,
    normalize_symmetrizer,
    weight,
)
from .seeds import (
    DEFAULT_MODE,
    EqualityMode,
    FinitenessRequiredError,
    FinitenessResult,
    Seed,
    is_finite_type,
)


# ---------------------------------------------------------------------------
# Dynkin recognition


def _components(q: ValuedQuiver) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in range(1, q.n + 1):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in q.neighborhood(u):
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def _abs_valuation(q: ValuedQuiver, u: int, v: int) -> tuple[int, int] | None:
    """(|b_uv|, |b_vu|) for the undirected edge {u, v}, or None."""
    for i, j, a, b in q.edges:
        if (i, j) == (u, v):
            return (a, b)
        if (i, j) == (v, u):
            return (b, a)
    return None


def _component_label(q: ValuedQuiver, comp: list[int]) -> str | None:
    """Dynkin label of one connected component of the underlying valued
    graph, or None when the shape does not match any diagram."""
    m = len(comp)
    if m == 1:
        return "A1"
    edges = [
        (i, j, a, b) for i, j, a, b in q.edges if i in comp and j in comp
    ]
    if len(edges) != m - 1:
        return None  # not a tree
    degree = {v: len(q.neighborhood(v) & frozenset(comp)) for v in comp}
    weights = sorted(a * b for _, _, a, b in edges)
    if weights[-1] == 1:
        return _simply_laced_tree_label(q, comp, degree)
    if weights[-1] == 2 and weights[:-1] == [1] * (m - 2):
        return _double_edge_label(q, comp, degree, edges)
    if weights == [3] and m == 2:
        return "G2"
    return None


def _simply_laced_tree_label(q, comp, degree) -> str | None:
    m = len(comp)
    degs = sorted(degree.values())
    if degs[-1] <= 2:
        return f"A{m}"
    if degs[-1] > 3 or degs.count(3) > 1:
        return None
    # one degree-3 branch vertex: branch lengths decide D/E
    center = next(v for v in comp if degree[v] == 3)
    lengths = sorted(_branch_lengths(q, comp, center))
    if lengths[0] != 1:
        return None
    if lengths[1] == 1:
        return f"D{m}"
    if lengths[1] == 2 and lengths[2] in (2, 3, 4):
        return {2: "E6", 3: "E7", 4: "E8"}[lengths[2]]
    return None


def _branch_lengths(q: ValuedQuiver, comp, center) -> list[int]:
    """Vertex counts of the three branches hanging off the branch vertex."""
    comp_set = frozenset(comp)
    lengths = []
    for start in q.neighborhood(center) & comp_set:
        count = 0
        prev, cur = center, start
        while True:
            count += 1
            nxt = [v for v in q.neighborhood(cur) & comp_set if v != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
        lengths.append(count)
    return lengths


def _double_edge_label(q, comp, degree, edges) -> str | None:
    m = len(comp)
    if any(d > 2 for d in degree.values()):
        return None  # path shapes only
    if m == 2:
        return "B2"
    heavy = next((i, j, a, b) for i, j, a, b in edges if a * b == 2)
    i, j, a, b = heavy
    leaf_end = None
    interior_end = None
    for u, v in ((i, j), (j, i)):
        if degree[u] == 1:
            leaf_end, interior_end = u, v
    if leaf_end is None:
        # weight-2 edge interior to the path: F4 shape (path of 4)
        return "F4" if m == 4 else None
    # |b_{leaf,interior}| == 2 marks the B family, == 1 the C family
    val = _abs_valuation(q, leaf_end, interior_end)
    return f"B{m}" if val[0] == 2 else f"C{m}"


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    verdict: str  # finite | infinite | unknown
    dynkin_label: str | None = None
    evidence: ValuedQuiver | None = None
    reason: str = ""
    finiteness: FinitenessResult | None = field(default=None, repr=False)
    quiver_class: QuiverClass | None = field(default=None, repr=False)

    def to_obj(self) -> dict:
        from .quiverio import quiver_to_obj

        return {
            "verdict": self.verdict,
            "dynkin_label": self.dynkin_label,
            "reason": self.reason,
            "evidence": quiver_to_obj(self.evidence) if self.evidence else None,
        }


def dynkin_label(q: ValuedQuiver) -> str | None:
    """Label of the underlying valued graph when it is a disjoint union of
    Dynkin diagram orientations; components are joined with ' x '."""
    labels = []
    for comp in _components(q):
        label = _component_label(q, comp)
        if label is None:
            return None
        labels.append(label)
    labels.sort(key=_label_sort_key)
    return " x ".join(labels)


def _label_sort_key(label: str):
    return (label[0], -int(label[1:]))


def classify_finite_type(
    s: Seed, cap: int = 100_000, mode: EqualityMode = DEFAULT_MODE
) -> ClassificationReport:
    """Run the finiteness decision and, when finite, search the quiver
    mutation class for a Dynkin-shaped member to name the type."""
    verdict = is_finite_type(s, cap=cap, mode=mode)
    if verdict.kind == "infinite":
        return ClassificationReport(
            verdict="infinite",
            evidence=verdict.obstruction,
            reason=verdict.reason,
            finiteness=verdict,
        )
    if verdict.kind == "unknown":
        return ClassificationReport(
            verdict="unknown", reason=verdict.reason, finiteness=verdict
        )
    cls = enumerate_quiver_class(s.quiver, cap=cap)
    for member in cls.members:
        label = dynkin_label(member)
        if label is not None:
            return ClassificationReport(
                verdict="finite",
                dynkin_label=label,
                evidence=member,
                reason="mutation-class member matches a Dynkin orientation",
                finiteness=verdict,
                quiver_class=cls,
            )
    return ClassificationReport(
        verdict="finite",
        dynkin_label=None,
        reason="finite pattern but no Dynkin-shaped class member found",
        finiteness=verdict,
        quiver_class=cls,
    )


# ---------------------------------------------------------------------------
# rank-3 weight-4 recognition


def _rank3_shape(edges) -> ValuedQuiver:
    return build_quiver(3, edges)


# Oriented 3-cycles on vertices (t, j, k) = (1, 2, 3): arrows t->k, j->t, k->j.
WEIGHT4_RANK3_SHAPES: dict[str, ValuedQuiver] = {
    **{
        f"Q{x}_3(1)": _rank3_shape(
            [(1, 3, x, 1), (2, 1, 1, x), (3, 2, 2, 2)]
        )
        for x in (1, 2, 3, 4)
    },
    "Q_3(2)": _rank3_shape([(1, 3, 2, 2), (2, 1, 2, 2), (3, 2, 2, 2)]),
    "Q_3(3)": _rank3_shape([(1, 3, 2, 1), (2, 1, 2, 1), (3, 2, 1, 4)]),
}


def recognize_weight4_rank3(q: ValuedQuiver, cap: int = 10_000) -> str | None:
    """Search the mutation class of a rank-3 quiver for one of the three
    weight-4 class representatives (returned label), else None."""
    if q.n != 3:
        raise ValueError(f"rank-3 recognizer called on rank {q.n}")
    cls = enumerate_quiver_class(q, cap=cap)
    for member in cls.members:
        member_n = normalize_symmetrizer(member)
        for label, shape in WEIGHT4_RANK3_SHAPES.items():
            if find_symmetry(member_n, normalize_symmetrizer(shape)) is not None:
                return label
    return None


# ---------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True, eq=False)
class IsoReport:
    isomorphic: bool
    route: str  # invariant-only | witness-found | witness-exhausted
    invariants: dict
    witness: tuple[int, Permutation, int] | None = None  # (node, sigma, sign)
    mismatches: tuple[str, ...] = ()

    def to_obj(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "route": self.route,
            "invariants": self.invariants,
            "mismatches": list(self.mismatches),
            "witness": None
            if self.witness is None
            else {
                "node": self.witness[0],
                "sigma": list(self.witness[1].images),
                "sigma_cycles": self.witness[1].cycle_str(),
                "sign": self.witness[2],
            },
        }


def _seed_invariants(s: Seed, cap: int, mode: EqualityMode) -> dict:
    group = compute_rooted_group(s, GroupCaps(), mode=mode, cap=cap)
    cosets = coset_set(s, mode=mode, cap=cap)
    cls = enumerate_quiver_class(s.quiver, cap=cap)
    variables = cosets.pattern.variables
    return {
        "group_order": group.order,
        "coset_count": len(cosets),
        "variable_count": len(variables),
        "class_weight": cls.class_weight,
    }


def isomorphic(
    s1: Seed, s2: Seed, cap: int = 100_000, mode: EqualityMode = DEFAULT_MODE
) -> IsoReport:
    """Decide cluster algebra isomorphism for two finite-type seeds.

    Invariant mismatches decide negatively on their own; otherwise every
    node of s2's pattern is searched for a quiver symmetric to s1's (up to
    permutation and orientation flip), an exhaustive miss over the complete
    pattern deciding negatively.
    """
    v1 = is_finite_type(s1, cap=cap, mode=mode)
    v2 = is_finite_type(s2, cap=cap, mode=mode)
    if not (v1.is_finite and v2.is_finite):
        raise FinitenessRequiredError(
            f"isomorphism needs finite types: verdicts {v1.kind}, {v2.kind}"
        )
    inv1 = _seed_invariants(s1, cap, mode)
    inv2 = _seed_invariants(s2, cap, mode)
    invariants = {"first": inv1, "second": inv2}
    mismatches = tuple(k for k in inv1 if inv1[k] != inv2[k])
    if mismatches:
        return IsoReport(
            isomorphic=False,
            route="invariant-only",
            invariants=invariants,
            mismatches=mismatches,
        )
    q1 = normalize_symmetrizer(s1.quiver)
    for node_id, node in enumerate(v2.pattern.nodes):
        found = find_symmetry(q1, normalize_symmetrizer(node.quiver), allow_sign=True)
        if found is not None:
            sigma, sign = found
            return IsoReport(
                isomorphic=True,
                route="witness-found",
                invariants=invariants,
                witness=(node_id, sigma, sign),
            )
    return IsoReport(
        isomorphic=False,
        route="witness-exhausted",
        invariants=invariants,
    )
