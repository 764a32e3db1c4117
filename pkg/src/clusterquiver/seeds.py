"""Seeds, the exchange relation, mutation words, and cluster patterns.

A seed pairs an ordered cluster of Laurent polynomials (expressed in the
initial variables) with a valued quiver.  Mutation in direction k replaces
the k-th cluster entry through the exchange relation

    x_k' = (prod_{b_jk > 0} X_j^{b_jk} + prod_{b_jk < 0} X_j^{-b_jk}) / x_k

where the products run over the current cluster entries with exponents read
from column k of the exchange matrix, and the division is exact Laurent
division (its success on every mutation is the executable form of the
Laurent phenomenon).

Mutation words are application-ordered: word[0] is applied first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .laurent import InexactDivisionError, LaurentPoly
from .quiver import (
    Permutation,
    QuiverInvariantError,
    ValuedQuiver,
    apply_permutation,
    enumerate_quiver_class,
    mutate_quiver,
    opposite_quiver,
    quiver_key,
    quiver_to_matrix,
    weight,
)

Word = tuple[int, ...]


class CapExhaustedError(RuntimeError):
    """An enumeration hit its cap without resolving the question."""


class FinitenessRequiredError(RuntimeError):
    """The operation needs a finite cluster pattern and did not get one."""


@dataclass(frozen=True)
class EqualityMode:
    """How two seeds are compared.

    strict: ordered clusters and labeled quivers must match exactly.
    symmetric: equal up to a vertex permutation, and additionally up to
    reversing every arrow of the quiver when allow_sign is set.
    """

    kind: str
    allow_sign: bool = False

    def __post_init__(self):
        if self.kind not in ("strict", "symmetric"):
            raise ValueError(f"unknown equality mode {self.kind!r}")
        if self.kind == "strict" and self.allow_sign:
            raise ValueError("allow_sign applies to symmetric mode only")

    @classmethod
    def strict(cls) -> "EqualityMode":
        return cls("strict")

    @classmethod
    def symmetric(cls, allow_sign: bool = True) -> "EqualityMode":
        return cls("symmetric", allow_sign)

    def label(self) -> str:
        if self.kind == "strict":
            return "strict"
        return "symmetric" + ("+sign" if self.allow_sign else "")


STRICT = EqualityMode.strict()
SYMMETRIC = EqualityMode.symmetric()
DEFAULT_MODE = SYMMETRIC


@dataclass(frozen=True)
class Seed:
    """Ordered cluster of Laurent polynomials paired with a valued quiver."""

    cluster: tuple[LaurentPoly, ...]
    quiver: ValuedQuiver

    def __post_init__(self):
        if len(self.cluster) != self.quiver.n:
            raise QuiverInvariantError(
                f"cluster length {len(self.cluster)} != quiver size {self.quiver.n}"
            )
        if any(p.is_zero for p in self.cluster):
            raise QuiverInvariantError("cluster entries must be nonzero")

    @property
    def n(self) -> int:
        return self.quiver.n

    def entry(self, i: int) -> LaurentPoly:
        return self.cluster[i - 1]


def initial_seed(q: ValuedQuiver) -> Seed:
    """The seed ((x1, ..., xn), Q)."""
    n = q.n
    return Seed(tuple(LaurentPoly.variable(n, i) for i in range(1, n + 1)), q)


def mutate_seed(s: Seed, k: int) -> Seed:
    """Exchange-relation mutation at a mutable vertex k."""
    q = s.quiver
    if not 1 <= k <= q.n:
        raise QuiverInvariantError(f"mutation vertex {k} out of range 1..{q.n}")
    if k in q.frozen:
        raise QuiverInvariantError(f"vertex {k} is frozen")
    b = quiver_to_matrix(q).b
    n = q.n
    pos = LaurentPoly.one(n)
    neg = LaurentPoly.one(n)
    for j in range(1, n + 1):
        e = b[j - 1][k - 1]
        if e > 0:
            pos = pos * s.cluster[j - 1] ** e
        elif e < 0:
            neg = neg * s.cluster[j - 1] ** (-e)
    try:
        new_entry = (pos + neg).exact_div(s.cluster[k - 1])
    except InexactDivisionError as exc:  # engine bug if it ever happens
        raise InexactDivisionError(
            f"exchange relation at vertex {k} is not an exact Laurent division: {exc}"
        ) from exc
    cluster = list(s.cluster)
    cluster[k - 1] = new_entry
    return Seed(tuple(cluster), mutate_quiver(q, k))


def cancel_word(word) -> tuple[Word, tuple[bool, ...]]:
    """Cascading cancellation of adjacent equal steps.

    Mutation is involutive, so any adjacent equal pair returns to the seed
    before it; deleting such a pair can make a new pair adjacent, which is
    deleted in turn until stable.  Returns the surviving word and a mark per
    original position (True = canceled).
    """
    word = tuple(word)
    marks = [False] * len(word)
    stack: list[int] = []  # positions
    for pos, step in enumerate(word):
        if stack and word[stack[-1]] == step:
            marks[stack.pop()] = True
            marks[pos] = True
        else:
            stack.append(pos)
    return tuple(word[p] for p in stack), tuple(marks)


@dataclass(frozen=True)
class PathTrace:
    """Full trace of a mutation word applied to a seed."""

    seeds: tuple[Seed, ...]
    produced: tuple[LaurentPoly, ...]
    cancel_marks: tuple[bool, ...]
    word: Word

    @property
    def final(self) -> Seed:
        return self.seeds[-1]


def apply_word(s: Seed, word) -> PathTrace:
    """Apply a word step by step, recording every seed and produced variable."""
    word = tuple(int(k) for k in word)
    seeds = [s]
    produced = []
    cur = s
    for k in word:
        cur = mutate_seed(cur, k)
        seeds.append(cur)
        produced.append(cur.cluster[k - 1])
    _, marks = cancel_word(word)
    return PathTrace(tuple(seeds), tuple(produced), marks, word)


# ---------------------------------------------------------------------------
# seed equality


def permute_seed(s: Seed, sigma: Permutation) -> Seed:
    """sigma(X, Q): entry i moves to position sigma(i), quiver relabeled."""
    if sigma.n != s.n:
        raise QuiverInvariantError("permutation size mismatch")
    cluster = [None] * s.n
    for i in range(1, s.n + 1):
        cluster[sigma(i) - 1] = s.cluster[i - 1]
    return Seed(tuple(cluster), apply_permutation(s.quiver, sigma))


def seeds_equal(
    s1: Seed, s2: Seed, mode: EqualityMode = DEFAULT_MODE
) -> tuple[Permutation, int] | None:
    """Decide equality under mode, returning a witness (sigma, sign) or None.

    sigma satisfies permute_seed(s1, sigma).cluster == s2.cluster; sign -1
    (symmetric mode with allow_sign) means the permuted quiver matches the
    opposite of s2's quiver, with cluster entries unaffected.
    """
    if s1.n != s2.n:
        return None
    if mode.kind == "strict":
        if s1 == s2:
            return Permutation.identity(s1.n), 1
        return None
    positions: dict = {}
    for j, p in enumerate(s2.cluster, start=1):
        positions.setdefault(p, []).append(j)
    if any(len(v) > 1 for v in positions.values()):
        return _seeds_equal_backtrack(s1, s2, mode)
    images = []
    for p in s1.cluster:
        here = positions.get(p)
        if not here:
            return None
        images.append(here[0])
    if sorted(images) != list(range(1, s1.n + 1)):
        return None
    sigma = Permutation(tuple(images))
    return _quiver_witness(s1, s2, sigma, mode)


def _quiver_witness(s1, s2, sigma, mode):
    q1p = apply_permutation(s1.quiver, sigma)
    if q1p == s2.quiver:
        return sigma, 1
    if mode.allow_sign and q1p == opposite_quiver(s2.quiver):
        return sigma, -1
    return None


def _seeds_equal_backtrack(s1, s2, mode):
    # Rare path: repeated cluster entries, try all consistent assignments.
    n = s1.n
    buckets: dict = {}
    for j, p in enumerate(s2.cluster, start=1):
        buckets.setdefault(p, []).append(j)
    slots = []
    for p in s1.cluster:
        if p not in buckets:
            return None
        slots.append(buckets[p])

    used = set()
    images = [0] * n

    def backtrack(i: int):
        if i == n:
            sigma = Permutation(tuple(images))
            return _quiver_witness(s1, s2, sigma, mode)
        for j in slots[i]:
            if j in used:
                continue
            used.add(j)
            images[i] = j
            found = backtrack(i + 1)
            if found:
                return found
            used.remove(j)
        return None

    return backtrack(0)


def canonical_seed_key(s: Seed, mode: EqualityMode = DEFAULT_MODE):
    """Node key: equal keys iff seeds are equal under the given mode.

    Symmetric mode sorts the cluster entries by their canonical polynomial
    order and carries the induced relabeling to the quiver; with allow_sign
    the smaller of the permuted quiver's key and its opposite's key is used.
    """
    if mode.kind == "strict":
        return (
            tuple(p.sort_key for p in s.cluster),
            quiver_key(s.quiver),
        )
    order = sorted(range(s.n), key=lambda i: s.cluster[i].sort_key)
    images = [0] * s.n
    for new_pos, old_idx in enumerate(order, start=1):
        images[old_idx] = new_pos
    sigma = Permutation(tuple(images))
    qp = apply_permutation(s.quiver, sigma)
    qkey = quiver_key(qp)
    if mode.allow_sign:
        okey = quiver_key(opposite_quiver(qp))
        if okey < qkey:
            qkey = okey
    return (tuple(s.cluster[i].sort_key for i in order), qkey)


# ---------------------------------------------------------------------------
# cluster patterns


class ClusterPattern:
    """The enumerated rooted cluster digraph.

    Nodes are seeds up to the equality mode; ``nodes[v]`` stores the first
    seed reached for node v (the actual seed, not a canonical relabeling, so
    that BFS words applied to the root land exactly on the stored seed),
    ``words[v]`` the BFS-shortest lexicographically-least word from the root,
    and ``edges`` triples (u, k, v) meaning mutating nodes[u] at k lands in
    node v.  ``variables`` is the deduplicated union of all cluster entries.
    """

    def __init__(self, mode, nodes, keys, edges, words, truncated, root=0):
        self.mode = mode
        self.nodes: tuple[Seed, ...] = tuple(nodes)
        self.keys = tuple(keys)
        self.edges: tuple[tuple[int, int, int], ...] = tuple(edges)
        self.words: tuple[Word, ...] = tuple(words)
        self.truncated = bool(truncated)
        self.root = root
        self._key_to_id = {k: i for i, k in enumerate(self.keys)}
        self._edge_to = {(u, k): v for u, k, v in self.edges}
        vars_set = {p for seed in self.nodes for p in seed.cluster}
        self.variables: tuple[LaurentPoly, ...] = tuple(sorted(vars_set))

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def complete(self) -> bool:
        return not self.truncated

    def node_of_key(self, key) -> int | None:
        return self._key_to_id.get(key)

    def node_of_seed(self, s: Seed) -> int | None:
        return self._key_to_id.get(canonical_seed_key(s, self.mode))

    def step(self, u: int, k: int) -> int | None:
        return self._edge_to.get((u, k))

    def walk(self, word, start: int | None = None) -> list[int]:
        """Node path of a word; exact for strict mode (nodes are literal
        seeds); for symmetric mode only the strict pattern walks faithfully.
        """
        if self.mode.kind != "strict":
            raise ValueError("walks on representatives require a strict pattern")
        u = self.root if start is None else start
        path = [u]
        for k in word:
            u = self.step(u, int(k))
            if u is None:
                raise CapExhaustedError("walk left the truncated pattern")
            path.append(u)
        return path

    def degree_check(self) -> bool:
        """n-regularity on mutable directions; holds for complete patterns."""
        for u, seed in enumerate(self.nodes):
            for k in seed.quiver.mutable:
                if (u, k) not in self._edge_to:
                    return False
        return True


def enumerate_cluster_pattern(
    s: Seed, mode: EqualityMode = DEFAULT_MODE, cap: int = 100_000
) -> ClusterPattern:
    """BFS closure of a seed under mutation, nodes identified by mode."""
    if cap <= 0:
        raise ValueError("cap must be positive")
    root_key = canonical_seed_key(s, mode)
    nodes = [s]
    keys = [root_key]
    words: list[Word] = [()]
    index = {root_key: 0}
    edges = []
    truncated = False
    queue = deque([0])
    while queue:
        u = queue.popleft()
        base = nodes[u]
        for k in base.quiver.mutable:
            t = mutate_seed(base, k)
            key = canonical_seed_key(t, mode)
            v = index.get(key)
            if v is None:
                if len(nodes) >= cap:
                    truncated = True
                    continue
                v = len(nodes)
                index[key] = v
                nodes.append(t)
                keys.append(key)
                words.append(words[u] + (k,))
                queue.append(v)
            edges.append((u, k, v))
    return ClusterPattern(mode, nodes, keys, edges, words, truncated)


# ---------------------------------------------------------------------------
# finite type


@dataclass(frozen=True, eq=False)
class FinitenessResult:
    """Verdict of the finite-type decision procedure.

    kind "infinite" carries the weight obstruction (external classification
    criterion: a quiver of edge weight >= 4 in the mutation class forces
    infinitely many seeds); "finite" carries the completed pattern; "unknown"
    carries the BFS frontier size at truncation.
    """

    kind: str  # finite | infinite | unknown
    pattern: ClusterPattern | None = None
    obstruction: ValuedQuiver | None = None
    reason: str = ""
    frontier: int = 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


QUIVER_CLASS_SCAN_CAP = 50_000


def _mutable_weight(q: ValuedQuiver) -> int:
    """Max weight over edges joining two mutable vertices."""
    return max(
        (a * b for i, j, a, b in q.edges
         if i not in q.frozen and j not in q.frozen),
        default=0,
    )


def is_finite_type(
    s: Seed, cap: int = 100_000, mode: EqualityMode = DEFAULT_MODE
) -> FinitenessResult:
    """Decide finiteness of the cluster structure of s.

    Rank at least 2 with a mutable-mutable edge of weight >= 4 anywhere in
    the quiver mutation class is infinite (2-finiteness criterion; for rank
    2 this is the weight of the single edge).  Otherwise the pattern
    closure decides: completion under the cap is finite, truncation is
    unknown.
    """
    q = s.quiver
    if q.rank >= 2:
        cls = enumerate_quiver_class(
            q, cap=min(cap, QUIVER_CLASS_SCAN_CAP), stop_weight=4
        )
        for m in cls.members:
            if _mutable_weight(m) >= 4:
                return FinitenessResult(
                    kind="infinite",
                    obstruction=m,
                    reason=(
                        "mutation class contains an edge of weight "
                        f"{_mutable_weight(m)} >= 4 (2-finiteness criterion, "
                        "external classification knowledge)"
                    ),
                )
    pattern = enumerate_cluster_pattern(s, mode=mode, cap=cap)
    if pattern.truncated:
        return FinitenessResult(
            kind="unknown",
            frontier=len(pattern),
            reason=f"pattern cap {cap} exhausted with {len(pattern)} nodes",
        )
    return FinitenessResult(kind="finite", pattern=pattern)
