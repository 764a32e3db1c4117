"""Rooted mutation loops, cluster sets, the reduction process, and the
rooted mutation group with its Cayley table.

A rooted mutation loop of a seed is a word returning to the root under the
chosen equality mode.  The cluster set of a word is the set of variables
produced by the steps that survive cascading cancellation of adjacent equal
steps; loops with equal cluster sets are identified, and the group product
concatenates representative words, reduces (truncation to cluster order,
then deletion of repeated loop factors) and classifies by cluster set.

All loop arithmetic here runs on the strict (labeled) cluster pattern:
after one enumeration every word operation is a graph walk with pure
lookups, no polynomial arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .laurent import LaurentPoly
from .quiver import Permutation
from .seeds import (
    CapExhaustedError,
    ClusterPattern,
    DEFAULT_MODE,
    EqualityMode,
    FinitenessRequiredError,
    STRICT,
    Seed,
    Word,
    apply_word,
    cancel_word,
    canonical_seed_key,
    enumerate_cluster_pattern,
    is_finite_type,
    seeds_equal,
)


class GroupCapError(RuntimeError):
    """Element enumeration exceeded the configured maximum."""


def reverse_word(word) -> Word:
    return tuple(reversed(tuple(word)))


def word_support(word) -> frozenset[int]:
    return frozenset(word)


# ---------------------------------------------------------------------------
# cluster sets and orders (direct evaluation)


def _surviving_cluster_set(word, produced) -> frozenset[LaurentPoly]:
    _, marks = cancel_word(word)
    return frozenset(p for p, m in zip(produced, marks) if not m)


def cluster_set(root: Seed, word) -> frozenset[LaurentPoly]:
    """Variables produced along the path of a word, excluding canceled ones.

    Cancellation cascades: adjacent equal steps return to the seed before
    them and are deleted, re-examining newly adjacent steps, until stable;
    reproduced initial variables count as produced.
    """
    word = tuple(word)
    reduced, _ = cancel_word(word)
    trace = apply_word(root, reduced)
    return frozenset(trace.produced)


def is_rooted_loop(
    root: Seed, word, mode: EqualityMode = DEFAULT_MODE
) -> tuple[Permutation, int] | None:
    """Witness (sigma, sign) when the word fixes the root under mode."""
    return seeds_equal(root, apply_word(root, word).final, mode)


def cluster_order(root: Seed, word) -> int:
    """Smallest prefix length whose cluster set equals the whole word's."""
    word = tuple(word)
    full = cluster_set(root, word)
    if not full:
        return 0
    for m in range(1, len(word) + 1):
        if cluster_set(root, word[:m]) == full:
            return m
    return len(word)


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    reason: str

    def __bool__(self) -> bool:
        return self.equivalent


def equivalent(
    root: Seed, w1, w2, mode: EqualityMode = DEFAULT_MODE
) -> EquivalenceResult:
    """Cluster-set equality of two words.

    A rooted loop is never compared against its own retrace: when both
    words are loops and the second is the reverse of the first, the pair is
    excluded by definition and the result is False with a diagnostic.  The
    exclusion does not apply to non-loops (words on mutually non-adjacent
    vertices commute under any permutation of their letters, reversal
    included).
    """
    w1, w2 = tuple(w1), tuple(w2)
    if (
        w2 == reverse_word(w1)
        and w1 != w2
        and is_rooted_loop(root, w1, mode) is not None
        and is_rooted_loop(root, w2, mode) is not None
    ):
        return EquivalenceResult(
            False, "excluded by definition: second loop is the retrace of the first"
        )
    if cluster_set(root, w1) == cluster_set(root, w2):
        return EquivalenceResult(True, "equal cluster sets")
    return EquivalenceResult(False, "cluster sets differ")


def is_global_loop(
    root: Seed,
    word,
    mode: EqualityMode = STRICT,
    cap: int = 100_000,
) -> bool:
    """True iff the word fixes every node of the (finite) pattern of root."""
    verdict = is_finite_type(root, cap=cap, mode=mode)
    if not verdict.is_finite:
        raise FinitenessRequiredError(
            f"global-loop check needs a finite pattern: verdict {verdict.kind}"
        )
    word = tuple(word)
    for node in verdict.pattern.nodes:
        if seeds_equal(node, apply_word(node, word).final, mode) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# strict-pattern walk engine


class _LoopEngine:
    """Word evaluation on the strict pattern of a root seed.

    Every seed reachable from the root is enumerated once; afterwards
    endpoints, produced variables, cluster sets, loop tests and the
    reduction process are pure graph lookups.
    """

    def __init__(self, root: Seed, mode: EqualityMode, cap: int):
        self.root = root
        self.mode = mode
        self.pattern = enumerate_cluster_pattern(root, STRICT, cap)
        if self.pattern.truncated:
            raise CapExhaustedError(
                f"strict pattern exceeded cap {cap}; finiteness unresolved"
            )
        self.nodes = self.pattern.nodes
        self._step = self.pattern.step
        if mode.kind == "strict":
            self.targets = frozenset([0])
        else:
            root_key = canonical_seed_key(root, mode)
            self.targets = frozenset(
                i
                for i, node in enumerate(self.nodes)
                if canonical_seed_key(node, mode) == root_key
            )

    def walk_nodes(self, word, start: int = 0) -> list[int]:
        u = start
        path = [u]
        for k in word:
            u = self._step(u, k)
            path.append(u)
        return path

    def produced_along(self, word, start: int = 0) -> list[LaurentPoly]:
        u = start
        out = []
        for k in word:
            u = self._step(u, k)
            out.append(self.nodes[u].cluster[k - 1])
        return out

    def endpoint(self, word, start: int = 0) -> int:
        u = start
        for k in word:
            u = self._step(u, k)
        return u

    def cluster_set(self, word, start: int = 0) -> frozenset[LaurentPoly]:
        word = tuple(word)
        return _surviving_cluster_set(word, self.produced_along(word, start))

    def is_loop(self, word) -> bool:
        return self.endpoint(tuple(word)) in self.targets

    def witness(self, word):
        node = self.nodes[self.endpoint(tuple(word))]
        return seeds_equal(self.root, node, self.mode)

    def cluster_order(self, word) -> int:
        word = tuple(word)
        produced = self.produced_along(word)
        full = _surviving_cluster_set(word, produced)
        if not full:
            return 0
        # Incremental cancellation stack over growing prefixes.
        stack: list[int] = []
        counts: dict[LaurentPoly, int] = {}
        for m in range(1, len(word) + 1):
            pos = m - 1
            if stack and word[stack[-1]] == word[pos]:
                old = stack.pop()
                p = produced[old]
                counts[p] -= 1
                if not counts[p]:
                    del counts[p]
            else:
                stack.append(pos)
                p = produced[pos]
                counts[p] = counts.get(p, 0) + 1
            if len(counts) == len(full) and full.issuperset(counts):
                return m
        return len(word)

    def reduce(self, word) -> Word:
        """Reduction process: truncate to cluster order, factor the result
        at root revisits (greedy left-to-right), drop every loop factor
        whose cluster set matches an earlier kept factor's."""
        word = tuple(word)
        w1 = word[: self.cluster_order(word)]
        path = self.walk_nodes(w1)
        factors: list[Word] = []
        pos = 0
        for t in range(1, len(w1) + 1):
            if path[t] in self.targets:
                factors.append(w1[pos:t])
                pos = t
        tail = w1[pos:]
        kept: list[Word] = []
        kept_sets: list[frozenset] = []
        start = 0
        for f in factors:
            cs = _surviving_cluster_set(
                f, self.produced_along(f, start=path[start])
            )
            if cs not in kept_sets:
                kept.append(f)
                kept_sets.append(cs)
            start += len(f)
        out: Word = ()
        for f in kept:
            out = out + f
        return out + tail

    def reduce_preserving_endpoint(self, word) -> Word:
        """Reduce, but fall back to the input when reduction would move the
        endpoint (possible when deletion of a factor interacts with a later
        cascade); coset representatives need endpoint stability."""
        word = tuple(word)
        reduced = self.reduce(word)
        if self.endpoint(reduced) == self.endpoint(word):
            return reduced
        return word

    def transported_concat(self, words) -> Word:
        """Compose rooted loops so the result is again a rooted loop: each
        subsequent word is relabeled by the witness permutation accumulated
        so far before concatenation."""
        out: Word = ()
        for w in words:
            wit = self.witness(out) if out else None
            if wit is None and out:
                return out + tuple(w)
            sigma = wit[0] if wit else None
            if sigma is None or sigma.is_identity:
                out = out + tuple(w)
            else:
                out = out + tuple(sigma(k) for k in w)
        return out


# ---------------------------------------------------------------------------
# loop enumeration


@dataclass(frozen=True)
class RootedLoop:
    word: Word
    witness: tuple[Permutation, int]
    cluster_set: frozenset[LaurentPoly]
    seed_nodes: frozenset[int] = field(default=frozenset(), compare=False)


def enumerate_rooted_loops(
    root: Seed,
    mode: EqualityMode = DEFAULT_MODE,
    max_len: int = 12,
    max_walks: int = 200_000,
    cap: int = 100_000,
    engine: "_LoopEngine | None" = None,
) -> list[RootedLoop]:
    """All non-backtracking rooted loops up to max_len, in word order.

    Words with adjacent equal steps cascade down to shorter loops, so only
    non-backtracking walks are enumerated.  max_walks bounds the DFS size;
    hitting it truncates the enumeration deterministically.
    """
    eng = engine or _LoopEngine(root, mode, cap)
    loops: list[RootedLoop] = []
    budget = max_walks
    letters = eng.root.quiver.mutable

    def dfs(node: int, word: list[int], visited: list[int], produced: list):
        nonlocal budget
        if budget <= 0 or len(word) >= max_len:
            return
        for k in letters:
            if word and word[-1] == k:
                continue
            budget -= 1
            if budget <= 0:
                return
            nxt = eng._step(node, k)
            word.append(k)
            visited.append(nxt)
            produced.append(eng.nodes[nxt].cluster[k - 1])
            if nxt in eng.targets:
                w = tuple(word)
                loops.append(
                    RootedLoop(
                        w,
                        eng.witness(w),
                        frozenset(produced),
                        frozenset(visited),
                    )
                )
            dfs(nxt, word, visited, produced)
            word.pop()
            visited.pop()
            produced.pop()

    dfs(0, [], [0], [])
    return loops


# ---------------------------------------------------------------------------
# the rooted mutation group


@dataclass(frozen=True)
class GroupCaps:
    max_walk_len: int | None = None  # derived: 2 * strict pattern nodes * n
    max_elements: int = 10_000  # materialization bound for the element list


CAYLEY_TABLE_LIMIT = 1024


class GroupCapError(RuntimeError):
    """Materializing the element list would exceed max_elements."""


@dataclass(frozen=True)
class GroupElement:
    cluster_set: frozenset[LaurentPoly]
    word: Word  # a rooted loop representing the class
    realized: bool = True  # False: word is a transported product of basis loops


class RootedMutationGroup:
    """The group generated by rooted mutation loops, identified by cluster
    sets.

    Empirically (and consistently with every identity asserted about the
    group: the reversed loop represents the inverse class, products
    commute, and the rank-2 group has order two), every loop class is an
    involution: the witness-relabeled reverse of a loop is a loop with the
    same cluster set.  The group is therefore realized as the GF(2) span of
    the generating loops' cluster sets, with symmetric difference as the
    product.  Element ids are subset indices over the reduced basis, so the
    identity is 0 and the product of ids is their XOR.

    Raw word concatenation does not descend to these classes (recorded
    counterexamples: concatenating two loops need not be a loop in
    symmetric mode, and cluster sets of the two concatenation orders can
    differ), which is why the product is defined on classes, not words.
    """

    def __init__(
        self,
        root: Seed,
        mode: EqualityMode,
        variables: tuple[LaurentPoly, ...],
        basis: tuple[GroupElement, ...],
        caps_used: GroupCaps,
        converged: bool,
        diagnostics=(),
        engine: "_LoopEngine | None" = None,
    ):
        self.root = root
        self.mode = mode
        self.variables = variables
        self.basis = basis
        self.caps_used = caps_used
        self.converged = converged
        self.diagnostics = tuple(diagnostics)
        self._engine = engine
        self._var_index = {p: i for i, p in enumerate(variables)}
        self._basis_masks = tuple(self._mask(e.cluster_set) for e in basis)
        # echelon rows over the original basis masks: (reduced mask, subset)
        self._echelon: dict[int, tuple[int, int]] = {}
        for i, m in enumerate(self._basis_masks):
            r, subset = m, 1 << i
            while r:
                top = r.bit_length() - 1
                row = self._echelon.get(top)
                if row is None:
                    self._echelon[top] = (r, subset)
                    break
                r ^= row[0]
                subset ^= row[1]
            else:
                raise ValueError("basis masks are not independent")
        self.elements: tuple[GroupElement, ...] = ()
        self.cayley: tuple[tuple[int, ...], ...] | None = None
        if self.order <= caps_used.max_elements:
            self.elements = self.materialized_elements()
            if self.order <= CAYLEY_TABLE_LIMIT:
                self.cayley = tuple(
                    tuple(a ^ b for b in range(self.order))
                    for a in range(self.order)
                )

    # -- structure -----------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 1 << len(self.basis)

    @property
    def identity(self) -> int:
        return 0

    def product(self, a: int, b: int) -> int:
        return a ^ b

    def inverse(self, a: int) -> int:
        return a

    @property
    def commutative(self) -> bool:
        return True  # structural: symmetric difference commutes

    @property
    def is_group(self) -> bool:
        return True  # structural: (Z/2)^rank

    # -- element <-> cluster set ----------------------------------------------

    def _mask(self, cs: frozenset[LaurentPoly]) -> int:
        m = 0
        for p in cs:
            i = self._var_index.get(p)
            if i is None:
                raise ValueError("cluster set contains a variable outside the pattern")
            m |= 1 << i
        return m

    def _unmask(self, m: int) -> frozenset[LaurentPoly]:
        out = []
        i = 0
        while m:
            if m & 1:
                out.append(self.variables[i])
            m >>= 1
            i += 1
        return frozenset(out)

    def _subset_mask(self, subset: int) -> int:
        m = 0
        for i in range(len(self.basis)):
            if subset >> i & 1:
                m ^= self._basis_masks[i]
        return m

    def element_of(self, cs: frozenset[LaurentPoly]) -> int | None:
        """Subset index of the class with this cluster set, or None when the
        set is outside the span."""
        try:
            m = self._mask(cs)
        except ValueError:
            return None
        subset = 0
        while m:
            row = self._echelon.get(m.bit_length() - 1)
            if row is None:
                return None
            m ^= row[0]
            subset ^= row[1]
        return subset

    def element_cluster_set(self, a: int) -> frozenset[LaurentPoly]:
        return self._unmask(self._subset_mask(a))

    def element_word(self, a: int) -> Word:
        """A rooted loop representing element a: the stored loop when the
        class was realized by an enumerated loop, else the transported
        concatenation of its basis decomposition."""
        if self.elements:
            return self.elements[a].word
        return self._compose_word(a)

    def _compose_word(self, subset: int) -> Word:
        words = [
            self.basis[i].word
            for i in range(len(self.basis))
            if subset >> i & 1
        ]
        if not words:
            return ()
        if len(words) == 1:
            return words[0]
        if self._engine is None:
            out: Word = ()
            for w in words:
                out = out + w
            return out
        return self._engine.transported_concat(words)

    def materialized_elements(self) -> tuple[GroupElement, ...]:
        if self.order > self.caps_used.max_elements:
            raise GroupCapError(
                f"order {self.order} exceeds max_elements "
                f"{self.caps_used.max_elements}"
            )
        realized = {e.cluster_set: e.word for e in self.basis}
        out = []
        for subset in range(self.order):
            cs = self._unmask(self._subset_mask(subset))
            if subset == 0:
                out.append(GroupElement(cs, (), True))
            elif cs in realized:
                out.append(GroupElement(cs, realized[cs], True))
            else:
                out.append(GroupElement(cs, self._compose_word(subset), False))
        return tuple(out)

    def to_obj(self) -> dict:
        listed = self.elements if self.elements else self.basis
        return {
            "order": self.order,
            "rank": self.rank,
            "mode": self.mode.label(),
            "elements_listed": "all" if self.elements else "basis-only",
            "elements": [
                {
                    "id": i if self.elements else None,
                    "word": list(e.word),
                    "realized_by_loop": e.realized,
                    "cluster_set": sorted(p.factored_str() for p in e.cluster_set),
                }
                for i, e in enumerate(listed)
            ],
            "cayley": None
            if self.cayley is None
            else [list(row) for row in self.cayley],
            "converged": self.converged,
            "commutative": self.commutative,
            "is_group": self.is_group,
            "caps": {
                "max_walk_len": self.caps_used.max_walk_len,
                "max_elements": self.caps_used.max_elements,
            },
            "diagnostics": list(self.diagnostics),
        }


def _dedup_pattern_edges(pattern: ClusterPattern):
    """Undirected pattern edges (u, k, v) with u <= v, discovery order."""
    seen = set()
    out = []
    for u, k, v in pattern.edges:
        key = (min(u, v), k, max(u, v))
        if key not in seen:
            seen.add(key)
            out.append((u, k, v))
    return out


def _generator_words(eng: _LoopEngine, max_walk_len: int):
    """Loop generators: fundamental cycles of the strict pattern relative to
    the BFS tree, plus the BFS words reaching every other seed equal to the
    root under the mode (those words are rooted loops by definition).  Up to
    cascading cancellation every rooted loop is a walk-composition of these,
    so their cluster sets span all loop classes."""
    pattern = eng.pattern
    words = pattern.words
    tree_edges = set()
    for v in range(1, len(pattern)):
        w = words[v]
        u = eng.endpoint(w[:-1])
        tree_edges.add((min(u, v), w[-1], max(u, v)))
    gens: list[Word] = []
    skipped = 0
    for u, k, v in _dedup_pattern_edges(pattern):
        if (min(u, v), k, max(u, v)) in tree_edges:
            continue
        word = words[u] + (k,) + reverse_word(words[v])
        if len(word) > max_walk_len:
            skipped += 1
            continue
        gens.append(word)
    for t in sorted(eng.targets):
        if t != 0:
            if len(words[t]) > max_walk_len:
                skipped += 1
                continue
            gens.append(words[t])
    return gens, skipped


def compute_rooted_group(
    root: Seed,
    caps: GroupCaps | None = None,
    mode: EqualityMode = DEFAULT_MODE,
    cap: int = 100_000,
) -> RootedMutationGroup:
    """Enumerate the rooted mutation group of a seed with finite pattern.

    Rooted loops are gathered from short non-backtracking closed walks and
    from the fundamental cycles of the strict pattern together with the
    connector words to every seed equal to the root under the mode.  Each
    loop is mapped to its class via its cluster set; the classes generate
    the group as the GF(2) span of their sets.  The Gaussian basis keeps the
    shortest loop word seen for each pivot; the element list and Cayley
    table are materialized when the order fits the caps.
    """
    caps = caps or GroupCaps()
    eng = _LoopEngine(root, mode, cap)
    n = max(1, root.quiver.rank)
    max_walk_len = caps.max_walk_len or 2 * len(eng.pattern) * n
    effective = GroupCaps(max_walk_len, caps.max_elements)
    diagnostics: list[str] = []
    converged = True

    pool: list[tuple[Word, frozenset]] = []
    seed_len = min(max_walk_len, 2 * n + 4)
    for loop in enumerate_rooted_loops(
        root, mode, max_len=seed_len, max_walks=50_000, engine=eng
    ):
        pool.append((loop.word, loop.cluster_set))
    gens, skipped = _generator_words(eng, max_walk_len)
    if skipped:
        converged = False
        diagnostics.append(
            f"{skipped} generator words exceeded max_walk_len {max_walk_len}"
        )
    for g in gens:
        pool.append((g, eng.cluster_set(g)))
    pool.sort(key=lambda item: (len(item[0]), item[0]))

    var_index: dict[LaurentPoly, int] = {
        p: i for i, p in enumerate(eng.pattern.variables)
    }

    def mask_of(cs) -> int:
        m = 0
        for p in cs:
            m |= 1 << var_index[p]
        return m

    # Keep a generator when its mask is independent of those already kept;
    # the element stores the generator's own cluster set and loop word.
    basis: list[tuple[Word, frozenset]] = []
    echelon: dict[int, int] = {}  # pivot bit -> reduced mask
    for word, cs in pool:
        m = mask_of(cs)
        while m:
            top = m.bit_length() - 1
            row = echelon.get(top)
            if row is None:
                echelon[top] = m
                basis.append((word, cs))
                break
            m ^= row

    basis_elements = tuple(GroupElement(cs, word, True) for word, cs in basis)
    group = RootedMutationGroup(
        root,
        mode,
        eng.pattern.variables,
        basis_elements,
        effective,
        converged,
        diagnostics,
        engine=eng,
    )
    return group


# ---------------------------------------------------------------------------
# reduction and cosets (public wrappers)


def reduce_word(
    root: Seed, word, mode: EqualityMode = DEFAULT_MODE, cap: int = 100_000
) -> Word:
    """Reduction process on a word: truncation to cluster order, then
    deletion of repeated rooted-loop factors (greedy left-to-right scan of
    root revisits under the mode)."""
    return _LoopEngine(root, mode, cap).reduce(tuple(word))


@dataclass(frozen=True, eq=False)
class CosetSet:
    """Destination-seed model of the quotient of all words by rooted loops:
    two words reaching the same pattern node differ by a rooted loop, so
    nodes index cosets; representatives are reduced BFS-shortest words."""

    pattern: ClusterPattern
    representatives: tuple[Word, ...]
    complete: bool

    def __len__(self) -> int:
        return len(self.representatives)

    def to_obj(self) -> dict:
        return {
            "count": len(self),
            "mode": self.pattern.mode.label(),
            "complete": self.complete,
            "representatives": [list(w) for w in self.representatives],
        }


def coset_set(
    root: Seed, mode: EqualityMode = DEFAULT_MODE, cap: int = 100_000
) -> CosetSet:
    """One coset per pattern node, keyed in node order."""
    pattern = enumerate_cluster_pattern(root, mode, cap)
    if pattern.truncated:
        return CosetSet(pattern, pattern.words, complete=False)
    eng = _LoopEngine(root, mode, cap)
    reps = []
    for node_id, word in enumerate(pattern.words):
        reduced = eng.reduce_preserving_endpoint(word)
        end_seed = eng.nodes[eng.endpoint(reduced)]
        if canonical_seed_key(end_seed, mode) != pattern.keys[node_id]:
            reduced = word
        reps.append(reduced)
    return CosetSet(pattern, tuple(reps), complete=True)


def rebase_group(
    g: RootedMutationGroup, word, cap: int = 100_000
) -> RootedMutationGroup:
    """Recompute the group at the seed reached by a word from g's root.

    The base-point change map conjugates a loop representative r to
    reverse(word) + r' + word, where r' is r relabeled so the composite is
    again a loop; the recomputed group carries a ``rebase_map`` attribute
    matching g's basis elements to new element ids through the conjugated
    cluster sets (None entries would contradict base-point independence).
    """
    word = tuple(word)
    new_root = apply_word(g.root, word).final
    ng = compute_rooted_group(new_root, g.caps_used, g.mode, cap)
    eng = ng._engine
    rev = reverse_word(word)
    mapping = []
    for e in g.basis:
        # Walk back to the old root, run the loop, and return along the
        # forward word relabeled by the loop's witness so the composite is a
        # loop at the new root.
        wit = is_rooted_loop(g.root, e.word, g.mode)
        if wit is None:
            mapping.append(None)
            continue
        sigma = wit[0]
        conj_word = rev + e.word + tuple(sigma(k) for k in word)
        mapping.append(ng.element_of(eng.cluster_set(conj_word)))
    ng.rebase_map = tuple(mapping)
    return ng
