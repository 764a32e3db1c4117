"""Valued quivers, skew-symmetrizable matrices, and their mutation.

A valued quiver of rank n is a loop-free, 2-cycle-free directed graph on
vertices 1..n whose edge (i, j) carries a pair of positive integers
(d_ij, d_ji), together with a positive integer symmetrizer d satisfying
d_i * d_ij == d_ji * d_j on every edge.  Quivers correspond bijectively to
skew-symmetrizable integer matrices, and mutation can be computed either
through the matrix or directly on edges; the matrix route is the oracle of
record and both implementations here are tested against each other.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import gcd


class QuiverInvariantError(ValueError):
    """Structural invariant of a quiver/matrix/permutation is violated."""


class SymmetrizerError(QuiverInvariantError):
    """No positive integer symmetrizer is consistent with the valuations."""


Edge = tuple[int, int, int, int]  # (i, j, d_ij, d_ji): arrow i -> j


@dataclass(frozen=True)
class ValuedQuiver:
    """Immutable valued quiver; the combinatorial half of a seed."""

    n: int
    edges: frozenset[Edge]
    symmetrizer: tuple[int, ...]
    frozen: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise QuiverInvariantError("vertex count must be nonnegative")
        if len(self.symmetrizer) != self.n:
            raise QuiverInvariantError(
                f"symmetrizer length {len(self.symmetrizer)} != n={self.n}"
            )
        if any(d <= 0 for d in self.symmetrizer):
            raise QuiverInvariantError("symmetrizer entries must be positive")
        if any(v < 1 or v > self.n for v in self.frozen):
            raise QuiverInvariantError("frozen vertex out of range")
        seen_pairs: set[frozenset[int]] = set()
        for i, j, a, b in self.edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise QuiverInvariantError(f"edge ({i},{j}) out of range")
            if i == j:
                raise QuiverInvariantError(f"loop edge at vertex {i}")
            pair = frozenset((i, j))
            if pair in seen_pairs:
                raise QuiverInvariantError(
                    f"parallel edge or 2-cycle between {i} and {j}"
                )
            seen_pairs.add(pair)
            if a <= 0 or b <= 0:
                raise QuiverInvariantError(f"nonpositive valuation on edge ({i},{j})")
            if self.symmetrizer[i - 1] * a != b * self.symmetrizer[j - 1]:
                raise QuiverInvariantError(
                    f"symmetrizer condition fails on edge ({i},{j}): "
                    f"d_{i}*{a} != {b}*d_{j}"
                )

    # -- accessors ---------------------------------------------------------

    @property
    def rank(self) -> int:
        """Number of mutable vertices (all of them when nothing is frozen)."""
        return self.n - len(self.frozen)

    @property
    def mutable(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if v not in self.frozen)

    def edge_map(self) -> dict[tuple[int, int], tuple[int, int]]:
        """(i, j) -> (d_ij, d_ji) for every arrow i -> j."""
        return {(i, j): (a, b) for i, j, a, b in self.edges}

    def edge_weight(self, i: int, j: int) -> int:
        """Weight d_ij * d_ji of the edge between i and j, 0 if absent."""
        for a, b, da, db in self.edges:
            if {a, b} == {i, j}:
                return da * db
        return 0

    def neighborhood(self, i: int) -> frozenset[int]:
        out = set()
        for a, b, _, _ in self.edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return frozenset(out)

    def is_leaf(self, i: int) -> bool:
        return len(self.neighborhood(i)) == 1

    @property
    def is_simply_laced(self) -> bool:
        return weight(self) <= 1


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetrizable integer matrix with its symmetrizer."""

    n: int
    b: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]

    def __post_init__(self):
        if len(self.b) != self.n or any(len(row) != self.n for row in self.b):
            raise QuiverInvariantError("matrix shape must be n x n")
        if len(self.symmetrizer) != self.n or any(d <= 0 for d in self.symmetrizer):
            raise QuiverInvariantError("symmetrizer must be n positive integers")
        d = self.symmetrizer
        for i in range(self.n):
            if self.b[i][i] != 0:
                raise QuiverInvariantError("diagonal entries must be zero")
            for j in range(self.n):
                if d[i] * self.b[i][j] != -d[j] * self.b[j][i]:
                    raise QuiverInvariantError(
                        f"not skew-symmetrizable at ({i + 1},{j + 1})"
                    )

    def entry(self, i: int, j: int) -> int:
        return self.b[i - 1][j - 1]


@dataclass(frozen=True)
class Permutation:
    """Bijection on 1..n; images[i-1] = sigma(i)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise QuiverInvariantError("images must be a bijection on 1..n")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) == self(other(i))."""
        if self.n != other.n:
            raise QuiverInvariantError("permutation size mismatch")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @property
    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles in increasing order of smallest element."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_str(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


# ---------------------------------------------------------------------------
# quiver <-> matrix


def quiver_to_matrix(q: ValuedQuiver) -> ExchangeMatrix:
    """B(Q): b_ij = d_ij for an arrow i->j, -d_ij for an arrow j->i, else 0."""
    b = [[0] * q.n for _ in range(q.n)]
    for i, j, a, v in q.edges:
        b[i - 1][j - 1] = a
        b[j - 1][i - 1] = -v
    return ExchangeMatrix(q.n, tuple(tuple(row) for row in b), q.symmetrizer)


def matrix_to_quiver(
    m: ExchangeMatrix, frozen: frozenset[int] | None = None
) -> ValuedQuiver:
    """Inverse of quiver_to_matrix; rejects non-skew-symmetrizable input."""
    edges = set()
    for i in range(1, m.n + 1):
        for j in range(i + 1, m.n + 1):
            bij, bji = m.entry(i, j), m.entry(j, i)
            if bij == 0 and bji == 0:
                continue
            if bij > 0 and bji < 0:
                edges.add((i, j, bij, -bji))
            elif bij < 0 and bji > 0:
                edges.add((j, i, bji, -bij))
            else:
                raise QuiverInvariantError(
                    f"entries ({i},{j}) do not have opposite signs"
                )
    return ValuedQuiver(
        m.n, frozenset(edges), m.symmetrizer, frozenset(frozen or ())
    )


# ---------------------------------------------------------------------------
# mutation


def mutate_matrix(m: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation in direction k: entries in row/col k flip sign, the
    rest gain sign(b_ik) * max(0, b_ik * b_kj)."""
    if not 1 <= k <= m.n:
        raise QuiverInvariantError(f"mutation vertex {k} out of range 1..{m.n}")
    kk = k - 1
    old = m.b
    new = []
    for i in range(m.n):
        row = []
        for j in range(m.n):
            if i == kk or j == kk:
                row.append(-old[i][j])
            else:
                bik, bkj = old[i][kk], old[kk][j]
                sign = (bik > 0) - (bik < 0)
                row.append(old[i][j] + sign * max(0, bik * bkj))
        new.append(tuple(row))
    return ExchangeMatrix(m.n, tuple(new), m.symmetrizer)


def mutate_quiver_via_matrix(q: ValuedQuiver, k: int) -> ValuedQuiver:
    """Mutation through B(Q); oracle of record for the edge rules."""
    _check_mutable(q, k)
    return matrix_to_quiver(mutate_matrix(quiver_to_matrix(q), k), q.frozen)


def mutate_quiver(q: ValuedQuiver, k: int) -> ValuedQuiver:
    """Mutate at vertex k by the direct edge rules.

    (a) arrows incident to k reverse, swapping valuation components;
    (b) a path i -> k -> j induces an edge i -> j with valuation
        (v_ik*v_kj, v_ki*v_jk), merging into an existing i -> j edge by
        componentwise addition;
    (c) against an existing opposite edge j -> i the induced weight cancels:
        the surviving direction is decided by comparing v_ik*v_kj with v_ij,
        equal weights erase the edge;
    (d) the symmetrizer is unchanged.

    Agrees with mutate_quiver_via_matrix on all valid input (tested).
    """
    _check_mutable(q, k)
    em = q.edge_map()
    new: dict[tuple[int, int], tuple[int, int]] = {}
    for (i, j), (a, b) in em.items():
        if k in (i, j):
            new[(j, i)] = (b, a)
        else:
            new[(i, j)] = (a, b)
    sources = [i for (i, j) in em if j == k]
    targets = [j for (i, j) in em if i == k]
    for i in sources:
        for j in targets:
            v_ik, v_ki = em[(i, k)]
            v_kj, v_jk = em[(k, j)]
            p, pr = v_ik * v_kj, v_ki * v_jk
            if (i, j) in em:
                a, b = em[(i, j)]
                new[(i, j)] = (a + p, b + pr)
            elif (j, i) in em:
                v_ji, v_ij = em[(j, i)]
                if p < v_ij:
                    new[(j, i)] = (v_ji - pr, v_ij - p)
                elif p > v_ij:
                    del new[(j, i)]
                    new[(i, j)] = (p - v_ij, abs(v_ji - pr))
                else:
                    del new[(j, i)]
            else:
                new[(i, j)] = (p, pr)
    edges = frozenset((i, j, a, b) for (i, j), (a, b) in new.items())
    return ValuedQuiver(q.n, edges, q.symmetrizer, q.frozen)


def _check_mutable(q: ValuedQuiver, k: int) -> None:
    if not 1 <= k <= q.n:
        raise QuiverInvariantError(f"mutation vertex {k} out of range 1..{q.n}")
    if k in q.frozen:
        raise QuiverInvariantError(f"vertex {k} is frozen")


# ---------------------------------------------------------------------------
# permutation action, freezing, weights


def apply_permutation(q: ValuedQuiver, s: Permutation) -> ValuedQuiver:
    """Relabel vertices by s, carrying valuations, symmetrizer and frozen set."""
    if s.n != q.n:
        raise QuiverInvariantError(f"permutation size {s.n} != quiver size {q.n}")
    edges = frozenset((s(i), s(j), a, b) for i, j, a, b in q.edges)
    d = [0] * q.n
    for i in range(1, q.n + 1):
        d[s(i) - 1] = q.symmetrizer[i - 1]
    return ValuedQuiver(q.n, edges, tuple(d), frozenset(s(v) for v in q.frozen))


def opposite_quiver(q: ValuedQuiver) -> ValuedQuiver:
    """Reverse every arrow (B goes to -B); same symmetrizer and frozen set."""
    edges = frozenset((j, i, b, a) for i, j, a, b in q.edges)
    return ValuedQuiver(q.n, edges, q.symmetrizer, q.frozen)


def freeze(q: ValuedQuiver, mutable_set) -> ValuedQuiver:
    """Freeze the complement of mutable_set; mutation there is then rejected."""
    mutable = set(mutable_set)
    if any(v < 1 or v > q.n for v in mutable):
        raise QuiverInvariantError("mutable vertex out of range")
    frozen = frozenset(v for v in range(1, q.n + 1) if v not in mutable)
    return ValuedQuiver(q.n, q.edges, q.symmetrizer, frozen)


def weight(q: ValuedQuiver) -> int:
    """Max edge weight d_ij * d_ji; 0 for an edgeless quiver (empty max)."""
    return max((a * b for _, _, a, b in q.edges), default=0)


# ---------------------------------------------------------------------------
# symmetrizer inference


def infer_symmetrizer(n: int, edges) -> tuple[int, ...]:
    """Minimal positive integer d with d_i * d_ij == d_ji * d_j on every edge.

    Solves the ratio constraints along a spanning forest with exact rational
    bookkeeping (numerator, denominator pairs), checks consistency on the
    remaining edges, then scales each connected component to the smallest
    positive integers.  Raises SymmetrizerError when the constraints are
    inconsistent.
    """
    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(1, n + 1)}
    for i, j, a, b in edges:
        if a <= 0 or b <= 0:
            raise QuiverInvariantError(
                f"nonpositive valuation on edge ({i},{j})"
            )
        # d_i * a = b * d_j  =>  d_j / d_i = a / b
        adj[i].append((j, a, b))
        adj[j].append((i, b, a))
    ratio: dict[int, tuple[int, int]] = {}
    result = [0] * n
    for start in range(1, n + 1):
        if start in ratio:
            continue
        component = [start]
        ratio[start] = (1, 1)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            ru_num, ru_den = ratio[u]
            for v, a, b in adj[u]:
                # d_v / d_start = (d_u / d_start) * (a / b)
                num, den = ru_num * a, ru_den * b
                g = gcd(num, den)
                num, den = num // g, den // g
                if v in ratio:
                    if ratio[v] != (num, den):
                        raise SymmetrizerError(
                            f"inconsistent valuation ratios at vertex {v}"
                        )
                else:
                    ratio[v] = (num, den)
                    component.append(v)
                    queue.append(v)
        lcm_den = 1
        for v in component:
            d = ratio[v][1]
            lcm_den = lcm_den * d // gcd(lcm_den, d)
        values = [ratio[v][0] * (lcm_den // ratio[v][1]) for v in component]
        g = 0
        for val in values:
            g = gcd(g, val)
        for v, val in zip(component, values):
            result[v - 1] = val // g
    return tuple(result)


def build_quiver(n, edges, symmetrizer=None, frozen=()) -> ValuedQuiver:
    """Convenience constructor; infers the minimal symmetrizer when absent."""
    edge_set = frozenset(tuple(e) for e in edges)
    if symmetrizer is None:
        symmetrizer = infer_symmetrizer(n, edge_set)
    return ValuedQuiver(n, edge_set, tuple(symmetrizer), frozenset(frozen))


def normalize_symmetrizer(q: ValuedQuiver) -> ValuedQuiver:
    """Replace the symmetrizer by the minimal one the valuations determine."""
    return ValuedQuiver(q.n, q.edges, infer_symmetrizer(q.n, q.edges), q.frozen)


# ---------------------------------------------------------------------------
# canonical keys and mutation classes


def quiver_key(q: ValuedQuiver):
    """Labeled structural key: equal keys iff equal quivers."""
    return (q.n, q.symmetrizer, tuple(sorted(q.edges)), tuple(sorted(q.frozen)))


UNLABELED_KEY_MAX_RANK = 8


def quiver_key_unlabeled(q: ValuedQuiver):
    """Lexicographically minimal labeled key over all vertex permutations.

    Cost grows factorially, so ranks above UNLABELED_KEY_MAX_RANK fall back
    to the labeled key (documented cap).
    """
    if q.n > UNLABELED_KEY_MAX_RANK:
        return quiver_key(q)
    best = None
    for images in itertools.permutations(range(1, q.n + 1)):
        key = quiver_key(apply_permutation(q, Permutation(images)))
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True, eq=False)
class QuiverClass:
    """Mutation class [Q]: labeled quivers closed under mutation at mutable
    vertices, with the mutation adjacency and the class weight w[Q]."""

    root: ValuedQuiver
    members: tuple[ValuedQuiver, ...]
    edges: tuple[tuple[int, int, int], ...]  # (member index, vertex, member index)
    truncated: bool
    unlabeled_keys: tuple | None = field(default=None, repr=False)

    @property
    def class_weight(self) -> int:
        """w[Q]: maximum member weight; meaningful when not truncated, a
        lower bound otherwise."""
        return max((weight(m) for m in self.members), default=0)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, q: ValuedQuiver) -> bool:
        return quiver_key(q) in {quiver_key(m) for m in self.members}


def enumerate_quiver_class(
    q: ValuedQuiver, cap: int = 100_000, stop_weight: int | None = None
) -> QuiverClass:
    """BFS closure of q under mutation at mutable vertices.

    Members are deduplicated as labeled quivers.  The truncated flag is set
    when the cap is hit, or when stop_weight is given and a member of at
    least that weight is found (the member is kept so the caller can report
    the obstruction).
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    members = [q]
    index = {quiver_key(q): 0}
    edges = []
    truncated = False
    queue = deque([0])
    if stop_weight is not None and weight(q) >= stop_weight:
        queue.clear()
        truncated = True
    while queue:
        u = queue.popleft()
        stop = False
        for k in members[u].mutable:
            m = mutate_quiver(members[u], k)
            key = quiver_key(m)
            v = index.get(key)
            if v is None:
                if len(members) >= cap:
                    truncated = True
                    continue
                v = len(members)
                index[key] = v
                members.append(m)
                queue.append(v)
                if stop_weight is not None and weight(m) >= stop_weight:
                    stop = True
            edges.append((u, k, v))
        if stop:
            truncated = True
            break
    unlabeled = None
    if q.n <= UNLABELED_KEY_MAX_RANK and len(members) * _factorial(q.n) <= 500_000:
        unlabeled = tuple(quiver_key_unlabeled(m) for m in members)
    return QuiverClass(q, tuple(members), tuple(edges), truncated, unlabeled)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# symmetry search


def find_symmetry(
    q1: ValuedQuiver, q2: ValuedQuiver, allow_sign: bool = False
) -> tuple[Permutation, int] | None:
    """Search for sigma with sigma(q1) == q2, or == the opposite of q2 when
    allow_sign is set (sign -1).  Exact backtracking over assignments that
    are compatible on frozenness, symmetrizer entry and incident valuation
    multisets; returns None when no witness exists (including rank mismatch).
    """
    if q1.n != q2.n:
        return None
    for sign, target in ((1, q2), (-1, opposite_quiver(q2))):
        images = _match_labeled(q1, target)
        if images is not None:
            return Permutation(images), sign
        if not allow_sign:
            break
    return None


def _vertex_signature(q: ValuedQuiver, v: int):
    outs = sorted((a, b) for i, j, a, b in q.edges if i == v)
    ins = sorted((a, b) for i, j, a, b in q.edges if j == v)
    return (v in q.frozen, q.symmetrizer[v - 1], tuple(outs), tuple(ins))


def _match_labeled(q1: ValuedQuiver, q2: ValuedQuiver) -> tuple[int, ...] | None:
    n = q1.n
    if len(q1.edges) != len(q2.edges):
        return None
    sig2: dict = {}
    for v in range(1, n + 1):
        sig2.setdefault(_vertex_signature(q2, v), []).append(v)
    candidates = []
    for v in range(1, n + 1):
        cand = sig2.get(_vertex_signature(q1, v))
        if not cand:
            return None
        candidates.append(sorted(cand))
    order = sorted(range(1, n + 1), key=lambda v: len(candidates[v - 1]))
    em1, em2 = q1.edge_map(), q2.edge_map()
    assigned: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, img: int) -> bool:
        for u, uimg in assigned.items():
            e1 = em1.get((v, u)) or em1.get((u, v))
            e2 = em2.get((img, uimg)) or em2.get((uimg, img))
            if (e1 is None) != (e2 is None):
                return False
            if e1 is None:
                continue
            if (v, u) in em1:
                want = em2.get((img, uimg))
                if want != em1[(v, u)]:
                    return False
            else:
                want = em2.get((uimg, img))
                if want != em1[(u, v)]:
                    return False
        return True

    def backtrack(pos: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        for img in candidates[v - 1]:
            if img in used or not consistent(v, img):
                continue
            assigned[v] = img
            used.add(img)
            if backtrack(pos + 1):
                return True
            del assigned[v]
            used.remove(img)
        return False

    if not backtrack(0):
        return None
    return tuple(assigned[v] for v in range(1, n + 1))


def find_realizing_sequence(
    q: ValuedQuiver, s: Permutation, cap: int = 12
) -> tuple[int, ...] | None:
    """BFS for a mutation word with mu(Q) == sigma(Q), up to depth cap.

    Guaranteed to exist for simply-laced quivers; the search runs on any
    quiver and returns None when exhausted.
    """
    target = apply_permutation(q, s)
    target_key = quiver_key(target)
    if quiver_key(q) == target_key:
        return ()
    seen = {quiver_key(q)}
    queue = deque([(q, ())])
    while queue:
        cur, word = queue.popleft()
        if len(word) >= cap:
            continue
        for k in cur.mutable:
            m = mutate_quiver(cur, k)
            key = quiver_key(m)
            if key == target_key:
                return word + (k,)
            if key not in seen:
                seen.add(key)
                queue.append((m, word + (k,)))
    return None
