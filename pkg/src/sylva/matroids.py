"""Independence-oracle matroids and the matroid partition/union algorithm.

The union algorithm is the augmenting-path scheme on the exchange digraph:
arcs x -> y whenever y can replace x in x's current class, sources are the
elements insertable into some class, and a breadth-first search (lowest
element id first) finds the shortest source-to-unlabeled path.  At
termination the set X of elements not reachable from any source minimizes
|S - X| + sum_i r_i(X), which certifies the returned rank.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import DisjointSet, Graph
from .errors import InputError, MatroidInconsistencyError


class Matroid:
    """Independence oracle over the ground set 0..size-1."""

    size: int

    def is_independent(self, subset: frozenset[int]) -> bool:
        raise NotImplementedError

    def rank(self, subset=None) -> int:
        """Greedy rank of a subset (default: whole ground set)."""
        elems = range(self.size) if subset is None else sorted(subset)
        current: set[int] = set()
        for e in elems:
            if self.is_independent(frozenset(current | {e})):
                current.add(e)
        return len(current)

    def greedy_basis(self, subset=None) -> frozenset[int]:
        """Lowest-id basis of a subset, by the greedy algorithm."""
        elems = range(self.size) if subset is None else sorted(subset)
        current: set[int] = set()
        for e in elems:
            if self.is_independent(frozenset(current | {e})):
                current.add(e)
        return frozenset(current)


class FreeMatroid(Matroid):
    def __init__(self, size: int):
        self.size = size

    def is_independent(self, subset):
        return True


class UniformMatroid(Matroid):
    """Independent iff at most r elements."""

    def __init__(self, size: int, r: int):
        if r < 0:
            raise InputError("negative rank bound")
        self.size = size
        self.r = r

    def is_independent(self, subset):
        return len(subset) <= self.r


class GraphicMatroid(Matroid):
    """Independent = forest.  Ground element i is the i-th edge in id order
    (identical to the id itself on densely numbered graphs); `ids` /
    `positions` translate between the two despite sparse ids on derived
    graphs."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.size = graph.m
        ordered = sorted(graph.edges)
        self.ids: tuple[int, ...] = tuple(e[0] for e in ordered)
        self._pairs = [(u, v) for _, u, v in ordered]
        self._pos = {eid: i for i, eid in enumerate(self.ids)}

    def positions(self, edge_ids) -> frozenset[int]:
        return frozenset(self._pos[eid] for eid in edge_ids)

    def ids_of(self, positions) -> tuple[int, ...]:
        return tuple(sorted(self.ids[p] for p in positions))

    def is_independent(self, subset):
        dsu = DisjointSet(self.graph.n)
        return all(dsu.union(*self._pairs[e]) for e in subset)


class PartitionMatroid(Matroid):
    """Per-class capacities: independent iff no class is over its cap."""

    def __init__(self, size: int, class_of: list[int], caps: list[int]):
        if len(class_of) != size:
            raise InputError("class_of must assign every element")
        if any(c < 0 or c >= len(caps) for c in class_of):
            raise InputError("class index out of range")
        if any(cap < 0 for cap in caps):
            raise InputError("negative capacity")
        self.size = size
        self.class_of = list(class_of)
        self.caps = list(caps)

    def is_independent(self, subset):
        counts = [0] * len(self.caps)
        for e in subset:
            c = self.class_of[e]
            counts[c] += 1
            if counts[c] > self.caps[c]:
                return False
        return True


class TruncatedMatroid(Matroid):
    """Same matroid with rank capped at r."""

    def __init__(self, base: Matroid, r: int):
        if r < 0:
            raise InputError("negative truncation rank")
        self.base = base
        self.size = base.size
        self.r = r

    def is_independent(self, subset):
        return len(subset) <= self.r and self.base.is_independent(subset)


class MinorMatroid(Matroid):
    """Restriction plus contraction on the same ground set.

    Elements outside `allowed` (and the contracted ones) become loops, so
    the ground set stays aligned across a union run.  Independence of I is
    tested as M-independence of I together with a fixed lowest-id basis of
    the contracted set.
    """

    def __init__(self, base: Matroid, allowed=None, contracted=()):
        self.base = base
        self.size = base.size
        contracted = frozenset(contracted)
        allowed = frozenset(range(base.size)) if allowed is None else frozenset(allowed)
        self.allowed = allowed - contracted
        self.contract_basis = base.greedy_basis(contracted)

    def is_independent(self, subset):
        if not subset <= self.allowed:
            return False
        return self.base.is_independent(frozenset(subset) | self.contract_basis)


def k_copies(matroid: Matroid, k: int) -> list[Matroid]:
    return [matroid] * k


@dataclass(frozen=True)
class Labeling:
    """Assignment of each ground-set element to one of k parts, or unused."""

    k: int
    labels: tuple[int | None, ...]

    def parts(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for e, lab in enumerate(self.labels):
            if lab is not None:
                out[lab].append(e)
        return out

    @property
    def labeled_count(self) -> int:
        return sum(lab is not None for lab in self.labels)

    def verify(self, matroids: list[Matroid]) -> bool:
        """Re-check every class against the raw oracles."""
        return all(
            matroids[i].is_independent(frozenset(part))
            for i, part in enumerate(self.parts())
        )


@dataclass(frozen=True)
class UnionResult:
    labeling: Labeling
    rank: int
    certificate: frozenset[int]


class _UnionRun:
    """One maximisation run; memoizes oracle queries per distinct oracle."""

    def __init__(self, matroids: list[Matroid]):
        if not matroids:
            raise InputError("need at least one matroid")
        sizes = {m.size for m in matroids}
        if len(sizes) != 1:
            raise InputError("matroids must share a ground set")
        self.matroids = matroids
        self.size = matroids[0].size
        self.k = len(matroids)
        self.classes: list[set[int]] = [set() for _ in range(self.k)]
        self.label: list[int | None] = [None] * self.size
        self._memo: dict[int, dict[frozenset[int], bool]] = {}
        for i, m in enumerate(matroids):
            if not self._indep(i, frozenset()):
                raise MatroidInconsistencyError(f"oracle {i} rejects the empty set")

    def _indep(self, i: int, subset: frozenset[int]) -> bool:
        cache = self._memo.setdefault(id(self.matroids[i]), {})
        hit = cache.get(subset)
        if hit is None:
            hit = cache[subset] = bool(self.matroids[i].is_independent(subset))
        return hit

    def _insertion_class(self, e: int) -> int | None:
        for i in range(self.k):
            if e not in self.classes[i] and self._indep(i, frozenset(self.classes[i] | {e})):
                return i
        return None

    def _apply_path(self, path: list[int], into: int) -> None:
        """Relabel along a source->target exchange path.

        path[0] moves into class `into`; each later element takes over the
        class its predecessor vacated; path[-1] was unlabeled and becomes
        labeled.  Classes are re-verified afterwards (non-matroid oracles
        surface here rather than corrupting the run).
        """
        vacated = [self.label[e] for e in path]
        self._move(path[0], into)
        for j in range(1, len(path)):
            self._move(path[j], vacated[j - 1])
        for i in range(self.k):
            if not self._indep(i, frozenset(self.classes[i])):
                raise MatroidInconsistencyError(
                    f"class {i} became dependent after an exchange; "
                    "oracle violates the matroid axioms"
                )

    def _move(self, e: int, cls: int | None) -> None:
        old = self.label[e]
        if old is not None:
            self.classes[old].discard(e)
        self.label[e] = cls
        if cls is not None:
            self.classes[cls].add(e)

    def _search(self, target: int | None, augment: bool) -> bool | frozenset[int]:
        """BFS over the exchange digraph from all sources.

        With augment=True, performs the relabeling for the first unlabeled
        element reached (or `target` if given) and reports success.  With
        augment=False, returns the set of reachable elements.
        """
        parent: dict[int, int] = {}
        into: dict[int, int] = {}
        queue: deque[int] = deque()
        seen: set[int] = set()

        for e in range(self.size):
            cls = self._insertion_class(e)
            if cls is None:
                continue
            if augment and self.label[e] is None and (target is None or e == target):
                self._apply_path([e], cls)
                return True
            seen.add(e)
            into[e] = cls
            queue.append(e)

        while queue:
            x = queue.popleft()
            if self.label[x] is None:
                continue  # unlabeled non-target: dead end, no out-arcs
            i = self.label[x]
            base = frozenset(self.classes[i] - {x})
            for y in range(self.size):
                if y in seen or y in self.classes[i]:
                    continue
                if not self._indep(i, base | {y}):
                    continue
                seen.add(y)
                parent[y] = x
                if augment and self.label[y] is None and (target is None or y == target):
                    path = [y]
                    while path[-1] in parent:
                        path.append(parent[path[-1]])
                    path.reverse()
                    self._apply_path(path, into[path[0]])
                    return True
                queue.append(y)
        if augment:
            return False
        return frozenset(seen)

    def maximize(self) -> None:
        while self._search(None, True):
            pass

    def add_greedy(self, e: int) -> bool:
        """Targeted augmentation: grow the labeled set by exactly e."""
        if self.label[e] is not None:
            raise InputError(f"element {e} already labeled")
        return bool(self._search(e, True))

    def result(self) -> UnionResult:
        reachable = self._search(None, False)
        certificate = frozenset(range(self.size)) - reachable
        labeling = Labeling(self.k, tuple(self.label))
        return UnionResult(labeling, labeling.labeled_count, certificate)


def matroid_union_max(
    matroids: list[Matroid],
    weights: list[float] | None = None,
) -> UnionResult:
    """Maximum-size (or max-weight) set partitionable into per-matroid
    independent classes, plus the rank-formula minimizer as certificate.

    Unweighted, the returned rank equals min over X of |S-X| + sum_i r_i(X)
    and `certificate` attains the minimum.  With weights, a greedy pass over
    the union oracle returns a max-weight union-independent labeling
    (elements of non-positive weight are never used); the certificate is
    that of the final labeled set and is a true minimizer whenever all
    weights are positive.
    """
    run = _UnionRun(matroids)
    if weights is None:
        run.maximize()
    else:
        if len(weights) != run.size:
            raise InputError("one weight per ground-set element required")
        order = sorted(range(run.size), key=lambda e: (-weights[e], e))
        for e in order:
            if weights[e] <= 0:
                continue
            run.add_greedy(e)
    return run.result()


def corank(matroid: Matroid, subset) -> int:
    """min |X ∩ B| over bases B, i.e. r(S) - r(S - X)."""
    subset = frozenset(subset)
    rest = frozenset(range(matroid.size)) - subset
    return matroid.rank() - matroid.rank(rest)


@dataclass(frozen=True)
class BasisPacking:
    labeling: Labeling


@dataclass(frozen=True)
class PackDeficiency:
    """Witness X with |X| < sum_i t_i(X): no disjoint bases exist."""

    elements: frozenset[int]
    coranks: tuple[int, ...]

    @property
    def bound(self) -> int:
        return sum(self.coranks)


def pack_bases(matroids: list[Matroid]):
    """Disjoint bases B_i of M_i, or a co-rank violation set."""
    res = matroid_union_max(matroids)
    target = sum(m.rank() for m in matroids)
    if res.rank == target:
        return BasisPacking(res.labeling)
    elements = frozenset(range(matroids[0].size)) - res.certificate
    cor = tuple(corank(m, elements) for m in matroids)
    witness = PackDeficiency(elements, cor)
    if len(elements) >= witness.bound:
        raise MatroidInconsistencyError("deficiency witness failed its own check")
    return witness


@dataclass(frozen=True)
class IndependentCover:
    labeling: Labeling


@dataclass(frozen=True)
class CoverViolation:
    """Witness X with |X| > sum_i r_i(X): no cover by independent sets."""

    elements: frozenset[int]
    ranks: tuple[int, ...]

    @property
    def bound(self) -> int:
        return sum(self.ranks)


def cover_by_independent(matroids: list[Matroid]):
    """Partition of S into per-matroid independent sets, or a rank violation."""
    res = matroid_union_max(matroids)
    if res.rank == matroids[0].size:
        return IndependentCover(res.labeling)
    x = res.certificate
    ranks = tuple(m.rank(x) for m in matroids)
    witness = CoverViolation(x, ranks)
    if len(x) <= witness.bound:
        raise MatroidInconsistencyError("violation witness failed its own check")
    return witness


def shift_one(
    matroids: list[Matroid],
    labeling: Labeling,
    into: int,
    donors,
) -> Labeling | None:
    """Move one unit of class size from some donor class into `into`.

    Uses the same exchange digraph as the union search: the head of the
    path enters `into`, every later element takes over the class its
    predecessor vacated, and the tail (an element labeled with a donor
    class) simply leaves.  All other class sizes are unchanged.  Returns
    None when no such chain exists.
    """
    donors = set(donors)
    donors.discard(into)
    size = matroids[0].size
    classes: list[set[int]] = [set() for _ in matroids]
    label = list(labeling.labels)
    for e, lab in enumerate(label):
        if lab is not None:
            classes[lab].add(e)

    memo: dict[int, dict[frozenset[int], bool]] = {}

    def indep(i: int, subset: frozenset[int]) -> bool:
        cache = memo.setdefault(id(matroids[i]), {})
        hit = cache.get(subset)
        if hit is None:
            hit = cache[subset] = bool(matroids[i].is_independent(subset))
        return hit

    parent: dict[int, int] = {}
    queue: deque[int] = deque()
    seen: set[int] = set()
    found: int | None = None
    for e in range(size):
        if label[e] is None or e in classes[into]:
            continue
        if indep(into, frozenset(classes[into] | {e})):
            seen.add(e)
            if label[e] in donors:
                found = e
                break
            queue.append(e)
    while found is None and queue:
        x = queue.popleft()
        i = label[x]
        base = frozenset(classes[i] - {x})
        for y in range(size):
            if y in seen or y in classes[i] or label[y] is None:
                continue
            if not indep(i, base | {y}):
                continue
            seen.add(y)
            parent[y] = x
            if label[y] in donors:
                found = y
                break
            queue.append(y)
    if found is None:
        return None
    path = [found]
    while path[-1] in parent:
        path.append(parent[path[-1]])
    path.reverse()
    vacated = [label[e] for e in path]
    label[path[0]] = into
    for j in range(1, len(path)):
        label[path[j]] = vacated[j - 1]
    out = Labeling(labeling.k, tuple(label))
    if not out.verify(matroids):
        raise MatroidInconsistencyError("class became dependent during a shift")
    return out


def union_rank_formula_value(matroids: list[Matroid], x) -> int:
    """|S - X| + sum_i r_i(X), the quantity the certificate minimizes."""
    x = frozenset(x)
    size = matroids[0].size
    return (size - len(x)) + sum(m.rank(x) for m in matroids)


def audit_matroid(matroid: Matroid, rng, trials: int = 60) -> None:
    """Randomized spot-check of the matroid axioms; raises on any failure.

    Checks: empty set independent; independence is hereditary; the exchange
    axiom holds for sampled independent pairs of different sizes.
    """
    size = matroid.size
    if not matroid.is_independent(frozenset()):
        raise MatroidInconsistencyError("empty set dependent")
    for _ in range(trials):
        sample = frozenset(e for e in range(size) if rng.random() < 0.5)
        if matroid.is_independent(sample):
            if sample:
                drop = rng.choice(sorted(sample))
                if not matroid.is_independent(sample - {drop}):
                    raise MatroidInconsistencyError("hereditary axiom failed")
        bigger = matroid.greedy_basis(sample)
        smaller_pool = frozenset(e for e in range(size) if rng.random() < 0.4)
        smaller = matroid.greedy_basis(smaller_pool)
        if len(smaller) < len(bigger):
            if not any(
                matroid.is_independent(smaller | {e})
                for e in bigger - smaller
            ):
                raise MatroidInconsistencyError("exchange axiom failed")


def brute_force_union_rank(matroids: list[Matroid]) -> int:
    """Exhaustive max over labelings; exponential, for cross-checks only."""
    size = matroids[0].size
    k = len(matroids)
    best = 0
    elements = list(range(size))

    def extend(idx: int, classes: list[set[int]], used: int) -> None:
        nonlocal best
        best = max(best, used)
        if idx == size or used + (size - idx) <= best:
            return
        e = elements[idx]
        for i in range(k):
            if matroids[i].is_independent(frozenset(classes[i] | {e})):
                classes[i].add(e)
                extend(idx + 1, classes, used + 1)
                classes[i].discard(e)
        extend(idx + 1, classes, used)

    extend(0, [set() for _ in range(k)], 0)
    return best
