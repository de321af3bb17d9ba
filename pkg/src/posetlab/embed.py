"""Copy detection: does a family contain a poset under a given copy notion?

Copy notions over a family F and poset P (phi: P -> F injective):
  weak             phi(x) subset of phi(y) whenever x <= y
  induced          ... if and only if x <= y
  rank_preserving  weak, plus equal ranks map to equal set sizes (P graded)
  colored          weak, plus equal colors map to equal set sizes

The plain modes backtrack directly over poset elements in a Hasse-connected
order, pruning each candidate against the union of assigned lower images
and the intersection of assigned upper images.  The size-constrained modes
first assign a target size to every rank/color class (sizes must strictly
increase between classes containing comparable elements; unrelated classes
may share a size), then backtrack on images within the size classes.

Tie-breaking is fixed: candidate images in canonical family order, class
sizes ascending, so the returned witness is deterministic.  It is the
first embedding found, not a canonical minimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, permutations

from .errors import (
    AlreadyMember,
    EmbedFailed,
    InvalidColoring,
    InvalidParam,
    NotGraded,
)
from .family import elements_of
from .poset import classify_tree, height, rank_assignment

MODES = ("weak", "induced", "rank_preserving", "colored")


@dataclass(frozen=True)
class Embedding:
    """Witness map from poset labels to family bitmasks."""

    mapping: dict
    mode: str

    def to_json_dict(self):
        return {
            "mode": self.mode,
            "map": {x: elements_of(m) for x, m in self.mapping.items()},
        }


def validate_coloring(poset, coloring):
    """Colorings must cover exactly the elements and keep every color class
    an antichain."""
    if coloring is None:
        raise InvalidColoring("a coloring is required")
    if set(coloring) != set(poset.elements):
        raise InvalidColoring("coloring domain must be exactly the poset elements")
    n = len(poset.elements)
    for i in range(n):
        for j in range(i + 1, n):
            if coloring[poset.elements[i]] == coloring[poset.elements[j]] and (
                poset.up[i] >> j & 1 or poset.up[j] >> i & 1
            ):
                raise InvalidColoring(
                    f"comparable elements {poset.elements[i]!r}, "
                    f"{poset.elements[j]!r} share a color"
                )


def _check_mode(mode):
    if mode not in MODES:
        raise InvalidParam(f"unknown mode {mode!r}")


def ensure_mode_applicable(poset, mode, coloring=None):
    """Raise the mode's precondition errors (NotGraded, InvalidColoring)
    without running any search."""
    _check_mode(mode)
    if mode in ("rank_preserving", "colored"):
        _class_setup(poset, mode, coloring)


@lru_cache(maxsize=None)
def _element_order(poset):
    """DFS order over the Hasse graph so almost every element is placed next
    to an already-placed neighbour."""
    n = len(poset.elements)
    adj = [[] for _ in range(n)]
    for a, b in poset.covers:
        i, j = poset.index[a], poset.index[b]
        adj[i].append(j)
        adj[j].append(i)
    for lst in adj:
        lst.sort()
    order = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            i = stack.pop()
            order.append(i)
            for j in reversed(adj[i]):
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
    return tuple(order)


@lru_cache(maxsize=None)
def _graded_ranks(poset):
    ra = rank_assignment(poset)
    return ra.ranks if ra.graded else None


def _class_setup(poset, mode, coloring):
    """Class index per element plus the strict between-class order."""
    if mode == "rank_preserving":
        ranks = _graded_ranks(poset)
        if ranks is None:
            raise NotGraded("rank-preserving copies need a graded poset")
        raw = [ranks[x] for x in poset.elements]
    else:
        validate_coloring(poset, coloring)
        raw = [coloring[x] for x in poset.elements]
    ids = sorted(set(raw))
    cid = {c: i for i, c in enumerate(ids)}
    cls_of = [cid[c] for c in raw]
    k = len(ids)
    less = [[False] * k for _ in range(k)]
    n = len(poset.elements)
    for i in range(n):
        for j in range(n):
            if i != j and poset.up[i] >> j & 1:
                less[cls_of[i]][cls_of[j]] = True
    class_count = [cls_of.count(c) for c in range(k)]
    return cls_of, less, class_count


def _backtrack_images(fam, poset, mode, size_of, forced):
    """Search for an injective image assignment; returns element-index ->
    mask dict or None."""
    order = _element_order(poset)
    n_el = len(order)
    up, down = poset.up, poset.down
    members = fam.members
    by_size = fam.by_size
    induced = mode == "induced"
    image = {}
    used = set()

    def extend(k):
        if k == n_el:
            return True
        e = order[k]
        if forced is not None and e in forced:
            cand = (forced[e],)
        elif size_of is not None:
            cand = by_size.get(size_of[e], ())
        else:
            cand = members
        lower = 0
        upper = -1
        incomp = []
        de, ue = down[e], up[e]
        for f, mf in image.items():
            if de >> f & 1:
                lower |= mf
            elif ue >> f & 1:
                upper &= mf
            elif induced:
                incomp.append(mf)
        for s in cand:
            if s in used or lower & ~s or s & ~upper:
                continue
            if induced and any(s & ~mf == 0 or mf & ~s == 0 for mf in incomp):
                continue
            image[e] = s
            used.add(s)
            if extend(k + 1):
                return True
            del image[e]
            used.discard(s)
        return False

    return dict(image) if extend(0) else None


def _find_embedding(fam, poset, mode, coloring, forced):
    n_el = len(poset.elements)
    if n_el > len(fam.members):
        if mode in ("rank_preserving", "colored"):
            _class_setup(poset, mode, coloring)  # still surface mode errors
        return None
    if mode in ("weak", "induced"):
        return _backtrack_images(fam, poset, mode, None, forced)

    cls_of, less, class_count = _class_setup(poset, mode, coloring)
    k = len(class_count)
    sizes_avail = sorted(fam.by_size)
    counts = {s: len(fam.by_size[s]) for s in sizes_avail}
    forced_sizes = {}
    if forced:
        for e, mask in forced.items():
            c = cls_of[e]
            s = bin(mask).count("1")
            if forced_sizes.get(c, s) != s:
                return None
            forced_sizes[c] = s
    assign = [None] * k
    found = None

    def assign_classes(ci):
        nonlocal found
        if ci == k:
            size_of = [assign[c] for c in cls_of]
            found = _backtrack_images(fam, poset, mode, size_of, forced)
            return
        for s in sizes_avail:
            if ci in forced_sizes and s != forced_sizes[ci]:
                continue
            need = class_count[ci] + sum(
                class_count[cj] for cj in range(ci) if assign[cj] == s
            )
            if need > counts[s]:
                continue
            if any(
                (less[cj][ci] and assign[cj] >= s) or (less[ci][cj] and s >= assign[cj])
                for cj in range(ci)
            ):
                continue
            assign[ci] = s
            assign_classes(ci + 1)
            assign[ci] = None
            if found is not None:
                return

    assign_classes(0)
    return found


def _to_embedding(image, poset, mode):
    return Embedding({poset.elements[e]: m for e, m in sorted(image.items())}, mode)


def find_copy(fam, poset, mode="weak", coloring=None):
    """First copy of the poset in the family under the given mode, or None."""
    _check_mode(mode)
    image = _find_embedding(fam, poset, mode, coloring, None)
    return None if image is None else _to_embedding(image, poset, mode)


def find_colored_copy(fam, poset, coloring):
    """Copy whose equal-colored elements get equal set sizes; with the rank
    coloring of a graded poset this coincides with rank_preserving."""
    return find_copy(fam, poset, "colored", coloring)


def creates_copy_through(fam, poset, mode, new_mask, coloring=None):
    """Witness copy in family + {new_mask} whose image uses new_mask, or
    None.  This is the whole freeness delta of adding one set."""
    _check_mode(mode)
    if new_mask in fam:
        raise AlreadyMember(f"mask {new_mask} is already a member")
    aug = fam.with_member(new_mask)
    for e in range(len(poset.elements)):
        image = _find_embedding(aug, poset, mode, coloring, {e: new_mask})
        if image is not None:
            return _to_embedding(image, poset, mode)
    return None


# ---------------------------------------------------------------------------
# Reference matcher: try every injective assignment.  Kept deliberately
# naive; it is the second route that the backtracking matcher is checked
# against.

def _copy_conditions(poset, mode, coloring):
    n = len(poset.elements)
    strict = [(i, j) for i in range(n) for j in range(n) if i != j and poset.up[i] >> j & 1]
    incomp = None
    if mode == "induced":
        incomp = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if not (poset.up[i] >> j & 1 or poset.up[j] >> i & 1)
        ]
    classes = None
    if mode in ("rank_preserving", "colored"):
        cls_of, _, _ = _class_setup(poset, mode, coloring)
        classes = cls_of
    return strict, incomp, classes


def is_copy_image(masks, poset, mode="weak", coloring=None):
    """True iff the masks, as a whole subfamily, are the image of some copy."""
    _check_mode(mode)
    masks = tuple(masks)
    n = len(poset.elements)
    if len(masks) != n or len(set(masks)) != n:
        return False
    strict, incomp, classes = _copy_conditions(poset, mode, coloring)
    for perm in permutations(masks):
        if any(perm[i] & ~perm[j] for i, j in strict):
            continue
        if incomp is not None and any(
            perm[i] & ~perm[j] == 0 or perm[j] & ~perm[i] == 0 for i, j in incomp
        ):
            continue
        if classes is not None and any(
            bin(perm[i]).count("1") != bin(perm[j]).count("1")
            for i in range(n)
            for j in range(i + 1, n)
            if classes[i] == classes[j]
        ):
            continue
        return True
    return False


def find_copy_bruteforce(fam, poset, mode="weak", coloring=None):
    """Same contract as :func:`find_copy`, by exhaustive injective search."""
    _check_mode(mode)
    n = len(poset.elements)
    strict, incomp, classes = _copy_conditions(poset, mode, coloring)
    for combo in combinations(fam.members, n):
        for perm in permutations(combo):
            if any(perm[i] & ~perm[j] for i, j in strict):
                continue
            if incomp is not None and any(
                perm[i] & ~perm[j] == 0 or perm[j] & ~perm[i] == 0 for i, j in incomp
            ):
                continue
            if classes is not None and any(
                bin(perm[i]).count("1") != bin(perm[j]).count("1")
                for i in range(n)
                for j in range(i + 1, n)
                if classes[i] == classes[j]
            ):
                continue
            return Embedding(
                {poset.elements[i]: perm[i] for i in range(n)}, mode
            )
    return None


def check_embedding(poset, mapping, mode="weak", coloring=None, family=None):
    """Validate a witness: injectivity, order conditions, size conditions,
    and optionally membership in a family."""
    _check_mode(mode)
    if set(mapping) != set(poset.elements):
        return False
    masks = [mapping[x] for x in poset.elements]
    if len(set(masks)) != len(masks):
        return False
    if family is not None and any(m not in family for m in masks):
        return False
    strict, incomp, classes = _copy_conditions(poset, mode, coloring)
    if any(masks[i] & ~masks[j] for i, j in strict):
        return False
    if incomp is not None and any(
        masks[i] & ~masks[j] == 0 or masks[j] & ~masks[i] == 0 for i, j in incomp
    ):
        return False
    if classes is not None:
        n = len(masks)
        for i in range(n):
            for j in range(i + 1, n):
                if classes[i] == classes[j] and bin(masks[i]).count("1") != bin(
                    masks[j]
                ).count("1"):
                    return False
    return True


# ---------------------------------------------------------------------------
# Inclusion bigraphs and the greedy tree embedding.

@dataclass(frozen=True)
class InclusionBigraph:
    """Bipartite inclusion graph between two fixed set sizes.

    Vertices are masks (left side strictly smaller sets); the edge set is
    always exactly the inclusion relation, so induced subgraphs stay
    consistent by construction.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(sorted(set(self.left))))
        object.__setattr__(self, "right", tuple(sorted(set(self.right))))
        lsizes = {bin(m).count("1") for m in self.left}
        rsizes = {bin(m).count("1") for m in self.right}
        if len(lsizes) > 1 or len(rsizes) > 1:
            raise InvalidParam("each side must be a single set size")
        if lsizes and rsizes and max(lsizes) >= min(rsizes):
            raise InvalidParam("left side must be the strictly smaller size")

    @cached_property
    def left_adj(self):
        return tuple(
            tuple(ri for ri, b in enumerate(self.right) if a & ~b == 0)
            for a in self.left
        )

    @cached_property
    def right_adj(self):
        adj = [[] for _ in self.right]
        for li, nbrs in enumerate(self.left_adj):
            for ri in nbrs:
                adj[ri].append(li)
        return tuple(tuple(x) for x in adj)

    @property
    def edge_count(self):
        return sum(len(nbrs) for nbrs in self.left_adj)

    @property
    def vertex_count(self):
        return len(self.left) + len(self.right)

    def average_degree(self):
        if self.vertex_count == 0:
            return Fraction(0)
        return Fraction(2 * self.edge_count, self.vertex_count)


def build_inclusion_bigraph(fam, i, j):
    """Inclusion bigraph between the size-i and size-j members."""
    if i >= j:
        raise InvalidParam("need i < j")
    return InclusionBigraph(fam.by_size.get(i, ()), fam.by_size.get(j, ()))


def min_degree_subgraph(graph, d):
    """Maximal subgraph with minimum degree >= d (the d-core).

    Peeling repeatedly deletes the lowest-indexed vertex of minimum degree
    (left vertices indexed before right) while that minimum is below d; the
    surviving subgraph is order-independent, the trace is reproducible.
    """
    if d < 1:
        raise InvalidParam("need d >= 1")
    alive = [True] * graph.vertex_count
    nl = len(graph.left)
    deg = [len(a) for a in graph.left_adj] + [len(a) for a in graph.right_adj]

    def neighbours(v):
        if v < nl:
            return (nl + ri for ri in graph.left_adj[v])
        return iter(graph.right_adj[v - nl])

    while True:
        best = None
        for v in range(len(alive)):
            if alive[v] and (best is None or deg[v] < deg[best]):
                best = v
        if best is None or deg[best] >= d:
            break
        alive[best] = False
        for u in neighbours(best):
            if alive[u]:
                deg[u] -= 1
    return InclusionBigraph(
        tuple(graph.left[v] for v in range(nl) if alive[v]),
        tuple(graph.right[ri] for ri in range(len(graph.right)) if alive[nl + ri]),
    )


def greedy_tree_embed(graph, tree):
    """Greedily embed a height-2 tree poset: minimal elements onto left
    vertices, maximal onto right, Hasse edges onto inclusion edges.

    Succeeds whenever the graph has minimum degree >= |tree| - 1; with less
    it may raise EmbedFailed even though an embedding exists.
    """
    if classify_tree(tree) == "not_tree" or height(tree) != 2:
        raise InvalidParam("need a height-2 tree poset")
    ranks = rank_assignment(tree).ranks
    n = len(tree.elements)
    adj = [[] for _ in range(n)]
    for a, b in tree.covers:
        i, j = tree.index[a], tree.index[b]
        adj[i].append(j)
        adj[j].append(i)
    for lst in adj:
        lst.sort()
    parent = {0: None}
    order = [0]
    queue = [0]
    while queue:
        i = queue.pop(0)
        for j in adj[i]:
            if j not in parent:
                parent[j] = i
                order.append(j)
                queue.append(j)
    sides = (graph.left, graph.right)
    adj_from = (graph.left_adj, graph.right_adj)
    used = (set(), set())
    slot = {}
    for e in order:
        side = ranks[tree.elements[e]]
        if parent[e] is None:
            pool = range(len(sides[side]))
        else:
            p = parent[e]
            pool = adj_from[1 - side][slot[p]]
        choice = next((v for v in pool if v not in used[side]), None)
        if choice is None:
            raise EmbedFailed(tree.elements[e])
        slot[e] = choice
        used[side].add(choice)
    mapping = {tree.elements[e]: sides[ranks[tree.elements[e]]][v] for e, v in slot.items()}
    return Embedding(mapping, "rank_preserving")
