"""Finite posets given by Hasse diagrams.

Elements carry opaque string labels.  Posets are capped at 64 elements so
the full order relation fits in one bitmask per element: ``up[i]`` has bit
``j`` set iff element i <= element j.  Construction goes through
:func:`poset_from_covers`, which closes, checks acyclicity and stores the
transitively reduced cover list; instances are immutable afterwards.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import CycleError, DuplicateLabel, InvalidParam

MAX_ELEMENTS = 64

TREE_CLASSES = ("not_tree", "tree", "monotone_increasing", "monotone_decreasing")


@dataclass(frozen=True)
class Poset:
    """Immutable poset: labels in fixed order plus an irredundant cover list.

    ``covers`` must already be transitively reduced and acyclic; use
    :func:`poset_from_covers` for raw input.
    """

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    def __len__(self):
        return len(self.elements)

    @cached_property
    def index(self):
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def cover_children(self):
        """cover_children[i] = sorted indices j with element_i covered-by element_j."""
        succ = [[] for _ in self.elements]
        idx = self.index
        for a, b in self.covers:
            succ[idx[a]].append(idx[b])
        return tuple(tuple(sorted(s)) for s in succ)

    @cached_property
    def cover_parents(self):
        pred = [[] for _ in self.elements]
        idx = self.index
        for a, b in self.covers:
            pred[idx[b]].append(idx[a])
        return tuple(tuple(sorted(p)) for p in pred)

    @cached_property
    def up(self):
        """up[i]: bitmask of indices j with element_i <= element_j (reflexive)."""
        n = len(self.elements)
        up = [0] * n
        done = [False] * n

        def visit(i):
            if done[i]:
                return
            m = 1 << i
            for j in self.cover_children[i]:
                visit(j)
                m |= up[j]
            up[i] = m
            done[i] = True

        for i in range(n):
            visit(i)
        return tuple(up)

    @cached_property
    def down(self):
        """down[i]: bitmask of indices j with element_j <= element_i (reflexive)."""
        n = len(self.elements)
        down = [1 << i for i in range(n)]
        for i in range(n):
            ui = self.up[i]
            for j in range(n):
                if ui >> j & 1:
                    down[j] |= 1 << i
        return tuple(down)

    def le(self, a, b):
        """a <= b in the partial order (labels)."""
        return self.up[self.index[a]] >> self.index[b] & 1 == 1

    def lt(self, a, b):
        return a != b and self.le(a, b)


def poset_from_covers(elements, covers):
    """Build a poset from labels and relation pairs (x below y).

    The pairs may be any subset of the intended order; the stored cover
    list is the transitive reduction of their reflexive-transitive
    closure.  Raises CycleError if the closure is not antisymmetric,
    DuplicateLabel on repeated labels.
    """
    labels = tuple(elements)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("element labels must be unique")
    if len(labels) > MAX_ELEMENTS:
        raise InvalidParam(f"at most {MAX_ELEMENTS} elements supported")
    idx = {x: i for i, x in enumerate(labels)}
    n = len(labels)
    reach = [1 << i for i in range(n)]
    for a, b in covers:
        if a not in idx or b not in idx:
            raise InvalidParam(f"cover pair ({a!r}, {b!r}) uses an unknown label")
        if a == b:
            raise CycleError(f"self-relation on {a!r}")
        reach[idx[a]] |= 1 << idx[b]
    # Warshall closure over bitmask rows.
    for j in range(n):
        rj = reach[j]
        for i in range(n):
            if reach[i] >> j & 1:
                reach[i] |= rj
    for i in range(n):
        for j in range(i + 1, n):
            if reach[i] >> j & 1 and reach[j] >> i & 1:
                raise CycleError(f"{labels[i]!r} and {labels[j]!r} lie on a cycle")
    strict = [reach[i] & ~(1 << i) for i in range(n)]
    below = [0] * n
    for i in range(n):
        si = strict[i]
        for j in range(n):
            if si >> j & 1:
                below[j] |= 1 << i
    reduced = []
    for i in range(n):
        si = strict[i]
        for j in range(n):
            if si >> j & 1 and strict[i] & below[j] & ~(1 << i) & ~(1 << j) == 0:
                reduced.append((labels[i], labels[j]))
    return Poset(labels, tuple(sorted(reduced)))


def dual(p):
    """The same elements with the order reversed."""
    return Poset(p.elements, tuple(sorted((b, a) for a, b in p.covers)))


@dataclass(frozen=True)
class RankAssignment:
    """Longest-chain ranks; graded iff every cover jumps by exactly 1."""

    ranks: dict
    graded: bool


def rank_assignment(p):
    """rank(x) = edge count of the longest chain ending at x."""
    n = len(p.elements)
    rank = [0] * n
    order = sorted(range(n), key=lambda i: bin(p.down[i]).count("1"))
    for i in order:
        parents = p.cover_parents[i]
        rank[i] = 1 + max((rank[j] for j in parents), default=-1)
    graded = all(rank[p.index[b]] - rank[p.index[a]] == 1 for a, b in p.covers)
    return RankAssignment({x: rank[i] for i, x in enumerate(p.elements)}, graded)


def height(p):
    """Number of levels: 1 + max rank (0 for the empty poset)."""
    if not p.elements:
        return 0
    return 1 + max(rank_assignment(p).ranks.values())


def rank_coloring(p):
    """Coloring by rank; classes are antichains for any poset."""
    return dict(rank_assignment(p).ranks)


def classify_tree(p):
    """One of not_tree | tree | monotone_increasing | monotone_decreasing.

    Tree = the Hasse diagram, as an undirected graph, is connected and
    acyclic.  A tree with a unique minimal element is monotone increasing
    (this takes precedence for chains, which qualify both ways); a unique
    maximal element gives monotone decreasing.
    """
    n = len(p.elements)
    if n == 0:
        return "not_tree"
    if len(p.covers) != n - 1:
        return "not_tree"
    adj = [[] for _ in range(n)]
    for a, b in p.covers:
        i, j = p.index[a], p.index[b]
        adj[i].append(j)
        adj[j].append(i)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                stack.append(j)
    if not all(seen):
        return "not_tree"
    minimal = [i for i in range(n) if not p.cover_parents[i]]
    maximal = [i for i in range(n) if not p.cover_children[i]]
    if len(minimal) == 1:
        return "monotone_increasing"
    if len(maximal) == 1:
        return "monotone_decreasing"
    return "tree"


# ---------------------------------------------------------------------------
# Generators for the standard posets.

def chain(k):
    if k < 1:
        raise InvalidParam("chain needs k >= 1")
    labels = tuple(f"x{i}" for i in range(1, k + 1))
    return Poset(labels, tuple((f"x{i}", f"x{i + 1}") for i in range(1, k)))


def antichain(k):
    if k < 1:
        raise InvalidParam("antichain needs k >= 1")
    return Poset(tuple(f"a{i}" for i in range(1, k + 1)), ())


def y_poset(h, s):
    """Chain x1 < ... < xh with s pairwise-incomparable tops above xh."""
    if h < 1 or s < 1:
        raise InvalidParam("y needs h, s >= 1")
    labels = tuple(f"x{i}" for i in range(1, h + 1)) + tuple(f"y{j}" for j in range(1, s + 1))
    covers = [(f"x{i}", f"x{i + 1}") for i in range(1, h)]
    covers += [(f"x{h}", f"y{j}") for j in range(1, s + 1)]
    return Poset(labels, tuple(sorted(covers)))


def y_prime_poset(h, s):
    return dual(y_poset(h, s))


def t_r3_poset(r, reading="degree"):
    """Monotone increasing height-3 tree with branching factor r.

    reading="degree" (default): every non-leaf has Hasse-degree exactly r,
    so the root has r children and each middle element r-1 children.
    reading="children": every non-leaf has r children.
    """
    if r < 2:
        raise InvalidParam("t_r3 needs r >= 2")
    if reading not in ("degree", "children"):
        raise InvalidParam(f"unknown t_r3 reading {reading!r}")
    per_middle = r - 1 if reading == "degree" else r
    labels = ["r0"] + [f"m{i}" for i in range(1, r + 1)]
    covers = [("r0", f"m{i}") for i in range(1, r + 1)]
    leaf = 0
    for i in range(1, r + 1):
        for _ in range(per_middle):
            leaf += 1
            labels.append(f"t{leaf}")
            covers.append((f"m{i}", f"t{leaf}"))
    if len(labels) > MAX_ELEMENTS:
        raise InvalidParam("t_r3 exceeds the 64-element cap")
    return Poset(tuple(labels), tuple(sorted(covers)))


def complete_multilevel(sizes):
    """Levels of the given sizes, every element related to every element of
    every other level."""
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise InvalidParam("level sizes must be positive")
    if sum(sizes) > MAX_ELEMENTS:
        raise InvalidParam("complete_multilevel exceeds the 64-element cap")
    labels = []
    levels = []
    for lvl, s in enumerate(sizes):
        lv = [f"v{lvl}_{j}" for j in range(1, s + 1)]
        labels += lv
        levels.append(lv)
    covers = []
    for lo, hi in zip(levels, levels[1:]):
        covers += [(a, b) for a in lo for b in hi]
    return Poset(tuple(labels), tuple(sorted(covers)))


_GENERATORS = {
    "chain": (chain, 1),
    "antichain": (antichain, 1),
    "y": (y_poset, 2),
    "y_prime": (y_prime_poset, 2),
    "t_r3": (t_r3_poset, 1),
    "complete_multilevel": (complete_multilevel, None),
}


def gen_named(kind, params, t3_reading="degree"):
    """Dispatch on the generator name; params is a sequence of positive ints
    (the full sizes list for complete_multilevel)."""
    if kind not in _GENERATORS:
        raise InvalidParam(f"unknown poset kind {kind!r}")
    fn, arity = _GENERATORS[kind]
    params = list(params)
    if arity is None:
        return fn(params)
    if len(params) != arity:
        raise InvalidParam(f"{kind} takes {arity} parameter(s), got {len(params)}")
    if kind == "t_r3":
        return fn(params[0], reading=t3_reading)
    return fn(*params)


# ---------------------------------------------------------------------------
# Isomorphism and small catalogues.

def is_isomorphic(p, q):
    """Order-isomorphism test by backtracking; fine for the small posets here."""
    n = len(p.elements)
    if n != len(q.elements) or len(p.covers) != len(q.covers):
        return False

    def sig(poset, i):
        return (
            bin(poset.down[i]).count("1"),
            bin(poset.up[i]).count("1"),
            len(poset.cover_parents[i]),
            len(poset.cover_children[i]),
        )

    psig = [sig(p, i) for i in range(n)]
    qsig = [sig(q, i) for i in range(n)]
    if sorted(psig) != sorted(qsig):
        return False
    cands = [[j for j in range(n) if qsig[j] == psig[i]] for i in range(n)]
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                if (p.up[i] >> k & 1) != (q.up[j] >> image[k] & 1) or (
                    p.up[k] >> i & 1
                ) != (q.up[image[k]] >> j & 1):
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        return False

    return extend(0)


def _labeled_trees(t):
    """All labeled trees on vertices 0..t-1 as edge lists (Pruefer decode)."""
    if t == 1:
        yield []
        return
    if t == 2:
        yield [(0, 1)]
        return
    for seq in product(range(t), repeat=t - 2):
        deg = [1] * t
        for v in seq:
            deg[v] += 1
        edges = []
        for v in seq:
            leaf = next(u for u in range(t) if deg[u] == 1)
            edges.append((leaf, v))
            deg[leaf] -= 1
            deg[v] -= 1
        u, w = (x for x in range(t) if deg[x] == 1)
        edges.append((u, w))
        yield edges


def all_height2_tree_posets(t):
    """Every poset (up to isomorphism) with t elements whose Hasse diagram is
    a tree and whose height is 2.  Both orientations of each tree bipartition
    are included when they differ."""
    if t < 2:
        raise InvalidParam("height-2 tree posets need at least 2 elements")
    found = []
    for edges in _labeled_trees(t):
        adj = [[] for _ in range(t)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        depth = [-1] * t
        depth[0] = 0
        queue = [0]
        while queue:
            u = queue.pop()
            for v in adj[u]:
                if depth[v] < 0:
                    depth[v] = depth[u] + 1
                    queue.append(v)
        labels = tuple(f"v{i}" for i in range(t))
        for bottom_parity in (0, 1):
            covers = []
            for u, v in edges:
                lo, hi = (u, v) if depth[u] % 2 == bottom_parity else (v, u)
                covers.append((labels[lo], labels[hi]))
            cand = poset_from_covers(labels, covers)
            if not any(is_isomorphic(cand, seen) for seen in found):
                found.append(cand)
    return found


# ---------------------------------------------------------------------------
# JSON file format: {"elements": [...], "covers": [["a","b"], ...]}.

def poset_to_json(p):
    """Canonical JSON text: elements as given, covers lexicographic."""
    return json.dumps(
        {"elements": list(p.elements), "covers": [list(c) for c in sorted(p.covers)]}
    )


def poset_from_json(text):
    try:
        obj = json.loads(text)
        elements = obj["elements"]
        covers = [tuple(c) for c in obj["covers"]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InvalidParam(f"malformed poset JSON: {exc}") from exc
    return poset_from_covers(elements, covers)
