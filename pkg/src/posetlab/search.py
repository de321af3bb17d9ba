"""Exact extremal computations over 2^[n] at desk scale.

la_exact runs include/exclude branch-and-bound over all 2^n candidate sets
in canonical order (include branch first).  Feasibility pruning works one
set at a time through creates_copy_through; the upper bound is the trivial
cardinality bound, tightened when the forbidden pair is a Y poset together
with its dual: once the included family has a chain of h sets ending at T,
at most s-1 further supersets of T fit (per size class in rank-preserving
mode, in total in weak mode).

With workers=1 the explored-node sequence, value and witness are all
deterministic.  With workers>1 the tree is split at a fixed depth into
independent subtree tasks; the merged value (and, because tasks are merged
in branch order, the witness) does not depend on the schedule.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .embed import (
    creates_copy_through,
    ensure_mode_applicable,
    find_copy,
    is_copy_image,
)
from .errors import InvalidParam, NotFree
from .family import SetFamily, canonical_key, middle_layers
from .poset import height, is_isomorphic, y_poset, y_prime_poset

MAX_SEARCH_N = 12
MAX_EXHAUSTIVE_N = 4
MAX_SYMMETRY_N = 7


@dataclass
class SearchConfig:
    budget_ms: int | None = None
    workers: int = 1
    symmetry_pruning: bool = False
    initial_lower_bound: int = 0  # must be witnessed by some free family
    level_caps: bool = True


@dataclass
class SearchOutcome:
    value: int
    witness: SetFamily
    nodes_explored: int
    mode: str
    forbidden: tuple
    exact: bool


@dataclass
class SaturationResult:
    saturated: bool
    counterexample: int | None = None


class _BudgetUp(Exception):
    pass


def _detect_y_pair(forbidden):
    """(h, s) when the forbidden set is exactly a Y poset and its dual."""
    if len(forbidden) != 2:
        return None
    for p, q in ((forbidden[0], forbidden[1]), (forbidden[1], forbidden[0])):
        h = height(p) - 1
        s = len(p.elements) - h
        if h < 1 or s < 1 or len(q.elements) != h + s:
            continue
        if is_isomorphic(p, y_poset(h, s)) and is_isomorphic(q, y_prime_poset(h, s)):
            return h, s
    return None


@lru_cache(maxsize=4)
def _perm_tables(n):
    """mask -> permuted mask, one table per coordinate permutation of [n]."""
    tables = []
    for perm in permutations(range(n)):
        t = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = (m & -m).bit_length() - 1
            t[m] = t[m & (m - 1)] | 1 << perm[low]
        tables.append(t)
    return tuple(tables)


class _Searcher:
    def __init__(self, n, forbidden, mode, coloring, cfg, deadline):
        self.n = n
        self.candidates = sorted(range(1 << n), key=canonical_key)
        self.forbidden = tuple(forbidden)
        self.mode = mode
        self.coloring = coloring
        self.floor = cfg.initial_lower_bound
        self.deadline = deadline
        self.symmetry = cfg.symmetry_pruning
        if self.symmetry and n > MAX_SYMMETRY_N:
            raise InvalidParam(f"symmetry pruning supported for n <= {MAX_SYMMETRY_N}")
        self.tables = _perm_tables(n) if self.symmetry else None
        self.cap = None
        if cfg.level_caps and mode in ("weak", "rank_preserving"):
            self.cap = _detect_y_pair(self.forbidden)
        self.included = []
        self.chain_len = {}
        self.h_tops = []
        self.best_size = 0
        self.best_members = ()
        self.nodes = 0
        self.exact = True

    def run(self, start_index=0, prefix=()):
        for s in prefix:
            self._push(s)
        if len(self.included) > self.best_size:
            self.best_size = len(self.included)
            self.best_members = tuple(self.included)
        try:
            self._extend(start_index)
        except _BudgetUp:
            self.exact = False

    # -- branching ---------------------------------------------------------

    def _extend(self, i):
        self.nodes += 1
        if self.deadline is not None and time.time() > self.deadline:
            raise _BudgetUp
        inc = self.included
        total = len(self.candidates)
        potential = len(inc) + (total - i)
        required = max(self.best_size + 1, self.floor)
        if potential < required:
            return
        if self.cap and self.h_tops:
            potential = len(inc) + self._capped_remaining(i)
            if potential < required:
                return
        if i == total:
            return
        s = self.candidates[i]
        if self._feasible(s):
            self._push(s)
            if len(inc) > self.best_size:
                self.best_size = len(inc)
                self.best_members = tuple(inc)
            if not (self.symmetry and not self._lex_minimal()):
                self._extend(i + 1)
            self._pop()
        self._extend(i + 1)

    def _feasible(self, s):
        fam = SetFamily(self.n, tuple(self.included))
        return all(
            creates_copy_through(fam, p, self.mode, s, self.coloring) is None
            for p in self.forbidden
        )

    def _push(self, s):
        if self.cap:
            h, _ = self.cap
            best_below = 0
            for a in self.included:
                if a & ~s == 0:
                    best_below = max(best_below, self.chain_len[a])
            self.chain_len[s] = best_below + 1
            if best_below + 1 >= h:
                self.h_tops.append(s)
        self.included.append(s)

    def _pop(self):
        s = self.included.pop()
        if self.cap:
            del self.chain_len[s]
            if self.h_tops and self.h_tops[-1] == s:
                self.h_tops.pop()

    # -- bounds ------------------------------------------------------------

    def _capped_remaining(self, i):
        rem = self.candidates[i:]
        base = len(rem)
        _, s_param = self.cap
        best = base
        for t in self.h_tops:
            sup_rem = [r for r in rem if t & ~r == 0]
            if not sup_rem:
                continue
            if self.mode == "weak":
                sup_inc = sum(1 for a in self.included if t & ~a == 0 and a != t)
                allow = max(0, s_param - 1 - sup_inc)
                bound = base - len(sup_rem) + min(len(sup_rem), allow)
            else:
                inc_lv = {}
                for a in self.included:
                    if t & ~a == 0 and a != t:
                        pc = bin(a).count("1")
                        inc_lv[pc] = inc_lv.get(pc, 0) + 1
                rem_lv = {}
                for r in sup_rem:
                    pc = bin(r).count("1")
                    rem_lv[pc] = rem_lv.get(pc, 0) + 1
                bound = base
                for pc, cnt in rem_lv.items():
                    allow = max(0, s_param - 1 - inc_lv.get(pc, 0))
                    bound -= cnt - min(cnt, allow)
            best = min(best, bound)
        return best

    def _lex_minimal(self):
        cur = tuple(self.included)
        cur_key = tuple(sorted((bin(m).count("1"), m) for m in cur))
        for table in self.tables:
            mapped = tuple(sorted((bin(table[m]).count("1"), table[m]) for m in cur))
            if mapped < cur_key:
                return False
        return True

    # -- parallel split ----------------------------------------------------

    def collect_prefixes(self, depth):
        """Feasible include/exclude decision prefixes at the given depth, in
        branch order; exploration below the depth is left to tasks."""
        tasks = []

        def walk(i):
            self.nodes += 1
            potential = len(self.included) + (len(self.candidates) - i)
            if potential < self.floor:
                return
            if i == depth:
                tasks.append(tuple(self.included))
                return
            s = self.candidates[i]
            if self._feasible(s):
                self._push(s)
                if not (self.symmetry and not self._lex_minimal()):
                    walk(i + 1)
                self._pop()
            walk(i + 1)

        walk(0)
        return tasks


def _solve_subtree(args):
    (n, forbidden, mode, coloring, cfg, deadline, prefix, start_index) = args
    searcher = _Searcher(n, forbidden, mode, coloring, cfg, deadline)
    searcher.run(start_index, prefix)
    return searcher.best_size, searcher.best_members, searcher.nodes, searcher.exact


def la_exact(n, forbidden, mode="weak", cfg=None, coloring=None):
    """Largest family over [n] avoiding every forbidden poset in the given
    mode, by branch-and-bound; exact unless the time budget cut it short."""
    if not 1 <= n <= MAX_SEARCH_N:
        raise InvalidParam(f"search supports 1 <= n <= {MAX_SEARCH_N}")
    forbidden = tuple(forbidden)
    for p in forbidden:
        ensure_mode_applicable(p, mode, coloring)
    cfg = cfg or SearchConfig()
    deadline = None
    if cfg.budget_ms is not None:
        deadline = time.time() + cfg.budget_ms / 1000.0
    if cfg.workers <= 1:
        searcher = _Searcher(n, forbidden, mode, coloring, cfg, deadline)
        searcher.run()
        return SearchOutcome(
            searcher.best_size,
            SetFamily(n, searcher.best_members),
            searcher.nodes,
            mode,
            forbidden,
            searcher.exact,
        )

    from concurrent.futures import ProcessPoolExecutor

    splitter = _Searcher(n, forbidden, mode, coloring, cfg, deadline)
    depth = min(len(splitter.candidates), max(1, (8 * cfg.workers - 1).bit_length()))
    prefixes = splitter.collect_prefixes(depth)
    payloads = [
        (n, forbidden, mode, coloring, cfg, deadline, prefix, depth)
        for prefix in prefixes
    ]
    value, members, nodes, exact = 0, (), splitter.nodes, True
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        for size, mem, task_nodes, task_exact in pool.map(_solve_subtree, payloads):
            nodes += task_nodes
            exact = exact and task_exact
            if size > value:
                value, members = size, mem
    return SearchOutcome(value, SetFamily(n, members), nodes, mode, forbidden, exact)


def exhaustive_max_free(n, forbidden, mode="weak", coloring=None):
    """Independent route for tiny n: mark every subfamily that is exactly a
    copy image (via the permutation matcher), close upward over all 2^(2^n)
    families, and read off the largest unmarked one."""
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise InvalidParam(f"exhaustive enumeration supports n <= {MAX_EXHAUSTIVE_N}")
    forbidden = tuple(forbidden)
    masks = sorted(range(1 << n), key=canonical_key)
    m = len(masks)
    direct = bytearray(1 << m)
    for p in forbidden:
        ensure_mode_applicable(p, mode, coloring)
        k = len(p.elements)
        if k > m:
            continue
        for combo in combinations(range(m), k):
            bits = 0
            for c in combo:
                bits |= 1 << c
            if direct[bits]:
                continue
            if is_copy_image([masks[c] for c in combo], p, mode, coloring):
                direct[bits] = 1
    viol = bytearray(1 << m)
    for fam_bits in range(1, 1 << m):
        if direct[fam_bits]:
            viol[fam_bits] = 1
            continue
        rest = fam_bits
        while rest:
            low = rest & -rest
            if viol[fam_bits ^ low]:
                viol[fam_bits] = 1
                break
            rest ^= low
    best, best_bits = 0, 0
    for fam_bits in range(1 << m):
        if not viol[fam_bits]:
            pc = bin(fam_bits).count("1")
            if pc > best:
                best, best_bits = pc, fam_bits
    witness = SetFamily(n, tuple(masks[c] for c in range(m) if best_bits >> c & 1))
    return SearchOutcome(best, witness, 1 << m, mode, forbidden, True)


def verify_free(fam, forbidden, mode="weak", coloring=None):
    """(True, None) when no forbidden poset has a copy, else (False, witness)."""
    for p in forbidden:
        witness = find_copy(fam, p, mode, coloring)
        if witness is not None:
            return False, witness
    return True, None


def saturation_check(fam, forbidden, mode="weak", coloring=None):
    """Is the family free and does every outside set create a copy?

    Raises NotFree when the input already contains a forbidden copy; the
    first counterexample in canonical order is reported otherwise.
    """
    free, witness = verify_free(fam, forbidden, mode, coloring)
    if not free:
        raise NotFree(witness)
    outside = [s for s in range(1 << fam.n) if s not in fam]
    for s in sorted(outside, key=canonical_key):
        if all(
            creates_copy_through(fam, p, mode, s, coloring) is None for p in forbidden
        ):
            return SaturationResult(False, s)
    return SaturationResult(True, None)


def max_free_layers(poset, n, mode="weak", coloring=None):
    """Largest k such that the k middle layers of [n] avoid the poset in the
    given mode; 0 when even a single layer contains a copy."""
    ensure_mode_applicable(poset, mode, coloring)
    for h in range(1, n + 2):
        if find_copy(middle_layers(n, h), poset, mode, coloring) is not None:
            return h - 1
    return n + 1
