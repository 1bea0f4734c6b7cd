"""Exhaustive, symmetry-reduced searches over uniform families.

The three desk-scale problems (largest intersecting family, largest union
of r intersecting families, largest family with bounded matching number)
are all searches for a maximum induced subgraph of the disjointness graph
on level k satisfying a hereditary property: independence, r-colorability,
or freedom from (s+1)-cliques.  The solver is a branch-and-bound DFS in
fixed colex vertex order with exact incremental feasibility, candidate
filtering, a greedy clique-packing bound, and two symmetry reductions that
preserve the set of optimal families up to relabeling: the colex-least
vertex is forced into the family, and witnesses are deduplicated by exact
canonical form.
"""

from __future__ import annotations

import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .family import GroundSet, SetFamily, subset_sizes
from .shadows import comb0, level_masks

N_SEARCH_MAX = 14
CANON_N_MAX = 12


# -- canonical forms --------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically least membership bitmap over all relabelings of [n].

    The bitmap is read in ascending mask order (earlier masks are more
    significant), packed to bytes.  Two families have equal canonical forms
    iff one is a relabeling of the other.
    """

    n: int
    key: bytes

    def family(self) -> SetFamily:
        ground = GroundSet(self.n)
        bits = np.unpackbits(np.frombuffer(self.key, dtype=np.uint8))[: ground.size]
        return SetFamily(ground, bits.astype(bool), copy=False)

    def hexdigest(self) -> str:
        return self.key.hex()


def _is_level_symmetric(family: SetFamily) -> bool:
    counts = family.level_counts()
    return all(c == 0 or c == math.comb(family.n, l) for l, c in enumerate(counts))


def canonicalize(family: SetFamily) -> CanonicalForm:
    """Exact canonical form under ground-set relabeling (n <= CANON_N_MAX).

    Level-by-level prefix search: candidate partial relabelings that realize
    the lexicographically least bitmap prefix are kept and extended one
    image at a time.  Families whose membership depends only on set size are
    fixed by every relabeling and short-circuit.
    """
    n = family.n
    if n > CANON_N_MAX:
        raise ValueError(f"canonicalize supports n <= {CANON_N_MAX}, got {n}")
    bits = family.bits
    if _is_level_symmetric(family):
        return CanonicalForm(n, np.packbits(bits).tobytes())

    out = np.zeros(1 << n, dtype=bool)
    out[0] = bits[0]
    # orig[c] holds, for candidate c, the original-mask image of every mask
    # over the first j relabeled elements, in ascending mask order.
    orig = np.zeros((1, 1), dtype=np.uint32)
    used = np.zeros(1, dtype=np.uint32)
    all_elems = np.arange(n, dtype=np.uint32)
    for j in range(n):
        width = 1 << j
        avail = ((used[:, None] >> all_elems[None, :]) & 1) == 0
        rows, cols = np.nonzero(avail)
        best_key: bytes | None = None
        kept_rows: list[np.ndarray] = []
        kept_cols: list[np.ndarray] = []
        chunk = max(1, (1 << 22) // width)
        for s in range(0, rows.size, chunk):
            rr = rows[s : s + chunk]
            cc = cols[s : s + chunk].astype(np.uint32)
            blocks = bits[orig[rr] | (np.uint32(1) << cc)[:, None]]
            packed = np.packbits(blocks, axis=1)
            row_bytes = packed.tobytes()
            stride = packed.shape[1]
            local_keys = [row_bytes[i * stride : (i + 1) * stride] for i in range(len(rr))]
            for i, key in enumerate(local_keys):
                if best_key is None or key < best_key:
                    best_key = key
                    kept_rows = [rr[i : i + 1]]
                    kept_cols = [cc[i : i + 1]]
                elif key == best_key:
                    kept_rows.append(rr[i : i + 1])
                    kept_cols.append(cc[i : i + 1])
        rr = np.concatenate(kept_rows)
        cc = np.concatenate(kept_cols)
        block = np.unpackbits(np.frombuffer(best_key, dtype=np.uint8))[:width]
        out[width : 2 * width] = block.astype(bool)
        picked = orig[rr]
        orig = np.concatenate([picked, picked | (np.uint32(1) << cc)[:, None]], axis=1)
        used = used[rr] | (np.uint32(1) << cc)
    return CanonicalForm(n, np.packbits(out).tobytes())


# -- search problems --------------------------------------------------------


@dataclass(frozen=True)
class SearchLimits:
    node_budget: int | None = None
    time_budget: float | None = None
    workers: int = 1


@dataclass(frozen=True)
class SearchProblem:
    kind: str  # max-intersecting | max-union-intersecting | max-bounded-matching
    n: int
    k: int
    r: int | None = None
    s: int | None = None


@dataclass
class SearchOutcome:
    problem: SearchProblem
    optimum: int
    witnesses: list[SetFamily]
    complete: bool
    stats: dict = field(default_factory=dict)

    def witness_forms(self) -> list[CanonicalForm]:
        return [canonicalize(w) for w in self.witnesses]

    def to_record(self) -> dict:
        return {
            "problem": {
                "kind": self.problem.kind,
                "n": self.problem.n,
                "k": self.problem.k,
                "r": self.problem.r,
                "s": self.problem.s,
            },
            "optimum": self.optimum,
            "complete": self.complete,
            "witness_count": len(self.witnesses),
            "witnesses": [w.member_masks().tolist() for w in self.witnesses],
            "stats": self.stats,
        }


@lru_cache(maxsize=32)
def _graph(n: int, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Level-k vertex masks in colex order plus disjointness adjacency bitmasks."""
    masks = level_masks(n, k).astype(np.uint32)
    disjoint = (masks[:, None] & masks[None, :]) == 0
    np.fill_diagonal(disjoint, False)
    adj = tuple(
        int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
        for row in disjoint
    )
    return tuple(int(m) for m in masks), adj


class _Budget(Exception):
    pass


class _IndependentEngine:
    """Feasible = no two members disjoint (independent set in the graph)."""

    clique_target = 2

    def __init__(self, adj):
        self.adj = adj
        self.imask = 0

    def push(self, v):
        self.imask |= 1 << v

    def pop(self, v):
        self.imask &= ~(1 << v)

    def may_add(self, u):
        return self.adj[u] & self.imask == 0


class _MatchingEngine:
    """Feasible = matching number <= s (no (s+1)-clique in the graph)."""

    def __init__(self, adj, s):
        self.adj = adj
        self.s = s
        self.imask = 0
        self.clique_target = s + 1

    def push(self, v):
        self.imask |= 1 << v

    def pop(self, v):
        self.imask &= ~(1 << v)

    def may_add(self, u):
        return not _has_clique(self.adj, self.adj[u] & self.imask, self.s)


def _has_clique(adj, pool: int, size: int) -> bool:
    if size == 0:
        return True
    if pool.bit_count() < size:
        return False
    while pool:
        v = (pool & -pool).bit_length() - 1
        pool &= pool - 1
        if _has_clique(adj, pool & adj[v], size - 1):
            return True
    return False


def _exact_color(vmask: int, adj, r: int):
    """A proper r-coloring of the induced subgraph, or None."""
    verts = []
    m = vmask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        verts.append(v)
    verts.sort(key=lambda v: (-(adj[v] & vmask).bit_count(), v))
    cmasks = [0] * r
    assign: dict[int, int] = {}

    def bt(i: int, colors_used: int) -> bool:
        if i == len(verts):
            return True
        v = verts[i]
        bit = 1 << v
        for c in range(min(colors_used + 1, r)):
            if adj[v] & cmasks[c] == 0:
                cmasks[c] |= bit
                assign[v] = c
                if bt(i + 1, max(colors_used, c + 1)):
                    return True
                cmasks[c] &= ~bit
                del assign[v]
        return False

    return assign if bt(0, 0) else None


class _ColoringEngine:
    """Feasible = disjointness graph r-colorable (union of r intersecting)."""

    def __init__(self, adj, r):
        self.adj = adj
        self.r = r
        self.imask = 0
        self.cmasks = [0] * r
        self.color_of: dict[int, int] = {}
        self.undo: list = []
        self.clique_target = r + 1
        self._cache_vertex = None
        self._cache_assign = None

    def may_add(self, u):
        for c in range(self.r):
            if self.adj[u] & self.cmasks[c] == 0:
                return True
        assign = _exact_color(self.imask | (1 << u), self.adj, self.r)
        if assign is None:
            return False
        self._cache_vertex = u
        self._cache_assign = assign
        return True

    def push(self, v):
        bit = 1 << v
        for c in range(self.r):
            if self.adj[v] & self.cmasks[c] == 0:
                self.cmasks[c] |= bit
                self.color_of[v] = c
                self.imask |= bit
                self.undo.append(("fast", v, c))
                return
        if self._cache_vertex == v and self._cache_assign is not None:
            assign = self._cache_assign
        else:
            assign = _exact_color(self.imask | bit, self.adj, self.r)
        if assign is None:
            raise AssertionError("push called on an infeasible vertex")
        self.undo.append(("slow", list(self.cmasks), dict(self.color_of)))
        self.color_of = assign
        self.cmasks = [0] * self.r
        for w, c in assign.items():
            self.cmasks[c] |= 1 << w
        self.imask |= bit

    def pop(self, v):
        bit = 1 << v
        entry = self.undo.pop()
        if entry[0] == "fast":
            _, w, c = entry
            self.cmasks[c] &= ~bit
            del self.color_of[w]
        else:
            _, cmasks, color_of = entry
            self.cmasks = cmasks
            self.color_of = color_of
        self.imask &= ~bit
        self._cache_vertex = None
        self._cache_assign = None


def _greedy_clique_packing(adj, cand_mask: int, target: int) -> int:
    """Greedy count of vertex-disjoint target-cliques inside the candidates."""
    packs = 0
    remaining = cand_mask
    while remaining:
        v = (remaining & -remaining).bit_length() - 1
        remaining &= remaining - 1
        clique_bits = 1 << v
        count = 1
        pool = adj[v] & remaining
        while count < target and pool:
            u = (pool & -pool).bit_length() - 1
            pool &= pool - 1
            clique_bits |= 1 << u
            count += 1
            pool &= adj[u]
        if count == target:
            packs += 1
            remaining &= ~clique_bits
    return packs


def _make_engine(problem: SearchProblem, adj):
    if problem.kind == "max-intersecting":
        return _IndependentEngine(adj)
    if problem.kind == "max-union-intersecting":
        return _ColoringEngine(adj, problem.r)
    if problem.kind == "max-bounded-matching":
        return _MatchingEngine(adj, problem.s)
    raise ValueError(f"unknown search kind {problem.kind!r}")


def _preload_value(problem: SearchProblem) -> int:
    n, k = problem.n, problem.k
    if problem.kind == "max-intersecting":
        return math.comb(n - 1, k - 1)
    w = problem.r if problem.kind == "max-union-intersecting" else problem.s
    return math.comb(n, k) - comb0(n - w, k)


class _Searcher:
    def __init__(self, problem: SearchProblem, limits: SearchLimits, collect_all: bool):
        self.problem = problem
        self.limits = limits
        self.collect_all = collect_all
        self.masks, self.adj = _graph(problem.n, problem.k)
        self.engine = _make_engine(problem, self.adj)
        self.best = _preload_value(problem)
        self.witnesses: list[int] = []
        self.min_witness: int | None = None
        self.nodes = 0
        self.prunes = 0
        self.deadline = (
            time.monotonic() + limits.time_budget if limits.time_budget else None
        )

    def record(self, imask: int, size: int) -> None:
        if size > self.best:
            self.best = size
            self.witnesses = [imask]
            self.min_witness = imask
        elif size == self.best:
            if self.collect_all:
                self.witnesses.append(imask)
            if self.min_witness is None or imask < self.min_witness:
                self.min_witness = imask
                if not self.collect_all:
                    self.witnesses = [imask]

    def dfs(self, cands: list[int], imask: int, size: int) -> None:
        self.nodes += 1
        if self.limits.node_budget is not None and self.nodes > self.limits.node_budget:
            raise _Budget
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise _Budget
        self.record(imask, size)
        feas = [u for u in cands if self.engine.may_add(u)]
        if size + len(feas) < self.best:
            self.prunes += 1
            return
        if len(feas) >= 8:
            cmask = 0
            for u in feas:
                cmask |= 1 << u
            packs = _greedy_clique_packing(self.adj, cmask, self.engine.clique_target)
            if size + len(feas) - packs < self.best:
                self.prunes += 1
                return
        for pos, u in enumerate(feas):
            if size + len(feas) - pos < self.best:
                self.prunes += 1
                break
            self.engine.push(u)
            self.dfs(feas[pos + 1 :], imask | (1 << u), size + 1)
            self.engine.pop(u)

    def run_root(self) -> bool:
        """Sequential search with the colex-least vertex forced in."""
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(self.masks) + 1000))
        complete = True
        try:
            self.engine.push(0)
            self.dfs(list(range(1, len(self.masks))), 1, 1)
            self.engine.pop(0)
        except _Budget:
            complete = False
        return complete


def _solve_sequential(problem, limits, collect_all) -> SearchOutcome:
    start = time.perf_counter()
    searcher = _Searcher(problem, limits, collect_all)
    complete = searcher.run_root()
    return _finish(problem, searcher.best, searcher.witnesses, searcher.min_witness,
                   complete, searcher.nodes, searcher.prunes, start, collect_all)


def _subtree_payload(problem, limits, collect_all, second):
    return (
        problem.kind, problem.n, problem.k, problem.r, problem.s,
        limits.node_budget, limits.time_budget, collect_all, second,
    )


def _run_subtree(payload):
    kind, n, k, r, s, node_budget, time_budget, collect_all, second = payload
    problem = SearchProblem(kind, n, k, r, s)
    limits = SearchLimits(node_budget=node_budget, time_budget=time_budget, workers=1)
    searcher = _Searcher(problem, limits, collect_all)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(searcher.masks) + 1000))
    complete = True
    try:
        searcher.engine.push(0)
        root_cands = [u for u in range(1, len(searcher.masks)) if searcher.engine.may_add(u)]
        if second < len(root_cands):
            v = root_cands[second]
            searcher.engine.push(v)
            searcher.dfs(root_cands[second + 1 :], 1 | (1 << v), 2)
            searcher.engine.pop(v)
    except _Budget:
        complete = False
    return searcher.best, searcher.witnesses, searcher.min_witness, searcher.nodes, searcher.prunes, complete


def _solve_parallel(problem, limits, collect_all) -> SearchOutcome:
    start = time.perf_counter()
    probe = _Searcher(problem, limits, collect_all)
    probe.engine.push(0)
    root_cands = [u for u in range(1, len(probe.masks)) if probe.engine.may_add(u)]
    probe.record(1, 1)
    payloads = [
        _subtree_payload(problem, limits, collect_all, i) for i in range(len(root_cands))
    ]
    best = probe.best
    witnesses = list(probe.witnesses)
    min_witness = probe.min_witness
    nodes, prunes = 1, 0
    complete = True
    with ProcessPoolExecutor(max_workers=limits.workers) as pool:
        for t_best, t_wit, t_min, t_nodes, t_prunes, t_complete in pool.map(
            _run_subtree, payloads
        ):
            nodes += t_nodes
            prunes += t_prunes
            complete = complete and t_complete
            if t_best > best:
                best, witnesses, min_witness = t_best, list(t_wit), t_min
            elif t_best == best:
                witnesses.extend(t_wit)
                if t_min is not None and (min_witness is None or t_min < min_witness):
                    min_witness = t_min
    if not collect_all:
        witnesses = [min_witness] if min_witness is not None else []
    return _finish(problem, best, witnesses, min_witness, complete, nodes, prunes,
                   start, collect_all)


def _finish(problem, best, witnesses, min_witness, complete, nodes, prunes, start,
            collect_all) -> SearchOutcome:
    ground = GroundSet(problem.n)
    masks, _ = _graph(problem.n, problem.k)
    fams = []
    for wmask in sorted(set(witnesses)):
        bits = np.zeros(ground.size, dtype=bool)
        vm = wmask
        while vm:
            v = (vm & -vm).bit_length() - 1
            vm &= vm - 1
            bits[masks[v]] = True
        fams.append(SetFamily(ground, bits, copy=False))
    canonical = problem.n <= CANON_N_MAX
    if canonical:
        seen: dict[bytes, SetFamily] = {}
        for f in fams:
            form = canonicalize(f)
            if form.key not in seen:
                seen[form.key] = form.family()
        fams = [seen[key] for key in sorted(seen)]
    if not collect_all and fams:
        fams = fams[:1]
    stats = {
        "nodes": nodes,
        "prunes": prunes,
        "wall_time_ms": (time.perf_counter() - start) * 1000.0,
        "canonical_witnesses": canonical,
    }
    return SearchOutcome(problem, best, fams, complete, stats)


def _solve(problem: SearchProblem, limits: SearchLimits, collect_all: bool) -> SearchOutcome:
    if not 1 <= problem.n <= N_SEARCH_MAX:
        raise ValueError(f"search supports 1 <= n <= {N_SEARCH_MAX}, got {problem.n}")
    if not 1 <= problem.k <= problem.n:
        raise ValueError(f"level {problem.k} out of range 1..{problem.n}")
    if 2 * problem.k > problem.n + 4:
        raise ValueError(f"search supports k <= n/2 + 2, got k={problem.k}, n={problem.n}")
    if limits.workers > 1:
        return _solve_parallel(problem, limits, collect_all)
    return _solve_sequential(problem, limits, collect_all)


def max_intersecting(n: int, k: int, limits: SearchLimits | None = None,
                     collect_all: bool = True) -> SearchOutcome:
    """Largest intersecting k-uniform family on [n], exhaustively (k < n/2)."""
    if not 2 * k < n:
        raise ValueError(f"max_intersecting requires k < n/2, got k={k}, n={n}")
    problem = SearchProblem("max-intersecting", n, k)
    return _solve(problem, limits or SearchLimits(), collect_all)


def max_union_intersecting(n: int, k: int, r: int, limits: SearchLimits | None = None,
                           collect_all: bool = True) -> SearchOutcome:
    """Largest union of r intersecting k-uniform families on [n].

    Modeled as the largest induced r-colorable subgraph of the disjointness
    graph on level k, which is the exact characterization for families
    without the empty set.
    """
    if not 1 <= r <= 4:
        raise ValueError(f"need 1 <= r <= 4, got r={r}")
    if r > n:
        raise ValueError(f"need r <= n, got r={r}, n={n}")
    problem = SearchProblem("max-union-intersecting", n, k, r=r)
    return _solve(problem, limits or SearchLimits(), collect_all)


def max_bounded_matching(n: int, k: int, s: int, limits: SearchLimits | None = None,
                         collect_all: bool = True) -> SearchOutcome:
    """Largest k-uniform family on [n] with matching number at most s."""
    if not 1 <= s <= 4:
        raise ValueError(f"need 1 <= s <= 4, got s={s}")
    if s > n:
        raise ValueError(f"need s <= n, got s={s}, n={n}")
    problem = SearchProblem("max-bounded-matching", n, k, s=s)
    return _solve(problem, limits or SearchLimits(), collect_all)


def ff_crossover_scan(k: int, r: int, n_range, t_range,
                      limits: SearchLimits | None = None) -> list[dict]:
    """Tabulate the pivot-construction level size against the OR bound and the
    searched optimum across n, flagging any n where the bound is beaten."""
    from .family import FranklFuredi, construct as _construct

    rows = []
    for n in n_range:
        or_bound = math.comb(n, k) - comb0(n - r, k)
        outcome = None
        if n <= N_SEARCH_MAX and 2 * k <= n + 4:
            outcome = max_union_intersecting(n, k, r, limits=limits, collect_all=False)
        for t in t_range:
            if t < 1 or r + t > n:
                continue
            ff_size = _construct(GroundSet(n), FranklFuredi(r, t)).slice(k).size
            rows.append({
                "n": n,
                "k": k,
                "r": r,
                "t": t,
                "ff_level_size": ff_size,
                "or_bound": or_bound,
                "search_optimum": outcome.optimum if outcome else None,
                "search_complete": outcome.complete if outcome else False,
                "exceeds_or_bound": (outcome.optimum > or_bound) if outcome else None,
            })
    return rows
