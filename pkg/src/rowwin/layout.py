"""Greedy vertex regrouping that raises per-window computing intensity.

Vertices are sorted by their lowest neighbor id (vertices sharing a low
neighbor tend to share many columns), then packed greedily into groups of 16:
each step admits the candidate, among the first `vw` unvisited vertices at or
after the seed's sorted position, that maximizes the window's prospective
entries-per-column ratio.

Two builders produce identical groupings.  The basic one re-derives every
candidate's column union from scratch; the optimized one maintains shared
column counters (cns) so each candidate is scored in O(1), with counters
propagated once per admitted vertex and sparsely reset at window close.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrices import Graph, InvariantError, permute_symmetric
from .windows import WINDOW_HEIGHT


@dataclass(frozen=True)
class WindowGrouping:
    """Ordered vertex groups; concatenation order induces the relabeling permutation."""

    groups: list[list[int]]
    num_vertices: int

    @property
    def induced_perm(self) -> np.ndarray:
        """perm[old_id] = new_id."""
        perm = np.empty(self.num_vertices, dtype=np.int64)
        rank = 0
        for group in self.groups:
            for v in group:
                perm[v] = rank
                rank += 1
        return perm

    def validate(self, group_size: int = WINDOW_HEIGHT) -> None:
        seen = np.zeros(self.num_vertices, dtype=bool)
        total = 0
        for gi, group in enumerate(self.groups):
            if not 0 < len(group) <= group_size:
                raise ValueError(f"group size must be in 1..{group_size}")
            # only the final group may be short, else groups drift off window
            # boundaries after relabeling
            if len(group) < group_size and gi != len(self.groups) - 1:
                raise ValueError(f"group {gi} is short but not last")
            for v in group:
                if not 0 <= v < self.num_vertices:
                    raise ValueError(f"vertex id {v} out of range")
                if seen[v]:
                    raise ValueError(f"vertex {v} appears twice")
                seen[v] = True
            total += len(group)
        if total != self.num_vertices:
            raise ValueError("groups must cover every vertex exactly once")


@dataclass
class LoaState:
    """Mutable window state for the counter-based builder.

    cns[v] tracks |N(v) ∩ all_cols| for the current window; touched records
    which entries are nonzero so the close-of-window reset is sparse.
    """

    degrees: np.ndarray
    all_cols: set = field(default_factory=set)
    cur_eles: int = 0
    cur_cols: int = 0
    cns: np.ndarray | None = None
    touched: set = field(default_factory=set)


def candidate_fraction(vertex: int, state: LoaState) -> tuple[int, int]:
    """Prospective window CI with `vertex` admitted, as an exact integer ratio.

    Incremental form: the new column count is cur_cols + deg(v) - cns[v] by
    inclusion-exclusion.  A column-free prospective window scores (0, 1).
    """
    deg = int(state.degrees[vertex])
    num = state.cur_eles + deg
    den = state.cur_cols + deg - int(state.cns[vertex])
    if den == 0:
        return 0, 1
    return num, den


def ci_candidate(vertex: int, state: LoaState) -> float:
    num, den = candidate_fraction(vertex, state)
    return num / den


def sort_by_min_neighbor(g: Graph) -> np.ndarray:
    """Vertex ids ordered by ascending lowest neighbor id, ties by own id.

    Isolated vertices sort last (in id order).
    """
    n = g.num_vertices
    key = np.full(n, n, dtype=np.int64)
    starts = g.adjacency.row_ptr[:-1]
    nonempty = np.flatnonzero(np.diff(g.adjacency.row_ptr) > 0)
    key[nonempty] = g.adjacency.col_idx[starts[nonempty]]
    return np.lexsort((np.arange(n), key)).astype(np.int64)


def _scan_candidates(unvisited_pos: np.ndarray, start: int, vw: int) -> np.ndarray:
    """Positions of the first vw unvisited vertices at or after `start`."""
    hits = np.flatnonzero(unvisited_pos[start:])
    return start + hits[:vw]


def _pick_best(scored: list[tuple[int, int, int, int]]) -> int:
    """Choose the max fraction; ties fall to higher degree, then earlier scan order.

    scored rows are (num, den, degree, position-index-in-scan).
    """
    best = scored[0]
    for row in scored[1:]:
        num, den, deg, _ = row
        b_num, b_den, b_deg, _ = best
        lhs, rhs = num * b_den, b_num * den
        if lhs > rhs or (lhs == rhs and deg > b_deg):
            best = row
    return best[3]


def _neighbor_sets(g: Graph) -> list[set]:
    return [set(g.neighbors(v).tolist()) for v in range(g.num_vertices)]


def _require_undirected(g: Graph, what: str) -> None:
    if not g.undirected:
        raise ValueError(f"{what} requires an undirected graph")


def build_windows_basic(g: Graph, vw: int = 128, group_size: int = WINDOW_HEIGHT) -> WindowGrouping:
    """Reference builder: every candidate scored via an explicit column-set union."""
    _require_undirected(g, "window grouping")
    if vw < 1:
        raise ValueError("vw must be >= 1")
    n = g.num_vertices
    order = sort_by_min_neighbor(g)
    nset = _neighbor_sets(g)
    deg = np.diff(g.adjacency.row_ptr).astype(np.int64)
    unvisited_pos = np.ones(n, dtype=bool)
    groups: list[list[int]] = []
    seed_pos = 0
    while seed_pos < n:
        if not unvisited_pos[seed_pos]:
            seed_pos += 1
            continue
        v0 = int(order[seed_pos])
        unvisited_pos[seed_pos] = False
        group = [v0]
        all_cols = set(nset[v0])
        cur_eles = int(deg[v0])
        while len(group) < group_size:
            positions = _scan_candidates(unvisited_pos, seed_pos, vw)
            if positions.size == 0:
                break
            scored = []
            for k, p in enumerate(positions):
                v = int(order[p])
                num = cur_eles + int(deg[v])
                den = len(all_cols | nset[v])
                if den == 0:
                    num, den = 0, 1
                scored.append((num, den, int(deg[v]), k))
            k_best = _pick_best(scored)
            p_best = int(positions[k_best])
            v_best = int(order[p_best])
            unvisited_pos[p_best] = False
            group.append(v_best)
            all_cols |= nset[v_best]
            cur_eles += int(deg[v_best])
        groups.append(group)
    return WindowGrouping(groups, n)


def build_windows_optimized(
    g: Graph,
    vw: int = 128,
    group_size: int = WINDOW_HEIGHT,
    check_counters: bool = False,
    audit=None,
) -> WindowGrouping:
    """Counter-based builder; byte-identical grouping to build_windows_basic.

    check_counters re-derives cns for every scanned candidate and raises
    InvariantError on drift.  audit, if given, is called per scored candidate
    as audit(vertex, (num_inc, den_inc), (num_union, den_union)) with both
    fraction forms.
    """
    _require_undirected(g, "window grouping")
    if vw < 1:
        raise ValueError("vw must be >= 1")
    n = g.num_vertices
    order = sort_by_min_neighbor(g)
    nset = _neighbor_sets(g)
    deg = np.diff(g.adjacency.row_ptr).astype(np.int64)
    unvisited_pos = np.ones(n, dtype=bool)
    state = LoaState(degrees=deg, cns=np.zeros(n, dtype=np.int64))
    groups: list[list[int]] = []

    def admit(v: int) -> None:
        new_cols = [c for c in nset[v] if c not in state.all_cols]
        state.all_cols.update(new_cols)
        state.cur_cols += len(new_cols)
        state.cur_eles += int(deg[v])
        for c in new_cols:
            for w in g.neighbors(c):
                state.cns[w] += 1
                state.touched.add(int(w))

    seed_pos = 0
    while seed_pos < n:
        if not unvisited_pos[seed_pos]:
            seed_pos += 1
            continue
        v0 = int(order[seed_pos])
        unvisited_pos[seed_pos] = False
        group = [v0]
        state.all_cols = set()
        state.cur_eles = 0
        state.cur_cols = 0
        admit(v0)
        while len(group) < group_size:
            positions = _scan_candidates(unvisited_pos, seed_pos, vw)
            if positions.size == 0:
                break
            scored = []
            for k, p in enumerate(positions):
                v = int(order[p])
                if check_counters and int(state.cns[v]) != len(nset[v] & state.all_cols):
                    raise InvariantError(
                        f"cns[{v}] = {int(state.cns[v])} but |N(v) ∩ cols| = "
                        f"{len(nset[v] & state.all_cols)}"
                    )
                num, den = candidate_fraction(v, state)
                if audit is not None:
                    u_num = state.cur_eles + int(deg[v])
                    u_den = len(state.all_cols | nset[v])
                    if u_den == 0:
                        u_num, u_den = 0, 1
                    audit(v, (num, den), (u_num, u_den))
                scored.append((num, den, int(deg[v]), k))
            k_best = _pick_best(scored)
            p_best = int(positions[k_best])
            v_best = int(order[p_best])
            unvisited_pos[p_best] = False
            group.append(v_best)
            admit(v_best)
        groups.append(group)
        for w in state.touched:
            state.cns[w] = 0
        state.touched.clear()
    return WindowGrouping(groups, n)


def reorder(g: Graph, grouping: WindowGrouping) -> tuple[Graph, np.ndarray]:
    """Relabel vertices so each group occupies one contiguous 16-row window."""
    _require_undirected(g, "reorder")
    grouping.validate()
    if grouping.num_vertices != g.num_vertices:
        raise ValueError("grouping does not match graph size")
    perm = grouping.induced_perm
    adj = permute_symmetric(g.adjacency, perm)
    return Graph(g.num_vertices, adj, g.undirected), perm
