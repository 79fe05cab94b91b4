"""Exact values of the total domination game.

Dominator and Staller alternately play vertices; every move must totally
dominate at least one vertex not dominated before, and the game ends when
the played set totally dominates the whole graph.  Dominator minimizes
and Staller maximizes the total number of moves.  ``dtg`` is the length
under optimal play when Dominator starts, ``stg`` when Staller starts,
and ``gamma_t`` the plain total domination number.

A game position is fully described by the *dominated set*, independent of
which vertices produced it, so positions are memoized on
(dominated bitmask, mover).  Graphs must have minimum degree >= 1 and at
most 63 vertices.  All positions of one graph at once are handled by
:func:`game_tables`, a numpy sweep over masks grouped by popcount.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graphs import (
    DominationState,
    Graph,
    IsolatedVertexError,
    state_from_mask,
)


class TerminalStateError(ValueError):
    """Optimal-move query on a finished game."""


class Mover(enum.Enum):
    DOMINATOR = "dominator"
    STALLER = "staller"

    @property
    def opponent(self) -> "Mover":
        return Mover.STALLER if self is Mover.DOMINATOR else Mover.DOMINATOR


@dataclass(frozen=True)
class SolveResult:
    """Values and optimal openings for a whole graph (empty dominated set)."""

    gamma_t: int
    dtg: int
    stg: int
    optimal_first_moves_dominator: tuple[int, ...]
    optimal_first_moves_staller: tuple[int, ...]
    states_visited: int


def _require_playable(graph: Graph) -> None:
    if graph.min_degree() == 0:
        raise IsolatedVertexError("game requires minimum degree >= 1")


class GameSolver:
    """Memoized minimax on (dominated mask, mover) for one graph.

    ``move_ordering=True`` additionally sorts candidate moves by how much
    they newly dominate and stops early on provably unbeatable children
    (a terminal child for Dominator; a child meeting the trivial upper
    bound, number of undominated vertices, for Staller).  Both variants
    return identical values; the plain one exists so tests can say so.
    """

    def __init__(self, graph: Graph, move_ordering: bool = True):
        _require_playable(graph)
        self.graph = graph
        self._masks = graph.neighbor_masks
        self._full = graph.full_mask
        self._order = move_ordering
        self._memo: dict[int, int] = {}

    # mover encoded in the memo key's low bit: 1 = Dominator to move
    def _value(self, dom: int, dominator_to_move: bool) -> int:
        if dom == self._full:
            return 0
        key = dom << 1 | dominator_to_move
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        succ = []
        for m in self._masks:
            child = dom | m
            if child != dom:
                succ.append(child)
        if self._order:
            # most new domination first for Dominator, least first for Staller
            succ.sort(key=lambda c: (c & ~dom).bit_count(),
                      reverse=dominator_to_move)
        if dominator_to_move:
            best = None
            for child in succ:
                val = self._value(child, False)
                if best is None or val < best:
                    best = val
                    if self._order and val == 0:
                        break
        else:
            cap = (self._full & ~dom).bit_count() - 1  # dtg(child) <= undominated(child)
            best = None
            for child in succ:
                val = self._value(child, True)
                if best is None or val > best:
                    best = val
                    if self._order and val >= cap:
                        break
        result = 1 + best  # type: ignore[operator]
        self._memo[key] = result
        return result

    def dtg(self, dominated_mask: int = 0) -> int:
        return self._value(dominated_mask, True)

    def stg(self, dominated_mask: int = 0) -> int:
        return self._value(dominated_mask, False)

    def optimal_move_vertices(self, dominated_mask: int, mover: Mover) -> tuple[int, ...]:
        """All optimal moves for ``mover``, sorted by vertex id."""
        if dominated_mask == self._full:
            raise TerminalStateError("no moves in a terminal state")
        dominator = mover is Mover.DOMINATOR
        target = self._value(dominated_mask, dominator)
        out = []
        for v in range(self.graph.n):
            child = dominated_mask | self._masks[v]
            if child == dominated_mask:
                continue
            if 1 + self._value(child, not dominator) == target:
                out.append(v)
        return tuple(out)

    @property
    def states_visited(self) -> int:
        return len(self._memo)


def dtg(state: DominationState) -> int:
    """Moves remaining under optimal play, Dominator to move."""
    return GameSolver(state.graph).dtg(state.dominated_mask)


def stg(state: DominationState) -> int:
    """Moves remaining under optimal play, Staller to move."""
    return GameSolver(state.graph).stg(state.dominated_mask)


def optimal_moves(state: DominationState, mover: Mover) -> tuple[int, ...]:
    """The full set of value-optimal moves; TerminalStateError if none exist."""
    return GameSolver(state.graph).optimal_move_vertices(state.dominated_mask, mover)


def gamma_t(graph: Graph) -> int:
    """Total domination number by branch and bound.

    Branches on the least-degree undominated vertex (some neighbour of it
    must be chosen), prunes with the bound chosen + ceil(undominated /
    best possible coverage), and seeds with a greedy upper bound.
    """
    _require_playable(graph)
    n = graph.n
    masks = graph.neighbor_masks
    full = graph.full_mask

    # greedy max-coverage upper bound
    dom, size = 0, 0
    while dom != full:
        v = max(range(n), key=lambda u: (masks[u] & ~dom).bit_count())
        dom |= masks[v]
        size += 1
    best = size

    order_by_degree = sorted(range(n), key=graph.degree)

    def search(dom: int, chosen: int) -> None:
        nonlocal best
        if dom == full:
            best = min(best, chosen)
            return
        undom = (full & ~dom).bit_count()
        max_gain = max((masks[u] & ~dom).bit_count() for u in range(n))
        if chosen + -(-undom // max_gain) >= best:
            return
        for v in order_by_degree:  # least options first
            if not dom >> v & 1:
                branch = sorted(
                    graph.adj[v],
                    key=lambda u: (masks[u] & ~dom).bit_count(),
                    reverse=True,
                )
                for u in branch:
                    search(dom | masks[u], chosen + 1)
                return

    search(0, 0)
    return best


def solve(graph: Graph) -> SolveResult:
    """gamma_t, both game values and all optimal openings for a graph."""
    solver = GameSolver(graph)
    d = solver.dtg(0)
    s = solver.stg(0)
    dom_moves = solver.optimal_move_vertices(0, Mover.DOMINATOR)
    sta_moves = solver.optimal_move_vertices(0, Mover.STALLER)
    return SolveResult(
        gamma_t=gamma_t(graph),
        dtg=d,
        stg=s,
        optimal_first_moves_dominator=dom_moves,
        optimal_first_moves_staller=sta_moves,
        states_visited=solver.states_visited,
    )


_TABLE_LIMIT = 20  # 2**20 masks keeps the arrays comfortably in memory


def game_tables(graph: Graph) -> tuple[np.ndarray, np.ndarray]:
    """dtg and stg for every dominated-set mask at once.

    Returns int8 arrays of length 2**n indexed by mask.  Masks are
    processed in decreasing popcount order; every move strictly enlarges
    the mask, so all successors of a level are already final.
    """
    _require_playable(graph)
    n = graph.n
    if n > _TABLE_LIMIT:
        raise ValueError(f"game_tables supports n <= {_TABLE_LIMIT}")
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    pop = np.zeros(size, dtype=np.int8)
    for v in range(n):
        pop += (masks >> v & 1).astype(np.int8)

    dtg_tab = np.zeros(size, dtype=np.int8)
    stg_tab = np.zeros(size, dtype=np.int8)
    sentinel_hi = np.int8(127)
    sentinel_lo = np.int8(-1)
    by_level = [np.nonzero(pop == k)[0] for k in range(n + 1)]
    for k in range(n - 1, -1, -1):
        idx = by_level[k]
        if idx.size == 0:
            continue
        best_d = np.full(idx.size, sentinel_hi, dtype=np.int8)
        best_s = np.full(idx.size, sentinel_lo, dtype=np.int8)
        for v in range(n):
            child = idx | graph.neighbor_masks[v]
            legal = child != idx
            # after a move the opponent plays, so dtg reads stg and vice versa
            np.minimum(best_d, np.where(legal, stg_tab[child], sentinel_hi), out=best_d)
            np.maximum(best_s, np.where(legal, dtg_tab[child], sentinel_lo), out=best_s)
        dtg_tab[idx] = best_d + 1
        stg_tab[idx] = best_s + 1
    return dtg_tab, stg_tab
