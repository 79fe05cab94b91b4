"""Small simple graphs and total-domination game states.

Vertices are dense integer ids 0..n-1 with n <= 63 so that any vertex
subset fits in a single Python int used as a bitmask.  A vertex v is
*totally dominated* by a set S when S contains a neighbour of v (v itself
does not help).  The game machinery in :mod:`tdgame.solver` requires
minimum degree >= 1; the containers here tolerate isolated vertices so
that tree enumeration can emit the one-vertex tree, and the degree gate
is enforced where the game semantics need it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


MAX_VERTICES = 63


class MalformedGraphError(ValueError):
    """Edge-list text that cannot be parsed into a simple graph."""


class IsolatedVertexError(ValueError):
    """A degree-0 vertex where the game semantics require degree >= 1."""


class IllegalMoveError(ValueError):
    """A move that totally dominates no new vertex."""


class NotDominatedError(ValueError):
    """Attempt to undominate a vertex that is not currently dominated."""


class NotATreeError(ValueError):
    """A tree-only operation was applied to a graph that is not a tree."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1.

    ``adj[v]`` is the neighbour set of v and ``neighbor_masks[v]`` the
    same set as a bitmask.  Build instances through :meth:`from_edges`
    or :func:`parse_graph`; the constructor trusts its arguments.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[frozenset[int], ...] = field(repr=False)
    neighbor_masks: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Validate and normalize an edge list into a Graph.

        Rejects self-loops, duplicate edges and out-of-range ids.
        Isolated vertices are permitted here (but not by parse_graph,
        and not by the game solver).
        """
        if not 1 <= n <= MAX_VERTICES:
            raise MalformedGraphError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        seen: set[tuple[int, int]] = set()
        norm: list[tuple[int, int]] = []
        neigh: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedGraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise MalformedGraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise MalformedGraphError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
            neigh[u].add(v)
            neigh[v].add(u)
        masks = tuple(sum(1 << w for w in s) for s in neigh)
        return cls(
            n=n,
            edges=tuple(sorted(norm)),
            adj=tuple(frozenset(s) for s in neigh),
            neighbor_masks=masks,
        )

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def min_degree(self) -> int:
        return min(len(s) for s in self.adj)

    def relabel(self, perm: dict[int, int] | list[int]) -> "Graph":
        """Graph with vertex v renamed to perm[v] (perm a bijection on 0..n-1)."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges])


def parse_graph(text: str) -> Graph:
    """Parse whitespace-separated edge pairs, one edge per line.

    A ``#`` starts a comment running to end of line; blank lines are
    skipped.  The vertex count is 1 + the largest id mentioned.  Raises
    MalformedGraphError for non-integer tokens, ids outside 0..62, bad
    token counts, self-loops, duplicate edges or an empty edge list, and
    IsolatedVertexError when some id below the maximum never occurs.
    """
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedGraphError(f"line {lineno}: expected two ids, got {tokens}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise MalformedGraphError(f"line {lineno}: non-integer token") from exc
        if u < 0 or v < 0 or u >= MAX_VERTICES or v >= MAX_VERTICES:
            raise MalformedGraphError(
                f"line {lineno}: id outside 0..{MAX_VERTICES - 1}"
            )
        if u == v:
            raise MalformedGraphError(f"line {lineno}: self-loop at {u}")
        e = (u, v) if u < v else (v, u)
        if e in edges:
            raise MalformedGraphError(f"line {lineno}: duplicate edge {e}")
        edges.append(e)
    if not edges:
        raise MalformedGraphError("no edges in document")
    n = 1 + max(max(e) for e in edges)
    graph = Graph.from_edges(n, edges)
    for v in range(n):
        if graph.degree(v) == 0:
            raise IsolatedVertexError(f"vertex {v} has no incident edge")
    return graph


def format_edge_list(graph: Graph, header: str | None = None) -> str:
    """Render a graph in the edge-list format accepted by parse_graph."""
    lines = []
    if header:
        lines.append(f"# {header}")
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


# -- standard constructions used throughout tests and demos --------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise MalformedGraphError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Star K_{1,leaves}: centre 0 joined to 1..leaves."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# -- game states ----------------------------------------------------------


@dataclass(frozen=True)
class DominationState:
    """A graph together with the set of totally dominated vertices."""

    graph: Graph
    dominated: frozenset[int]

    def __post_init__(self) -> None:
        for v in self.dominated:
            if not 0 <= v < self.graph.n:
                raise ValueError(f"dominated vertex {v} out of range")

    @property
    def dominated_mask(self) -> int:
        return sum(1 << v for v in self.dominated)

    @property
    def is_terminal(self) -> bool:
        return len(self.dominated) == self.graph.n


def initial_state(graph: Graph) -> DominationState:
    return DominationState(graph, frozenset())


def state_from_mask(graph: Graph, mask: int) -> DominationState:
    return DominationState(
        graph, frozenset(v for v in range(graph.n) if mask >> v & 1)
    )


def is_td_set(graph: Graph, chosen: Iterable[int]) -> bool:
    """True when every vertex has a neighbour in ``chosen``."""
    mask = 0
    for v in chosen:
        mask |= 1 << v
    return all(graph.neighbor_masks[v] & mask for v in range(graph.n))


def legal_moves(state: DominationState) -> frozenset[int]:
    """Vertices whose play would totally dominate at least one new vertex.

    Empty exactly on terminal states provided the graph has minimum
    degree >= 1 (any undominated vertex certifies each of its neighbours
    as legal).
    """
    dom = state.dominated_mask
    masks = state.graph.neighbor_masks
    return frozenset(v for v in state.graph.vertices() if masks[v] & ~dom)


def apply_move(state: DominationState, v: int) -> DominationState:
    """Play v: the closed effect is dominated := dominated | N(v)."""
    if not 0 <= v < state.graph.n:
        raise IllegalMoveError(f"vertex {v} out of range")
    dom = state.dominated_mask
    new = state.graph.neighbor_masks[v] & ~dom
    if not new:
        raise IllegalMoveError(f"move {v} dominates no new vertex")
    return state_from_mask(state.graph, dom | state.graph.neighbor_masks[v])


def undominate(state: DominationState, x: int) -> DominationState:
    """State with x removed from the dominated set."""
    if x not in state.dominated:
        raise NotDominatedError(f"vertex {x} is not dominated")
    return DominationState(state.graph, state.dominated - {x})


# -- connectivity and trees ------------------------------------------------


def components(graph: Graph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by minimum id."""
    seen = [False] * graph.n
    out: list[tuple[int, ...]] = []
    for s in graph.vertices():
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in graph.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(graph: Graph) -> bool:
    return len(components(graph)) == 1


def is_forest(graph: Graph) -> bool:
    # acyclic iff every component has |E| = |V| - 1
    return len(graph.edges) == graph.n - len(components(graph))


def is_tree(graph: Graph) -> bool:
    return is_forest(graph) and is_connected(graph)


@dataclass(frozen=True)
class RootedTree:
    """A tree with a distinguished root and parent/child indexing.

    ``parent[root] == -1``; ``order`` lists vertices so that parents
    precede children (BFS from the root).
    """

    tree: Graph
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]

    def depth(self, v: int) -> int:
        d = 0
        while self.parent[v] != -1:
            v = self.parent[v]
            d += 1
        return d


def root_tree(tree: Graph, root: int) -> RootedTree:
    if not is_tree(tree):
        raise NotATreeError("root_tree requires a tree")
    parent = [-1] * tree.n
    children: list[list[int]] = [[] for _ in range(tree.n)]
    order = [root]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in sorted(tree.adj[v]):
            if w != root and parent[w] == -1:
                parent[w] = v
                children[v].append(w)
                order.append(w)
    return RootedTree(
        tree=tree,
        root=root,
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        order=tuple(order),
    )


def tree_centers(tree: Graph) -> tuple[int, ...]:
    """The one or two middle vertices of a tree (peel leaves in rounds)."""
    if not is_tree(tree):
        raise NotATreeError("tree_centers requires a tree")
    if tree.n <= 2:
        return tuple(range(tree.n))
    deg = [tree.degree(v) for v in tree.vertices()]
    layer = [v for v in tree.vertices() if deg[v] == 1]
    remaining = tree.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            deg[v] = 0
            for w in tree.adj[v]:
                if deg[w] > 1:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return tuple(sorted(layer))


def _ahu_code(rt: RootedTree) -> bytes:
    """Nested-parenthesis canonical code of a rooted tree (children sorted)."""
    code: dict[int, bytes] = {}
    for v in reversed(rt.order):
        kids = sorted(code[c] for c in rt.children[v])
        code[v] = b"(" + b"".join(kids) + b")"
    return code[rt.root]


def canonical_form(tree: Graph) -> bytes:
    """Isomorphism-invariant byte string for a tree.

    Roots at the tree centre; with two centres the lexicographically
    smaller rooted code wins.  Two trees are isomorphic iff their codes
    are equal.
    """
    centers = tree_centers(tree)
    return min(_ahu_code(root_tree(tree, c)) for c in centers)
