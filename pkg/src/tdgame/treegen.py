"""Exhaustive enumeration of unlabeled trees and isolate-free forests.

Free trees are generated by the classic level-sequence successor scheme
(Wright-Richmond-Odlyzko-McKay over Beyer-Hedetniemi rooted successors):
a rooted tree is a *level sequence*, the list of depths in preorder, and
a free tree is kept when the root is the tree centre, enforced by height
and size conditions on the first root subtree.  Each isomorphism class
appears exactly once; no canonical-form deduplication is needed.

``trees(n)`` re-sorts the classes by their canonical code so downstream
reports are stable, and ``forests(n)`` combines tree classes of orders
that sum to n, every component of order >= 2.
"""

from __future__ import annotations

import itertools
from pathlib import Path
from typing import Iterable, Iterator

from .graphs import Graph, canonical_form, format_edge_list

TREE_ORDER_LIMIT = 20
FOREST_ORDER_LIMIT = 16


def _rooted_successor(seq: list[int], p: int | None = None) -> list[int] | None:
    """Next rooted level sequence in Beyer-Hedetniemi order, None at the end.

    Finds the last depth above 1 (or takes ``p`` as given), locates the
    previous vertex one level shallower, and tiles the tail with the
    pattern between them.
    """
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split_first_subtree(seq: list[int]) -> tuple[list[int], list[int]]:
    """(first root subtree re-rooted, remainder of the tree with the root)."""
    m = len(seq)
    ones = 0
    for i, d in enumerate(seq):
        if d == 1:
            ones += 1
            if ones == 2:
                m = i
                break
    left = [seq[i] - 1 for i in range(1, m)]
    rest = [0] + seq[m:]
    return left, rest


def _free_tree_at_or_after(seq: list[int]) -> list[int] | None:
    """``seq`` itself when it canonically encodes a free tree, else a jump.

    The root must be the centre: the first subtree must be strictly
    shallower than the rest, or equally deep but not larger, and not
    lexicographically after the rest when sizes tie.  Invalid sequences
    skip ahead by restarting the successor at the first subtree boundary.
    """
    left, rest = _split_first_subtree(seq)
    left_height = max(left)
    rest_height = max(rest)
    valid = rest_height >= left_height
    if valid and rest_height == left_height:
        if len(left) > len(rest):
            valid = False
        elif len(left) == len(rest) and left > rest:
            valid = False
    if valid:
        return seq
    p = len(left)
    bumped = _rooted_successor(seq, p)
    if seq[p] > 2:
        new_left, _ = _split_first_subtree(bumped)
        tail = list(range(1, max(new_left) + 2))
        bumped[-len(tail):] = tail
    return bumped


def level_sequences(n: int) -> Iterator[list[int]]:
    """All free-tree level sequences of order n >= 2, generator order."""
    seq: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _free_tree_at_or_after(seq)
        if seq is not None:
            yield seq
            seq = _rooted_successor(seq)


def sequence_to_graph(seq: Iterable[int]) -> Graph:
    """Tree from a level sequence: each vertex joins the nearest shallower one."""
    seq = list(seq)
    edges = []
    stack: list[int] = []
    for i, depth in enumerate(seq):
        while stack and seq[stack[-1]] >= depth:
            stack.pop()
        if stack:
            edges.append((stack[-1], i))
        stack.append(i)
    return Graph.from_edges(len(seq), edges)


def count_trees(n: int) -> int:
    """Number of isomorphism classes of trees on n vertices."""
    if not 1 <= n <= TREE_ORDER_LIMIT:
        raise ValueError(f"order must be in 1..{TREE_ORDER_LIMIT}")
    if n <= 2:
        return 1
    return sum(1 for _ in level_sequences(n))


def trees(n: int) -> Iterator[Graph]:
    """Every tree on n vertices, one per isomorphism class.

    Emission is sorted by canonical code, so order and labels are stable
    across runs.  The class list for one order is materialized; n = 20
    (the cap) holds under a million sequences.
    """
    if not 1 <= n <= TREE_ORDER_LIMIT:
        raise ValueError(f"order must be in 1..{TREE_ORDER_LIMIT}")
    if n == 1:
        yield Graph.from_edges(1, [])
        return
    keyed = []
    for seq in level_sequences(n):
        graph = sequence_to_graph(seq)
        keyed.append((canonical_form(graph), graph))
    keyed.sort(key=lambda kg: kg[0])
    for _, graph in keyed:
        yield graph


def _partitions_min2(n: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing partitions of n with every part >= 2."""
    if n == 0:
        yield ()
        return
    for part in range(min(n, cap), 1, -1):
        if n - part == 1:
            continue  # a leftover of 1 can never be completed
        for tail in _partitions_min2(n - part, part):
            yield (part,) + tail


def _disjoint_union(parts: list[Graph]) -> Graph:
    edges = []
    offset = 0
    for g in parts:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def forests(n: int) -> Iterator[Graph]:
    """Every isolate-free forest on n vertices, one per isomorphism class.

    A forest is a multiset of trees of order >= 2.  Components are laid
    out largest order first; within one partition, equal orders take
    non-decreasing tree indices, which visits each multiset once.
    """
    if not 2 <= n <= FOREST_ORDER_LIMIT:
        raise ValueError(f"order must be in 2..{FOREST_ORDER_LIMIT}")
    pool: dict[int, list[Graph]] = {}
    for partition in _partitions_min2(n, n):
        for part in set(partition):
            if part not in pool:
                pool[part] = list(trees(part))
        runs = [(part, sum(1 for p in partition if p == part))
                for part in sorted(set(partition), reverse=True)]
        per_run = [
            itertools.combinations_with_replacement(range(len(pool[part])), count)
            for part, count in runs
        ]
        for pick in itertools.product(*per_run):
            chosen: list[Graph] = []
            for (part, _), indices in zip(runs, pick):
                chosen.extend(pool[part][i] for i in indices)
            yield _disjoint_union(chosen)


def write_edge_lists(graphs: Iterable[Graph], directory: str | Path,
                     stem: str = "graph") -> list[Path]:
    """One edge-list file per graph, parseable back with parse_graph."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, graph in enumerate(graphs):
        path = directory / f"{stem}_{i:05d}.edges"
        path.write_text(format_edge_list(graph, header=f"{stem} {i}: n={graph.n}"))
        paths.append(path)
    return paths
