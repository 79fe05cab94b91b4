"""Recognition of the tree families on which Dominator meets gamma_t.

The catalogued trees grow from a single centre by pendant-path
attachments.  Writing P_k for a path on k vertices joined to an existing
vertex at one end:

* type-1 glues a P2 to the centre, type-2 a P3, type-3 a P4;
* a type-A attachment is a type-1 whose link vertex additionally
  carries one or more type-2 chains;
* a type-B attachment is a type-A in which, on at least one of those
  type-2 chains, the middle vertex (distance 3 from the centre) carries
  one leaf plus one or more type-3 chains.

``recognize_f1`` matches a tree against "centre + k1 type-1 + k2 type-2
+ k3 type-A + k4 type-B attachments, k1 >= 1" and returns the
decomposition.  ``recognize_f`` adds the two sporadic members: K2 and
the ten-vertex tree ``f10_graph()`` (a three-leaf star with two edges
subdivided three times).  ``recognize_fstar`` closes the family under
stars and under adding extra leaves at support vertices; the closure is
decided by first deleting surplus leaves (``reduce_strong_supports``).

Trees with gamma_t equal to the Dominator-start game length are exactly
the ``recognize_fstar`` members; the verification harness checks that
equivalence exhaustively on small orders.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graphs import (
    Graph,
    NotATreeError,
    RootedTree,
    canonical_form,
    is_tree,
    root_tree,
)


class AttachmentKind(enum.Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"
    TYPE3 = "type3"
    TYPE_A = "typeA"
    TYPE_B = "typeB"


@dataclass(frozen=True)
class Attachment:
    """One branch at the centre of a family tree.

    ``link`` is the branch vertex adjacent to the centre.  For TYPE_A
    and TYPE_B, ``two_chain_loads`` has one entry per type-2 chain at
    the link: the number of type-3 chains carried by that chain's middle
    vertex (all zero for TYPE_A, at least one positive for TYPE_B).
    """

    kind: AttachmentKind
    link: int
    two_chain_loads: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        out = {"kind": self.kind.value, "link": self.link}
        if self.kind in (AttachmentKind.TYPE_A, AttachmentKind.TYPE_B):
            out["two_chain_loads"] = list(self.two_chain_loads)
        return out


@dataclass(frozen=True)
class FamilyDecomposition:
    """Certificate that a tree is centre + attachments with k1 >= 1."""

    center: int
    branches: tuple[Attachment, ...]

    def _count(self, kind: AttachmentKind) -> int:
        return sum(1 for b in self.branches if b.kind is kind)

    @property
    def k1(self) -> int:
        return self._count(AttachmentKind.TYPE1)

    @property
    def k2(self) -> int:
        return self._count(AttachmentKind.TYPE2)

    @property
    def k3(self) -> int:
        return self._count(AttachmentKind.TYPE_A)

    @property
    def k4(self) -> int:
        return self._count(AttachmentKind.TYPE_B)

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.k1, self.k2, self.k3, self.k4)

    def as_dict(self) -> dict:
        return {
            "center": self.center,
            "counts": {"k1": self.k1, "k2": self.k2, "k3": self.k3, "k4": self.k4},
            "branches": [b.as_dict() for b in self.branches],
        }


@dataclass(frozen=True)
class StructureWitness:
    """Pendant paths of requested lengths meeting only at the pivot."""

    pivot: int
    paths: tuple[tuple[int, ...], ...]  # each path starts at the pivot

    def as_dict(self) -> dict:
        return {"pivot": self.pivot, "paths": [list(p) for p in self.paths]}


def _pendant_chain(tree: Graph, start: int, parent: int) -> list[int] | None:
    """Vertices of the bare chain from ``start`` away from ``parent``.

    Interior vertices must have degree 2 and the chain must end in a
    leaf; returns None as soon as a branching vertex appears.
    """
    chain = [start]
    prev, cur = parent, start
    while tree.degree(cur) != 1:
        if tree.degree(cur) != 2:
            return None
        (nxt,) = tree.adj[cur] - {prev}
        chain.append(nxt)
        prev, cur = cur, nxt
    return chain


def find_structure(tree: Graph, lengths: tuple[int, ...],
                   pivot: int | None = None) -> StructureWitness | None:
    """Witness for pendant paths of the given edge-lengths at one vertex.

    Every vertex on the paths except the pivot must keep its tree degree
    on the path, so each path is forced to be a full pendant chain; the
    lengths therefore match chains exactly.  With ``pivot=None`` all
    vertices are tried in id order.
    """
    if not is_tree(tree):
        raise NotATreeError("find_structure requires a tree")
    if not lengths or any(l < 1 for l in lengths):
        raise ValueError("lengths must be positive")
    pivots = range(tree.n) if pivot is None else [pivot]
    for v in pivots:
        chains: dict[int, list[list[int]]] = {}
        for u in sorted(tree.adj[v]):
            chain = _pendant_chain(tree, u, v)
            if chain is not None:
                chains.setdefault(len(chain), []).append(chain)
        needed = sorted(lengths, reverse=True)
        if any(len(chains.get(l, ())) < needed.count(l) for l in set(needed)):
            continue
        paths = []
        for l in needed:
            paths.append(tuple([v] + chains[l].pop(0)))
        return StructureWitness(pivot=v, paths=tuple(paths))
    return None


# -- the single-centre family ---------------------------------------------


def _chain_length_below(rt: RootedTree, v: int) -> int | None:
    """Number of vertices strictly below v when they form a bare chain."""
    length = 0
    cur = v
    while True:
        kids = rt.children[cur]
        if not kids:
            return length
        if len(kids) > 1:
            return None
        cur = kids[0]
        length += 1


def _classify_branch(rt: RootedTree, link: int) -> Attachment | None:
    kids = rt.children[link]
    if len(kids) <= 1:
        below = _chain_length_below(rt, link)
        if below == 1:
            return Attachment(AttachmentKind.TYPE1, link)
        if below == 2:
            return Attachment(AttachmentKind.TYPE2, link)
        return None
    # candidate type-A/B: exactly one leaf at the link plus 2-chains
    leaf_kids = [c for c in kids if not rt.children[c]]
    chain_heads = [c for c in kids if rt.children[c]]
    if len(leaf_kids) != 1 or not chain_heads:
        return None
    loads = []
    for head in chain_heads:
        if len(rt.children[head]) != 1:
            return None
        mid = rt.children[head][0]  # distance 3 from the centre
        mid_kids = rt.children[mid]
        mid_leaves = [c for c in mid_kids if not rt.children[c]]
        deep_chains = [c for c in mid_kids if rt.children[c]]
        if len(mid_leaves) != 1:
            return None
        if any(_chain_length_below(rt, c) != 3 for c in deep_chains):
            return None
        loads.append(len(deep_chains))
    kind = AttachmentKind.TYPE_B if any(loads) else AttachmentKind.TYPE_A
    return Attachment(kind, link, tuple(sorted(loads)))


def recognize_f1(tree: Graph) -> FamilyDecomposition | None:
    """Decomposition into centre + attachments with k1 >= 1, if one exists.

    Tries every vertex as the centre in id order and returns the first
    decomposition in which every branch classifies; any valid centre is
    acceptable.
    """
    if not is_tree(tree) or tree.n < 3:
        return None
    for center in tree.vertices():
        rt = root_tree(tree, center)
        branches = []
        for link in rt.children[center]:
            att = _classify_branch(rt, link)
            if att is None:
                break
            branches.append(att)
        else:
            dec = FamilyDecomposition(center=center, branches=tuple(branches))
            if dec.k1 >= 1:
                return dec
    return None


def f10_graph() -> Graph:
    """The sporadic ten-vertex member: a path on nine vertices 0..8 plus
    a pendant vertex 9 at the middle vertex 4."""
    edges = [(i, i + 1) for i in range(8)] + [(4, 9)]
    return Graph.from_edges(10, edges)


_F10_CODE: bytes | None = None


def is_f10(tree: Graph) -> bool:
    global _F10_CODE
    if not is_tree(tree) or tree.n != 10:
        return False
    if _F10_CODE is None:
        _F10_CODE = canonical_form(f10_graph())
    return canonical_form(tree) == _F10_CODE


@dataclass(frozen=True)
class FamilyCertificate:
    """Membership certificate: kind K2 | F10 | F1 (with decomposition)."""

    kind: str
    decomposition: FamilyDecomposition | None = None

    def as_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.as_dict()
        return out


def recognize_f(tree: Graph) -> FamilyCertificate | None:
    """Membership in the closed family: K2, the sporadic F10, or a
    centre-attachment tree with k1 >= 1."""
    if not is_tree(tree):
        return None
    if tree.n == 2:
        return FamilyCertificate("K2")
    dec = recognize_f1(tree)
    if dec is not None:
        return FamilyCertificate("F1", dec)
    if is_f10(tree):
        return FamilyCertificate("F10")
    return None


# -- closure under stars and extra support leaves --------------------------


def is_star(graph: Graph) -> bool:
    """A tree on >= 2 vertices with at most one vertex of degree >= 2."""
    if graph.n < 2 or not is_tree(graph):
        return False
    return sum(1 for v in graph.vertices() if graph.degree(v) >= 2) <= 1


def reduce_strong_supports(tree: Graph) -> Graph:
    """Delete all but the smallest-id leaf at every vertex with two or
    more leaf neighbours, relabelling to dense ids.

    One pass reaches the fixpoint: a support keeps one leaf plus its
    other neighbours, so no new multi-leaf vertex can appear.
    """
    if not is_tree(tree):
        raise NotATreeError("reduce_strong_supports requires a tree")
    drop: set[int] = set()
    for v in tree.vertices():
        leaves = sorted(u for u in tree.adj[v] if tree.degree(u) == 1)
        if len(leaves) >= 2:
            drop.update(leaves[1:])
    if not drop:
        return tree
    kept = [v for v in tree.vertices() if v not in drop]
    new_id = {v: i for i, v in enumerate(kept)}
    edges = [
        (new_id[u], new_id[v])
        for u, v in tree.edges
        if u not in drop and v not in drop
    ]
    return Graph.from_edges(len(kept), edges)


@dataclass(frozen=True)
class FStarCertificate:
    """Why a tree lies in the star-and-support closure of the family.

    ``kind`` is "star" or the base-family kind of the reduced tree; for
    non-stars ``reduced`` is the tree after surplus support leaves were
    removed, with ``base`` its membership certificate (labels refer to
    the reduced tree).
    """

    kind: str
    reduced: Graph | None = None
    base: FamilyCertificate | None = None

    def as_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.reduced is not None:
            out["reduced_order"] = self.reduced.n
            out["reduced_edges"] = [list(e) for e in self.reduced.edges]
        if self.base is not None:
            out["base"] = self.base.as_dict()
        return out


def fstar_certificate(tree: Graph) -> FStarCertificate | None:
    """Certificate for membership in the closure, None outside it."""
    if not is_tree(tree) or tree.n < 2:
        return None
    if is_star(tree):
        return FStarCertificate("star")
    reduced = reduce_strong_supports(tree)
    if reduced.n < 3:
        return None
    base = recognize_f(reduced)
    if base is None:
        return None
    return FStarCertificate(base.kind, reduced=reduced, base=base)


def recognize_fstar(tree: Graph) -> bool:
    """True when gamma_t should equal the Dominator-start game length."""
    return fstar_certificate(tree) is not None


# -- deterministic builders -------------------------------------------------


def _append_chain(edges: list[tuple[int, int]], anchor: int, length: int,
                  next_id: int) -> int:
    """Pendant path of ``length`` vertices hanging from anchor; returns
    the next free id."""
    prev = anchor
    for _ in range(length):
        edges.append((prev, next_id))
        prev = next_id
        next_id += 1
    return next_id


def tree_from_attachments(attachments: list[Attachment] | tuple[Attachment, ...]) -> Graph:
    """Build the tree with centre 0 and the given branches, fresh labels.

    Link ids inside the supplied attachments are ignored; structure is
    taken from kind and two_chain_loads.
    """
    edges: list[tuple[int, int]] = []
    nid = 1
    for att in attachments:
        link = nid
        if att.kind is AttachmentKind.TYPE1:
            nid = _append_chain(edges, 0, 2, nid)
        elif att.kind is AttachmentKind.TYPE2:
            nid = _append_chain(edges, 0, 3, nid)
        elif att.kind is AttachmentKind.TYPE3:
            nid = _append_chain(edges, 0, 4, nid)
        elif att.kind in (AttachmentKind.TYPE_A, AttachmentKind.TYPE_B):
            if not att.two_chain_loads:
                raise ValueError("type-A/B attachment needs >= 1 two-chain")
            if att.kind is AttachmentKind.TYPE_B and not any(att.two_chain_loads):
                raise ValueError("type-B attachment needs >= 1 three-chain")
            if att.kind is AttachmentKind.TYPE_A and any(att.two_chain_loads):
                raise ValueError("type-A attachment carries no three-chains")
            nid = _append_chain(edges, 0, 2, nid)  # link + its leaf
            for load in att.two_chain_loads:
                head = nid
                nid = _append_chain(edges, link, 3, nid)
                mid = head + 1
                for _ in range(load):
                    nid = _append_chain(edges, mid, 4, nid)
        else:
            raise ValueError(f"cannot attach kind {att.kind}")
    return Graph.from_edges(nid, edges)


def tree_from_decomposition(dec: FamilyDecomposition) -> Graph:
    """Rebuild a tree from its certificate (isomorphic, fresh labels)."""
    return tree_from_attachments(dec.branches)


def build_family_tree(k1: int, k2: int, k3: int, k4: int,
                      a_chains: list[int] | None = None,
                      b_loads: list[tuple[int, ...]] | None = None) -> Graph:
    """Centre + k1 type-1 + k2 type-2 + k3 type-A + k4 type-B attachments.

    Defaults give the base multiplicity-one shape: each type-A carries a
    single type-2 chain and each type-B a single type-2 chain bearing a
    single type-3 chain.  ``a_chains[i]`` overrides the chain count of
    the i-th type-A; ``b_loads[i]`` the load tuple of the i-th type-B.
    """
    if min(k1, k2, k3, k4) < 0 or k1 + k2 + k3 + k4 == 0:
        raise ValueError("attachment counts must be nonnegative, not all zero")
    a_chains = a_chains if a_chains is not None else [1] * k3
    b_loads = b_loads if b_loads is not None else [(1,)] * k4
    if len(a_chains) != k3 or len(b_loads) != k4:
        raise ValueError("override lengths must match k3 and k4")
    atts: list[Attachment] = []
    atts += [Attachment(AttachmentKind.TYPE1, -1)] * k1
    atts += [Attachment(AttachmentKind.TYPE2, -1)] * k2
    atts += [Attachment(AttachmentKind.TYPE_A, -1, (0,) * m) for m in a_chains]
    atts += [Attachment(AttachmentKind.TYPE_B, -1, tuple(sorted(load)))
             for load in b_loads]
    return tree_from_attachments(atts)


def base_shape_value(k1: int, k2: int, k3: int, k4: int) -> int:
    """Predicted gamma_t (= Dominator-start game length) of a family tree."""
    return k1 + 2 * k2 + 3 * k3 + 5 * k4 + 1
