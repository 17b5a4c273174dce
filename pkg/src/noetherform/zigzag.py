"""Zigzags: alternating-direction chains of morphisms and subgroup chasing.

Chasing forward applies direct images on right-pointing edges and inverse
images on left-pointing ones; backward chasing is dual.  A zigzag whose
left-pointing edges are all isomorphisms is collapsible and induces a
composite morphism.  For zigzags realized by Slominski homs the induced
relation (relational composite of the edge graphs) provides an independent
element-level oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    FormObject,
    Morphism,
    Subobject,
    compose,
    identity_morphism,
    is_injective,
    is_isomorphism,
    is_surjective,
)
from .errors import OwnershipError, UnsupportedFormError, ValidationError

RIGHT = "right"
LEFT = "left"


@dataclass(frozen=True)
class Edge:
    morphism: Morphism
    direction: str  # RIGHT: dom is the left node; LEFT: dom is the right node

    def __post_init__(self):
        if self.direction not in (RIGHT, LEFT):
            raise ValidationError(f"bad edge direction {self.direction!r}")


@dataclass(frozen=True)
class Zigzag:
    nodes: tuple[FormObject, ...]
    edges: tuple[Edge, ...]
    form: object = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if len(self.nodes) != len(self.edges) + 1 or not self.nodes:
            raise ValidationError("zigzag must have one more node than edges")
        for i, e in enumerate(self.edges):
            left, right = self.nodes[i], self.nodes[i + 1]
            dom, cod = (left, right) if e.direction == RIGHT else (right, left)
            if e.morphism.dom.id != dom.id or e.morphism.cod.id != cod.id:
                raise ValidationError(
                    f"edge {i} ({e.morphism!r}, {e.direction}) does not connect "
                    f"{left.id} and {right.id}"
                )

    def __len__(self):
        return len(self.edges)

    @property
    def start(self) -> FormObject:
        return self.nodes[0]

    @property
    def end(self) -> FormObject:
        return self.nodes[-1]

    def opposite(self) -> "Zigzag":
        flipped = tuple(
            Edge(e.morphism, LEFT if e.direction == RIGHT else RIGHT)
            for e in reversed(self.edges)
        )
        return Zigzag(tuple(reversed(self.nodes)), flipped, form=self.form)


def zigzag(form, *parts) -> Zigzag:
    """Build a zigzag from alternating node, (morphism, dir), node, ... parts."""
    nodes = [parts[0]]
    edges = []
    for i in range(1, len(parts), 2):
        m, direction = parts[i]
        edges.append(Edge(m, direction))
        nodes.append(parts[i + 1])
    return Zigzag(tuple(nodes), tuple(edges), form=form)


def dual_zigzag(z: Zigzag, dual_form) -> Zigzag:
    """The same zigzag seen in the dual form: every arrow reverses, so each
    direction flag flips and each morphism is replaced by its dual."""
    nodes = tuple(dual_form.dual_object(n) for n in z.nodes)
    edges = tuple(
        Edge(dual_form.dual_morphism(e.morphism),
             LEFT if e.direction == RIGHT else RIGHT)
        for e in z.edges
    )
    return Zigzag(nodes, edges, form=dual_form)


def chase_forward(z: Zigzag, S: Subobject, trace: bool = False):
    if S.owner.id != z.start.id:
        raise OwnershipError(f"{S!r} is not a subobject of the initial node {z.start.id}")
    steps = [S]
    cur = S
    for i, e in enumerate(z.edges):
        if e.direction == RIGHT:
            cur = Subobject(z.nodes[i + 1], e.morphism.dimg[cur.key])
        else:
            cur = Subobject(z.nodes[i + 1], e.morphism.iimg[cur.key])
        steps.append(cur)
    return (cur, steps) if trace else cur


def chase_backward(z: Zigzag, T: Subobject, trace: bool = False):
    if T.owner.id != z.end.id:
        raise OwnershipError(f"{T!r} is not a subobject of the final node {z.end.id}")
    steps = [T]
    cur = T
    for i in range(len(z.edges) - 1, -1, -1):
        e = z.edges[i]
        if e.direction == RIGHT:
            cur = Subobject(z.nodes[i], e.morphism.iimg[cur.key])
        else:
            cur = Subobject(z.nodes[i], e.morphism.dimg[cur.key])
        steps.append(cur)
    return (cur, steps) if trace else cur


def is_collapsible(z: Zigzag) -> bool:
    return all(is_isomorphism(e.morphism) for e in z.edges if e.direction == LEFT)


def is_subquotient(z: Zigzag) -> bool:
    """Left edges embeddings, right edges projections."""
    return all(
        is_injective(e.morphism) if e.direction == LEFT else is_surjective(e.morphism)
        for e in z.edges
    )


def chased_morphism(z: Zigzag, name: str = "") -> Morphism:
    """Morphism whose image maps are the forward/backward chases."""
    dimg = {k: chase_forward(z, Subobject(z.start, k)).key for k in z.start.lattice.keys}
    iimg = {k: chase_backward(z, Subobject(z.end, k)).key for k in z.end.lattice.keys}
    emap = None
    rel = None
    if all(n.algebra is not None for n in z.nodes) and all(
        e.morphism.element_map is not None for e in z.edges
    ):
        rel = induced_relation(z)
        fn = relation_function(rel, z.start.algebra.n)
        if fn is not None:
            emap = fn
    return Morphism(z.start, z.end, dimg, iimg, name=name, element_map=emap)


def collapse(z: Zigzag) -> Morphism:
    """Composite of a collapsible zigzag; left edges contribute the maps of
    the inverse isomorphism."""
    if not is_collapsible(z):
        raise ValidationError("zigzag is not collapsible")
    cur = identity_morphism(z.start)
    for i, e in enumerate(z.edges):
        m = e.morphism
        if e.direction == RIGHT:
            step = m
        else:
            # (GF): image maps of the inverse isomorphism are the swapped maps
            emap = None
            if m.element_map is not None:
                emap = [0] * m.dom.algebra.n
                for x, v in enumerate(m.element_map):
                    emap[v] = x
            step = Morphism(
                m.cod, m.dom, dict(m.iimg), dict(m.dimg),
                name=f"{m.name}^-1" if m.name else "", element_map=emap,
            )
        cur = compose(step, cur)
    return cur


def induced_relation(z: Zigzag) -> frozenset[tuple[int, int]]:
    """Relational composite of the edge hom graphs (opposite graphs for left
    edges), as a set of carrier pairs between the end nodes."""
    for node in z.nodes:
        if node.algebra is None:
            raise UnsupportedFormError(f"node {node.id} has no Slominski realization")
    for e in z.edges:
        if e.morphism.element_map is None:
            raise UnsupportedFormError(f"edge {e.morphism!r} has no Slominski realization")
    rel = {(x, x) for x in range(z.start.algebra.n)}
    for e in z.edges:
        t = e.morphism.element_map
        if e.direction == RIGHT:
            rel = {(a, t[b]) for a, b in rel}
        else:
            rel = {(a, x) for a, b in rel for x in range(e.morphism.dom.algebra.n) if t[x] == b}
    return frozenset(rel)


def relation_function(rel: frozenset[tuple[int, int]], domain_size: int) -> Optional[tuple[int, ...]]:
    """The relation as an element table when total and single-valued."""
    table: list[Optional[int]] = [None] * domain_size
    for a, b in rel:
        if table[a] is not None and table[a] != b:
            return None
        table[a] = b
    if any(v is None for v in table):
        return None
    return tuple(table)  # type: ignore[arg-type]
