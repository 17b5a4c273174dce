"""Pyramids over zigzags, homomorphism induction, and induced isomorphisms.

build_pyramid completes the triangular grid over a zigzag: base triangles
come from epi-mono splittings, wedges of two projections close into
projection diamonds (apex = quotient by the join of the kernels), wedges of
two embeddings into embedding diamonds (apex = meet of the images), and
mixed wedges factor the dotted composite.  Upward arrows are projections,
downward arrows embeddings.

decide_induction implements the chase criterion: a zigzag induces a
morphism iff forward-chasing bottom gives bottom and backward-chasing top
gives top; the induced morphism's image maps are the chases themselves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    Form,
    FormObject,
    Morphism,
    Subobject,
    compose,
    image,
    inverse_image,
    join,
    kernel,
    leq,
    meet,
    render_key,
)
from .errors import UnsupportedFormError, UnsupportedSubobjectError, ValidationError
from .zigzag import (
    LEFT,
    RIGHT,
    Edge,
    Zigzag,
    chase_backward,
    chase_forward,
    chased_morphism,
)

Coord = tuple[int, int]  # (s, t): subscript, superscript; 0 <= s <= t <= n


def _perm_fn(rng: Optional[random.Random]):
    if rng is None:
        return None
    def perm(n: int) -> tuple[int, ...]:
        p = list(range(n))
        rng.shuffle(p)
        return tuple(p)
    return perm


def _split(form: Form, f: Morphism, perm):
    try:
        return form.epi_mono(f, perm=perm)
    except UnsupportedSubobjectError as exc:
        raise UnsupportedFormError(str(exc), subobject=exc.subobject) from exc


def _proj(form: Form, S: Subobject, perm):
    try:
        if perm is not None and hasattr(form, "quotient_object"):
            return form.quotient_object(S, perm=perm)[1]
        return form.projection_of(S)
    except UnsupportedSubobjectError as exc:
        raise UnsupportedFormError(str(exc), subobject=S) from exc


def _emb(form: Form, S: Subobject, perm):
    try:
        if perm is not None and hasattr(form, "subobject_object"):
            return form.subobject_object(S, perm=perm)[1]
        return form.embedding_of(S)
    except UnsupportedSubobjectError as exc:
        raise UnsupportedFormError(str(exc), subobject=S) from exc


@dataclass
class Pyramid:
    base: Zigzag
    form: Form
    node: dict[Coord, FormObject]
    arrow: dict[tuple[Coord, Coord], tuple[Morphism, bool]]  # (lower, upper) -> (m, points_up)

    @property
    def n(self) -> int:
        return len(self.base)

    def _edge_between(self, a: Coord, b: Coord) -> Edge:
        """Zigzag edge for traversal from grid node a to grid node b."""
        if (a, b) in self.arrow:
            m, up = self.arrow[(a, b)]
            return Edge(m, RIGHT if up else LEFT)
        m, up = self.arrow[(b, a)]
        return Edge(m, LEFT if up else RIGHT)

    def _path_zigzag(self, coords: list[Coord]) -> Zigzag:
        nodes = tuple(self.node[c] for c in coords)
        edges = tuple(self._edge_between(coords[i], coords[i + 1]) for i in range(len(coords) - 1))
        return Zigzag(nodes, edges, form=self.form)

    def principal_horizontal(self) -> Zigzag:
        n = self.n
        coords = [(0, t) for t in range(n + 1)] + [(s, n) for s in range(1, n + 1)]
        return self._path_zigzag(coords)

    def principal_vertical_left(self) -> Zigzag:
        coords = [(0, t) for t in range(self.n + 1)]
        return self._path_zigzag(coords)

    def principal_vertical_right(self) -> Zigzag:
        coords = [(s, self.n) for s in range(self.n, -1, -1)]
        return self._path_zigzag(coords)

    def diamonds(self):
        """Yield (bottom, up_left, up_right, top) coordinate quadruples."""
        for h in range(2, self.n + 1):
            for s in range(0, self.n - h + 1):
                yield ((s + 1, s + h - 1), (s, s + h - 1), (s + 1, s + h), (s, s + h))

    def commutativity_failures(self) -> list[str]:
        """Chase every subobject of each diamond's left node to the right
        node (and back) along both wedges; report mismatches.

        Only the horizontal traversals are required to agree: paths through
        the bottom or the top wedge are both horizontal, while a bottom-to-
        apex chase mixes vertical steps and need not be path-independent.
        """
        out = []
        for bot, ul, ur, tp in self.diamonds():
            for src, dst in ((ul, ur), (ur, ul)):
                z_bottom = self._path_zigzag([src, bot, dst])
                z_top = self._path_zigzag([src, tp, dst])
                for k in self.node[src].lattice.keys:
                    S = Subobject(self.node[src], k)
                    a, b = chase_forward(z_bottom, S), chase_forward(z_top, S)
                    if a != b:
                        out.append(
                            f"diamond at {tp}: chasing {render_key(k)} from {src} "
                            f"gives {a!r} via {bot} but {b!r} via {tp}"
                        )
        return out

    def to_dot(self) -> str:
        lines = ["digraph pyramid {", "  rankdir=BT;"]
        for h in range(0, self.n + 1):
            coords = [(s, s + h) for s in range(0, self.n - h + 1)]
            names = " ".join(f"X_{s}_{t};" for s, t in coords)
            lines.append(f"  {{ rank=same; {names} }}")
        for (s, t) in sorted(self.node):
            lines.append(f'  X_{s}_{t} [label="X_{s}^{t}"];')
        for (lo, hi), (m, up) in sorted(self.arrow.items()):
            a, b = (lo, hi) if up else (hi, lo)
            style = "solid" if up else "dashed"
            lines.append(f"  X_{a[0]}_{a[1]} -> X_{b[0]}_{b[1]} [style={style}];")
        lines.append("}")
        return "\n".join(lines)


def build_pyramid(
    z: Zigzag,
    form: Optional[Form] = None,
    order: str = "ltr",
    scramble: Optional[int] = None,
) -> Pyramid:
    """Construct the full pyramid over a zigzag.

    `order` picks the within-layer completion order and `scramble` relabels
    the constructed intermediate objects from a seeded permutation; the
    induced morphism must not depend on either choice.
    """
    form = form if form is not None else z.form
    if form is None:
        raise UnsupportedFormError("zigzag carries no form and none was given")
    rng = random.Random(scramble) if scramble is not None else None
    perm = _perm_fn(rng)
    n = len(z)
    node: dict[Coord, FormObject] = {}
    arrow: dict[tuple[Coord, Coord], tuple[Morphism, bool]] = {}
    for i, obj in enumerate(z.nodes):
        node[(i, i)] = obj

    for i in range(1, n + 1):
        e = z.edges[i - 1]
        epi, mono = _split(form, e.morphism, perm)
        top_coord = (i - 1, i)
        node[top_coord] = epi.cod
        if e.direction == RIGHT:
            arrow[((i - 1, i - 1), top_coord)] = (epi, True)
            arrow[((i, i), top_coord)] = (mono, False)
        else:
            arrow[((i, i), top_coord)] = (epi, True)
            arrow[((i - 1, i - 1), top_coord)] = (mono, False)

    for h in range(2, n + 1):
        span = range(0, n - h + 1)
        for s in (span if order == "ltr" else reversed(span)):
            bot = (s + 1, s + h - 1)
            ul = (s, s + h - 1)
            ur = (s + 1, s + h)
            tp = (s, s + h)
            leg_l, l_up = arrow[(bot, ul)]
            leg_r, r_up = arrow[(bot, ur)]
            if l_up and r_up:
                # projection diamond: apex is the quotient by the kernel join
                J = join(kernel(leg_l), kernel(leg_r))
                p = _proj(form, J, perm)
                x = form.mediating_projection(p, leg_l)
                y = form.mediating_projection(p, leg_r)
                node[tp] = p.cod
                arrow[(ul, tp)] = (x, True)
                arrow[(ur, tp)] = (y, True)
            elif not l_up and not r_up:
                # embedding diamond: apex is the meet of the images
                S = meet(image(leg_l), image(leg_r))
                i_s = _emb(form, S, perm)
                u = form.mediating_embedding(i_s, leg_l)
                v = form.mediating_embedding(i_s, leg_r)
                node[tp] = i_s.dom
                arrow[(ul, tp)] = (u, False)
                arrow[(ur, tp)] = (v, False)
            elif not l_up and r_up:
                # dotted composite UL -> UR, split as projection then embedding
                dotted = compose(leg_r, leg_l)
                epi, mono = _split(form, dotted, perm)
                node[tp] = epi.cod
                arrow[(ul, tp)] = (epi, True)
                arrow[(ur, tp)] = (mono, False)
            else:
                # dotted composite UR -> UL
                dotted = compose(leg_l, leg_r)
                epi, mono = _split(form, dotted, perm)
                node[tp] = epi.cod
                arrow[(ur, tp)] = (epi, True)
                arrow[(ul, tp)] = (mono, False)

    return Pyramid(z, form, node, arrow)


# ---------------------------------------------------------------------------
# homomorphism induction


@dataclass(frozen=True)
class ChaseFailure:
    condition: str  # "forward-bottom" or "backward-top"
    node: str
    subobject: object

    def render(self) -> str:
        return f"{self.condition} first deviates at {self.node} with {render_key(self.subobject)}"


@dataclass
class InductionVerdict:
    induces: bool
    morphism: Optional[Morphism]
    failures: list[ChaseFailure] = field(default_factory=list)

    def __bool__(self):
        return self.induces


def decide_induction(z: Zigzag, name: str = "") -> InductionVerdict:
    """Homomorphism induction: forward-chase bottom and backward-chase top;
    both preserved iff the zigzag induces a morphism, whose image maps are
    the chases."""
    failures = []
    _, fwd = chase_forward(z, z.start.bottom, trace=True)
    if fwd[-1].key != z.end.lattice.bottom:
        idx = next(i for i, S in enumerate(fwd) if S.key != S.owner.lattice.bottom)
        failures.append(ChaseFailure("forward-bottom", fwd[idx].owner.id, fwd[idx].key))
    _, bwd = chase_backward(z, z.end.top, trace=True)
    if bwd[-1].key != z.start.lattice.top:
        idx = next(i for i, S in enumerate(bwd) if S.key != S.owner.lattice.top)
        failures.append(ChaseFailure("backward-top", bwd[idx].owner.id, bwd[idx].key))
    if failures:
        return InductionVerdict(False, None, failures)
    return InductionVerdict(True, chased_morphism(z, name=name))


def declared_member(form: Form, m: Morphism) -> Optional[Morphism]:
    """The declared morphism extensionally equal to m, if any.

    Induced morphisms are represented by their image maps and need not be
    members of a declared form; this is the optional membership check."""
    for candidate in form.morphisms:
        if candidate == m:
            return candidate
    return None


@dataclass
class IsoVerdict:
    holds: bool
    forward: Optional[Morphism]
    backward: Optional[Morphism]
    failures: list[ChaseFailure] = field(default_factory=list)

    def __bool__(self):
        return self.holds


def decide_isomorphism(z: Zigzag, name: str = "") -> IsoVerdict:
    """Universal isomorphism criterion: bottom and top are preserved by
    chasing from each end to the opposite end (four chases); then the
    zigzag and its opposite induce mutually inverse isomorphisms."""
    failures = []
    checks = (
        ("forward-bottom", chase_forward(z, z.start.bottom), z.end.lattice.bottom),
        ("forward-top", chase_forward(z, z.start.top), z.end.lattice.top),
        ("backward-bottom", chase_backward(z, z.end.bottom), z.start.lattice.bottom),
        ("backward-top", chase_backward(z, z.end.top), z.start.lattice.top),
    )
    for cond, got, want in checks:
        if got.key != want:
            failures.append(ChaseFailure(cond, got.owner.id, got.key))
    if failures:
        return IsoVerdict(False, None, None, failures)
    fwd = chased_morphism(z, name=name)
    bwd = chased_morphism(z.opposite(), name=f"{name}^-1" if name else "")
    return IsoVerdict(True, fwd, bwd)


@dataclass
class QuotientIsoResult:
    w_normal_to_x: bool
    fw_normal_to_fx: bool
    iso: Optional[Morphism]
    zigzag: Optional[Zigzag]

    @property
    def equivalent(self) -> bool:
        return self.w_normal_to_x == self.fw_normal_to_fx

    @property
    def holds(self) -> bool:
        return self.equivalent and (not self.w_normal_to_x or self.iso is not None)


def quotient_iso(form: Form, f: Morphism, W: Subobject, X: Subobject) -> QuotientIsoResult:
    """The quotient isomorphism X/W = fX/fW.

    Preconditions Ker f <= W <= X with X conormal are validated; the result
    records both relative-normality verdicts (they must agree) and, when
    they hold, the isomorphism induced by the theorem's zigzag."""
    from .core import is_relatively_normal  # local import to avoid a cycle

    if W.owner.id != f.dom.id or X.owner.id != f.dom.id:
        raise ValidationError("W and X must be subobjects of the domain of f")
    if not leq(kernel(f), W):
        raise ValidationError("precondition failed: Ker f <= W")
    if not leq(W, X):
        raise ValidationError("precondition failed: W <= X")
    if not form.is_conormal(X):
        raise ValidationError("precondition failed: X conormal")

    w_in_x = is_relatively_normal(form, W, X)
    fX = Subobject(f.cod, f.dimg[X.key])
    fW = Subobject(f.cod, f.dimg[W.key])
    fw_in_fx = is_relatively_normal(form, fW, fX)
    if not (w_in_x and fw_in_fx):
        return QuotientIsoResult(w_in_x, fw_in_fx, None, None)

    iota_x = form.embedding_of(X)
    pi_w = form.projection_of(inverse_image(iota_x, W))
    iota_fx = form.embedding_of(fX)
    pi_fw = form.projection_of(inverse_image(iota_fx, fW))
    zz = Zigzag(
        (pi_w.cod, iota_x.dom, f.dom, f.cod, iota_fx.dom, pi_fw.cod),
        (
            Edge(pi_w, LEFT),
            Edge(iota_x, RIGHT),
            Edge(f, RIGHT),
            Edge(iota_fx, LEFT),
            Edge(pi_fw, RIGHT),
        ),
        form=form,
    )
    verdict = decide_isomorphism(zz, name="quotient-iso")
    if not verdict.holds:
        return QuotientIsoResult(w_in_x, fw_in_fx, None, zz)
    return QuotientIsoResult(w_in_x, fw_in_fx, verdict.forward, zz)
