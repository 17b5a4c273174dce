"""Objects, subobjects, morphisms and the noetherian-form interface.

A form object owns a bounded subobject lattice; a morphism carries the
direct/inverse image maps of its Galois connection as explicit tables over
those lattices.  Morphism equality is extensional: same endpoints and the
same image maps on every subobject.

A form bundles a set of objects with normality/conormality tests and the
embedding/projection constructors of Axiom 3.  Two concrete families exist:
data-defined forms (everything decided by search over the declared morphism
set, see DataForm) and Slominski-algebra forms (intrinsic constructions, see
slominski.SlominskiForm).  DualForm is the lazy order/direction-reversing
adapter; dualize(dualize(f)) returns the original form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import (
    CompositionError,
    LatticeError,
    OwnershipError,
    UnsupportedFormError,
    UnsupportedSubobjectError,
)
from .lattice import dual_lattice


class FormObject:
    """A 'group' of the framework: an identifier plus its subobject lattice."""

    __slots__ = ("id", "lattice", "algebra")

    def __init__(self, id: str, lattice, algebra=None):
        self.id = id
        self.lattice = lattice
        self.algebra = algebra

    def sub(self, key) -> "Subobject":
        if key not in set(self.lattice.keys):
            raise LatticeError(f"{self.id} has no subobject {key!r}")
        return Subobject(self, key)

    @property
    def bottom(self) -> "Subobject":
        return Subobject(self, self.lattice.bottom)

    @property
    def top(self) -> "Subobject":
        return Subobject(self, self.lattice.top)

    def subobjects(self):
        return tuple(Subobject(self, k) for k in self.lattice.keys)

    @property
    def order(self) -> int:
        """Carrier size for algebra-backed objects, lattice size otherwise."""
        return self.algebra.n if self.algebra is not None else len(self.lattice.keys)

    def __repr__(self):
        return f"FormObject({self.id})"


@dataclass(frozen=True)
class Subobject:
    owner: FormObject
    key: object

    def __eq__(self, other):
        if not isinstance(other, Subobject):
            return NotImplemented
        return self.owner.id == other.owner.id and self.key == other.key

    def __hash__(self):
        return hash((self.owner.id, self.key))

    def __repr__(self):
        return f"{self.owner.id}:{render_key(self.key)}"


def render_key(key) -> str:
    if isinstance(key, tuple):
        return "{" + ",".join(str(e) for e in key) + "}"
    return str(key)


class Morphism:
    """A morphism with explicit direct/inverse image tables.

    dimg maps every subobject key of dom to one of cod; iimg the other way.
    element_map (optional) is the carrier-level realization when both ends
    are backed by Slominski algebras.
    """

    __slots__ = ("dom", "cod", "dimg", "iimg", "name", "element_map", "_sig")

    def __init__(self, dom, cod, dimg, iimg, name="", element_map=None):
        self.dom = dom
        self.cod = cod
        self.dimg = dimg
        self.iimg = iimg
        self.name = name
        self.element_map = tuple(element_map) if element_map is not None else None
        self._sig = None

    def signature(self):
        if self._sig is None:
            self._sig = (
                self.dom.id,
                self.cod.id,
                tuple(self.dimg[k] for k in self.dom.lattice.keys),
                tuple(self.iimg[k] for k in self.cod.lattice.keys),
            )
        return self._sig

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        label = self.name or "morphism"
        return f"{label}:{self.dom.id}->{self.cod.id}"


@dataclass(frozen=True)
class Factorization:
    """f = m . h . e with e a projection, h an isomorphism, m an embedding."""

    e: Morphism
    h: Morphism
    m: Morphism

    @property
    def composite(self) -> Morphism:
        return compose(self.m, compose(self.h, self.e))


# ---------------------------------------------------------------------------
# free operations on morphisms and subobjects


def compose(g: Morphism, f: Morphism) -> Morphism:
    """Composite g . f (f applied first)."""
    if f.cod is not g.dom and f.cod.id != g.dom.id:
        raise CompositionError(f"cannot compose {g!r} after {f!r}: codomain/domain mismatch")
    dimg = {k: g.dimg[v] for k, v in f.dimg.items()}
    iimg = {k: f.iimg[v] for k, v in g.iimg.items()}
    emap = None
    if f.element_map is not None and g.element_map is not None:
        emap = tuple(g.element_map[x] for x in f.element_map)
    name = f"{g.name}.{f.name}" if f.name and g.name else ""
    return Morphism(f.dom, g.cod, dimg, iimg, name=name, element_map=emap)


def identity_morphism(obj: FormObject) -> Morphism:
    table = {k: k for k in obj.lattice.keys}
    emap = tuple(range(obj.algebra.n)) if obj.algebra is not None else None
    return Morphism(obj, obj, dict(table), dict(table), name=f"id_{obj.id}", element_map=emap)


def _own(S: Subobject, obj: FormObject, what: str):
    if S.owner.id != obj.id:
        raise OwnershipError(f"{S!r} does not belong to {what} {obj.id}")


def direct_image(f: Morphism, A: Subobject) -> Subobject:
    _own(A, f.dom, "domain of")
    return Subobject(f.cod, f.dimg[A.key])


def inverse_image(f: Morphism, B: Subobject) -> Subobject:
    _own(B, f.cod, "codomain of")
    return Subobject(f.dom, f.iimg[B.key])


def kernel(f: Morphism) -> Subobject:
    return Subobject(f.dom, f.iimg[f.cod.lattice.bottom])


def image(f: Morphism) -> Subobject:
    return Subobject(f.cod, f.dimg[f.dom.lattice.top])


def join(S: Subobject, T: Subobject) -> Subobject:
    _own(T, S.owner, "owner of")
    return Subobject(S.owner, S.owner.lattice.join(S.key, T.key))


def meet(S: Subobject, T: Subobject) -> Subobject:
    _own(T, S.owner, "owner of")
    return Subobject(S.owner, S.owner.lattice.meet(S.key, T.key))


def bottom(G: FormObject) -> Subobject:
    return G.bottom


def top(G: FormObject) -> Subobject:
    return G.top


def leq(S: Subobject, T: Subobject) -> bool:
    _own(T, S.owner, "owner of")
    return S.owner.lattice.leq(S.key, T.key)


def is_injective(f: Morphism) -> bool:
    return kernel(f).key == f.dom.lattice.bottom


def is_surjective(f: Morphism) -> bool:
    return image(f).key == f.cod.lattice.top


def is_isomorphism(f: Morphism) -> bool:
    return is_injective(f) and is_surjective(f)


def is_zero_morphism(f: Morphism) -> bool:
    return image(f).key == f.cod.lattice.bottom


@dataclass(frozen=True)
class RMLResult:
    holds: bool
    hypotheses_met: bool

    def __bool__(self):
        return self.holds


def restricted_modular_law_check(form, X: Subobject, Y: Subobject, Z: Subobject) -> RMLResult:
    """Check X v (Y ^ Z) = (X v Y) ^ Z under the restricted hypotheses.

    Returns vacuous-true with hypotheses_met=False when the triple does not
    satisfy X <= Z together with (Y normal and Z conormal) or (Y conormal
    and X normal).
    """
    _own(Y, X.owner, "owner of")
    _own(Z, X.owner, "owner of")
    met = leq(X, Z) and (
        (form.is_normal(Y) and form.is_conormal(Z))
        or (form.is_conormal(Y) and form.is_normal(X))
    )
    if not met:
        return RMLResult(True, False)
    lhs = join(X, meet(Y, Z))
    rhs = meet(join(X, Y), Z)
    return RMLResult(lhs == rhs, True)


def is_relatively_normal(form, B: Subobject, A: Subobject) -> bool:
    """B normal to A: B <= A, A conormal, and the pullback of B along the
    embedding of A is normal in the embedding's domain."""
    _own(A, B.owner, "owner of")
    if not leq(B, A) or not form.is_conormal(A):
        return False
    emb = form.embedding_of(A)
    return form.is_normal(inverse_image(emb, B))


# ---------------------------------------------------------------------------
# forms


class Form:
    """Interface shared by all form flavours."""

    name = "form"
    objects: dict
    morphisms: tuple

    def identity(self, obj: FormObject) -> Morphism:
        raise NotImplementedError

    def is_normal(self, S: Subobject) -> bool:
        raise NotImplementedError

    def is_conormal(self, S: Subobject) -> bool:
        raise NotImplementedError

    def embedding_of(self, S: Subobject) -> Morphism:
        raise NotImplementedError

    def projection_of(self, S: Subobject) -> Morphism:
        raise NotImplementedError

    def factorize(self, f: Morphism) -> Factorization:
        raise NotImplementedError

    def epi_mono(self, f: Morphism, perm=None) -> tuple[Morphism, Morphism]:
        """Split f as (projection e, embedding m) with f = m . e."""
        fac = self.factorize(f)
        return compose(fac.h, fac.e), fac.m

    def mediating_projection(self, p: Morphism, n: Morphism) -> Morphism:
        """The x with x . n = p, for projections with Ker n <= Ker p."""
        raise NotImplementedError

    def mediating_embedding(self, i: Morphism, m: Morphism) -> Morphism:
        """The u with m . u = i, for embeddings with Im i <= Im m."""
        raise NotImplementedError

    def dual(self) -> "Form":
        return DualForm(self)

    # conveniences -----------------------------------------------------

    def normal_subobjects(self, obj: FormObject):
        return tuple(S for S in obj.subobjects() if self.is_normal(S))

    def conormal_subobjects(self, obj: FormObject):
        return tuple(S for S in obj.subobjects() if self.is_conormal(S))

    def coker(self, f: Morphism) -> Morphism:
        """Projection by Im f (requires Im f normal)."""
        return self.projection_of(image(f))

    def ker_embedding(self, f: Morphism) -> Morphism:
        """Embedding of Ker f (requires Ker f conormal)."""
        return self.embedding_of(kernel(f))


class DataForm(Form):
    """A form given purely by declared data; all existential notions are
    decided by exhaustive search over the declared morphism set."""

    def __init__(self, objects: Iterable[FormObject], morphisms: Iterable[Morphism], name="form"):
        self.name = name
        self.objects = {o.id: o for o in objects}
        self.morphisms = tuple(morphisms)
        self._ids = {}
        for m in self.morphisms:
            if m.dom is m.cod and all(m.dimg[k] == k for k in m.dom.lattice.keys) and all(
                m.iimg[k] == k for k in m.cod.lattice.keys
            ):
                self._ids.setdefault(m.dom.id, m)
        self._dual: Optional[DualForm] = None

    def identity(self, obj):
        try:
            return self._ids[obj.id]
        except KeyError:
            raise UnsupportedFormError(f"no identity morphism declared for {obj.id}") from None

    def is_normal(self, S):
        return any(m.dom.id == S.owner.id and kernel(m) == S for m in self.morphisms)

    def is_conormal(self, S):
        return any(m.cod.id == S.owner.id and image(m) == S for m in self.morphisms)

    def embedding_of(self, S):
        for m in self.morphisms:
            if m.cod.id == S.owner.id and image(m) == S and is_injective(m):
                return m
        raise UnsupportedSubobjectError(
            f"no embedding associated to {S!r} is declared", subobject=S
        )

    def projection_of(self, S):
        for m in self.morphisms:
            if m.dom.id == S.owner.id and kernel(m) == S and is_surjective(m):
                return m
        raise UnsupportedSubobjectError(
            f"no projection associated to {S!r} is declared", subobject=S
        )

    def factorize(self, f):
        e0 = self.projection_of(kernel(f))
        m0 = self.embedding_of(image(f))
        for h in self.morphisms:
            if h.dom.id != e0.cod.id or h.cod.id != m0.dom.id or not is_isomorphism(h):
                continue
            if compose(m0, compose(h, e0)) == f:
                return Factorization(e0, h, m0)
        raise UnsupportedFormError(
            f"no declared isomorphism completes the factorization of {f!r}"
        )

    def mediating_projection(self, p, n):
        for x in self.morphisms:
            if x.dom.id == n.cod.id and x.cod.id == p.cod.id and compose(x, n) == p:
                return x
        raise UnsupportedFormError(f"no declared morphism mediates {p!r} through {n!r}")

    def mediating_embedding(self, i, m):
        for u in self.morphisms:
            if u.dom.id == i.dom.id and u.cod.id == m.dom.id and compose(m, u) == i:
                return u
        raise UnsupportedFormError(f"no declared morphism mediates {i!r} through {m!r}")


class DualForm(Form):
    """Lazy dual view: morphisms reversed with image maps swapped, lattices
    order-reversed, normal/conormal and embeddings/projections exchanged."""

    def __init__(self, primal: Form):
        self.primal = primal
        self.name = f"dual({primal.name})"
        self._objs = {}
        self._primal_objs = {}
        self._mors = {}
        self.objects = {oid: self.dual_object(o) for oid, o in primal.objects.items()}
        self.morphisms = tuple(self.dual_morphism(m) for m in primal.morphisms)

    def dual_object(self, obj: FormObject) -> FormObject:
        got = self._objs.get(obj.id)
        if got is None:
            got = FormObject(obj.id, dual_lattice(obj.lattice), algebra=None)
            self._objs[obj.id] = got
            self._primal_objs[obj.id] = obj
        return got

    def dual_morphism(self, m: Morphism) -> Morphism:
        got = self._mors.get(id(m))
        if got is None:
            got = Morphism(
                self.dual_object(m.cod),
                self.dual_object(m.dom),
                dict(m.iimg),
                dict(m.dimg),
                name=m.name,
            )
            self._mors[id(m)] = got
            self._mors[id(got)] = m
        return got

    def primal_of(self, m: Morphism) -> Morphism:
        got = self._mors.get(id(m))
        if got is None:
            raise UnsupportedFormError(f"{m!r} is not a morphism of {self.name}")
        return got

    def _dual_sub(self, S: Subobject) -> Subobject:
        return Subobject(self._primal_objs[S.owner.id], S.key)

    def dual(self):
        return self.primal

    def identity(self, obj):
        return self.dual_morphism(self.primal.identity(self._primal_objs[obj.id]))

    def is_normal(self, S):
        return self.primal.is_conormal(self._dual_sub(S))

    def is_conormal(self, S):
        return self.primal.is_normal(self._dual_sub(S))

    def embedding_of(self, S):
        return self.dual_morphism(self.primal.projection_of(self._dual_sub(S)))

    def projection_of(self, S):
        return self.dual_morphism(self.primal.embedding_of(self._dual_sub(S)))

    def factorize(self, f):
        fac = self.primal.factorize(self.primal_of(f))
        return Factorization(
            self.dual_morphism(fac.m), self.dual_morphism(fac.h), self.dual_morphism(fac.e)
        )

    def mediating_projection(self, p, n):
        x = self.primal.mediating_embedding(self.primal_of(p), self.primal_of(n))
        return self.dual_morphism(x)

    def mediating_embedding(self, i, m):
        u = self.primal.mediating_projection(self.primal_of(i), self.primal_of(m))
        return self.dual_morphism(u)


def dualize(form: Form) -> Form:
    """Reverse the form: an involution, dualize(dualize(F)) is F itself."""
    return form.dual()
