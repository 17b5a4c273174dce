"""Slominski algebras: the concrete finite instance of a noetherian form.

A Slominski algebra is a finite carrier with binary operations p and d and a
constant 0 satisfying d(x,x) = 0 and p(d(x,y),y) = x.  Groups become
Slominski algebras via p(a,b) = a*b and d(a,b) = a*b^-1; subalgebras are then
subgroups and homomorphisms are group homomorphisms.

The module provides subalgebra lattices, congruence generation, quotients,
hom enumeration, and SlominskiForm, which realizes the abstract form
interface with intrinsic constructions (every subalgebra is conormal;
normality is decided by the generated congruence's zero class).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .core import Form, FormObject, Morphism, Factorization, Subobject, identity_morphism, image, kernel
from .errors import ClosureError, UnsupportedFormError, UnsupportedSubobjectError, ValidationError
from .lattice import MaskLattice, elements_of, mask_of


@dataclass(frozen=True)
class SlominskiAlgebra:
    name: str
    zero: int
    p: tuple[tuple[int, ...], ...]
    d: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.p)

    def validate(self) -> None:
        n = self.n
        if not (0 <= self.zero < n) or len(self.d) != n:
            raise ValidationError(f"{self.name}: malformed tables")
        for t in (self.p, self.d):
            for row in t:
                if len(row) != n or any(not 0 <= v < n for v in row):
                    raise ValidationError(f"{self.name}: ragged or out-of-range table row")
        for x in range(n):
            if self.d[x][x] != self.zero:
                raise ValidationError(f"{self.name}: d({x},{x}) != 0")
            for y in range(n):
                if self.p[self.d[x][y]][y] != x:
                    raise ValidationError(f"{self.name}: p(d({x},{y}),{y}) != {x}")

    def __repr__(self):
        return f"SlominskiAlgebra({self.name}, n={self.n})"


@dataclass(frozen=True)
class SlominskiHom:
    dom: SlominskiAlgebra
    cod: SlominskiAlgebra
    table: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.table) != self.dom.n or any(not 0 <= v < self.cod.n for v in self.table):
            raise ValidationError(f"hom {self.name or '?'}: table does not match carriers")

    def validate(self) -> None:
        f, A, B = self.table, self.dom, self.cod
        if f[A.zero] != B.zero:
            raise ValidationError(f"hom {self.name or '?'}: does not preserve 0")
        for x in range(A.n):
            for y in range(A.n):
                if f[A.p[x][y]] != B.p[f[x]][f[y]] or f[A.d[x][y]] != B.d[f[x]][f[y]]:
                    raise ValidationError(f"hom {self.name or '?'}: not compatible at ({x},{y})")

    def __call__(self, x: int) -> int:
        return self.table[x]


def is_hom_table(A: SlominskiAlgebra, B: SlominskiAlgebra, table: Sequence[int]) -> bool:
    for x in range(A.n):
        fx = table[x]
        for y in range(A.n):
            fy = table[y]
            if table[A.p[x][y]] != B.p[fx][fy] or table[A.d[x][y]] != B.d[fx][fy]:
                return False
    return True


def from_group(
    cayley: Sequence[Sequence[int]],
    inverse: Sequence[int],
    identity: int,
    name: str = "G",
) -> SlominskiAlgebra:
    """Turn a finite group into a Slominski algebra: p = product, d(a,b) = a*b^-1."""
    n = len(cayley)
    for row in cayley:
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise ValidationError(f"{name}: Cayley table is ragged or out of range")
    if len(inverse) != n or not 0 <= identity < n:
        raise ValidationError(f"{name}: malformed inverse table or identity")
    for x in range(n):
        if cayley[identity][x] != x or cayley[x][identity] != x:
            raise ValidationError(f"{name}: {identity} is not an identity element")
        if cayley[x][inverse[x]] != identity or cayley[inverse[x]][x] != identity:
            raise ValidationError(f"{name}: {inverse[x]} is not inverse to {x}")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if cayley[cayley[x][y]][z] != cayley[x][cayley[y][z]]:
                    raise ValidationError(f"{name}: multiplication is not associative")
    p = tuple(tuple(row) for row in cayley)
    d = tuple(tuple(cayley[a][inverse[b]] for b in range(n)) for a in range(n))
    alg = SlominskiAlgebra(name, identity, p, d)
    alg.validate()
    return alg


# ---------------------------------------------------------------------------
# subalgebras


def close_mask(alg: SlominskiAlgebra, mask: int) -> int:
    """Least subalgebra containing the given subset (as a bit mask)."""
    mask |= 1 << alg.zero
    while True:
        new = mask
        elems = elements_of(mask)
        for x in elems:
            px, dx = alg.p[x], alg.d[x]
            for y in elems:
                new |= (1 << px[y]) | (1 << dx[y])
        if new == mask:
            return mask
        mask = new


@lru_cache(maxsize=None)
def subalgebra_masks(alg: SlominskiAlgebra) -> tuple[int, ...]:
    """All subalgebra masks, found by closing each known subalgebra plus one
    extra generator until no new ones appear."""
    found = {close_mask(alg, 0)}
    frontier = list(found)
    full = (1 << alg.n) - 1
    while frontier:
        s = frontier.pop()
        rest = full & ~s
        while rest:
            b = rest & -rest
            rest ^= b
            t = close_mask(alg, s | b)
            if t not in found:
                found.add(t)
                frontier.append(t)
    return tuple(sorted(found))


def subalgebras(alg: SlominskiAlgebra) -> tuple[tuple[int, ...], ...]:
    """Subalgebras as sorted element tuples, ordered by size then elements."""
    lat = subalgebra_lattice(alg)
    return lat.keys


@lru_cache(maxsize=None)
def subalgebra_lattice(alg: SlominskiAlgebra) -> MaskLattice:
    return MaskLattice(alg.n, subalgebra_masks(alg), lambda m: close_mask(alg, m))


# ---------------------------------------------------------------------------
# congruences and quotients


@dataclass(frozen=True)
class Congruence:
    algebra: SlominskiAlgebra
    classes: tuple[tuple[int, ...], ...]

    def class_index(self, x: int) -> int:
        for i, c in enumerate(self.classes):
            if x in c:
                return i
        raise ValidationError(f"element {x} outside carrier")

    @property
    def zero_class(self) -> tuple[int, ...]:
        return self.classes[self.class_index(self.algebra.zero)]


def generate_congruence(alg: SlominskiAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing the pairs: union-find closed under
    applying p and d to related pairs until fixpoint."""
    n = alg.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = []

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
            work.append((x, y))

    for a, b in pairs:
        union(a, b)
    while work:
        a, b = work.pop()
        for z in range(n):
            union(alg.p[a][z], alg.p[b][z])
            union(alg.p[z][a], alg.p[z][b])
            union(alg.d[a][z], alg.d[b][z])
            union(alg.d[z][a], alg.d[z][b])
    buckets: dict[int, list[int]] = {}
    for x in range(n):
        buckets.setdefault(find(x), []).append(x)
    classes = tuple(sorted((tuple(sorted(c)) for c in buckets.values()), key=lambda c: c[0]))
    return Congruence(alg, classes)


def is_subalgebra(alg: SlominskiAlgebra, elems: Iterable[int]) -> bool:
    m = mask_of(elems)
    return close_mask(alg, m) == m and (m >> alg.zero) & 1


def is_normal_subalgebra(alg: SlominskiAlgebra, B: Iterable[int]) -> bool:
    """B is a kernel iff the congruence generated by B x {0} has zero class
    exactly B."""
    belems = tuple(sorted(set(B)))
    if not is_subalgebra(alg, belems):
        raise ValidationError(f"{belems} is not a subalgebra of {alg.name}")
    cong = generate_congruence(alg, [(b, alg.zero) for b in belems])
    return cong.zero_class == belems


def quotient(
    alg: SlominskiAlgebra, B: Iterable[int], name: Optional[str] = None
) -> tuple[SlominskiAlgebra, SlominskiHom]:
    """Quotient by a normal subalgebra, with the projection hom.

    Classes are indexed in order of their minimal element, so tables are
    reproducible.
    """
    belems = tuple(sorted(set(B)))
    if not is_normal_subalgebra(alg, belems):
        raise UnsupportedSubobjectError(f"{belems} is not normal in {alg.name}",
                                        subobject=belems)
    cong = generate_congruence(alg, [(b, alg.zero) for b in belems])
    k = len(cong.classes)
    cls = [0] * alg.n
    for i, c in enumerate(cong.classes):
        for x in c:
            cls[x] = i
    reps = [c[0] for c in cong.classes]
    p = tuple(tuple(cls[alg.p[reps[i]][reps[j]]] for j in range(k)) for i in range(k))
    d = tuple(tuple(cls[alg.d[reps[i]][reps[j]]] for j in range(k)) for i in range(k))
    qname = name or f"{alg.name}/{{{','.join(map(str, belems))}}}"
    q = SlominskiAlgebra(qname, cls[alg.zero], p, d)
    q.validate()
    proj = SlominskiHom(alg, q, tuple(cls), name=f"pi_{qname}")
    return q, proj


def subalgebra_algebra(
    alg: SlominskiAlgebra, S: Iterable[int], name: Optional[str] = None
) -> tuple[SlominskiAlgebra, SlominskiHom]:
    """A subalgebra as an algebra in its own right, with the inclusion hom.

    Carrier indices follow the sorted parent elements.
    """
    elems = tuple(sorted(set(S)))
    if not is_subalgebra(alg, elems):
        raise ValidationError(f"{elems} is not a subalgebra of {alg.name}")
    idx = {e: i for i, e in enumerate(elems)}
    p = tuple(tuple(idx[alg.p[x][y]] for y in elems) for x in elems)
    d = tuple(tuple(idx[alg.d[x][y]] for y in elems) for x in elems)
    sname = name or f"{alg.name}[{','.join(map(str, elems))}]"
    sub = SlominskiAlgebra(sname, idx[alg.zero], p, d)
    incl = SlominskiHom(sub, alg, elems, name=f"iota_{sname}")
    return sub, incl


def permuted(alg: SlominskiAlgebra, perm: Sequence[int], name: Optional[str] = None) -> SlominskiAlgebra:
    """Relabel the carrier along a permutation (isomorphic copy)."""
    n = alg.n
    inv = [0] * n
    for i, v in enumerate(perm):
        inv[v] = i
    p = tuple(tuple(perm[alg.p[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
    d = tuple(tuple(perm[alg.d[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
    return SlominskiAlgebra(name or alg.name + "'", perm[alg.zero], p, d)


# ---------------------------------------------------------------------------
# hom enumeration


@lru_cache(maxsize=None)
def enumerate_homs(A: SlominskiAlgebra, B: SlominskiAlgebra) -> tuple[SlominskiHom, ...]:
    """All homs A -> B, by lexicographic backtracking with table pruning."""
    n, m = A.n, B.n
    table = [-1] * n
    out = []

    def consistent(k: int) -> bool:
        # check every p/d constraint whose three indices are all assigned
        for x in range(k + 1):
            for y in range(k + 1):
                for op, bop in ((A.p, B.p), (A.d, B.d)):
                    z = op[x][y]
                    if z <= k and table[op[x][y]] != bop[table[x]][table[y]]:
                        return False
        return True

    def rec(k: int):
        if k == n:
            out.append(SlominskiHom(A, B, tuple(table)))
            return
        choices = (B.zero,) if k == A.zero else range(m)
        for v in choices:
            table[k] = v
            if consistent(k):
                rec(k + 1)
        table[k] = -1

    rec(0)
    return tuple(out)


def zero_hom(A: SlominskiAlgebra, B: SlominskiAlgebra) -> SlominskiHom:
    return SlominskiHom(A, B, (B.zero,) * A.n, name="0")


def identity_hom(A: SlominskiAlgebra) -> SlominskiHom:
    return SlominskiHom(A, A, tuple(range(A.n)), name=f"id_{A.name}")


def compose_homs(g: SlominskiHom, f: SlominskiHom) -> SlominskiHom:
    if f.cod != g.dom:
        raise ValidationError("hom composition endpoint mismatch")
    name = f"{g.name}.{f.name}" if f.name and g.name else ""
    return SlominskiHom(f.dom, g.cod, tuple(g.table[x] for x in f.table), name=name)


def close_homs(
    algebras: Sequence[SlominskiAlgebra], homs: Sequence[SlominskiHom]
) -> tuple[SlominskiHom, ...]:
    """Identities plus the composition closure of the given homs."""
    pool: dict[tuple, SlominskiHom] = {}

    def key(h):
        return (h.dom.name, h.cod.name, h.table)

    for a in algebras:
        h = identity_hom(a)
        pool[key(h)] = h
    for h in homs:
        pool.setdefault(key(h), h)
    frontier = list(pool.values())
    while frontier:
        h = frontier.pop()
        for g in list(pool.values()):
            for comp in ((g, h), (h, g)):
                if comp[1].cod == comp[0].dom:
                    c = compose_homs(*comp)
                    if key(c) not in pool:
                        pool[key(c)] = c
                        frontier.append(c)
    return tuple(pool.values())


# ---------------------------------------------------------------------------
# the form over Slominski algebras


class SlominskiForm(Form):
    """Form whose objects are Slominski algebras.

    Without declared morphisms it acts as an open universe (used by the
    diagram and pyramid machinery, where embeddings and projections are
    constructed on demand).  as_form() builds a declared, validated form
    suitable for the axiom suite.
    """

    def __init__(self, name: str = "slominski"):
        self.name = name
        self.objects: dict[str, FormObject] = {}
        self._by_algebra: dict[SlominskiAlgebra, FormObject] = {}
        self._ids_taken: set[str] = set()
        self.morphisms: tuple[Morphism, ...] = ()
        self._index: dict[tuple, Morphism] = {}
        self._sub_cache: dict[tuple, tuple[FormObject, Morphism]] = {}
        self._quot_cache: dict[tuple, tuple[FormObject, Morphism]] = {}

    # objects and morphisms --------------------------------------------

    def object_of(
        self, alg: SlominskiAlgebra, name: Optional[str] = None, declare: bool = False
    ) -> FormObject:
        """Form object for an algebra.  Only declared objects enter
        self.objects; derived ones (quotients, subalgebra copies) are kept in
        a side registry so the axiom suite sees the declared form only."""
        got = self._by_algebra.get(alg)
        if got is not None:
            if declare:
                self.objects.setdefault(got.id, got)
            return got
        oid = name or alg.name
        if oid in self._ids_taken:
            oid = f"{oid}#{len(self._ids_taken)}"
        obj = FormObject(oid, subalgebra_lattice(alg), algebra=alg)
        self._ids_taken.add(oid)
        if declare:
            self.objects[oid] = obj
        self._by_algebra[alg] = obj
        return obj

    def morphism(self, hom: SlominskiHom, name: Optional[str] = None) -> Morphism:
        dom = self.object_of(hom.dom)
        cod = self.object_of(hom.cod)
        return element_morphism(dom, cod, hom.table, name or hom.name)

    def declare(self, algebras: Sequence[SlominskiAlgebra], homs: Sequence[SlominskiHom]) -> None:
        objs = [self.object_of(a, declare=True) for a in algebras]
        mors = []
        for h in homs:
            h.validate()
            if h.dom not in self._by_algebra or h.cod not in self._by_algebra:
                raise ClosureError(f"hom {h.name or h.table} uses an undeclared algebra")
            mors.append(self.morphism(h))
        self.morphisms = tuple(mors)
        self._index = {m.signature(): m for m in self.morphisms}
        self._check_closure(objs)

    def _check_closure(self, objs):
        by_table = {(m.dom.id, m.cod.id, m.element_map): m for m in self.morphisms}
        for o in objs:
            emap = tuple(range(o.algebra.n))
            if (o.id, o.id, emap) not in by_table:
                raise ClosureError(f"identity of {o.id} is not declared")
        for g in self.morphisms:
            for f in self.morphisms:
                if f.cod.id != g.dom.id:
                    continue
                emap = tuple(g.element_map[x] for x in f.element_map)
                if (f.dom.id, g.cod.id, emap) not in by_table:
                    raise ClosureError(
                        f"composite of ({g.name or g!r}, {f.name or f!r}) is not declared"
                    )

    def identity(self, obj):
        return identity_morphism(obj)

    # intrinsic notions --------------------------------------------------

    def is_normal(self, S: Subobject) -> bool:
        return is_normal_subalgebra(S.owner.algebra, S.key)

    def is_conormal(self, S: Subobject) -> bool:
        return True

    def embedding_of(self, S: Subobject) -> Morphism:
        return self.subobject_object(S)[1]

    def projection_of(self, S: Subobject) -> Morphism:
        return self.quotient_object(S)[1]

    def subobject_object(self, S: Subobject, perm=None) -> tuple[FormObject, Morphism]:
        ck = (S.owner.id, S.key)
        if perm is None and ck in self._sub_cache:
            return self._sub_cache[ck]
        sub, incl = subalgebra_algebra(S.owner.algebra, S.key)
        if perm is not None:
            p = tuple(perm(sub.n))
            inv = [0] * sub.n
            for i, v in enumerate(p):
                inv[v] = i
            sub = permuted(sub, p, name=sub.name + "~")
            incl = SlominskiHom(sub, incl.cod, tuple(incl.table[inv[i]] for i in range(sub.n)))
        obj = self.object_of(sub)
        mor = element_morphism(obj, S.owner, incl.table, f"iota_{S.owner.id}{list(S.key)}")
        if perm is None:
            self._sub_cache[ck] = (obj, mor)
        return obj, mor

    def quotient_object(self, S: Subobject, perm=None) -> tuple[FormObject, Morphism]:
        ck = (S.owner.id, S.key)
        if perm is None and ck in self._quot_cache:
            return self._quot_cache[ck]
        q, proj = quotient(S.owner.algebra, S.key)
        if perm is not None:
            p = tuple(perm(q.n))
            q = permuted(q, p, name=q.name + "~")
            proj = SlominskiHom(proj.dom, q, tuple(p[v] for v in proj.table))
        obj = self.object_of(q)
        mor = element_morphism(S.owner, obj, proj.table, f"pi_{S.owner.id}/{list(S.key)}")
        if perm is None:
            self._quot_cache[ck] = (obj, mor)
        return obj, mor

    # factorization and mediators ----------------------------------------

    def factorize(self, f: Morphism) -> Factorization:
        _need_elements(f)
        ker = kernel(f)
        qobj, e = self.quotient_object(ker)
        img = image(f)
        mobj, m = self.subobject_object(img)
        # h sends the class of x to f(x), reindexed into the image algebra
        lookup = {v: i for i, v in enumerate(m.element_map)}
        table = [0] * qobj.algebra.n
        for x in range(f.dom.algebra.n):
            table[e.element_map[x]] = lookup[f.element_map[x]]
        h = element_morphism(qobj, mobj, tuple(table), f"h_{f.name or 'f'}")
        return Factorization(e, h, m)

    def epi_mono(self, f: Morphism, perm=None) -> tuple[Morphism, Morphism]:
        """Corestriction onto the image algebra, then inclusion."""
        _need_elements(f)
        mobj, m = self.subobject_object(image(f), perm=perm)
        lookup = {v: i for i, v in enumerate(m.element_map)}
        e = element_morphism(
            f.dom, mobj, tuple(lookup[v] for v in f.element_map), f"e_{f.name or 'f'}"
        )
        return e, m

    def mediating_projection(self, p: Morphism, n: Morphism) -> Morphism:
        _need_elements(p)
        _need_elements(n)
        table = [-1] * n.cod.algebra.n
        for g in range(n.dom.algebra.n):
            v = n.element_map[g]
            w = p.element_map[g]
            if table[v] not in (-1, w):
                raise UnsupportedFormError(f"{p!r} does not factor through {n!r}")
            table[v] = w
        if -1 in table:
            raise UnsupportedFormError(f"{n!r} is not surjective")
        return element_morphism(n.cod, p.cod, tuple(table), f"med_{p.name or 'p'}")

    def mediating_embedding(self, i: Morphism, m: Morphism) -> Morphism:
        _need_elements(i)
        _need_elements(m)
        lookup = {v: x for x, v in enumerate(m.element_map)}
        try:
            table = tuple(lookup[v] for v in i.element_map)
        except KeyError:
            raise UnsupportedFormError(f"{i!r} does not land inside {m!r}") from None
        return element_morphism(i.dom, m.dom, table, f"med_{i.name or 'i'}")

    def zero_morphism(self, X: FormObject, Y: FormObject) -> Morphism:
        return element_morphism(X, Y, (Y.algebra.zero,) * X.algebra.n, "0")


def _need_elements(f: Morphism):
    if f.element_map is None or f.dom.algebra is None or f.cod.algebra is None:
        raise UnsupportedFormError(f"{f!r} has no Slominski realization")


def element_morphism(dom: FormObject, cod: FormObject, table: Sequence[int], name: str = "") -> Morphism:
    """Build a Morphism from a carrier-level map; image maps are elementwise."""
    dl, cl = dom.lattice, cod.lattice
    dimg = {}
    for key in dl.keys:
        dimg[key] = cl.key_of_mask(mask_of({table[x] for x in key}))
    iimg = {}
    for key in cl.keys:
        want = cl.mask(key)
        iimg[key] = dl.key_of_mask(mask_of(x for x in range(dom.algebra.n) if (want >> table[x]) & 1))
    return Morphism(dom, cod, dimg, iimg, name=name, element_map=tuple(table))


def as_form(
    algebras: Sequence[SlominskiAlgebra],
    homs: Sequence[SlominskiHom],
    name: str = "slominski",
) -> SlominskiForm:
    """Declared Slominski form.

    The hom set must contain the identities and be closed under composition;
    violations raise ClosureError naming the offending pair.
    """
    form = SlominskiForm(name)
    form.declare(algebras, homs)
    return form
