"""Randomized instance generators for the verification corpus.

Instances live over a shared Slominski universe.  Exact rows are built by
splicing quotient-then-embed steps over elementary abelian 2-groups, ladders
by degreewise lifting (the vertical map is prescribed on the image of the
previous horizontal map and extended freely), and the grid-shaped lemmas
(3x3, spider, snail, square) from a group with a chosen pair of normal
subalgebras.  Construction guarantees the hypotheses wherever possible;
decorations that cannot be forced are obtained by bounded rejection with a
guaranteed fallback.
"""

from __future__ import annotations

import random
from typing import Callable, Optional, Sequence

from .core import FormObject, Morphism, Subobject, compose, image, inverse_image, kernel
from .diagram import Diagram
from .groups import (
    all_groups_le8,
    c4xc2,
    cyclic,
    dihedral8,
    quaternion8,
    symmetric3,
    xor_group,
)
from .slominski import (
    SlominskiAlgebra,
    SlominskiForm,
    SlominskiHom,
    enumerate_homs,
    is_normal_subalgebra,
    subalgebras,
)
from .zigzag import LEFT, RIGHT, Edge, Zigzag


def _is_injective_table(t: Sequence[int]) -> bool:
    return len(set(t)) == len(t)


def _is_surjective_table(t: Sequence[int], cod_n: int) -> bool:
    return len(set(t)) == cod_n


def _is_bijective_table(t: Sequence[int], cod_n: int) -> bool:
    return len(t) == cod_n and _is_injective_table(t)


def extend_homs(
    A: SlominskiAlgebra, B: SlominskiAlgebra, forced: dict[int, int]
) -> list[tuple[int, ...]]:
    """All hom tables A -> B agreeing with the forced partial assignment."""
    n, m = A.n, B.n
    table = [-1] * n

    def consistent(k: int) -> bool:
        for x in range(k + 1):
            for y in range(k + 1):
                for op, bop in ((A.p, B.p), (A.d, B.d)):
                    z = op[x][y]
                    if z <= k and table[z] != bop[table[x]][table[y]]:
                        return False
        return True

    out = []

    def rec(k: int):
        if k == n:
            out.append(tuple(table))
            return
        if k in forced:
            choices = (forced[k],)
        elif k == A.zero:
            choices = (B.zero,)
        else:
            choices = range(m)
        for v in choices:
            table[k] = v
            if consistent(k):
                rec(k + 1)
        table[k] = -1

    rec(0)
    return out


class InstanceLab:
    """Shared universe, RNG and small helpers for building instances."""

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)
        self.universe = SlominskiForm("lab")

    def obj(self, alg: SlominskiAlgebra) -> FormObject:
        return self.universe.object_of(alg)

    def table_mor(self, A: FormObject, B: FormObject, table, name="") -> Morphism:
        from .slominski import element_morphism

        return element_morphism(A, B, tuple(table), name)

    def random_hom(self, A, B, pred: Optional[Callable] = None) -> Optional[SlominskiHom]:
        homs = enumerate_homs(A, B)
        if pred is not None:
            homs = tuple(h for h in homs if pred(h.table))
        if not homs:
            return None
        return self.rng.choice(homs)

    def normal_keys(self, alg):
        return [k for k in subalgebras(alg) if is_normal_subalgebra(alg, k)]

    def incl(self, obj: FormObject, key) -> tuple[FormObject, Morphism]:
        return self.universe.subobject_object(Subobject(obj, key))

    def proj(self, obj: FormObject, key) -> tuple[FormObject, Morphism]:
        return self.universe.quotient_object(Subobject(obj, key))


GRID_PALETTE = lambda: (
    xor_group(2), xor_group(3), cyclic(4), cyclic(6), cyclic(8),
    c4xc2(), dihedral8(), quaternion8(), symmetric3(),
)


# ---------------------------------------------------------------------------
# exact rows and ladders over elementary abelian 2-groups


def random_exact_row(lab: InstanceLab, maps: int) -> tuple[list[FormObject], list[Morphism]]:
    """Objects X0..Xn (xor groups) with morphisms exact at every interior node."""
    rng = lab.rng
    dims = [rng.randrange(0, 3)]
    objs = [lab.obj(xor_group(dims[0]))]
    mors: list[Morphism] = []
    prev: Optional[Morphism] = None
    for i in range(maps):
        if prev is None:
            dim = rng.randrange(0, 4)
            nxt = lab.obj(xor_group(dim))
            hom = lab.random_hom(objs[-1].algebra, nxt.algebra)
            f = lab.table_mor(objs[-1], nxt, hom.table, f"r{i}")
        else:
            # quotient by the image of the previous map, then embed
            img = image(prev)
            q, p = lab.proj(objs[-1], img.key)
            qdim = q.algebra.n.bit_length() - 1
            dim = min(3, qdim + rng.randrange(0, 2))
            nxt = lab.obj(xor_group(dim))
            memb = lab.random_hom(q.algebra, nxt.algebra, pred=_is_injective_table)
            f = compose(lab.table_mor(q, nxt, memb.table), p)
        objs.append(f.cod)
        mors.append(f)
        prev = f
    return objs, mors


def lift_ladder(
    lab: InstanceLab,
    top: tuple[list[FormObject], list[Morphism]],
    bottom: tuple[list[FormObject], list[Morphism]],
    v0: Morphism,
    prefs: dict[int, Callable],
) -> Optional[list[Morphism]]:
    """Column maps making every square commute, lifting degree by degree.

    prefs maps column index to a table predicate tried first when extending;
    returns None when a prescribed partial map is inconsistent.
    """
    tobjs, tmaps = top
    bobjs, bmaps = bottom
    vs = [v0]
    for i in range(1, len(tobjs)):
        f = tmaps[i - 1]
        g = bmaps[i - 1]
        forced: dict[int, int] = {}
        ok = True
        for x in range(tobjs[i - 1].algebra.n):
            key = f.element_map[x]
            val = g.element_map[vs[-1].element_map[x]]
            if forced.get(key, val) != val:
                ok = False
                break
            forced[key] = val
        if not ok:
            return None
        options = extend_homs(tobjs[i].algebra, bobjs[i].algebra, forced)
        if not options:
            return None
        pref = prefs.get(i)
        pool = [t for t in options if pref(t)] if pref is not None else options
        table = lab.rng.choice(pool or options)
        vs.append(lab.table_mor(tobjs[i], bobjs[i], table, f"v{i}"))
    return vs


def _ladder_instance(lab, maps, prefs_spec, v0_pred, attempts=400):
    """Generic ladder generator; prefs_spec maps column -> property name."""
    wants_iso = any(p == "iso" for p in prefs_spec.values())
    for _ in range(attempts):
        top = random_exact_row(lab, maps)
        # isomorphism columns need matching shapes; reuse the row half the
        # time so the columns can be nontrivial automorphism lifts
        if wants_iso and lab.rng.random() < 0.5:
            bottom = top
        else:
            bottom = random_exact_row(lab, maps)
        b0 = bottom[0][0]
        kt = kernel(top[1][0]).key if maps else None
        kb = kernel(bottom[1][0]).key if maps else None

        def v0_ok(table):
            if not v0_pred(table, b0.algebra.n):
                return False
            kbset = set(kb)
            return all(table[x] in kbset for x in kt)

        hom = lab.random_hom(top[0][0].algebra, b0.algebra, pred=v0_ok)
        if hom is None:
            continue
        v0 = lab.table_mor(top[0][0], b0, hom.table, "v0")
        prefs = {}
        for idx, prop in prefs_spec.items():
            codn = bottom[0][idx].algebra.n
            if prop == "inj":
                prefs[idx] = _is_injective_table
            elif prop == "surj":
                prefs[idx] = lambda t, n=codn: _is_surjective_table(t, n)
            elif prop == "iso":
                prefs[idx] = lambda t, n=codn: _is_bijective_table(t, n)
        vs = lift_ladder(lab, top, bottom, v0, prefs)
        if vs is None:
            continue
        # verify the preferred decorations actually came out
        good = True
        for idx, prop in prefs_spec.items():
            t = vs[idx].element_map
            n = bottom[0][idx].algebra.n
            if prop == "inj" and not _is_injective_table(t):
                good = False
            if prop == "surj" and not _is_surjective_table(t, n):
                good = False
            if prop == "iso" and not _is_bijective_table(t, n):
                good = False
        if good:
            return top, bottom, vs
    # fallback: identical rows with identity columns (hypotheses guaranteed)
    top = random_exact_row(lab, maps)
    from .core import identity_morphism

    vs = [identity_morphism(o) for o in top[0]]
    return top, top, vs


def four_instance(lab: InstanceLab) -> Diagram:
    top, bottom, vs = _ladder_instance(
        lab, 3, prefs_spec={3: "inj"}, v0_pred=_is_surjective_table
    )
    d = Diagram(lab.universe, name="four")
    for role, obj in zip(("A", "B", "C", "D"), top[0]):
        d.add_object(role, obj)
    for role, obj in zip(("Ap", "Bp", "Cp", "Dp"), bottom[0]):
        d.add_object(role, obj)
    for role, mor in zip(("f", "g", "h"), top[1]):
        d.add_arrow(role, mor)
    for role, mor in zip(("x", "y", "z"), bottom[1]):
        d.add_arrow(role, mor)
    for role, mor in zip(("s", "t", "u", "v"), vs):
        d.add_arrow(role, mor)
    return d


def five_instance(lab: InstanceLab, part: str) -> Diagram:
    prefs = {
        "i": {1: "inj", 3: "inj"},
        "ii": {1: "surj", 3: "surj", 4: "inj"},
        "full": {1: "iso", 3: "iso", 4: "inj"},
    }[part]
    v0_pred = _is_surjective_table if part in ("i", "full") else (lambda t, n: True)
    top, bottom, vs = _ladder_instance(lab, 4, prefs_spec=prefs, v0_pred=v0_pred)
    d = Diagram(lab.universe, name="five")
    for role, obj in zip(("A", "B", "C", "D", "E"), top[0]):
        d.add_object(role, obj)
    for role, obj in zip(("Ap", "Bp", "Cp", "Dp", "Ep"), bottom[0]):
        d.add_object(role, obj)
    for role, mor in zip(("f", "g", "h", "m"), top[1]):
        d.add_arrow(role, mor)
    for role, mor in zip(("x", "y", "z", "n"), bottom[1]):
        d.add_arrow(role, mor)
    for role, mor in zip(("s", "t", "u", "v", "w"), vs):
        d.add_arrow(role, mor)
    return d


# ---------------------------------------------------------------------------
# grid-shaped instances from a group with two normal subalgebras


def _normal_pair(lab: InstanceLab, alg) -> tuple:
    normals = lab.normal_keys(alg)
    return lab.rng.choice(normals), lab.rng.choice(normals)


def threebythree_instance(lab: InstanceLab) -> Diagram:
    """Grid with all rows and columns short exact, built from (G, U, X')."""
    uni = lab.universe
    Bp = lab.obj(lab.rng.choice(GRID_PALETTE()))
    U, Xp = _normal_pair(lab, Bp.algebra)
    lat = Bp.lattice
    B, t = lab.incl(Bp, U)
    Bpp, j = lab.proj(Bp, U)
    Ap, x = lab.incl(Bp, Xp)
    Cp, y = lab.proj(Bp, Xp)
    both = lat.meet(U, Xp)
    A, _ = lab.incl(Bp, both)
    s = uni.mediating_embedding(lab.incl(Bp, both)[1], x)
    f = uni.mediating_embedding(lab.incl(Bp, both)[1], t)
    App, i = lab.proj(Ap, inverse_image(x, Subobject(Bp, both)).key)
    m = uni.mediating_projection(compose(j, x), i)
    yt = compose(y, t)
    g, u = uni.epi_mono(yt)
    Cpp, k = lab.proj(Cp, image(yt).key)
    n = uni.mediating_projection(compose(k, y), j)
    d = Diagram(uni, name="threebythree")
    for role, obj in (("A", A), ("B", B), ("C", g.cod), ("Ap", Ap), ("Bp", Bp),
                      ("Cp", Cp), ("App", App), ("Bpp", Bpp), ("Cpp", Cpp)):
        d.add_object(role, obj)
    for role, mor in (("f", f), ("g", g), ("x", x), ("y", y), ("m", m), ("n", n),
                      ("s", s), ("t", t), ("u", u), ("i", i), ("j", j), ("k", k)):
        d.add_arrow(role, mor)
    return d


def short_five_instance(lab: InstanceLab, part: str) -> Diagram:
    """Quotient-shaped short exact rows connected by a hom respecting the
    chosen normal subalgebras."""
    uni = lab.universe
    rng = lab.rng
    for _ in range(200):
        G = lab.obj(rng.choice(GRID_PALETTE()))
        Gp = lab.obj(rng.choice(GRID_PALETTE())) if part not in ("iii",) else G
        N = rng.choice(lab.normal_keys(G.algebra))
        if part == "iii":
            cands = [h for h in enumerate_homs(G.algebra, Gp.algebra)
                     if _is_bijective_table(h.table, Gp.algebra.n)
                     and {h.table[x] for x in N} == set(N)]
            Np = N
        else:
            cands = list(enumerate_homs(G.algebra, Gp.algebra))
            Np = None
        if not cands:
            continue
        phi_h = rng.choice(cands)
        if Np is None:
            base = {phi_h.table[x] for x in N}
            options = [k for k in lab.normal_keys(Gp.algebra) if base <= set(k)]
            if not options:
                continue
            Np = rng.choice(options)
        A, fm = lab.incl(G, N)
        C, gm = lab.proj(G, N)
        Apo, xm = lab.incl(Gp, Np)
        Cpo, ym = lab.proj(Gp, Np)
        phi = lab.table_mor(G, Gp, phi_h.table, "phi")
        s = uni.mediating_embedding(compose(phi, fm), xm)
        u = uni.mediating_projection(compose(ym, phi), gm)
        d = Diagram(uni, name="short-five")
        for role, obj in (("A", A), ("B", G), ("C", C), ("Ap", Apo), ("Bp", Gp), ("Cp", Cpo)):
            d.add_object(role, obj)
        for role, mor in (("f", fm), ("g", gm), ("x", xm), ("y", ym),
                          ("s", s), ("t", phi), ("u", u)):
            d.add_arrow(role, mor)
        from .core import is_injective, is_isomorphism, is_surjective

        want = {"i": is_injective, "ii": is_surjective, "iii": is_isomorphism}[part]
        if want(s) and want(u):
            return d
    raise RuntimeError("could not build a short-five instance")


def spider_instance(lab: InstanceLab) -> Diagram:
    """From a group with two complementary normal subalgebras (so k is an
    isomorphism by construction)."""
    uni = lab.universe
    rng = lab.rng
    while True:
        X = lab.obj(rng.choice(GRID_PALETTE()))
        lat = X.lattice
        normals = lab.normal_keys(X.algebra)
        pairs = [
            (P, Q)
            for P in normals
            for Q in normals
            if lat.meet(P, Q) == lat.bottom and lat.join(P, Q) == lat.top
        ]
        if not pairs:
            continue
        P, Q = rng.choice(pairs)
        V, g = lab.incl(X, P)
        Z, i = lab.proj(X, P)
        Y, j = lab.incl(X, Q)
        W, h = lab.proj(X, Q)
        d = Diagram(uni, name="spider")
        for role, obj in (("V", V), ("W", W), ("X", X), ("Y", Y), ("Z", Z)):
            d.add_object(role, obj)
        for role, mor in (("f", compose(h, g)), ("g", g), ("h", h),
                          ("j", j), ("i", i), ("k", compose(i, j))):
            d.add_arrow(role, mor)
        return d


def incomplete_snail_instance(lab: InstanceLab) -> Diagram:
    uni = lab.universe
    rng = lab.rng
    X = lab.obj(rng.choice(GRID_PALETTE()))
    K, M = _normal_pair(lab, X.algebra)
    Y1, a = lab.incl(X, K)
    W2, b = lab.proj(X, K)
    W1, g = lab.incl(X, M)
    Y2, dmor = lab.proj(X, M)
    e = compose(dmor, a)
    Z, fmor = lab.proj(Y2, image(e).key)
    y = uni.mediating_projection(compose(fmor, dmor), b)
    d = Diagram(uni, name="incomplete-snail")
    for role, obj in (("W1", W1), ("W2", W2), ("X", X), ("Y1", Y1), ("Y2", Y2), ("Z", Z)):
        d.add_object(role, obj)
    for role, mor in (("x", compose(b, g)), ("g", g), ("b", b), ("d", dmor),
                      ("a", a), ("e", e), ("y", y), ("f", fmor)):
        d.add_arrow(role, mor)
    return d


def square_exact_instance(lab: InstanceLab, part: str) -> Diagram:
    uni = lab.universe
    rng = lab.rng
    B = lab.obj(rng.choice(GRID_PALETTE()))
    lat = B.lattice
    normals = lab.normal_keys(B.algebra)
    if part == "i":
        pairs = [(N, K) for N in normals for K in normals if lat.leq(N, K)]
        N, K = rng.choice(pairs)
        A, f = lab.incl(B, K)
        C, g = lab.proj(B, K)
        Ap, x = lab.proj(A, inverse_image(f, Subobject(B, N)).key)
        Bp, y = lab.proj(B, N)
        m = uni.mediating_projection(compose(y, f), x)
        n = uni.mediating_projection(g, y)
        from .core import identity_morphism

        z = identity_morphism(C)
        d = Diagram(uni, name="square-exact")
        for role, obj in (("A", A), ("B", B), ("C", C), ("Ap", Ap), ("Bp", Bp), ("Cp", C)):
            d.add_object(role, obj)
        for role, mor in (("f", f), ("g", g), ("m", m), ("n", n), ("x", x), ("y", y), ("z", z)):
            d.add_arrow(role, mor)
        return d
    # part ii: bottom exact, y an inclusion of a subalgebra containing K'
    Bp = B
    Kp = rng.choice(normals)
    supers = [S for S in subalgebras(Bp.algebra) if set(Kp) <= set(S)]
    S = rng.choice(supers)
    Ap, mm = lab.incl(Bp, Kp)
    Cp, nn = lab.proj(Bp, Kp)
    Bobj, y = lab.incl(Bp, S)
    f = uni.mediating_embedding(mm, y)
    g = compose(nn, y)
    from .core import identity_morphism

    d = Diagram(uni, name="square-exact")
    for role, obj in (("A", Ap), ("B", Bobj), ("C", Cp), ("Ap", Ap), ("Bp", Bp), ("Cp", Cp)):
        d.add_object(role, obj)
    for role, mor in (("f", f), ("g", g), ("m", mm), ("n", nn),
                      ("x", identity_morphism(Ap)), ("y", y), ("z", identity_morphism(Cp))):
        d.add_arrow(role, mor)
    return d


# ---------------------------------------------------------------------------
# snake / goursat instances


def snake_instance(lab: InstanceLab) -> Diagram:
    """2x3 with exact rows, g surjective, f' injective, over xor groups."""
    uni = lab.universe
    rng = lab.rng
    while True:
        B = lab.obj(xor_group(rng.randrange(1, 4)))
        Kg = rng.choice(subalgebras(B.algebra))
        C, g = lab.proj(B, Kg)
        Ksub, incl_k = lab.incl(B, Kg)
        adim = max(Ksub.algebra.n.bit_length() - 1, 0) + rng.randrange(0, 2)
        A = lab.obj(xor_group(min(3, adim)))
        sur = lab.random_hom(A.algebra, Ksub.algebra, pred=lambda t: _is_surjective_table(t, Ksub.algebra.n))
        if sur is None:
            continue
        f = compose(incl_k, lab.table_mor(A, Ksub, sur.table))
        Bp = lab.obj(xor_group(rng.randrange(0, 4)))
        beta_h = lab.random_hom(B.algebra, Bp.algebra)
        beta = lab.table_mor(B, Bp, beta_h.table, "beta")
        base = beta.dimg[Kg]
        supers = [k for k in subalgebras(Bp.algebra) if set(base) <= set(k)]
        Ip = rng.choice(supers)
        Apo, fp = lab.incl(Bp, Ip)
        Cpo, gp = lab.proj(Bp, Ip)
        alpha = uni.mediating_embedding(compose(beta, f), fp)
        gamma = uni.mediating_projection(compose(gp, beta), g)
        d = Diagram(uni, name="snake")
        for role, obj in (("A", A), ("B", B), ("C", C), ("Ap", Apo), ("Bp", Bp), ("Cp", Cpo)):
            d.add_object(role, obj)
        for role, mor in (("f", f), ("g", g), ("fp", fp), ("gp", gp),
                          ("alpha", alpha), ("beta", beta), ("gamma", gamma)):
            d.add_arrow(role, mor)
        return d


def goursat_instance(lab: InstanceLab) -> Diagram:
    """2x3 with exact rows (reusing the snake construction)."""
    s = snake_instance(lab)
    d = Diagram(lab.universe, name="goursat")
    for role, src in (("A", "A"), ("B", "B"), ("C", "C"), ("D", "Ap"), ("E", "Bp"), ("F", "Cp")):
        d.add_object(role, s.objects[src])
    for role, src in (("lam", "f"), ("mu", "g"), ("lamp", "fp"), ("mup", "gp"),
                      ("alpha", "alpha"), ("beta", "beta"), ("gamma", "gamma")):
        d.add_arrow(role, s.arrows[src])
    return d


def quotient_iso_triple(lab: InstanceLab):
    """(f, W, X) with Ker f <= W <= X over small algebras.

    A third of the triples use an injective f so that non-normal W <= X
    pairs (where the theorem's equivalence holds with both sides false)
    are exercised too.
    """
    rng = lab.rng
    palette = all_groups_le8()
    while True:
        injective_branch = rng.random() < 0.33
        if injective_branch:
            # non-abelian sources make non-normal W <= X reachable
            A = lab.obj(rng.choice((dihedral8(), symmetric3(), quaternion8())))
            Bo = A
            hom = lab.random_hom(A.algebra, A.algebra,
                                 pred=lambda t: _is_injective_table(t))
        else:
            A = lab.obj(rng.choice(palette))
            Bo = lab.obj(rng.choice(palette))
            hom = lab.random_hom(A.algebra, Bo.algebra)
        if hom is None:
            continue
        f = lab.table_mor(A, Bo, hom.table, "f")
        kf = set(kernel(f).key)
        lat = A.lattice
        xs = [k for k in lat.keys if kf <= set(k)]
        if not xs:
            continue
        if injective_branch and rng.random() < 0.5:
            X = lat.top
        else:
            X = rng.choice(xs)
        ws = [k for k in lat.keys if kf <= set(k) <= set(X)]
        W = rng.choice(ws)
        return f, Subobject(A, W), Subobject(A, X)


# ---------------------------------------------------------------------------
# zigzag corpus


ZIGZAG_PALETTE = lambda: (
    cyclic(1), cyclic(2), cyclic(3), cyclic(4), xor_group(2),
    cyclic(6), symmetric3(), cyclic(8), dihedral8(), quaternion8(),
)


def random_zigzag(lab: InstanceLab, max_len: int = 6) -> Zigzag:
    rng = lab.rng
    length = rng.randrange(0, max_len + 1)
    nodes = [lab.obj(rng.choice(ZIGZAG_PALETTE()))]
    edges = []
    for _ in range(length):
        nxt = lab.obj(rng.choice(ZIGZAG_PALETTE()))
        direction = rng.choice((RIGHT, LEFT))
        if direction == RIGHT:
            hom = lab.random_hom(nodes[-1].algebra, nxt.algebra)
            edges.append(Edge(lab.table_mor(nodes[-1], nxt, hom.table), RIGHT))
        else:
            hom = lab.random_hom(nxt.algebra, nodes[-1].algebra)
            edges.append(Edge(lab.table_mor(nxt, nodes[-1], hom.table), LEFT))
        nodes.append(nxt)
    return Zigzag(tuple(nodes), tuple(edges), form=lab.universe)


def recipe_zigzag(lab: InstanceLab, max_len: int = 6) -> Zigzag:
    """Subquotient-biased zigzag: projections rightward, inclusions leftward."""
    rng = lab.rng
    length = rng.randrange(0, max_len + 1)
    nodes = [lab.obj(rng.choice(ZIGZAG_PALETTE()))]
    edges = []
    for _ in range(length):
        cur = nodes[-1]
        kind = rng.random()
        if kind < 0.45:
            N = rng.choice(lab.normal_keys(cur.algebra))
            nxt, p = lab.proj(cur, N)
            edges.append(Edge(p, RIGHT))
        elif kind < 0.9:
            S = rng.choice(subalgebras(cur.algebra))
            nxt, i = lab.incl(cur, S)
            edges.append(Edge(i, LEFT))
        else:
            nxt = lab.obj(rng.choice(ZIGZAG_PALETTE()))
            hom = lab.random_hom(cur.algebra, nxt.algebra)
            edges.append(Edge(lab.table_mor(cur, nxt, hom.table), RIGHT))
        nodes.append(nxt)
    return Zigzag(tuple(nodes), tuple(edges), form=lab.universe)


# ---------------------------------------------------------------------------
# double complexes over elementary abelian 2-groups


def _zero_table(A, B):
    return (B.zero,) * A.n


def _chain_complex(lab: InstanceLab, dims: list[int]) -> tuple[list, list]:
    """Algebras V0..Vk with maps d_r: V_r -> V_r+1, consecutive composites zero."""
    rng = lab.rng
    algs = [xor_group(d) for d in dims]
    maps = []
    for r in range(len(algs) - 1):
        cands = enumerate_homs(algs[r], algs[r + 1])
        if r > 0:
            prev = maps[-1]
            cands = tuple(
                h for h in cands
                if all(h.table[prev[x]] == algs[r + 1].zero for x in range(algs[r - 1].n))
            )
        pick = rng.choice(cands).table if cands else _zero_table(algs[r], algs[r + 1])
        maps.append(pick)
    return algs, maps


def _chain_map(lab, src, dst, vanish_on: Optional[list] = None) -> Optional[list]:
    """Chain map between complexes; optionally required to kill the image of
    a previous chain map (so horizontal composites vanish)."""
    rng = lab.rng
    salgs, smaps = src
    dalgs, dmaps = dst
    out = []
    for r in range(len(salgs)):
        cands = list(enumerate_homs(salgs[r], dalgs[r]))
        if r > 0:
            prev = out[-1]
            cands = [
                h for h in cands
                if all(h.table[smaps[r - 1][y]] == dmaps[r - 1][prev[y]]
                       for y in range(salgs[r - 1].n))
            ]
        if vanish_on is not None:
            vt = vanish_on[r]
            zero = dalgs[r].zero
            cands = [h for h in cands
                     if all(h.table[vt[x]] == zero for x in range(len(vt)))]
        if not cands:
            return None
        nonzero = [h for h in cands if any(v != dalgs[r].zero for v in h.table)]
        pick = rng.choice(nonzero or cands)
        out.append(pick.table)
    return out


def double_complex_window(lab: InstanceLab, max_dim: int = 2) -> Optional[Diagram]:
    """The 12-object salamander window of a random double complex."""
    rng = lab.rng
    dims = [[rng.randrange(0, max_dim + 1) for _ in range(5)] for _ in range(4)]
    cols = [_chain_complex(lab, d) for d in dims]
    h0 = _chain_map(lab, cols[0], cols[1])
    if h0 is None:
        return None
    h1 = _chain_map(lab, cols[1], cols[2], vanish_on=h0)
    if h1 is None:
        return None
    h2 = _chain_map(lab, cols[2], cols[3], vanish_on=h1)
    if h2 is None:
        return None
    hs = [h0, h1, h2]

    def cell(r, c):
        return lab.obj(cols[c][0][r])

    def vmap(r, c):
        return lab.table_mor(cell(r, c), cell(r + 1, c), cols[c][1][r], f"dv{r}{c}")

    def hmap(r, c):
        return lab.table_mor(cell(r, c), cell(r, c + 1), hs[c][r], f"dh{r}{c}")

    d = Diagram(lab.universe, name="salamander")
    for role, obj in (("M", cell(0, 1)), ("L", cell(1, 0)), ("C", cell(1, 1)),
                      ("K", cell(1, 2)), ("Dl", cell(2, 0)), ("A", cell(2, 1)),
                      ("B", cell(2, 2)), ("S", cell(2, 3)), ("F", cell(3, 1)),
                      ("D", cell(3, 2)), ("T", cell(3, 3)), ("U", cell(4, 2))):
        d.add_object(role, obj)
    for role, mor in (("a", hmap(1, 0)), ("m", vmap(0, 1)), ("j", vmap(1, 0)),
                      ("c", vmap(1, 1)), ("k", hmap(1, 1)), ("v", vmap(1, 2)),
                      ("d", hmap(2, 0)), ("e", hmap(2, 1)), ("f", vmap(2, 1)),
                      ("l", hmap(3, 1)), ("g", vmap(2, 2)), ("s", hmap(2, 2)),
                      ("n", vmap(2, 3)), ("t", hmap(3, 2)), ("u", vmap(3, 2))):
        d.add_arrow(role, mor)
    return d
