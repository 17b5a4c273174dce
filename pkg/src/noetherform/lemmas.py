"""Verifiers for the classical diagram lemmas and the appendix exercises.

Each lemma has a shape template (object and arrow roles with endpoints);
binding is by role name.  Verification reuses the generic engine: declared
commutativities and the lemma's hypothesis set are checked first,
conclusions only on passing hypotheses.  snake, the generalized snail and
the salamander additionally construct their connecting morphisms through
homomorphism induction on explicit zigzags.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    Form,
    FormObject,
    Morphism,
    Subobject,
    compose,
    image,
    inverse_image,
    is_relatively_normal,
    join,
    kernel,
    meet,
)
from .diagram import (
    FAIL,
    PASS,
    SKIP,
    Assertion,
    CheckLine,
    Diagram,
    LemmaReport,
    exact,
    injective,
    iso,
    short_exact,
    surjective,
    zero,
)
from .errors import ShapeError, ValidationError
from .pyramid import decide_induction, quotient_iso
from .zigzag import LEFT, RIGHT, Edge, Zigzag

# ---------------------------------------------------------------------------
# shape templates


@dataclass(frozen=True)
class Shape:
    objects: tuple[str, ...]
    arrows: dict[str, tuple[str, str]]
    commutes: tuple[tuple[str, str], ...]


SHAPES: dict[str, Shape] = {
    "four": Shape(
        ("A", "B", "C", "D", "Ap", "Bp", "Cp", "Dp"),
        {
            "f": ("A", "B"), "g": ("B", "C"), "h": ("C", "D"),
            "x": ("Ap", "Bp"), "y": ("Bp", "Cp"), "z": ("Cp", "Dp"),
            "s": ("A", "Ap"), "t": ("B", "Bp"), "u": ("C", "Cp"), "v": ("D", "Dp"),
        },
        (("t.f", "x.s"), ("u.g", "y.t"), ("v.h", "z.u")),
    ),
    "five": Shape(
        ("A", "B", "C", "D", "E", "Ap", "Bp", "Cp", "Dp", "Ep"),
        {
            "f": ("A", "B"), "g": ("B", "C"), "h": ("C", "D"), "m": ("D", "E"),
            "x": ("Ap", "Bp"), "y": ("Bp", "Cp"), "z": ("Cp", "Dp"), "n": ("Dp", "Ep"),
            "s": ("A", "Ap"), "t": ("B", "Bp"), "u": ("C", "Cp"),
            "v": ("D", "Dp"), "w": ("E", "Ep"),
        },
        (("t.f", "x.s"), ("u.g", "y.t"), ("v.h", "z.u"), ("w.m", "n.v")),
    ),
    "threebythree": Shape(
        ("A", "B", "C", "Ap", "Bp", "Cp", "App", "Bpp", "Cpp"),
        {
            "f": ("A", "B"), "g": ("B", "C"),
            "x": ("Ap", "Bp"), "y": ("Bp", "Cp"),
            "m": ("App", "Bpp"), "n": ("Bpp", "Cpp"),
            "s": ("A", "Ap"), "t": ("B", "Bp"), "u": ("C", "Cp"),
            "i": ("Ap", "App"), "j": ("Bp", "Bpp"), "k": ("Cp", "Cpp"),
        },
        (("t.f", "x.s"), ("u.g", "y.t"), ("j.x", "m.i"), ("k.y", "n.j")),
    ),
    "short-five": Shape(
        ("A", "B", "C", "Ap", "Bp", "Cp"),
        {
            "f": ("A", "B"), "g": ("B", "C"),
            "x": ("Ap", "Bp"), "y": ("Bp", "Cp"),
            "s": ("A", "Ap"), "t": ("B", "Bp"), "u": ("C", "Cp"),
        },
        (("t.f", "x.s"), ("u.g", "y.t")),
    ),
    "spider": Shape(
        ("V", "W", "X", "Y", "Z"),
        {
            "f": ("V", "W"), "g": ("V", "X"), "h": ("X", "W"),
            "j": ("Y", "X"), "i": ("X", "Z"), "k": ("Y", "Z"),
        },
        (("f", "h.g"), ("k", "i.j")),
    ),
    "incomplete-snail": Shape(
        ("W1", "W2", "X", "Y1", "Y2", "Z"),
        {
            "x": ("W1", "W2"), "g": ("W1", "X"), "b": ("X", "W2"),
            "d": ("X", "Y2"), "a": ("Y1", "X"), "e": ("Y1", "Y2"),
            "y": ("W2", "Z"), "f": ("Y2", "Z"),
        },
        (("x", "b.g"), ("e", "d.a"), ("f.d", "y.b")),
    ),
    "square-exact": Shape(
        ("A", "B", "C", "Ap", "Bp", "Cp"),
        {
            "f": ("A", "B"), "g": ("B", "C"),
            "m": ("Ap", "Bp"), "n": ("Bp", "Cp"),
            "x": ("A", "Ap"), "y": ("B", "Bp"), "z": ("C", "Cp"),
        },
        (("m.x", "y.f"), ("n.y", "z.g")),
    ),
    "diamond": Shape(
        ("A", "H", "B", "G", "C", "F", "D", "E"),
        {
            "f": ("A", "H"), "g": ("A", "B"), "a": ("H", "B"), "c": ("H", "F"),
            "x": ("H", "G"), "d": ("B", "D"), "u": ("B", "C"), "v": ("C", "D"),
            "y": ("G", "F"), "b": ("F", "D"), "m": ("F", "E"), "n": ("D", "E"),
        },
        (("g", "a.f"), ("c", "y.x"), ("d", "v.u"), ("m", "n.b"), ("d.a", "b.c")),
    ),
    "baby-dragon": Shape(
        ("A", "B", "C", "S", "T", "U", "V", "Ap", "Bp", "Cp"),
        {
            "f": ("A", "S"), "g": ("A", "T"), "m": ("B", "T"), "n": ("B", "U"),
            "z": ("C", "U"), "alpha": ("C", "V"), "beta": ("S", "Ap"),
            "h": ("T", "Ap"), "o": ("T", "Bp"), "p": ("U", "Bp"),
            "y": ("U", "Cp"), "x": ("V", "Cp"),
        },
        (("beta.f", "h.g"), ("o.m", "p.n"), ("x.alpha", "y.z")),
    ),
    "dragon": Shape(
        (
            "N", "Q", "P", "Z", "A", "J", "B", "C", "D",
            "R", "S", "T", "K", "U", "V", "W",
            "Zp", "Ap", "Jp", "Bp", "Cp", "Dp",
            "Qp", "Pp", "Np", "E", "H", "G", "Hp", "Gp", "Ep",
        ),
        {
            "a": ("N", "Q"), "b": ("N", "P"), "c": ("Q", "Z"), "d": ("P", "Z"),
            "x1": ("Z", "R"), "x2": ("Z", "S"), "x3": ("A", "S"), "x4": ("A", "T"),
            "x5": ("J", "T"), "x6": ("J", "K"), "x7": ("B", "K"), "x8": ("B", "U"),
            "x9": ("C", "U"), "x10": ("C", "V"), "x11": ("D", "V"), "x12": ("D", "W"),
            "y1": ("R", "Zp"), "y2": ("S", "Zp"), "y3": ("S", "Ap"), "y4": ("T", "Ap"),
            "y5": ("T", "Jp"), "y6": ("K", "Jp"), "y7": ("K", "Bp"), "y8": ("U", "Bp"),
            "y9": ("U", "Cp"), "y10": ("V", "Cp"), "y11": ("V", "Dp"), "y12": ("W", "Dp"),
            "e": ("E", "H"), "f": ("E", "G"), "g": ("H", "D"), "h": ("G", "D"),
            "i": ("Zp", "Qp"), "j": ("Zp", "Pp"), "k": ("Qp", "Np"), "l": ("Pp", "Np"),
            "m": ("Dp", "Hp"), "o": ("Dp", "Gp"), "p": ("Hp", "Ep"), "q": ("Gp", "Ep"),
        },
        (
            ("c.a", "d.b"), ("y1.x1", "y2.x2"), ("y3.x3", "y4.x4"),
            ("y5.x5", "y6.x6"), ("y7.x7", "y8.x8"), ("y9.x9", "y10.x10"),
            ("y11.x11", "y12.x12"), ("g.e", "h.f"), ("k.i", "l.j"), ("p.m", "q.o"),
        ),
    ),
    "snake": Shape(
        ("A", "B", "C", "Ap", "Bp", "Cp"),
        {
            "f": ("A", "B"), "g": ("B", "C"), "fp": ("Ap", "Bp"), "gp": ("Bp", "Cp"),
            "alpha": ("A", "Ap"), "beta": ("B", "Bp"), "gamma": ("C", "Cp"),
        },
        (("beta.f", "fp.alpha"), ("gamma.g", "gp.beta")),
    ),
    "generalized-snail": Shape(
        ("A", "B", "C", "A0", "B0"),
        {
            "f": ("A", "B"), "alpha": ("A", "A0"), "beta": ("B", "B0"),
            "gamma": ("A", "C"), "f0p": ("C", "B"), "betap": ("C", "A0"),
            "f0": ("A0", "B0"),
        },
        (("f", "f0p.gamma"), ("alpha", "betap.gamma"), ("beta.f0p", "f0.betap"),
         ("beta.f", "f0.alpha")),
    ),
    "goursat": Shape(
        ("A", "B", "C", "D", "E", "F"),
        {
            "lam": ("A", "B"), "mu": ("B", "C"), "lamp": ("D", "E"), "mup": ("E", "F"),
            "alpha": ("A", "D"), "beta": ("B", "E"), "gamma": ("C", "F"),
        },
        (("beta.lam", "lamp.alpha"), ("gamma.mu", "mup.beta")),
    ),
    "salamander": Shape(
        ("L", "M", "C", "K", "Dl", "A", "B", "F", "S", "D", "T", "U"),
        {
            "a": ("L", "C"), "m": ("M", "C"), "j": ("L", "Dl"), "c": ("C", "A"),
            "k": ("C", "K"), "v": ("K", "B"), "d": ("Dl", "A"), "e": ("A", "B"),
            "f": ("A", "F"), "l": ("F", "D"), "g": ("B", "D"), "s": ("B", "S"),
            "n": ("S", "T"), "t": ("D", "T"), "u": ("D", "U"),
        },
        (("c.a", "d.j"), ("e.c", "v.k"), ("g.e", "l.f"), ("t.g", "n.s")),
    ),
}


def check_shape(d: Diagram, shape_name: str) -> Shape:
    shape = SHAPES[shape_name]
    for role in shape.objects:
        if role not in d.objects:
            raise ShapeError(f"{shape_name}: missing object role {role!r}")
    for role, (dom, cod) in shape.arrows.items():
        mor = d.arrows.get(role)
        if mor is None:
            raise ShapeError(f"{shape_name}: missing arrow role {role!r}")
        if mor.dom.id != d.objects[dom].id or mor.cod.id != d.objects[cod].id:
            raise ShapeError(
                f"{shape_name}: arrow {role!r} must run {dom} -> {cod}, "
                f"got {mor.dom.id} -> {mor.cod.id}"
            )
    return shape


class _Run:
    """Accumulates hypothesis/conclusion lines with skip-on-failed-hypotheses."""

    def __init__(self, d: Diagram, lemma: str):
        self.d = d
        self.report = LemmaReport(lemma)

    def hyp_commutes(self, shape: Shape):
        for p1, p2 in shape.commutes:
            ok, w = self.d.check(Assertion("commute", (p1, p2)))
            self.report.hypotheses.append(
                CheckLine(PASS if ok else FAIL, f"commute {p1} = {p2}", w)
            )

    def hyp_assert(self, *asserts: Assertion):
        for a in asserts:
            ok, w = self.d.check(a)
            self.report.hypotheses.append(CheckLine(PASS if ok else FAIL, a.label(), w))

    def hyp(self, name: str, ok: bool, witness: Optional[str] = None):
        self.report.hypotheses.append(CheckLine(PASS if ok else FAIL, name, witness))

    @property
    def live(self) -> bool:
        return self.report.hypotheses_hold

    def conclude_assert(self, *asserts: Assertion):
        for a in asserts:
            if not self.live:
                self.report.conclusions.append(CheckLine(SKIP, a.label()))
                continue
            ok, w = self.d.check(a)
            self.report.conclusions.append(CheckLine(PASS if ok else FAIL, a.label(), w))

    def conclude(self, name: str, fn):
        if not self.live:
            self.report.conclusions.append(CheckLine(SKIP, name))
            return
        ok, w = fn()
        self.report.conclusions.append(CheckLine(PASS if ok else FAIL, name, w))


def _eq_check(lhs, rhs, label):
    def fn():
        ok = lhs() == rhs()
        return ok, None if ok else f"{label}: {lhs()!r} != {rhs()!r}"
    return fn


# ---------------------------------------------------------------------------
# classical lemmas


def verify_four(d: Diagram, part: str = "i") -> LemmaReport:
    shape = check_shape(d, "four")
    run = _Run(d, f"four ({part})")
    run.hyp_commutes(shape)
    run.hyp_assert(
        exact("f", "g"), exact("g", "h"), exact("x", "y"), exact("y", "z"),
        surjective("s"), injective("v"),
    )
    g, t, u, y = (d.arrows[r] for r in "gtuy")
    if part == "i":
        run.conclude(
            "g(Ker t) = Ker u",
            _eq_check(lambda: g.dimg[kernel(t).key], lambda: kernel(u).key, "g(Ker t)"),
        )
    elif part == "ii":
        run.conclude(
            "y^-1(Im u) = Im t",
            _eq_check(lambda: y.iimg[image(u).key], lambda: image(t).key, "y^-1(Im u)"),
        )
    else:
        raise ValidationError(f"four lemma has parts i and ii, not {part!r}")
    return run.report


def verify_five(d: Diagram, part: str = "full") -> LemmaReport:
    shape = check_shape(d, "five")
    run = _Run(d, f"five ({part})")
    run.hyp_commutes(shape)
    run.hyp_assert(
        exact("f", "g"), exact("g", "h"), exact("h", "m"),
        exact("x", "y"), exact("y", "z"), exact("z", "n"),
    )
    if part == "i":
        run.hyp_assert(surjective("s"), injective("t"), injective("v"))
        run.conclude_assert(injective("u"))
    elif part == "ii":
        run.hyp_assert(injective("w"), surjective("t"), surjective("v"))
        run.conclude_assert(surjective("u"))
    elif part == "full":
        run.hyp_assert(surjective("s"), injective("w"), iso("t"), iso("v"))
        run.conclude_assert(iso("u"))
    else:
        raise ValidationError(f"five lemma has parts i, ii, full, not {part!r}")
    return run.report


def verify_threebythree(d: Diagram, variant: str = "upper") -> LemmaReport:
    shape = check_shape(d, "threebythree")
    run = _Run(d, f"3x3 ({variant})")
    run.hyp_commutes(shape)
    run.hyp_assert(short_exact("s", "i"), short_exact("t", "j"), short_exact("u", "k"))
    if variant == "upper":
        run.hyp_assert(short_exact("x", "y"), short_exact("m", "n"))
        run.conclude_assert(short_exact("f", "g"))
    elif variant == "lower":
        run.hyp_assert(short_exact("f", "g"), short_exact("x", "y"))
        run.conclude_assert(short_exact("m", "n"))
    elif variant == "middle":
        run.hyp_assert(short_exact("f", "g"), short_exact("m", "n"), zero("y.x"))
        run.conclude_assert(short_exact("x", "y"))
    else:
        raise ValidationError(f"3x3 lemma has variants upper, lower, middle, not {variant!r}")
    return run.report


# ---------------------------------------------------------------------------
# snake


@dataclass
class SnakeResult:
    objects: Optional[list[FormObject]]
    morphisms: Optional[list[Morphism]]
    report: LemmaReport


def snake(d: Diagram) -> SnakeResult:
    """Six-term kernel-cokernel sequence with the connecting morphism.

    All five maps (the end maps f-bar, g'-bar included) are built by
    homomorphism induction on the proof's zigzags; exactness is then checked
    at the four interior nodes.
    """
    shape = check_shape(d, "snake")
    form = d.form
    run = _Run(d, "snake")
    run.hyp_commutes(shape)
    run.hyp_assert(exact("f", "g"), exact("fp", "gp"), surjective("g"), injective("fp"))
    f, g, fp, gp = (d.arrows[r] for r in ("f", "g", "fp", "gp"))
    alpha, beta, gamma = (d.arrows[r] for r in ("alpha", "beta", "gamma"))
    for name, mor in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        run.hyp(f"Ker {name} conormal", form.is_conormal(kernel(mor)))
        run.hyp(f"Im {name} normal", form.is_normal(image(mor)))
    if not run.live:
        for label in ("induce f-bar", "induce g-bar", "induce delta",
                      "induce f'-bar", "induce g'-bar",
                      "exact at Ker beta", "exact at Ker gamma",
                      "exact at Coker alpha", "exact at Coker beta"):
            run.report.conclusions.append(CheckLine(SKIP, label))
        return SnakeResult(None, None, run.report)

    ia = form.embedding_of(kernel(alpha))
    ib = form.embedding_of(kernel(beta))
    ic = form.embedding_of(kernel(gamma))
    pa = form.projection_of(image(alpha))
    pb = form.projection_of(image(beta))
    pc = form.projection_of(image(gamma))
    A, B, C = (d.objects[r] for r in "ABC")
    Ap, Bp, Cp = (d.objects[r] for r in ("Ap", "Bp", "Cp"))

    zigs = {
        "f-bar": Zigzag((ia.dom, A, B, ib.dom),
                        (Edge(ia, RIGHT), Edge(f, RIGHT), Edge(ib, LEFT)), form=form),
        "g-bar": Zigzag((ib.dom, B, C, ic.dom),
                        (Edge(ib, RIGHT), Edge(g, RIGHT), Edge(ic, LEFT)), form=form),
        "delta": Zigzag((ic.dom, C, B, Bp, Ap, pa.cod),
                        (Edge(ic, RIGHT), Edge(g, LEFT), Edge(beta, RIGHT),
                         Edge(fp, LEFT), Edge(pa, RIGHT)), form=form),
        "f'-bar": Zigzag((pa.cod, Ap, Bp, pb.cod),
                         (Edge(pa, LEFT), Edge(fp, RIGHT), Edge(pb, RIGHT)), form=form),
        "g'-bar": Zigzag((pb.cod, Bp, Cp, pc.cod),
                         (Edge(pb, LEFT), Edge(gp, RIGHT), Edge(pc, RIGHT)), form=form),
    }
    mors = {}
    for name, zz in zigs.items():
        verdict = decide_induction(zz, name=name)
        witness = None if verdict.induces else "; ".join(fl.render() for fl in verdict.failures)
        run.conclude(f"induce {name}", lambda v=verdict, w=witness: (v.induces, w))
        mors[name] = verdict.morphism
    seq = [mors["f-bar"], mors["g-bar"], mors["delta"], mors["f'-bar"], mors["g'-bar"]]
    labels = ("exact at Ker beta", "exact at Ker gamma",
              "exact at Coker alpha", "exact at Coker beta")
    for i, label in enumerate(labels):
        lhs, rhs = seq[i], seq[i + 1]
        if lhs is None or rhs is None:
            run.report.conclusions.append(CheckLine(SKIP, label))
            continue
        run.conclude(label, _eq_check(lambda l=lhs: image(l), lambda r=rhs: kernel(r), label))
    objects = [ia.dom, ib.dom, ic.dom, pa.cod, pb.cod, pc.cod]
    return SnakeResult(objects, seq, run.report)


# ---------------------------------------------------------------------------
# appendix exercises


def verify_exercise(d: Diagram, name: str, part: Optional[str] = None) -> LemmaReport:
    if name == "short-five":
        return _short_five(d, part or "iii")
    if name == "spider":
        return _spider(d)
    if name == "incomplete-snail":
        return _incomplete_snail(d)
    if name == "square-exact":
        return _square_exact(d, part or "i")
    if name == "diamond":
        return _diamond(d, part or "i")
    if name == "baby-dragon":
        return _baby_dragon(d, part or "i")
    if name == "dragon":
        return _dragon(d, part or "i")
    if name == "generalized-snail":
        return generalized_snail(d).report
    raise ValidationError(f"unknown exercise {name!r}")


def _short_five(d, part):
    shape = check_shape(d, "short-five")
    run = _Run(d, f"short-five ({part})")
    run.hyp_commutes(shape)
    run.hyp_assert(short_exact("f", "g"), short_exact("x", "y"))
    if part == "i":
        run.hyp_assert(injective("s"), injective("u"))
        run.conclude_assert(injective("t"))
    elif part == "ii":
        run.hyp_assert(surjective("s"), surjective("u"))
        run.conclude_assert(surjective("t"))
    elif part == "iii":
        run.hyp_assert(iso("s"), iso("u"))
        run.conclude_assert(iso("t"))
    else:
        raise ValidationError(f"short-five has parts i, ii, iii, not {part!r}")
    return run.report


def _spider(d):
    shape = check_shape(d, "spider")
    run = _Run(d, "spider")
    run.hyp_commutes(shape)
    run.hyp_assert(short_exact("g", "i"), short_exact("j", "h"), iso("k"))
    run.conclude_assert(iso("f"))
    return run.report


def _incomplete_snail(d):
    shape = check_shape(d, "incomplete-snail")
    run = _Run(d, "incomplete-snail")
    run.hyp_commutes(shape)
    run.hyp_assert(exact("a", "b"), exact("g", "d"), exact("e", "f"), surjective("b"))
    run.conclude_assert(exact("x", "y"))
    return run.report


def _square_exact(d, part):
    shape = check_shape(d, "square-exact")
    run = _Run(d, f"square-exact ({part})")
    run.hyp_commutes(shape)
    run.hyp_assert(surjective("x"), injective("z"))
    if part == "i":
        run.hyp_assert(surjective("y"), exact("f", "g"))
        run.conclude_assert(exact("m", "n"))
    elif part == "ii":
        run.hyp_assert(injective("y"), exact("m", "n"))
        run.conclude_assert(exact("f", "g"))
    else:
        raise ValidationError(f"square-exact has parts i and ii, not {part!r}")
    return run.report


def _diamond(d, part):
    shape = check_shape(d, "diamond")
    run = _Run(d, f"diamond ({part})")
    run.hyp_commutes(shape)
    run.hyp_assert(
        exact("f", "x"), exact("g", "u"), exact("y", "m"), exact("v", "n"),
        surjective("x"), injective("v"),
    )
    if part == "i":
        run.hyp_assert(injective("a"))
        run.conclude_assert(injective("y"))
    elif part == "ii":
        run.hyp_assert(surjective("b"))
        run.conclude_assert(surjective("u"))
    else:
        raise ValidationError(f"diamond has parts i and ii, not {part!r}")
    return run.report


def _baby_dragon(d, part):
    shape = check_shape(d, "baby-dragon")
    run = _Run(d, f"baby-dragon ({part})")
    run.hyp_commutes(shape)
    run.hyp_assert(
        exact("f", "beta"), exact("g", "o"), exact("m", "h"),
        exact("n", "y"), exact("z", "p"), exact("alpha", "x"),
        surjective("f"), injective("g"), injective("n"),
        surjective("o"), surjective("y"), injective("x"),
    )
    if part == "i":
        run.hyp_assert(injective("alpha"))
        run.conclude_assert(injective("beta"))
    elif part == "ii":
        run.hyp_assert(surjective("beta"))
        run.conclude_assert(surjective("alpha"))
    else:
        raise ValidationError(f"baby-dragon has parts i and ii, not {part!r}")
    return run.report


def _dragon(d, part):
    shape = check_shape(d, "dragon")
    run = _Run(d, f"dragon ({part})")
    run.hyp_commutes(shape)
    run.hyp_assert(
        exact("a", "c"), exact("b", "d"), exact("c", "x2"), exact("d", "x1"),
        exact("x1", "y1"),
        exact("x2", "y3"), exact("x3", "y2"), exact("x4", "y5"), exact("x5", "y4"),
        exact("x6", "y7"), exact("x7", "y6"), exact("x8", "y9"), exact("x9", "y8"),
        exact("x10", "y11"), exact("x11", "y10"), exact("x12", "y12"),
        exact("e", "g"), exact("f", "h"), exact("g", "x12"), exact("h", "x11"),
        exact("y1", "j"), exact("y2", "i"), exact("i", "k"), exact("j", "l"),
        exact("y11", "o"), exact("y12", "m"), exact("m", "p"), exact("o", "q"),
        surjective("x1"), injective("x4"), injective("x6"), injective("x8"),
        injective("x10"), surjective("y3"), surjective("y5"), surjective("y7"),
        surjective("y9"), injective("y12"),
    )
    if part == "i":
        run.hyp_assert(surjective("a"), surjective("e"))
        run.conclude_assert(injective("y1"))
    elif part == "ii":
        run.hyp_assert(injective("l"), injective("q"))
        run.conclude_assert(surjective("x12"))
    else:
        raise ValidationError(f"dragon has parts i and ii, not {part!r}")
    return run.report


# ---------------------------------------------------------------------------
# generalized snail


def generalized_snail(d: Diagram) -> SnakeResult:
    shape = check_shape(d, "generalized-snail")
    form = d.form
    run = _Run(d, "generalized-snail")
    run.hyp_commutes(shape)
    gamma, alpha, betap, f0 = (d.arrows[r] for r in ("gamma", "alpha", "betap", "f0"))
    for name, mor in (("gamma", gamma), ("alpha", alpha), ("beta'", betap)):
        run.hyp(f"Ker {name} conormal", form.is_conormal(kernel(mor)))
        run.hyp(f"Im {name} normal", form.is_normal(image(mor)))
    labels = ("induce v", "induce w", "induce x", "induce y", "induce z",
              "exact at Ker alpha", "exact at Ker beta'",
              "exact at Coker gamma", "exact at Coker alpha")
    if not run.live:
        for label in labels:
            run.report.conclusions.append(CheckLine(SKIP, label))
        return SnakeResult(None, None, run.report)

    ig = form.embedding_of(kernel(gamma))
    ia = form.embedding_of(kernel(alpha))
    ibp = form.embedding_of(kernel(betap))
    pg = form.projection_of(image(gamma))
    pa = form.projection_of(image(alpha))
    pbp = form.projection_of(image(betap))
    A, C, A0 = d.objects["A"], d.objects["C"], d.objects["A0"]
    zigs = {
        "v": Zigzag((ig.dom, A, ia.dom), (Edge(ig, RIGHT), Edge(ia, LEFT)), form=form),
        "w": Zigzag((ia.dom, A, C, ibp.dom),
                    (Edge(ia, RIGHT), Edge(gamma, RIGHT), Edge(ibp, LEFT)), form=form),
        "x": Zigzag((ibp.dom, C, pg.cod), (Edge(ibp, RIGHT), Edge(pg, RIGHT)), form=form),
        "y": Zigzag((pg.cod, C, A0, pa.cod),
                    (Edge(pg, LEFT), Edge(betap, RIGHT), Edge(pa, RIGHT)), form=form),
        "z": Zigzag((pa.cod, A0, pbp.cod), (Edge(pa, LEFT), Edge(pbp, RIGHT)), form=form),
    }
    mors = {}
    for name, zz in zigs.items():
        verdict = decide_induction(zz, name=name)
        witness = None if verdict.induces else "; ".join(fl.render() for fl in verdict.failures)
        run.conclude(f"induce {name}", lambda v=verdict, w=witness: (v.induces, w))
        mors[name] = verdict.morphism
    seq = [mors[k] for k in ("v", "w", "x", "y", "z")]
    for i, label in enumerate(labels[5:]):
        lhs, rhs = seq[i], seq[i + 1]
        if lhs is None or rhs is None:
            run.report.conclusions.append(CheckLine(SKIP, label))
            continue
        run.conclude(label, _eq_check(lambda l=lhs: image(l), lambda r=rhs: kernel(r), label))
    objects = [ig.dom, ia.dom, ibp.dom, pg.cod, pa.cod, pbp.cod]
    return SnakeResult(objects, seq, run.report)


# ---------------------------------------------------------------------------
# Goursat


def goursat(d: Diagram) -> tuple[LemmaReport, Optional[Morphism]]:
    shape = check_shape(d, "goursat")
    form = d.form
    run = _Run(d, "goursat")
    run.hyp_commutes(shape)
    run.hyp_assert(exact("lam", "mu"), exact("lamp", "mup"))
    lam, mu, lamp = d.arrows["lam"], d.arrows["mu"], d.arrows["lamp"]
    beta, gamma = d.arrows["beta"], d.arrows["gamma"]
    gamma_mu = compose(gamma, mu)
    X = kernel(gamma_mu)
    run.hyp("Ker (gamma.mu) conormal", form.is_conormal(X))
    if not run.live:
        for label in ("Im(beta.lam) normal to Im beta ^ Im lam'",
                      "Ker beta v Ker mu normal to Ker(gamma.mu)",
                      "quotient isomorphism"):
            run.report.conclusions.append(CheckLine(SKIP, label))
        return run.report, None

    W = join(kernel(beta), kernel(mu))
    upper = meet(image(beta), image(lamp))
    lower = image(compose(beta, lam))
    run.conclude(
        "Im(beta.lam) normal to Im beta ^ Im lam'",
        lambda: (is_relatively_normal(form, lower, upper), None),
    )
    run.conclude(
        "Ker beta v Ker mu normal to Ker(gamma.mu)",
        lambda: (is_relatively_normal(form, W, X), None),
    )
    result = quotient_iso(form, beta, W, X)
    run.conclude("beta X = Im beta ^ Im lam'",
                 _eq_check(lambda: beta.dimg[X.key], lambda: upper.key, "beta X"))
    run.conclude("beta W = Im(beta.lam)",
                 _eq_check(lambda: beta.dimg[W.key], lambda: lower.key, "beta W"))
    run.conclude("quotient isomorphism", lambda: (
        result.holds and result.iso is not None,
        None if result.holds else "quotient_iso verdicts disagree",
    ))
    return run.report, result.iso


# ---------------------------------------------------------------------------
# homology objects and the salamander


@dataclass(frozen=True)
class UndefinedMarker:
    guard: str

    def render(self) -> str:
        return f"undefined ({self.guard})"


@dataclass
class HomologyObject:
    object: FormObject
    embedding: Morphism   # of the upper subobject
    projection: Morphism  # by the pulled-back lower subobject
    upper: Subobject
    lower: Subobject


def homology_object(form: Form, kind: str, **arrows: Morphism):
    """Subquotient upper/lower at a double-complex cell.

    kind 'h': Ker out / Im into, guarded by Im into normal to Ker out.
    kind 'box': Ker diag / (Im in_v v Im in_h).
    kind 'cobox': (Ker out_a ^ Ker out_b) / Im diag.
    Returns an UndefinedMarker naming the guard when it fails.
    """
    if kind == "h":
        upper = kernel(arrows["out"])
        lower = image(arrows["into"])
        guard = "Im into normal to Ker out"
    elif kind == "box":
        upper = kernel(arrows["diag"])
        lower = join(image(arrows["in_v"]), image(arrows["in_h"]))
        guard = "Im in_v v Im in_h normal to Ker diag"
    elif kind == "cobox":
        upper = meet(kernel(arrows["out_a"]), kernel(arrows["out_b"]))
        lower = image(arrows["diag"])
        guard = "Im diag normal to Ker out_a ^ Ker out_b"
    else:
        raise ValidationError(f"unknown homology object kind {kind!r}")
    if not is_relatively_normal(form, lower, upper):
        return UndefinedMarker(guard)
    emb = form.embedding_of(upper)
    proj = form.projection_of(inverse_image(emb, lower))
    return HomologyObject(proj.cod, emb, proj, upper, lower)


def salamander(d: Diagram) -> LemmaReport:
    """Six-term exact sequence of homology objects around two horizontally
    adjacent cells of a double complex."""
    shape = check_shape(d, "salamander")
    form = d.form
    run = _Run(d, "salamander")
    run.hyp_commutes(shape)
    run.hyp_assert(
        zero("e.d"), zero("k.a"), zero("s.e"), zero("t.l"),
        zero("c.m"), zero("f.c"), zero("g.v"), zero("u.g"),
    )
    a, m, c, k, v, dd = (d.arrows[r] for r in ("a", "m", "c", "k", "v", "d"))
    e, f, g, s, t, u = (d.arrows[r] for r in ("e", "f", "g", "s", "t", "u"))
    run.hyp("Im c normal", form.is_normal(image(c)))
    r_diag = compose(e, c)
    q_diag = compose(g, e)
    homs = {
        "C-box": homology_object(form, "box", diag=r_diag, in_v=m, in_h=a),
        "A-h": homology_object(form, "h", out=e, into=dd),
        "A-box": homology_object(form, "box", diag=q_diag, in_v=c, in_h=dd),
        "cobox-B": homology_object(form, "cobox", out_a=s, out_b=g, diag=r_diag),
        "B-h": homology_object(form, "h", out=s, into=e),
        "cobox-D": homology_object(form, "cobox", out_a=t, out_b=u, diag=q_diag),
    }
    for name, h in homs.items():
        if isinstance(h, UndefinedMarker):
            run.hyp(f"{name} defined", False, h.render())
        else:
            run.hyp(f"{name} defined", True)
    labels = ("induce v", "induce w", "induce x", "induce y", "induce z",
              "exact at A-h", "exact at A-box", "exact at cobox-B", "exact at B-h")
    if not run.live:
        for label in labels:
            run.report.conclusions.append(CheckLine(SKIP, label))
        return run.report

    def connecting(src: HomologyObject, dst: HomologyObject, middle: Optional[Morphism]):
        """Zigzag src <-proj- (upper/1) -emb-> node [-middle->] <-emb- (upper'/1) -proj-> dst."""
        if middle is None:
            nodes = (src.object, src.embedding.dom, src.embedding.cod,
                     dst.embedding.dom, dst.object)
            edges = (Edge(src.projection, LEFT), Edge(src.embedding, RIGHT),
                     Edge(dst.embedding, LEFT), Edge(dst.projection, RIGHT))
        else:
            nodes = (src.object, src.embedding.dom, src.embedding.cod, middle.cod,
                     dst.embedding.dom, dst.object)
            edges = (Edge(src.projection, LEFT), Edge(src.embedding, RIGHT),
                     Edge(middle, RIGHT), Edge(dst.embedding, LEFT),
                     Edge(dst.projection, RIGHT))
        return Zigzag(nodes, edges, form=form)

    zigs = {
        "v": connecting(homs["C-box"], homs["A-h"], c),
        "w": connecting(homs["A-h"], homs["A-box"], None),
        "x": connecting(homs["A-box"], homs["cobox-B"], e),
        "y": connecting(homs["cobox-B"], homs["B-h"], None),
        "z": connecting(homs["B-h"], homs["cobox-D"], g),
    }
    mors = {}
    for name, zz in zigs.items():
        verdict = decide_induction(zz, name=name)
        witness = None if verdict.induces else "; ".join(fl.render() for fl in verdict.failures)
        run.conclude(f"induce {name}", lambda vv=verdict, w=witness: (vv.induces, w))
        mors[name] = verdict.morphism
    seq = [mors[k] for k in ("v", "w", "x", "y", "z")]
    for i, label in enumerate(labels[5:]):
        lhs, rhs = seq[i], seq[i + 1]
        if lhs is None or rhs is None:
            run.report.conclusions.append(CheckLine(SKIP, label))
            continue
        run.conclude(label, _eq_check(lambda l=lhs: image(l), lambda r=rhs: kernel(r), label))
    return run.report


# ---------------------------------------------------------------------------
# strongly short exact sequences


def strongly_short_exact_check(d: Diagram) -> tuple[bool, LemmaReport]:
    """Five-object sequence 0 -> A -> B -> C -> 0' with trivial ends: exact
    at A, B, C forces the inner pair short exact."""
    for role in ("O1", "A", "B", "C", "O2"):
        if role not in d.objects:
            raise ShapeError(f"strongly-short-exact: missing object role {role!r}")
    for role in ("a", "f", "g", "b"):
        if role not in d.arrows:
            raise ShapeError(f"strongly-short-exact: missing arrow role {role!r}")
    for role in ("O1", "O2"):
        if len(d.objects[role].lattice.keys) != 1:
            raise ValidationError(f"end object {d.objects[role].id} is not trivial")
    run = _Run(d, "strongly-short-exact")
    run.hyp_assert(exact("a", "f"), exact("f", "g"), exact("g", "b"))
    run.conclude_assert(short_exact("f", "g"))
    report = run.report
    return report.passed, report
