"""Diagrams, exactness, and the generic lemma verifier.

A Diagram names objects and morphisms by role, declares commutativities as
pairs of dot-separated paths (composition reads right to left, so "t.f"
means t after f), and carries tagged assertions.  verify_generic checks the
hypotheses and, only when they all hold, the conclusions; a conclusion
failing on a passing-hypotheses instance is a refutation and is surfaced as
such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import (
    Form,
    FormObject,
    Morphism,
    compose,
    image,
    is_injective,
    is_isomorphism,
    is_surjective,
    is_zero_morphism,
    kernel,
)
from .errors import ShapeError, ValidationError

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


def is_exact_at(f: Morphism, g: Morphism) -> bool:
    """Exactness at the shared node: Im f = Ker g."""
    if f.cod.id != g.dom.id:
        raise ValidationError(f"{f!r} and {g!r} do not share a node")
    return image(f) == kernel(g)


def is_short_exact(f: Morphism, g: Morphism) -> bool:
    return is_injective(f) and is_surjective(g) and is_exact_at(f, g)


@dataclass(frozen=True)
class Assertion:
    kind: str  # exact | short-exact | injective | surjective | iso | zero | commute
    args: tuple

    def label(self) -> str:
        return f"{self.kind} {' '.join(str(a) for a in self.args)}"


def exact(f: str, g: str) -> Assertion:
    return Assertion("exact", (f, g))


def short_exact(f: str, g: str) -> Assertion:
    return Assertion("short-exact", (f, g))


def injective(f: str) -> Assertion:
    return Assertion("injective", (f,))


def surjective(f: str) -> Assertion:
    return Assertion("surjective", (f,))


def iso(f: str) -> Assertion:
    return Assertion("iso", (f,))


def zero(path: str) -> Assertion:
    return Assertion("zero", (path,))


@dataclass
class Diagram:
    form: Form
    objects: dict[str, FormObject] = field(default_factory=dict)
    arrows: dict[str, Morphism] = field(default_factory=dict)
    commutes: list[tuple[str, str]] = field(default_factory=list)
    assertions: list[Assertion] = field(default_factory=list)
    name: str = "diagram"

    def add_object(self, role: str, obj: FormObject) -> FormObject:
        self.objects[role] = obj
        return obj

    def add_arrow(self, role: str, m: Morphism) -> Morphism:
        self.arrows[role] = m
        return m

    def path(self, spec: str) -> Morphism:
        """Composite of a dot-separated path, rightmost morphism first."""
        names = spec.split(".")
        try:
            mors = [self.arrows[n] for n in names]
        except KeyError as exc:
            raise ShapeError(f"{self.name}: unknown arrow {exc.args[0]!r} in path {spec!r}") from None
        out = mors[-1]
        for m in reversed(mors[:-1]):
            out = compose(m, out)
        return out

    def check(self, a: Assertion) -> tuple[bool, Optional[str]]:
        kind, args = a.kind, a.args
        if kind == "commute":
            p1, p2 = (self.path(s) for s in args)
            ok = p1 == p2
            return ok, None if ok else f"paths {args[0]} and {args[1]} differ"
        if kind == "exact":
            f, g = self.arrows[args[0]], self.arrows[args[1]]
            ok = is_exact_at(f, g)
            return ok, None if ok else f"Im {args[0]} = {image(f)!r} but Ker {args[1]} = {kernel(g)!r}"
        if kind == "short-exact":
            f, g = self.arrows[args[0]], self.arrows[args[1]]
            ok = is_short_exact(f, g)
            return ok, None if ok else f"({args[0]},{args[1]}) is not short exact"
        if kind == "injective":
            ok = is_injective(self.arrows[args[0]])
            return ok, None if ok else f"Ker {args[0]} = {kernel(self.arrows[args[0]])!r}"
        if kind == "surjective":
            ok = is_surjective(self.arrows[args[0]])
            return ok, None if ok else f"Im {args[0]} = {image(self.arrows[args[0]])!r}"
        if kind == "iso":
            ok = is_isomorphism(self.arrows[args[0]])
            return ok, None if ok else f"{args[0]} is not an isomorphism"
        if kind == "zero":
            ok = is_zero_morphism(self.path(args[0]))
            return ok, None if ok else f"{args[0]} is not a zero morphism"
        raise ValidationError(f"unknown assertion kind {kind!r}")

    def validate(self) -> None:
        for a in self.assertions:
            for arg in a.args:
                if a.kind in ("exact", "short-exact", "injective", "surjective", "iso"):
                    if arg not in self.arrows:
                        raise ShapeError(f"{self.name}: assertion uses unknown arrow {arg!r}")


@dataclass
class CheckLine:
    status: str
    name: str
    witness: Optional[str] = None

    def render(self) -> str:
        tail = f" [{self.witness}]" if self.witness else ""
        return f"{self.status} {self.name}{tail}"


@dataclass
class LemmaReport:
    lemma: str
    hypotheses: list[CheckLine] = field(default_factory=list)
    conclusions: list[CheckLine] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return all(l.status == PASS for l in self.hypotheses)

    @property
    def passed(self) -> bool:
        return self.hypotheses_hold and all(l.status == PASS for l in self.conclusions)

    @property
    def refuted(self) -> bool:
        """Hypotheses hold but some conclusion fails: would contradict the
        source lemma on a valid form."""
        return self.hypotheses_hold and any(l.status == FAIL for l in self.conclusions)

    @property
    def skipped(self) -> bool:
        return not self.hypotheses_hold

    def render(self) -> str:
        """One PASS|FAIL|SKIP line per hypothesis and conclusion."""
        lines = [f"lemma {self.lemma}"]
        lines += [l.render() for l in self.hypotheses]
        lines += [l.render() for l in self.conclusions]
        if self.refuted:
            lines.append("REFUTATION: hypotheses hold but a conclusion fails")
        return "\n".join(lines)


def verify_generic(d: Diagram, conclusions: Iterable[Assertion], lemma: str = "") -> LemmaReport:
    """Check the diagram's own assertions and commutativities as hypotheses,
    then the given conclusions (skipped unless every hypothesis passes)."""
    d.validate()
    report = LemmaReport(lemma or d.name)
    for p1, p2 in d.commutes:
        ok, w = d.check(Assertion("commute", (p1, p2)))
        report.hypotheses.append(CheckLine(PASS if ok else FAIL, f"commute {p1} = {p2}", w))
    for a in d.assertions:
        ok, w = d.check(a)
        report.hypotheses.append(CheckLine(PASS if ok else FAIL, a.label(), w))
    if not report.hypotheses_hold:
        for a in conclusions:
            report.conclusions.append(CheckLine(SKIP, a.label()))
        return report
    for a in conclusions:
        ok, w = d.check(a)
        report.conclusions.append(CheckLine(PASS if ok else FAIL, a.label(), w))
    return report
