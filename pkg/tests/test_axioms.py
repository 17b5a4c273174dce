"""Axiom harness: green runs on healthy forms, localized failures on
corrupted ones."""

import pytest

from noetherform import DataForm, FormObject, Morphism, axiom_suite, dualize
from noetherform.groups import cyclic, dihedral8, symmetric3, trivial_group
from noetherform.lattice import TableLattice
from noetherform.slominski import SlominskiHom, as_form, close_homs, enumerate_homs


def endo_form(alg):
    return as_form([alg], enumerate_homs(alg, alg), name=alg.name)


@pytest.mark.parametrize("alg", [trivial_group(), cyclic(4), symmetric3(), dihedral8()],
                         ids=lambda a: a.name)
def test_axiom_suite_passes_on_endo_forms(alg):
    report = axiom_suite(endo_form(alg), include_axiom6=True)
    assert report.passed, report.render()


def test_axiom_suite_passes_on_dual(capsys):
    form = endo_form(dihedral8())
    report = axiom_suite(dualize(form), include_axiom6=True)
    assert report.passed, report.render()


def test_axiom_suite_single_identity_form():
    z3 = cyclic(3)
    form = as_form([z3], [SlominskiHom(z3, z3, (0, 1, 2), name="id")])
    assert axiom_suite(form, include_axiom6=True).passed


def test_axiom_suite_multi_object_form():
    z4, z2 = cyclic(4), cyclic(2)
    homs = close_homs([z4, z2], [SlominskiHom(z4, z2, (0, 1, 0, 1), name="q"),
                                 SlominskiHom(z2, z4, (0, 2), name="m")])
    form = as_form([z4, z2], homs)
    report = axiom_suite(form, include_axiom6=True)
    assert report.passed, report.render()


def test_axiom_suite_all_homs_between_a_pair():
    # every hom between the two algebras plus all endomorphisms, closed
    from noetherform.groups import klein4

    z4, e4 = cyclic(4), klein4()
    everything = (list(enumerate_homs(z4, z4)) + list(enumerate_homs(e4, e4))
                  + list(enumerate_homs(z4, e4)) + list(enumerate_homs(e4, z4)))
    form = as_form([z4, e4], close_homs([z4, e4], everything))
    report = axiom_suite(form, include_axiom6=True)
    assert report.passed, report.render()


def _tiny_data_form(corrupt=None):
    lat = TableLattice(["bot", "top"], [])
    T = FormObject("T", lat)
    ident = Morphism(T, T, {"bot": "bot", "top": "top"},
                     {"bot": "bot", "top": "top"}, name="id")
    morphisms = [ident]
    if corrupt == "dimg":
        bad = Morphism(T, T, {"bot": "top", "top": "bot"},
                       {"bot": "bot", "top": "top"}, name="bad")
        morphisms.append(bad)
    return DataForm([T], morphisms, name="tiny")


def test_tiny_data_form_passes_core_axioms():
    report = axiom_suite(_tiny_data_form())
    assert report.passed, report.render()


def test_tiny_data_form_fails_axiom6_only():
    report = axiom_suite(_tiny_data_form(), include_axiom6=True)
    assert report.failed_names() == ["AX6"]


def test_fault_injection_nonmonotone_dimg():
    # swapping bottom and top in dimg breaks the adjunction (G)
    report = axiom_suite(_tiny_data_form(corrupt="dimg"))
    assert not report.passed
    assert "G" in report.failed_names()
    g_line = next(c for c in report.checks if c.name == "G")
    assert g_line.witness  # carries a concrete counterexample


def test_fault_injection_broken_ax2():
    # a Slominski form whose image tables were tampered with
    form = endo_form(cyclic(4))
    victim = next(m for m in form.morphisms if len(set(m.element_map)) == 2)
    victim.dimg[(0, 2)] = (0, 1, 2, 3)  # image of {0,2} corrupted upward
    report = axiom_suite(form)
    assert not report.passed


def test_report_rendering_shape():
    report = axiom_suite(endo_form(cyclic(2)), include_axiom6=True)
    lines = report.render().splitlines()
    names = [l.split()[1] for l in lines[:-1]]
    assert names == ["P1", "P2", "P3", "BL", "G", "I", "A", "F1", "F2",
                     "AX2", "AX3", "AX4", "AX5", "AX6"]
    assert lines[-1].startswith("PASS axioms(")
