"""Workspace files: parsing, resolution, round-trips, error reporting."""

import importlib.resources as resources

import pytest

from noetherform.errors import ParseError
from noetherform.parser import dump, merge, parse

FIXTURES = resources.files("noetherform") / "fixtures"


def fixture_text(name):
    return (FIXTURES / name).read_text()


ALGEBRA_SRC = """
algebra A size 2 zero 0
p 0 1 / 1 0
d 0 1 / 1 0
hom idA A -> A map 0 1
"""


def test_parse_algebra_and_hom():
    ws = parse(ALGEBRA_SRC)
    assert set(ws.algebras) == {"A"}
    assert ws.algebras["A"].p == ((0, 1), (1, 0))
    assert ws.homs["idA"].table == (0, 1)


def test_parse_group_derives_subtraction():
    ws = parse("group G size 4 id 0\ntable 0 1 2 3 / 1 2 3 0 / 2 3 0 1 / 3 0 1 2\n")
    alg = ws.algebras["G"]
    assert alg.d[1][3] == 2


def test_parse_rejects_ragged_table():
    with pytest.raises(ParseError):
        parse("group G size 2 id 0\ntable 0 1 / 1\n")


def test_parse_rejects_non_hom():
    src = ALGEBRA_SRC + "hom bad A -> A map 1 1\n"
    with pytest.raises(ParseError):
        parse(src)


def test_parse_comments_and_blank_lines():
    ws = parse("# leading comment\n\n" + ALGEBRA_SRC + "\n# trailing\n")
    assert "A" in ws.algebras


def test_zigzag_direction_token_order():
    base = ALGEBRA_SRC + "algebra B size 2 zero 0\np 0 1 / 1 0\nd 0 1 / 1 0\n"
    base += "hom h A -> B map 0 1\n"
    ws1 = parse(base + "zigzag z : A > h B\n")
    ws2 = parse(base + "zigzag z : A h > B\n")
    z1, z2 = ws1.zigzag("z"), ws2.zigzag("z")
    assert z1.edges[0].direction == z2.edges[0].direction == "right"
    ws3 = parse(base + "zigzag z : B < h A\n")
    assert ws3.zigzag("z").edges[0].direction == "left"


def test_zigzag_unknown_hom_is_parse_error():
    with pytest.raises(ParseError):
        parse(ALGEBRA_SRC + "zigzag z : A > nope A\n").zigzag("z")


def test_form_parsing_and_lattice():
    ws = parse(fixture_text("tiny_form.nf"))
    form = ws.data_form("tinyform")
    T = form.objects["T"]
    assert T.lattice.bottom == "bot" and T.lattice.top == "top"
    assert len(form.morphisms) == 1


def test_form_morphism_missing_image_line():
    src = """
form f1
object T subobjects bot top
morphism m T -> T
  dimg bot -> bot
  iimg bot -> bot
  iimg top -> top
"""
    ws = parse(src)
    with pytest.raises(ParseError, match="dimg missing"):
        ws.data_form("f1")


def test_diagram_resolution_over_slominski():
    ws = parse(fixture_text("z4_stack.nf"))
    d = ws.diagram("shortfive")
    assert set(d.arrows) == {"f", "g", "x", "y", "s", "t", "u"}
    assert d.objects["B"].order == 4


def test_diagram_unknown_entity():
    src = ALGEBRA_SRC + "diagram d over main\nuse nope as A\n"
    ws = parse(src)
    with pytest.raises(ParseError, match="unknown entity"):
        ws.diagram("d")


def test_workspace_closure_is_automatic():
    # declared homs are closed with identities and composites on demand
    ws = parse(fixture_text("d8_snake.nf"))
    form = ws.slominski_form()
    assert len(form.objects) == 5
    names = {m.name for m in form.morphisms}
    assert {"f", "i", "g", "j", "h"} <= names


@pytest.mark.parametrize("name", ["d8_snake.nf", "groups_le8.nf", "z4_stack.nf",
                                  "tiny_form.nf"])
def test_fixture_roundtrip(name):
    ws1 = parse(fixture_text(name))
    ws2 = parse(dump(ws1))
    assert ws1.algebras == ws2.algebras
    assert {n: h.table for n, h in ws1.homs.items()} == {
        n: h.table for n, h in ws2.homs.items()
    }
    assert set(ws1.form_specs) == set(ws2.form_specs)
    assert {n: (s.nodes, s.edges) for n, s in ws1.zigzag_specs.items()} == {
        n: (s.nodes, s.edges) for n, s in ws2.zigzag_specs.items()
    }
    assert {n: (s.over, s.uses, s.commutes, s.asserts)
            for n, s in ws1.diagram_specs.items()} == {
        n: (s.over, s.uses, s.commutes, s.asserts)
        for n, s in ws2.diagram_specs.items()
    }


def test_merge_workspaces():
    ws1 = parse(ALGEBRA_SRC)
    ws2 = parse("group G size 2 id 0\ntable 0 1 / 1 0\n")
    ws = merge(ws1, ws2)
    assert set(ws.algebras) == {"A", "G"}


def test_names_unique_per_kind():
    dup = ALGEBRA_SRC + "algebra A size 2 zero 0\np 0 1 / 1 0\nd 0 1 / 1 0\n"
    with pytest.raises(ParseError, match="duplicate algebra"):
        parse(dup)
    with pytest.raises(ParseError, match="duplicate algebra name 'A' across files"):
        merge(parse(ALGEBRA_SRC), parse(ALGEBRA_SRC))


def test_assert_parsing_and_arity():
    src = ALGEBRA_SRC + """
diagram d over main
use A as X
use idA as m
assert injective m
assert exact m m
assert zero m.m
"""
    ws = parse(src)
    spec = ws.diagram_specs["d"]
    assert [a.kind for a in spec.asserts] == ["injective", "exact", "zero"]
    with pytest.raises(ParseError):
        parse(ALGEBRA_SRC + "diagram d over main\nassert exact onlyone\n")


def test_unknown_keyword_is_parse_error():
    with pytest.raises(ParseError):
        parse("banana split\n")
