"""Slominski algebras: identities, subalgebras, congruences, quotients, homs."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noetherform.errors import ClosureError, UnsupportedSubobjectError, ValidationError
from noetherform.groups import (
    D8_B,
    D8_V,
    all_groups_le8,
    cyclic,
    dihedral8,
    quaternion8,
    symmetric3,
    trivial_group,
    xor_group,
)
from noetherform.slominski import (
    SlominskiHom,
    as_form,
    close_homs,
    enumerate_homs,
    from_group,
    generate_congruence,
    is_hom_table,
    is_normal_subalgebra,
    quotient,
    subalgebra_algebra,
    subalgebras,
)

SMALL = [trivial_group(), cyclic(2), cyclic(3), cyclic(4), xor_group(2), symmetric3()]


def test_from_group_z2_xor():
    z2 = cyclic(2)
    assert z2.p == ((0, 1), (1, 0))
    assert z2.d == z2.p  # every element self-inverse


def test_from_group_z4_subtraction():
    z4 = cyclic(4)
    assert z4.d[1][3] == 2  # 1 - 3 mod 4


def test_from_group_rejects_non_group():
    bad = ((0, 1), (1, 1))
    with pytest.raises(ValidationError):
        from_group(bad, (0, 1), 0, name="bad")


def test_d8_presentation_order():
    d8 = dihedral8()
    # b*a = a^3*b with the fixed element order e,a,a2,a3,b,ab,a2b,a3b
    assert d8.p[4][1] == 7
    assert d8.n == 8


@pytest.mark.parametrize("alg", all_groups_le8(), ids=lambda a: a.name)
def test_defining_identities_and_xeqy(alg):
    for x in range(alg.n):
        assert alg.d[x][x] == alg.zero
        for y in range(alg.n):
            assert alg.p[alg.d[x][y]][y] == x
            # derived consequence: d(x,y) = 0 iff x = y
            assert (alg.d[x][y] == alg.zero) == (x == y)


def brute_subalgebras(alg):
    subs = []
    for mask in range(1 << alg.n):
        elems = [e for e in range(alg.n) if (mask >> e) & 1]
        if alg.zero not in elems:
            continue
        if all(alg.p[x][y] in elems and alg.d[x][y] in elems
               for x in elems for y in elems):
            subs.append(tuple(elems))
    return sorted(subs, key=lambda s: (len(s), s))


@pytest.mark.parametrize("alg", SMALL + [dihedral8(), quaternion8()], ids=lambda a: a.name)
def test_subalgebras_against_bruteforce(alg):
    assert sorted(subalgebras(alg), key=lambda s: (len(s), s)) == brute_subalgebras(alg)


def test_subalgebra_counts():
    assert subalgebras(cyclic(4)) == ((0,), (0, 2), (0, 1, 2, 3))
    assert len(subalgebras(dihedral8())) == 10   # the ten subgroups of D8
    assert len(subalgebras(trivial_group())) == 1


def test_generate_congruence_examples():
    z4 = cyclic(4)
    assert generate_congruence(z4, []).classes == ((0,), (1,), (2,), (3,))
    cong = generate_congruence(z4, [(2, 0)])
    assert cong.classes == ((0, 2), (1, 3))  # derived by hand fixpoint
    refl = generate_congruence(z4, [(1, 1), (3, 3)])
    assert refl.classes == ((0,), (1,), (2,), (3,))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_congruence_is_compatible_partition(alg, data):
    pairs = data.draw(
        st.lists(st.tuples(st.integers(0, alg.n - 1), st.integers(0, alg.n - 1)),
                 max_size=3)
    )
    cong = generate_congruence(alg, pairs)
    assert sorted(x for c in cong.classes for x in c) == list(range(alg.n))
    cls = {x: i for i, c in enumerate(cong.classes) for x in c}
    for (x1, c1) in cls.items():
        for (x2, c2) in cls.items():
            for (y1, y2) in itertools.product(range(alg.n), repeat=2):
                if cls[y1] != cls[y2]:
                    continue
                assert cls[alg.p[x1][y1]] == cls[alg.p[x1][y2]]
    for a, b in pairs:
        assert cls[a] == cls[b]


def test_is_normal_subalgebra_d8():
    d8 = dihedral8()
    assert not is_normal_subalgebra(d8, D8_B)
    assert is_normal_subalgebra(d8, D8_V)
    assert is_normal_subalgebra(d8, (0,))
    v, incl = subalgebra_algebra(d8, D8_V)
    b_in_v = tuple(i for i, e in enumerate(incl.table) if e in D8_B)
    assert is_normal_subalgebra(v, b_in_v)


def test_is_normal_rejects_non_subalgebra():
    with pytest.raises(ValidationError):
        is_normal_subalgebra(cyclic(4), (0, 1))


def test_quotient_z4_and_trivial():
    z4 = cyclic(4)
    q, proj = quotient(z4, (0, 2))
    assert q.n == 2
    assert proj.table == (0, 1, 0, 1)
    # kernel of the projection is exactly the subalgebra
    assert tuple(x for x in range(4) if proj.table[x] == q.zero) == (0, 2)
    q0, proj0 = quotient(z4, (0,))
    assert q0.n == 4 and sorted(proj0.table) == [0, 1, 2, 3]


def test_quotient_d8_by_v():
    q, _ = quotient(dihedral8(), D8_V)
    assert q.n == 2


def test_quotient_requires_normal():
    with pytest.raises(UnsupportedSubobjectError):
        quotient(dihedral8(), D8_B)


def brute_homs(A, B):
    out = []
    for table in itertools.product(range(B.n), repeat=A.n):
        if table[A.zero] != B.zero:
            continue
        if is_hom_table(A, B, table):
            out.append(table)
    return sorted(out)


@pytest.mark.parametrize(
    "a,b",
    [(cyclic(2), cyclic(2)), (cyclic(4), cyclic(2)), (cyclic(2), cyclic(4)),
     (symmetric3(), cyclic(2)), (xor_group(2), xor_group(2))],
    ids=lambda g: g.name,
)
def test_enumerate_homs_against_bruteforce(a, b):
    assert sorted(h.table for h in enumerate_homs(a, b)) == brute_homs(a, b)


def test_enumerate_homs_counts():
    assert len(enumerate_homs(cyclic(2), cyclic(2))) == 2
    assert len(enumerate_homs(cyclic(4), cyclic(2))) == 2
    assert len(enumerate_homs(cyclic(4), trivial_group())) == 1
    assert len(enumerate_homs(dihedral8(), dihedral8())) == 36


def test_hom_validate_rejects_non_hom():
    z4, z2 = cyclic(4), cyclic(2)
    with pytest.raises(ValidationError):
        SlominskiHom(z4, z2, (0, 1, 1, 0), name="bad").validate()


def test_normality_iff_kernel_witness():
    # cross-check: B is normal iff it appears as the kernel of some hom into
    # some constructed quotient (the quotient construction is the oracle)
    for alg in (cyclic(4), symmetric3(), dihedral8()):
        quotients = [
            quotient(alg, sub)[0]
            for sub in subalgebras(alg)
            if is_normal_subalgebra(alg, sub)
        ]
        kernels = set()
        for q in quotients:
            for h in enumerate_homs(alg, q):
                kernels.add(tuple(x for x in range(alg.n) if h.table[x] == q.zero))
        for sub in subalgebras(alg):
            assert (sub in kernels) == is_normal_subalgebra(alg, sub)


def test_normal_stable_under_surjections():
    # direct images of normal subalgebras along surjective homs stay normal
    d8 = dihedral8()
    q, proj = quotient(d8, (0, 2))
    for sub in subalgebras(d8):
        if not is_normal_subalgebra(d8, sub):
            continue
        img = tuple(sorted({proj.table[x] for x in sub}))
        assert is_normal_subalgebra(q, img)


def test_as_form_requires_identities_and_closure():
    z4, z2 = cyclic(4), cyclic(2)
    q = SlominskiHom(z4, z2, (0, 1, 0, 1), name="q")
    with pytest.raises(ClosureError):
        as_form([z4, z2], [q])
    homs = close_homs([z4, z2], [q])
    form = as_form([z4, z2], homs)
    assert len(form.objects) == 2
    m = SlominskiHom(z2, z4, (0, 2), name="m")
    with pytest.raises(ClosureError):
        # q.m is the zero endo of Z2 which is not declared
        as_form([z4, z2], list(homs) + [m])


def test_close_homs_idempotent():
    z4, z2 = cyclic(4), cyclic(2)
    q = SlominskiHom(z4, z2, (0, 1, 0, 1), name="q")
    once = close_homs([z4, z2], [q])
    twice = close_homs([z4, z2], list(once))
    assert {(h.dom.name, h.cod.name, h.table) for h in once} == {
        (h.dom.name, h.cod.name, h.table) for h in twice
    }
