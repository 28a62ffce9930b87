import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxclass.characters import (
    CdUndetermined,
    Deficit,
    NormallyMonomial,
    RootOfUnityExponent,
    b,
    candidate_records,
    cd,
    cd_of_quotient,
    cd_of_quotient_recertified,
    character_from_dual,
    character_kernel,
    conjugate_character,
    induced_kernel,
    linear_characters,
    mackey_inner_product,
    make_record,
    nm_certify,
    orbit_and_inertia,
)
from maxclass.pc import Element, PresentationError
from maxclass.series import maximal_class_normal_subgroups
from maxclass.subgroups import intersection, standardize, trivial_subgroup, whole_group

from conftest import cert, group, mcd


def rnd(pres, rng):
    return Element(pres, tuple(rng.randrange(pres.p) for _ in range(pres.n)))


@given(st.integers(-500, 500), st.integers(0, 3), st.integers(-500, 500), st.integers(0, 3))
def test_root_of_unity_arithmetic(a, e, c, f):
    x = RootOfUnityExponent(5, a, e)
    y = RootOfUnityExponent(5, c, f)
    assert 0 <= x.numerator < x.order()
    assert x.log_denominator == 0 or x.numerator % 5
    assert (x + y).as_fraction() == (x.as_fraction() + y.as_fraction()) % 1
    assert (x - y) + y == x
    assert x + (-x) == RootOfUnityExponent.zero(5)
    assert (x * 5).log_denominator == max(x.log_denominator - 1, 0)


def E_normal():
    E = group("extraspecial_5_3")
    return E, standardize([E.gen(2), E.gen(3)], E)


def test_linear_character_counts():
    E, N = E_normal()
    assert len(list(linear_characters(trivial_subgroup(E)))) == 1
    assert len(list(linear_characters(N))) == 25
    G3 = mcd("example1").G(3)
    assert sum(1 for _ in linear_characters(G3)) == 5**5


@pytest.mark.parametrize("name", ["extraspecial_5_3", "wreath_5", "example1"])
def test_linear_characters_are_homomorphisms(name):
    pres = group(name)
    m = mcd(name)
    rng = random.Random(name)
    for N in [m.G(1), m.G(2), m.G(3)]:
        ab_chars = list(itertools.islice(linear_characters(N), 0, None, 97))[:8]
        for lam in ab_chars:
            for _ in range(10):
                x = Element(pres, N.element_from_exponents([rng.randrange(pres.p) for _ in N.igs]))
                y = Element(pres, N.element_from_exponents([rng.randrange(pres.p) for _ in N.igs]))
                assert lam.value(x * y) == lam.value(x) + lam.value(y)
            assert lam.is_trivial() == all(lam.value(h).is_zero() for h in N.igs)


def test_conjugation_in_E():
    E, N = E_normal()
    g1, g2, g3 = E.gens
    lam = next(l for l in linear_characters(N) if l.value(g2).is_zero() and not l.value(g3).is_zero())
    mu = conjugate_character(lam, g1)
    # lambda^g(x) = lambda(g x g^-1); with g2^g1 = g2 g3 the value at g2 moves
    assert mu.value(g2) == lam.value(g1 * g2 * g1.inverse())
    assert mu.value(g2) != lam.value(g2)
    orbit, index = orbit_and_inertia(lam)
    assert index == 5 == len(orbit)
    triv = character_from_dual(N, (0,) * len(lam.dual))
    assert orbit_and_inertia(triv)[1] == 1
    for g in E.gens:
        assert conjugate_character(triv, g) == triv


@pytest.mark.parametrize("name", ["wreath_5", "example1"])
def test_conjugation_is_a_right_action(name):
    pres = group(name)
    m = mcd(name)
    rng = random.Random(3)
    N = m.G(2)
    chars = list(itertools.islice(linear_characters(N), 1, None, 211))[:6]
    for lam in chars:
        for _ in range(4):
            g, h = rnd(pres, rng), rnd(pres, rng)
            assert conjugate_character(conjugate_character(lam, g), h) == conjugate_character(lam, g * h)
            x = Element(pres, N.element_from_exponents([rng.randrange(pres.p) for _ in N.igs]))
            assert conjugate_character(lam, g).value(x) == lam.value(g * x * g.inverse())


def test_central_domain_is_fixed():
    m = mcd("example1")
    Z = m.center
    for lam in linear_characters(Z):
        for g in m.group.gens:
            assert conjugate_character(lam, g) == lam


def test_conjugation_needs_normal_domain():
    E = group("extraspecial_5_3")
    H = standardize([E.gen(1)], E)
    lam = next(l for l in linear_characters(H) if not l.is_trivial())
    with pytest.raises(PresentationError):
        conjugate_character(lam, E.gen(2))


@pytest.mark.parametrize("name", ["extraspecial_5_3", "wreath_5_mod_G5"])
def test_character_kernel_by_enumeration(name):
    m = mcd(name)
    for N in [m.G(1), m.G(2)]:
        for lam in itertools.islice(linear_characters(N), 0, None, 7):
            K = character_kernel(lam)
            want = {x for x in N.elements() if lam.value(x).is_zero()}
            assert set(K.elements()) == want


def test_induced_kernel_in_E():
    E, N = E_normal()
    g2, g3 = E.gen(2), E.gen(3)
    lam = next(l for l in linear_characters(N) if l.value(g2).is_zero() and not l.value(g3).is_zero())
    assert character_kernel(lam) == standardize([g2], E)
    rec = make_record(lam)
    assert rec.degree == 5 and rec.orbit_size == 5
    orbit, _ = orbit_and_inertia(lam)
    K = whole_group(E)
    for mu in orbit:
        K = intersection(K, character_kernel(mu))
    assert K.is_trivial()
    assert induced_kernel(rec) == K


def test_mackey_basic():
    E, N = E_normal()
    g2, g3 = E.gen(2), E.gen(3)
    lam = next(l for l in linear_characters(N) if not l.value(g3).is_zero())
    r1 = make_record(lam)
    assert mackey_inner_product(r1, r1) == 1
    orbit, _ = orbit_and_inertia(lam)
    r2 = make_record(orbit[2])
    assert mackey_inner_product(r1, r2) == 1
    other = next(l for l in linear_characters(N) if not l.value(g3).is_zero() and l not in orbit)
    assert mackey_inner_product(r1, make_record(other)) == 0
    # a record over a different maximal subgroup agreeing on <g3>
    M = standardize([E.gen(1), g3], E)
    for mu in linear_characters(M):
        rec = make_record(mu)
        if rec is None:
            continue
        agree = mu.value(g3) == lam.value(g3)
        assert mackey_inner_product(r1, rec) == (1 if agree else 0)


def test_certificate_E():
    c = cert("extraspecial_5_3")
    assert isinstance(c.verdict, NormallyMonomial)
    assert c.linear_count == 25
    assert len(c.records) == 4
    assert c.degree_square_sum == 125
    assert cd(group("extraspecial_5_3"), c) == {1, 5}


def test_certificate_wreath():
    c = cert("wreath_5")
    assert c.normally_monomial
    assert c.degree_counts() == {1: 25, 5: 624}
    assert (5**6 - 5**2) // 5**2 == 624


def test_certificate_example1():
    G = group("example1")
    c = cert("example1")
    assert c.normally_monomial
    assert c.linear_count == 25
    assert c.degree_square_sum == 5**8
    counts = c.degree_counts()
    assert counts[125] == 20 == (5**5 // 5**3 - 5**5 // 5**4)
    assert cd(G, c) == {1, 5, 25, 125}
    assert b(G, c) == 125
    m = mcd("example1")
    G2d = m.derived(2)
    for r in c.records:
        if r.degree <= 25:
            assert G2d <= r.kernel


def test_example1_orbit_sizes_on_G3():
    m = mcd("example1")
    G3 = m.G(3)
    Z = m.center
    rng = random.Random(8)
    chars = list(linear_characters(G3))
    for lam in rng.sample(chars, 40):
        if not all(lam.value(z).is_zero() for z in Z.igs):
            assert orbit_and_inertia(lam)[1] == 125


def test_quotient_degree_sets_two_routes():
    G = group("example1")
    m = mcd("example1")
    c = cert("example1")
    assert cd_of_quotient(G, m.derived(1), c) == {1, 5} == cd_of_quotient_recertified(G, m.derived(1))
    assert cd_of_quotient(G, m.derived(2), c) == {1, 5, 25} == cd_of_quotient_recertified(G, m.derived(2))


@pytest.mark.parametrize("name", ["extraspecial_5_3", "wreath_5", "example1_mod_G1prime"])
def test_certificate_clifford_properties(name):
    c = cert(name)
    pres = group(name)
    assert c.degree_square_sum <= pres.order
    for r in c.records:
        assert r.orbit_size == r.degree == pres.order // r.source.order
        assert r.kernel.is_normal()
    recs = list(c.records)
    rng = random.Random(0)
    for _ in range(25):
        r1, r2 = rng.choice(recs), rng.choice(recs)
        assert mackey_inner_product(r1, r2) == (1 if r1 is r2 else 0)


def test_certificate_is_order_independent():
    pres = group("wreath_5_mod_G5")
    normals = maximal_class_normal_subgroups(mcd("wreath_5_mod_G5"))
    a = nm_certify(pres, normals)
    rev = nm_certify(pres, list(reversed(normals)) + normals[:2])
    assert a.to_dict() == rev.to_dict()
    assert [r.to_dict() for r in a.records] == [r.to_dict() for r in rev.records]


def test_deficit_for_cyclic_major_center():
    pres = group("cyclic_major_center_5_6")
    c = cert("cyclic_major_center_5_6")
    assert isinstance(c.verdict, Deficit)
    assert c.verdict.missing == pres.order - c.degree_square_sum > 0
    with pytest.raises(CdUndetermined):
        cd(pres, c)


def test_candidates_skip_nothing_needed():
    # the |G:N|^2 > |G| prune only drops subgroups whose records could not fit
    pres = group("extraspecial_5_3")
    for N in maximal_class_normal_subgroups(mcd("extraspecial_5_3")):
        index = pres.order // N.order
        if index * index > pres.order:
            assert candidate_records(pres, N) == []
