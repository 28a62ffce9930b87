import random

import pytest

from maxclass.constructions import extraspecial_p3
from maxclass.pc import Element, PcPresentation
from maxclass.series import (
    NotMaximalClassError,
    analyze,
    cij_pattern_check,
    degree_of_commutativity,
    is_maximal_class,
    lower_central_series,
    major_centralizer_crosscheck,
    major_centralizer_generators_check,
    nilpotency_class,
    power_structure_check,
    star_expansion,
    verify_star_identity,
    witness_commutator_depth_check,
)
from maxclass.subgroups import standardize, whole_group

from conftest import CORPUS, group, mcd


@pytest.mark.parametrize("name", CORPUS)
def test_series_invariants(name):
    m = mcd(name)
    p, n = m.p, m.n
    assert len(m.series) == n + 1
    for i in range(n):
        assert m.G(i).log_order == n - i
        assert m.G(i + 1) <= m.G(i)
        assert m.G(i).is_normal()
    for i in range(2, n):
        assert m.G(i) == m.lower_central[i - 1]
    assert m.G(n).is_trivial()
    for i in range(1, n):
        assert m.s_(i) in m.G(i) and m.s_(i) not in m.G(i + 1)
    assert m.s not in m.G(1)


def test_example1_structure():
    m = mcd("example1")
    assert m.n == 8
    assert nilpotency_class(whole_group(m.group)) == 7
    G = m.group
    assert m.G(1) == standardize([G.gen(k) for k in (2, 3, 4, 5)], G)
    assert m.G1_class == 2
    assert m.G1_derived.order == 25
    assert m.derived(2).order == 5
    assert m.derived(3).is_trivial()
    assert not m.major_centralizer_fallback
    assert m.s == G.gen(1)
    assert m.s_(1) == G.gen(2)


def test_wreath_structure():
    m = mcd("wreath_5")
    assert m.n == 6
    lcs = lower_central_series(m.group)
    assert len(lcs) - 1 == 5
    assert not lcs[4].is_trivial() and lcs[5].is_trivial()
    assert m.G(1).is_abelian()
    assert m.G(1) == standardize(m.group.gens[1:], m.group)
    # abelian G_1 and [G_1, G_1] = 1, so the degree of commutativity is maximal
    assert degree_of_commutativity(m) == m.n - 2


def test_extraspecial_small_case():
    m = mcd("extraspecial_5_3")
    assert m.n == 3
    assert m.major_centralizer_fallback
    assert nilpotency_class(whole_group(m.group)) == 2
    assert major_centralizer_crosscheck(m).status == "not-applicable"
    assert major_centralizer_generators_check(m).status == "not-applicable"


def test_not_maximal_class():
    abelian = PcPresentation("c5xc5", 5, 2, ((0, 0), (0, 0)), {})
    assert nilpotency_class(whole_group(abelian)) == 1
    assert not is_maximal_class(abelian)
    with pytest.raises(NotMaximalClassError):
        analyze(abelian)
    # C5 x E has order 5^4 but class 2
    prod = PcPresentation("c5xE", 5, 4, ((0,) * 4,) * 4, {(0, 1): (0, 1, 1, 0)})
    assert not is_maximal_class(prod)


@pytest.mark.parametrize("name", CORPUS)
def test_star_identity(name):
    results = verify_star_identity(mcd(name))
    assert results[0].passed, results[0].failures
    for r in results[1:]:
        assert r.status in ("pass", "not-applicable"), r


def test_star_identity_example1_pair():
    m = mcd("example1")
    assert m.C(2, 3).conj(m.s) == star_expansion(m, 2, 3)
    # class two: C_ij^s = C_ij C_{i+1,j} C_{i,j+1} C_{i+1,j+1}
    for i, j in [(1, 2), (1, 3), (2, 3), (1, 4)]:
        assert m.C(i, j).conj(m.s) == m.C(i, j) * m.C(i + 1, j) * m.C(i, j + 1) * m.C(i + 1, j + 1)


def test_example1_center_is_c14_c23():
    m = mcd("example1")
    Z = m.center
    assert Z.order == 5
    assert not m.C(1, 4).is_identity()
    assert Z == standardize([m.C(1, 4)], m.group) == standardize([m.C(2, 3)], m.group)


def test_cij_pattern():
    m = mcd("example1_mod_G2prime")
    r = cij_pattern_check(m)
    assert r.passed, r.failures
    assert r.detail == "k = 1"
    assert not m.C(1, 2).is_identity()  # i + j = 2k + 1 = 3
    assert cij_pattern_check(mcd("example1")).status == "not-applicable"
    assert cij_pattern_check(mcd("wreath_5")).status == "not-applicable"


def test_degree_of_commutativity_example1():
    assert degree_of_commutativity(mcd("example1")) >= 1


def test_major_centralizer_generators_example1():
    m = mcd("example1")
    assert major_centralizer_generators_check(m).passed
    G = m.group
    assert m.G(2) == standardize([m.s_(k) for k in (2, 3, 4, 5)], G)


def test_witness_commutator_depth_random_samples():
    m = mcd("example1")
    rng = random.Random(4)
    samples = []
    while len(samples) < 40:
        g = Element(m.group, tuple(rng.randrange(5) for _ in range(8)))
        i = next((k for k in range(1, m.n - 1) if g in m.G(k) and g not in m.G(k + 1)), None)
        if i is not None:
            samples.append((i, g))
    r = witness_commutator_depth_check(m, samples)
    assert r.passed, r.failures


def test_power_structure_example1():
    r = power_structure_check(mcd("example1"))
    assert r.passed, r.failures


def test_extraspecial_p3_other_primes():
    for p in (2, 3, 7):
        m = analyze(extraspecial_p3(p))
        assert m.n == 3
