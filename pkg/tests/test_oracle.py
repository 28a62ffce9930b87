from fractions import Fraction

import pytest

from maxclass import oracle
from maxclass.constructions import extraspecial_p3, parse_presentation
from maxclass.oracle import (
    conjugacy_classes,
    count_elements,
    crosscheck,
    enumerate_elements,
    induced_character_values,
    normal_subgroups_bruteforce,
    value_inner_product,
)
from maxclass.results import FAIL, NOT_APPLICABLE, PASS, SKIPPED
from maxclass.series import analyze, maximal_class_normal_subgroups
from maxclass.subgroups import UnsupportedError

from conftest import CORPUS, cert, group

SMALL = [n for n in CORPUS if group(n).order <= 5**6]


@pytest.mark.parametrize("name", CORPUS)
def test_element_count(name):
    pres = group(name)
    assert count_elements(pres) == pres.order


def test_enumerate_elements_small(E):
    elems = enumerate_elements(E)
    assert len(elems) == 125
    assert all(x * y in elems for x in list(elems)[:10] for y in elems)


def test_element_budget(ex1):
    with pytest.raises(UnsupportedError):
        count_elements(ex1, cap=5**7)


@pytest.mark.parametrize("name", SMALL)
def test_class_equation(name):
    pres = group(name)
    classes = conjugacy_classes(pres)
    assert sum(classes.sizes) == pres.order
    assert all(pres.order % s == 0 for s in classes.sizes)
    elems = enumerate_elements(pres)
    step = max(1, len(classes) // 6)
    for rep, size in list(zip(classes.representatives, classes.sizes))[::step]:
        orbit = {(g.inverse() * rep * g).exps for g in elems}
        assert len(orbit) == size
        assert min(orbit) == rep.exps


@pytest.mark.parametrize("p", [3, 5, 7])
def test_extraspecial_class_count(p):
    # p central singletons plus (p^3 - p)/p classes of size p
    classes = conjugacy_classes(extraspecial_p3(p))
    assert len(classes) == p**2 + p - 1


@pytest.mark.parametrize("name", SMALL)
def test_value_at_identity_is_degree(name):
    pres = group(name)
    classes = conjugacy_classes(pres)
    one = classes.index(pres.identity)
    for rec in list(cert(name).records)[:10]:
        vals = induced_character_values(rec, classes)[one]
        assert sum(vals.values()) == rec.degree
        assert all(r.numerator == 0 for r in vals)


def test_value_norms_on_E(E):
    classes = conjugacy_classes(E)
    recs = list(cert("extraspecial_5_3").records)
    vals = [induced_character_values(r, classes) for r in recs]
    for i in range(len(recs)):
        for j in range(len(recs)):
            assert value_inner_product(vals[i], vals[j], classes) == Fraction(int(i == j))


def test_abelian_classes_are_singletons():
    classes = conjugacy_classes(parse_presentation("prime 5\nngens 3\n"))
    assert len(classes) == 125 and set(classes.sizes) == {1}


def test_values_vanish_off_conjugates_of_source(E):
    classes = conjugacy_classes(E)
    for rec in cert("extraspecial_5_3").records:
        for rep, vals in zip(classes.representatives, induced_character_values(rec, classes)):
            if rep.exps not in rec.source:  # N is normal
                assert not vals


def test_normal_subgroups_of_E(E):
    # 1, the centre, six maximal subgroups and E
    assert len(normal_subgroups_bruteforce(E)) == 9


def test_normal_subgroups_of_elementary_abelian():
    C5xC5 = parse_presentation("prime 5\nngens 2\n")
    # trivial, six lines, whole group
    assert len(normal_subgroups_bruteforce(C5xC5)) == 8


@pytest.mark.parametrize("name", [n for n in CORPUS if group(n).order <= 5**5])
def test_normal_subgroups_shortcut(name):
    pres = group(name)
    brute = {H.vectors for H in normal_subgroups_bruteforce(pres)}
    short = {H.vectors for H in maximal_class_normal_subgroups(analyze(pres))}
    assert brute == short
    for H in normal_subgroups_bruteforce(pres):
        assert H.is_normal()


@pytest.mark.parametrize("name", CORPUS)
def test_crosscheck(name):
    results = {r.id: r for r in crosscheck(group(name), cert(name), pairs=20)}
    assert set(results) == {"oracle-class-count", "oracle-mackey-values", "oracle-normal-subgroups"}
    assert all(r.status != FAIL for r in results.values()), [r.detail for r in results.values()]
    assert results["oracle-class-count"].status == PASS
    pres = group(name)
    if pres.order <= 5**6:
        assert results["oracle-mackey-values"].status == PASS
    if pres.order > 5**5:
        r = results["oracle-normal-subgroups"]
        assert r.status == SKIPPED and r.detail.startswith("skipped by budget")


def test_crosscheck_deficit_counts():
    name = "cyclic_major_center_5_6"
    c = cert(name)
    assert not c.normally_monomial
    assert len(conjugacy_classes(group(name))) > c.character_count


def test_crosscheck_budget_skip(monkeypatch, E):
    monkeypatch.setattr(oracle.BUDGETS, "elements", 100)
    results = crosscheck(E)
    assert [r.status for r in results[:2]] == [SKIPPED, SKIPPED]


def test_crosscheck_not_maximal_class():
    C5xC5 = parse_presentation("prime 5\nngens 2\n")
    res = {r.id: r for r in crosscheck(C5xC5)}
    assert res["oracle-class-count"].status == PASS
    assert res["oracle-normal-subgroups"].status == NOT_APPLICABLE
