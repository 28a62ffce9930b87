import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxclass.constructions import (
    InconsistentPresentationError,
    PresentationSyntaxError,
    PresentationWarning,
    build_example1,
    corpus_dir,
    cyclic_major_center_p6,
    example1,
    example1_model,
    example1_relation_checks,
    extraspecial_p3,
    load_presentation,
    parse_presentation,
    resolve,
    serialize_presentation,
    wreath_cpwrcp,
)
from maxclass.corpus import build_corpus
from maxclass.pc import PresentationError, consistency_check
from maxclass.series import analyze, is_maximal_class

from conftest import CORPUS, group


def test_corpus_files_match_fresh_build():
    built = build_corpus()
    assert sorted(built) == sorted(CORPUS)
    for name, pres in built.items():
        text = (corpus_dir() / f"{name}.pc").read_text(encoding="utf-8")
        assert serialize_presentation(pres) == text, name


@pytest.mark.parametrize("name", CORPUS)
def test_round_trip_byte_identical(name):
    text = (corpus_dir() / f"{name}.pc").read_text(encoding="utf-8")
    pres = parse_presentation(text)
    assert serialize_presentation(pres) == text
    assert parse_presentation(serialize_presentation(pres)).same_relations(pres)


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_groups_are_maximal_class(name):
    pres = group(name)
    assert consistency_check(pres).passed
    assert is_maximal_class(pres)


def test_example1_relations_hold():
    pres = example1()
    checks = example1_relation_checks(pres)
    assert len(checks) >= 9 + 5
    for c in checks:
        assert c.passed, c.name
    names = {c.name for c in checks}
    for k in range(1, 5):
        assert f"s{k}^(s^5) = s{k}" in names


def test_example1_build_matches_golden():
    assert build_example1().same_relations(example1())
    assert example1().order == 5**8


def test_example1_model_words():
    model, new, express = example1_model()
    # s5, s6, s7 are the iterated commutators with s
    s = new[0]
    for k in range(4, 7):
        assert model.comm(new[k], s) == new[k + 1]
    assert [express(x) for x in new] == [tuple(int(i == k) for i in range(8)) for k in range(8)]


def test_example1_derived_orders():
    m = analyze(example1())
    assert m.G1_derived.order == 25
    assert m.derived(2).order == 5
    assert m.derived(3).is_trivial()


def test_extraspecial():
    for p in (3, 5, 7):
        E = extraspecial_p3(p)
        assert E.order == p**3
        assert consistency_check(E).passed
        assert all(not any(E.collector.pow(g.exps, p)) for g in E.gens)
    with pytest.raises(PresentationError):
        extraspecial_p3(9)


def test_wreath():
    W3 = wreath_cpwrcp(3)
    assert W3.order == 81 and is_maximal_class(W3)
    W5 = wreath_cpwrcp(5)
    assert W5.order == 5**6 and is_maximal_class(W5)
    with pytest.raises(PresentationError):
        wreath_cpwrcp(7)
    assert wreath_cpwrcp(7, budget=7**8).order == 7**8


def test_cyclic_major_center():
    pres = cyclic_major_center_p6(5)
    m = analyze(pres)
    assert m.G1_derived.order == 5
    from maxclass.subgroups import center, is_cyclic

    assert is_cyclic(center(m.G(1)))
    with pytest.raises(PresentationError):
        cyclic_major_center_p6(3)


def test_defaults_and_comments():
    text = """# extraspecial, relations mostly omitted
group tiny   # trailing comment
prime 5
ngens 3
conj g2 ^ g1 = g2 g3
"""
    pres = parse_presentation(text)
    assert pres.same_relations(extraspecial_p3(5))
    assert pres.name == "tiny"


def test_reduction_warns():
    text = "prime 5\nngens 3\nconj g2 ^ g1 = g2 g3^6\npow g2 = g3^6\n"
    with pytest.warns(PresentationWarning):
        pres = parse_presentation(text)
    assert pres.conj_rhs[0, 1] == (0, 1, 1)
    assert pres.power_rhs[1] == (0, 0, 1)


def test_normal_words_do_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse_presentation(serialize_presentation(example1()))


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("prime 5\nngens 2\nfoo g1\n", 3, 1),
        ("prime 6\nngens 2\n", 1, 7),
        ("prime 5\nngens 2\npow g3 = 1\n", 3, 5),
        ("prime 5\nngens 2\nconj g1 ^ g2 = g1\n", 3, 11),
        ("prime 5\nngens 2\npow g1 = g2^x\n", 3, 10),
        ("pow g1 = 1\nprime 5\nngens 2\n", 1, 1),
        ("prime 5\nngens 3\nconj g2 ^ g1 = g3\n", 3, 1),
    ],
)
def test_syntax_errors_have_positions(text, line, col):
    with pytest.raises(PresentationSyntaxError) as err:
        parse_presentation(text)
    assert err.value.line == line
    assert err.value.col == col


def test_inconsistent_file_rejected():
    # corrupt E: g1^5 = g2 together with g2^g1 = g2 g3
    text = "prime 5\nngens 3\npow g1 = g2\nconj g2 ^ g1 = g2 g3\n"
    with pytest.raises(InconsistentPresentationError) as err:
        parse_presentation(text)
    assert "overlap" in str(err.value)
    assert parse_presentation(text, check=False).order == 125


def test_resolve(tmp_path):
    assert resolve(builtin="extraspecial:5").resolved.order == 125
    assert resolve(builtin="wreath:3").resolved.order == 81
    assert resolve(builtin="example1").resolved.order == 5**8
    assert resolve(builtin="wreath_5_mod_G4").resolved.order == 5**4
    path = tmp_path / "e.pc"
    path.write_text(serialize_presentation(extraspecial_p3(5)))
    assert resolve(file=str(path)).resolved.same_relations(extraspecial_p3(5))
    assert load_presentation(path).same_relations(extraspecial_p3(5))
    for bad in ("nosuch", "extraspecial:x"):
        with pytest.raises(PresentationError):
            resolve(builtin=bad)
    with pytest.raises(PresentationError):
        resolve()


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_round_trip_generated(a, b, c):
    # central extensions of E by the exponents of g1^5 and g2^5 in <g3>
    text = f"prime 5\nngens 3\nconj g2 ^ g1 = g2 g3^{b or 1}\n"
    if a:
        text += f"pow g1 = g3^{a}\n"
    if c:
        text += f"pow g2 = g3^{c}\n"
    pres = parse_presentation(text)
    assert parse_presentation(serialize_presentation(pres)).same_relations(pres)
