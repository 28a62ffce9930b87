import functools

import pytest

from maxclass._kernel import CythonCollector, PythonCollector
from maxclass.characters import certify
from maxclass.constructions import corpus_names, example1, load_corpus_group
from maxclass.series import analyze

BACKENDS = [pytest.param(PythonCollector, id="python")]
if CythonCollector is not None:
    BACKENDS.append(pytest.param(CythonCollector, id="cython"))

CORPUS = corpus_names()


@functools.lru_cache(maxsize=None)
def group(name):
    if name == "example1":
        return example1()
    return load_corpus_group(name)


@functools.lru_cache(maxsize=None)
def cert(name):
    return certify(group(name))


@functools.lru_cache(maxsize=None)
def mcd(name):
    return analyze(group(name))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def E():
    return group("extraspecial_5_3")


@pytest.fixture
def W():
    return group("wreath_5")


@pytest.fixture
def ex1():
    return group("example1")


# -- acceptance criteria summary ------------------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    num, title = mark.args
    _, ok = _CRITERIA.get(num, (title, True))
    _CRITERIA[num] = (title, ok and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
