import pytest

from wordassoc.words import Alphabet, word


@pytest.fixture
def ab():
    return Alphabet(("a", "b"))


@pytest.fixture
def abc():
    return Alphabet(("a", "b", "c"))


@pytest.fixture
def num():
    return Alphabet((), ("0", "1"))


@pytest.fixture
def abvc():
    # indexer needs the output tokens v and c; only a is a vowel
    return Alphabet(("a", "b", "v", "c"), vowel_set={"a"})


@pytest.fixture
def w():
    return word


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
