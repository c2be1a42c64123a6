import pytest

from tyindicators.pmg import Bicharacter
from tyindicators.tycat import TYCategory
from tyindicators.verify import (SUITES, Check, default_categories, degenerate_corpus,
                                 nondegenerate_corpus, predicted_frobenius_failures, run_suite)


def test_corpus_shape():
    nd = nondegenerate_corpus()
    assert len(nd) >= 12 and all(c.is_nondegenerate() and c.is_symmetric() for c in nd)
    assert all(not c.is_nondegenerate() for c in degenerate_corpus())
    assert len(default_categories()) == 2 * len(nd)


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes_on_corpus(suite):
    checks = run_suite(suite, kmax=3)
    assert checks and all(c.ok for c in checks), [c.line() for c in checks if not c.ok]


def test_check_line():
    c = Check("anchor")
    c.record(True)
    assert c.line() == "PASS anchor (1 instances)"
    c.record(False, "boom")
    assert c.line().startswith("FAIL anchor (2 instances)") and "boom" in c.line()


def test_predicted_failures():
    assert predicted_frobenius_failures(TYCategory(Bicharacter.cyclic(3, 1), 1)) == {2, 6}
    assert predicted_frobenius_failures(TYCategory(Bicharacter.cyclic(5, 1), 1)) == set()
    assert predicted_frobenius_failures(TYCategory(Bicharacter.sym(2), 1)) is None


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
