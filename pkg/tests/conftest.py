import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from miniweave.ham.corpus import ham_corpus_files, weave_ham  # noqa: E402

# filled in by test_acceptance; printed once at the end of the run
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def ham_run1():
    return weave_ham()


@pytest.fixture(scope="session")
def ham_files():
    return ham_corpus_files()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}")
