"""The eleven acceptance criteria at full scale, one pass/fail line each."""

import pytest

import conftest
from usq.acceptance import Acceptance


@pytest.fixture(scope="module")
def suite():
    return Acceptance(scale=1.0)


@pytest.mark.parametrize("k", sorted(Acceptance.NAMES))
def test_criterion(suite, k):
    outcome = suite.run(k)
    line = outcome.line()
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert outcome.ok, line
