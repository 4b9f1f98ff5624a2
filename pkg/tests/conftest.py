from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "weierstrass_invariants" / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def fixtures():
    return FIXTURES
