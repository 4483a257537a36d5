from pathlib import Path

import pytest

from adjclose.ingest import parse_price_csv

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def shy_history():
    """The December-2007 SHY fixture: 21 bars, one 0.2794 dividend."""
    history, warnings = parse_price_csv((DATA / "shy_dec2007.csv").read_bytes(), symbol="SHY")
    assert warnings == []
    return history
