import sys
from pathlib import Path

import pytest

# Make the shared oracles importable regardless of how pytest is invoked.
sys.path.insert(0, str(Path(__file__).parent))

from stategeom import config


@pytest.fixture(autouse=True)
def _reset_tolerance_scale():
    """Keep the global tolerance multiplier at 1 between tests."""
    config.set_tolerance_scale(1.0)
    yield
    config.set_tolerance_scale(1.0)
