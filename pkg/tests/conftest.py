import json
from pathlib import Path

import pytest

from rockeropt.model import DesignVector, ScenarioParams, default_bounds

FIXTURES = Path(__file__).parent / "fixtures"
REPO = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def golden() -> dict[str, float]:
    raw = json.loads((FIXTURES / "golden.json").read_text())
    return {k: float(v) for k, v in raw.items()}


@pytest.fixture
def scenario() -> ScenarioParams:
    return ScenarioParams()


@pytest.fixture
def mean_design() -> DesignVector:
    b = default_bounds()
    return DesignVector(*((lo + hi) / 2 for lo, hi in zip(b.lower, b.upper)))
