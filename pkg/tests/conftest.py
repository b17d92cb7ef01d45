import sys
from pathlib import Path

import numpy as np
import pytest

from pivotnet.cli import scenario_a_path
from pivotnet.ingest import ParticipationMatrix, load_csv

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def scenario_a_csv() -> Path:
    return scenario_a_path()


@pytest.fixture(scope="session")
def scenario_a_matrix(scenario_a_csv) -> ParticipationMatrix:
    return load_csv(scenario_a_csv)


def random_matrix(rng: np.random.Generator, r: int, k: int,
                  max_value: int = 10) -> ParticipationMatrix:
    """Random integer participation matrix with a good share of zeros."""
    values = rng.integers(0, max_value + 1, size=(r, k)).astype(float)
    mask = rng.random((r, k)) < 0.35
    values[mask] = 0.0
    return ParticipationMatrix(
        actor_ids=tuple(f"a{i + 1}" for i in range(r)),
        event_ids=tuple(f"e{j + 1}" for j in range(k)),
        values=values,
    )
