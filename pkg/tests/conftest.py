import numpy as np
import pytest

from qens.model import Dataset, ModelFamily, ParameterGrid


@pytest.fixture
def perceptron1d() -> ModelFamily:
    return ModelFamily("perceptron", 1)


@pytest.fixture
def sym_grid_1d() -> ParameterGrid:
    return ParameterGrid(((-1.0, 1.0), (-1.0, 1.0)), 1)


@pytest.fixture
def region_dataset() -> Dataset:
    """50 points engineered so the four models of the 1-bit symmetric
    perceptron grid score accuracies (0.5, 0.16, 0.84, 0.5).

    Regions: 8 points left of -1 labeled +1, 17 points between the
    thresholds labeled -1, 25 points right of +1 labeled +1.
    """
    x = np.concatenate([np.full(8, -2.0), np.zeros(17), np.full(25, 2.0)])[:, None]
    y = np.concatenate([np.ones(8), -np.ones(17), np.ones(25)]).astype(int)
    return Dataset(x, y)
