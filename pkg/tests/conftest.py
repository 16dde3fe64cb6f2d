import os
import sys

import numpy as np
import pytest

# Add src directory to path so we can import our modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from models import RunConfig  # noqa: E402


@pytest.fixture
def rng():
    """A fixed generator so every test sees the same random matrices"""
    return np.random.default_rng(20240611)


@pytest.fixture
def cgauss(rng):
    """Draw standard complex Gaussian arrays of a given shape"""
    def draw(*shape):
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return draw


@pytest.fixture
def small_config():
    """A quick single-threaded run configuration"""
    return RunConfig(trials=3, master_seed=7, threads=1)


@pytest.fixture
def nilpotent():
    return np.array([[0, 1], [0, 0]], dtype=complex)


@pytest.fixture
def matrix_file(tmp_path):
    """Write a matrix JSON file and return its path"""
    import json

    def write(A, name="matrix.json"):
        A = np.asarray(A, dtype=complex)
        path = tmp_path / name
        path.write_text(json.dumps({"rows": A.shape[0], "cols": A.shape[1],
                                    "re": A.real.ravel().tolist(), "im": A.imag.ravel().tolist()}))
        return str(path)
    return write


@pytest.fixture
def log_file(tmp_path):
    return str(tmp_path / "radius_bounds.log")
