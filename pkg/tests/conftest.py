"""
Pytest Configuration and Shared Fixtures

This file is automatically loaded by pytest and provides fixtures
that are available to all tests in the test suite.
"""
import json
import math

import pytest
import numpy as np


# ============================================================================
# Canonical Projected Systems
# ============================================================================

@pytest.fixture(scope="session")
def axial_system():
    """a1 = a2 = 10, a3 = 0, b = (0, 0, 12): closed-form envelope, r_T = 0.6."""
    from app.models.quantum import ProjectedSystem
    return ProjectedSystem(a=[10.0, 10.0, 0.0], b=[0.0, 0.0, 12.0])


@pytest.fixture(scope="session")
def generic_system():
    """Fully anisotropic system with all three b components nonzero."""
    from app.models.quantum import ProjectedSystem
    return ProjectedSystem(
        a=[10.0, 5.0, 0.3],
        b=[0.15 * math.sqrt(0.6), 0.9, 3.0 * math.sqrt(6.0)],
    )


@pytest.fixture(scope="session")
def isotropic_system():
    from app.models.quantum import ProjectedSystem
    return ProjectedSystem(a=[1.0, 1.0, 1.0], b=[0.0, 0.0, 0.0])


@pytest.fixture(scope="session")
def unbiased_system():
    """b = 0 with distinct a: the rate is bounded by -r(a1+a2) and -r(a2+a3)."""
    from app.models.quantum import ProjectedSystem
    return ProjectedSystem(a=[3.0, 2.0, 1.0], b=[0.0, 0.0, 0.0])


@pytest.fixture(scope="session")
def zero_system():
    from app.models.quantum import ProjectedSystem
    return ProjectedSystem(a=[0.0, 0.0, 0.0], b=[0.0, 0.0, 0.0])


# ============================================================================
# Canonical Lindblad Operators
# ============================================================================

@pytest.fixture(scope="session")
def sigma_minus():
    """Lowering operator [[0,0],[1,0]]: maps (1,0) to (0,1)."""
    from app.models.quantum import LindbladOp
    return LindbladOp(np.array([[0, 0], [1, 0]], dtype=complex))


@pytest.fixture(scope="session")
def sigma_plus():
    from app.models.quantum import LindbladOp
    return LindbladOp(np.array([[0, 1], [0, 0]], dtype=complex))


@pytest.fixture(scope="session")
def sigma_z():
    from app.models.quantum import LindbladOp
    return LindbladOp(np.array([[1, 0], [0, -1]], dtype=complex))


@pytest.fixture(scope="session")
def sigma_x():
    from app.models.quantum import LindbladOp
    return LindbladOp(np.array([[0, 1], [1, 0]], dtype=complex))


# ============================================================================
# Random Model Factories (seeded for reproducibility)
# ============================================================================

@pytest.fixture
def rng():
    """Deterministic generator; every test gets a fresh one."""
    return np.random.default_rng(20261019)


@pytest.fixture
def random_gks():
    """Factory: random PSD GKS model A = M M^dagger with eigenvalues of order `scale`."""
    from app.models.quantum import GksModel

    def make(rng, scale=1.0, rank=3):
        m = rng.normal(size=(3, rank)) + 1j * rng.normal(size=(3, rank))
        a = scale * (m @ m.conj().T) / rank
        return GksModel(a=0.5 * (a + a.conj().T))

    return make


@pytest.fixture
def random_system(random_gks):
    """Factory: projected system of a random PSD GKS model."""
    from app.pipelines.lindblad.core_model import project_to_six_params

    def make(rng, scale=1.0, rank=3):
        return project_to_six_params(random_gks(rng, scale=scale, rank=rank))

    return make


@pytest.fixture
def random_ops():
    """Factory: list of random traceless 2x2 operators."""
    from app.models.quantum import LindbladOp

    def make(rng, count=2):
        ops = []
        for _ in range(count):
            m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            ops.append(LindbladOp.canonical(m))
        return ops

    return make


# ============================================================================
# Model Files
# ============================================================================

def _pairs(matrix):
    return [[[float(np.real(z)), float(np.imag(z))] for z in row] for row in np.asarray(matrix)]


@pytest.fixture
def write_model(tmp_path):
    """Factory: write a model-file dict to tmp_path and return its path as str."""
    counter = {"n": 0}

    def write(payload, name=None):
        counter["n"] += 1
        path = tmp_path / (name or f"model_{counter['n']}.json")
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def as_pairs():
    """Convert a complex matrix to the model-file [re, im] layout."""
    return _pairs
