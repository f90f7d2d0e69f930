"""
Unit Tests for the Core Model

Tests Pauli algebra, the operator -> GKS -> projected-system conversions,
the validity checks and the Bloch/density-matrix map.
"""
import math

import pytest
import numpy as np


MATRIX_UNITS = [
    np.array([[1, 0], [0, 0]], dtype=complex),
    np.array([[0, 1], [0, 0]], dtype=complex),
    np.array([[0, 0], [1, 0]], dtype=complex),
    np.array([[0, 0], [0, 1]], dtype=complex),
]


class TestPauliAlgebra:
    """Test Pauli expansion and the basic identities."""

    def test_commutators_and_anticommutators(self):
        """[s_j, s_k] = 2i eps_jkl s_l and {s_j, s_k} = 2 delta_jk I."""
        from app.pipelines.lindblad.pauli import (
            IDENTITY, LEVI_CIVITA, PAULI, anticommutator, commutator,
        )

        for j in range(3):
            for k in range(3):
                expected = 2j * np.einsum("l,lab->ab", LEVI_CIVITA[j, k], PAULI)
                assert np.allclose(commutator(PAULI[j], PAULI[k]), expected, atol=1e-15)
                assert np.allclose(
                    anticommutator(PAULI[j], PAULI[k]), 2.0 * (j == k) * IDENTITY, atol=1e-15
                )

    def test_expand_basis_elements(self):
        """sigma_x -> (1,0,0), sigma_z -> (0,0,1)."""
        from app.pipelines.lindblad.pauli import SIGMA_X, SIGMA_Z, pauli_expand

        assert np.allclose(pauli_expand(SIGMA_X), [1, 0, 0])
        assert np.allclose(pauli_expand(SIGMA_Z), [0, 0, 1])

    def test_expand_lowering_operator(self):
        """[[0,0],[1,0]] = (sigma_x - i sigma_y)/2."""
        from app.pipelines.lindblad.pauli import SIGMA_MINUS, pauli_combine, pauli_expand

        c = pauli_expand(SIGMA_MINUS)

        assert np.allclose(c, [0.5, -0.5j, 0])
        assert np.allclose(pauli_combine(c), SIGMA_MINUS)

    def test_expand_rejects_trace(self):
        """Identity component is rejected."""
        from app.pipelines.lindblad.pauli import pauli_expand
        from app.utils.errors import NonTracelessError

        with pytest.raises(NonTracelessError):
            pauli_expand(np.eye(2))


class TestDomainTypes:
    """Test validation in the immutable domain types."""

    def test_lindblad_op_requires_traceless(self):
        from app.models.quantum import LindbladOp
        from app.utils.errors import NonTracelessError

        with pytest.raises(NonTracelessError):
            LindbladOp(np.array([[1, 0], [0, 0]], dtype=complex))

    def test_canonical_removes_identity(self):
        from app.models.quantum import LindbladOp

        op = LindbladOp.canonical(np.array([[2, 1], [0, 0]], dtype=complex))

        assert abs(np.trace(op.entries)) < 1e-15
        assert np.allclose(op.entries, [[1, 1], [0, -1]])

    def test_gks_rejects_negative_eigenvalue(self):
        from app.models.quantum import GksModel
        from app.utils.errors import NotPsdError

        with pytest.raises(NotPsdError, match="positive semidefinite"):
            GksModel(a=np.diag([1.0, 0.0, -0.5]))

    def test_gks_rejects_non_hermitian(self):
        from app.models.quantum import GksModel
        from app.utils.errors import NotPsdError

        a = np.eye(3, dtype=complex)
        a[0, 1] = 1j
        with pytest.raises(NotPsdError):
            GksModel(a=a)

    def test_entries_are_read_only(self, sigma_minus):
        with pytest.raises(ValueError):
            sigma_minus.entries[0, 0] = 1.0

    def test_projected_rejects_unsorted(self):
        from app.models.quantum import ProjectedSystem

        with pytest.raises(ValueError, match="sorted"):
            ProjectedSystem(a=[1.0, 2.0, 0.0], b=[0.0, 0.0, 0.0])

    def test_from_params_sorts_with_proper_frame(self):
        """Sorting a permutes the axes and keeps det(frame) = +1."""
        from app.models.quantum import ProjectedSystem

        p = ProjectedSystem.from_params([1.0, 3.0, 2.0], [0.1, 0.2, 0.3])

        assert np.allclose(p.a, [3.0, 2.0, 1.0])
        assert np.isclose(np.linalg.det(p.frame), 1.0)
        assert np.allclose(np.abs(p.b), [0.2, 0.3, 0.1])

    def test_bloch_state_outside_ball(self):
        from app.models.quantum import BlochState
        from app.utils.errors import InvalidDensityError

        with pytest.raises(InvalidDensityError):
            BlochState(n=[0.0, 0.0, 1.01])

    def test_purity(self):
        """sqrt(tr rho^2) is 1 for pure states and 1/sqrt(2) for the mixed state."""
        from app.models.quantum import BlochState

        assert BlochState(n=[0.0, 0.0, 1.0]).purity == pytest.approx(1.0)
        assert BlochState(n=[0.0, 0.0, 0.0]).purity == pytest.approx(1 / math.sqrt(2))


class TestGksFromLindblad:
    """Test the operator list -> GKS matrix conversion."""

    def test_dephasing(self, sigma_z):
        """[sigma_z] -> diag(0, 0, 2)."""
        from app.pipelines.lindblad.core_model import gks_from_lindblad

        g = gks_from_lindblad([sigma_z])

        assert np.allclose(g.a, np.diag([0, 0, 2]))

    def test_lowering(self, sigma_minus):
        """[sigma_-] -> [[1/2, i/2, 0], [-i/2, 1/2, 0], [0, 0, 0]]."""
        from app.pipelines.lindblad.core_model import gks_from_lindblad

        g = gks_from_lindblad([sigma_minus])

        expected = np.array([[0.5, 0.5j, 0], [-0.5j, 0.5, 0], [0, 0, 0]])
        assert np.allclose(g.a, expected)
        assert g.source_ops == (sigma_minus,)

    def test_empty_list(self):
        """No operators, no dissipation."""
        from app.pipelines.lindblad.core_model import gks_from_lindblad

        assert np.allclose(gks_from_lindblad([]).a, 0.0)

    def test_superoperator_equivalence(self, rng, random_ops):
        """Both dissipator forms agree on the matrix units for random operator lists."""
        from app.pipelines.lindblad.core_model import gks_from_lindblad
        from app.pipelines.lindblad.pauli import gks_dissipator, lindblad_dissipator

        for _ in range(100):
            ops = random_ops(rng, count=int(rng.integers(1, 4)))
            g = gks_from_lindblad(ops)
            for unit in MATRIX_UNITS:
                direct = lindblad_dissipator([op.entries for op in ops], unit)
                via_gks = gks_dissipator(g.a, unit)
                assert np.max(np.abs(direct - via_gks)) < 1e-10


class TestProjection:
    """Test eigen-decomposition into the six-parameter form."""

    def test_dephasing_projection(self, sigma_z):
        """diag(0,0,2) -> a = (2,0,0), b = 0; the first intrinsic axis is z."""
        from app.pipelines.lindblad.core_model import project_operators

        p = project_operators([sigma_z])

        assert np.allclose(p.a, [2, 0, 0])
        assert np.allclose(p.b, 0.0)
        assert np.allclose(p.frame[0], [0, 0, 1])

    def test_lowering_projection(self, sigma_minus):
        """[sigma_-] -> a = (1/2, 1/2, 0), b = (0, 0, -1) in the Pauli frame."""
        from app.pipelines.lindblad.core_model import project_operators

        p = project_operators([sigma_minus])

        assert np.allclose(p.a, [0.5, 0.5, 0.0])
        assert np.allclose(p.b, [0.0, 0.0, -1.0])
        assert np.allclose(p.frame, np.eye(3))

    def test_identity_is_isotropic(self):
        from app.models.quantum import GksModel
        from app.pipelines.lindblad.core_model import project_to_six_params

        p = project_to_six_params(GksModel(a=np.eye(3)))

        assert np.allclose(p.a, [1, 1, 1])
        assert np.allclose(p.b, 0.0)
        assert np.allclose(p.frame, np.eye(3))

    @pytest.mark.parametrize("alpha_plus,alpha_minus", [(1.0, 3.0), (2.5, 0.5), (4.0, 4.0)])
    def test_raising_lowering(self, alpha_plus, alpha_minus):
        """a1 = a2 = (alpha_+ + alpha_-)/2, a3 = 0, b3 = alpha_+ - alpha_-."""
        from app.pipelines.lindblad.core_model import raising_lowering_system

        p = raising_lowering_system(alpha_plus, alpha_minus)

        mean = 0.5 * (alpha_plus + alpha_minus)
        assert np.allclose(p.a, [mean, mean, 0.0])
        assert np.allclose(p.b, [0.0, 0.0, alpha_plus - alpha_minus])

    def test_frame_is_proper_rotation(self, rng, random_system):
        for _ in range(50):
            p = random_system(rng)
            assert np.allclose(p.frame @ p.frame.T, np.eye(3), atol=1e-12)
            assert np.linalg.det(p.frame) == pytest.approx(1.0)

    def test_rotation_invariance(self, rng, random_gks):
        """Rotating the Pauli frame leaves a and |b| unchanged."""
        from scipy.spatial.transform import Rotation

        from app.models.quantum import GksModel
        from app.pipelines.lindblad.core_model import project_to_six_params

        for _ in range(20):
            g = random_gks(rng)
            rot = Rotation.random(random_state=int(rng.integers(1 << 31))).as_matrix()
            rotated = GksModel(a=rot @ g.a @ rot.T)
            p, q = project_to_six_params(g), project_to_six_params(rotated)
            assert np.allclose(p.a, q.a, atol=1e-10)
            assert np.allclose(np.abs(p.b), np.abs(q.b), atol=1e-9)

    def test_to_gks_round_trip(self, rng, random_gks):
        """Rebuilt matrix in the intrinsic frame equals frame A frame^T."""
        from app.pipelines.lindblad.core_model import project_to_six_params

        for _ in range(20):
            g = random_gks(rng)
            p = project_to_six_params(g)
            assert np.allclose(p.to_gks(), p.frame @ g.a @ p.frame.T, atol=1e-10)


class TestValidity:
    """Test the inequality and the full PSD check."""

    def test_axial_parameters(self, axial_system):
        from app.pipelines.lindblad.core_model import is_physical, validate_inequality

        assert validate_inequality(axial_system)
        assert is_physical(axial_system)

    def test_generic_parameters(self, generic_system):
        from app.pipelines.lindblad.core_model import is_physical, validate_inequality

        assert validate_inequality(generic_system)
        assert is_physical(generic_system)

    def test_violation(self):
        """a = (1,1,1), b = (2.1,0,0): 2.1^2 > 4."""
        from app.models.quantum import ProjectedSystem
        from app.pipelines.lindblad.core_model import is_physical, validate_inequality

        p = ProjectedSystem(a=[1.0, 1.0, 1.0], b=[2.1, 0.0, 0.0])

        assert not validate_inequality(p)
        assert not is_physical(p)

    def test_minor_violation_passes_determinant_test(self):
        """a3 = 0 makes the determinant test vacuous; the 2x2 minor still fails."""
        from app.models.quantum import ProjectedSystem
        from app.pipelines.lindblad.core_model import is_physical, validate_inequality

        p = ProjectedSystem(a=[1.0, 1.0, 0.0], b=[0.0, 0.0, 3.0])

        assert validate_inequality(p)
        assert not is_physical(p)

    def test_random_psd_models_satisfy_inequality(self, rng, random_system):
        from app.pipelines.lindblad.core_model import is_physical, validate_inequality

        for _ in range(100):
            p = random_system(rng, scale=float(rng.uniform(0.1, 10.0)))
            assert validate_inequality(p)
            assert is_physical(p)


class TestBlochMap:
    """Test the Bloch vector <-> density matrix map."""

    def test_mixed_state(self):
        from app.models.quantum import DensityMatrix
        from app.pipelines.lindblad.core_model import bloch_from_density

        assert np.allclose(bloch_from_density(DensityMatrix(np.eye(2) / 2)).n, 0.0)

    def test_excited_state(self):
        from app.models.quantum import DensityMatrix
        from app.pipelines.lindblad.core_model import bloch_from_density

        assert np.allclose(bloch_from_density(DensityMatrix(np.diag([1.0, 0.0]))).n, [0, 0, 1])

    def test_pure_state_in_xz_plane(self):
        """n = (0.6, 0, 0.8) -> [[0.9, 0.3], [0.3, 0.1]] with eigenvalues 1 and 0."""
        from app.models.quantum import BlochState
        from app.pipelines.lindblad.core_model import bloch_from_density, density_from_bloch

        rho = density_from_bloch(BlochState(n=[0.6, 0.0, 0.8]))

        assert np.allclose(rho.entries, [[0.9, 0.3], [0.3, 0.1]])
        assert np.allclose(np.linalg.eigvalsh(rho.entries), [0.0, 1.0])
        assert np.allclose(bloch_from_density(rho).n, [0.6, 0.0, 0.8], atol=1e-12)

    def test_invalid_density(self):
        from app.models.quantum import DensityMatrix
        from app.utils.errors import InvalidDensityError

        with pytest.raises(InvalidDensityError):
            DensityMatrix(np.diag([1.5, -0.5]))


class TestDrift:
    """Test the drift Hamiltonian handling."""

    def test_drift_becomes_control_offset(self, caplog):
        from app.pipelines.lindblad.core_model import discard_drift

        with caplog.at_level("WARNING"):
            offset = discard_drift(np.array([[1.0, 0.5], [0.5, -1.0]]) + 3.0 * np.eye(2))

        assert np.allclose(offset, [0.5, 0.0, 1.0])
        assert "discarded" in caplog.text

    def test_no_drift(self):
        from app.pipelines.lindblad.core_model import discard_drift

        assert discard_drift(None) is None
