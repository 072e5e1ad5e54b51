import numpy as np
import pytest

from topobell.dirac import (
    AbFieldConfig, AcFieldConfig, PlanarDiracConfig,
    ab_eigenpairs, ac_eigenpairs, alpha_matrices, analytic_eigenstates, e_tilde_from_e, free_hamiltonian, h_ab, h_ac,
)
from topobell.spinor import SIGMA_Y, eig_hermitian_2x2, equal_up_to_global_phase, is_hermitian

PLUS, MINUS = PlanarDiracConfig(1), PlanarDiracConfig(-1)


@pytest.mark.parametrize("cfg", [PLUS, MINUS])
def test_clifford_algebra(cfg):
    mats = alpha_matrices(cfg)
    for i, a in enumerate(mats):
        assert is_hermitian(a)
        np.testing.assert_allclose(a @ a.conj().T, np.eye(2), atol=1e-12)
        for j, b in enumerate(mats):
            anti = a @ b + b @ a
            np.testing.assert_allclose(anti, 2 * np.eye(2) * (i == j), atol=1e-12)


def test_alpha_y_sign():
    np.testing.assert_array_equal(alpha_matrices(PLUS)[1], SIGMA_Y)
    np.testing.assert_array_equal(alpha_matrices(MINUS)[1], -SIGMA_Y)


def test_config_validation():
    with pytest.raises(ValueError):
        PlanarDiracConfig(0)
    with pytest.raises(ValueError):
        AbFieldConfig(A_mag=-1)
    with pytest.raises(ValueError):
        AcFieldConfig(E_mag=-0.5)


def test_free_hamiltonian_spectrum():
    h = free_hamiltonian(0.3, -0.4, PlanarDiracConfig(1, m=1.2))
    np.testing.assert_allclose(np.linalg.eigvalsh(h), [-1.3, 1.3], atol=1e-12)


def test_h_ab_unit_field():
    vals = [p[0] for p in eig_hermitian_2x2(h_ab(AbFieldConfig(A_mag=1, theta=0, e_charge=1)))]
    np.testing.assert_allclose(vals, [1, -1], atol=1e-12)


def test_h_ab_zero_field():
    np.testing.assert_array_equal(h_ab(AbFieldConfig(A_mag=0, theta=1.1, e_charge=3)), np.zeros((2, 2)))


def test_h_ab_derived_example():
    h = h_ab(AbFieldConfig(A_mag=2, theta=np.pi / 3, e_charge=0.5))
    np.testing.assert_allclose(np.linalg.eigvalsh(h), [-1, 1], atol=1e-12)
    np.testing.assert_allclose([p[0] for p in eig_hermitian_2x2(h)], [1, -1], atol=1e-12)


def test_h_ac_examples():
    h = h_ac(AcFieldConfig(E_mag=1, theta=0, mu=1), PLUS)
    np.testing.assert_allclose([p[0] for p in eig_hermitian_2x2(h)], [1, -1], atol=1e-12)
    np.testing.assert_array_equal(h_ac(AcFieldConfig(E_mag=1, mu=0), PLUS), np.zeros((2, 2)))


def test_h_ac_s_flip_same_spectrum_different_vectors():
    f = AcFieldConfig(E_mag=1, theta=np.pi / 4, mu=1)
    p_plus = eig_hermitian_2x2(h_ac(f, PLUS))
    p_minus = eig_hermitian_2x2(h_ac(f, MINUS))
    np.testing.assert_allclose([p[0] for p in p_plus], [p[0] for p in p_minus], atol=1e-12)
    for (_, u), (_, v) in zip(p_plus, p_minus):
        assert not equal_up_to_global_phase(u, v, 1e-6)


def test_e_tilde():
    assert e_tilde_from_e(1, 0) == (0.0, -1.0)
    assert e_tilde_from_e(0, 0) == (0.0, -0.0)
    assert e_tilde_from_e(3, 4) == (4.0, -3.0)
    assert np.hypot(*e_tilde_from_e(3, 4)) == 5.0


def test_e_tilde_rotation(rng):
    for ex, ey in rng.normal(size=(1000, 2)) * 10:
        tx, ty = e_tilde_from_e(ex, ey)
        assert abs(ex * tx + ey * ty) <= 1e-12
        assert abs(np.hypot(tx, ty) - np.hypot(ex, ey)) <= 1e-12


def test_ac_config_from_field():
    f = AcFieldConfig.from_field(0.0, 2.0, mu=0.5)
    assert f.E_mag == pytest.approx(2.0)
    assert f.theta == pytest.approx(0.0)


def test_analytic_eigenstates():
    up, down = analytic_eigenstates(0.0)
    np.testing.assert_allclose(up, np.array([-1, 1]) / np.sqrt(2))
    for theta in np.linspace(-7, 7, 57):
        up, down = analytic_eigenstates(theta)
        assert abs(np.vdot(up, down)) <= 1e-15
        assert abs(np.linalg.norm(up) - 1) <= 1e-15
    up, _ = analytic_eigenstates(np.pi / 2)
    assert equal_up_to_global_phase(up, np.array([1j, 1]) / np.sqrt(2), 1e-12)


def test_eigenvalue_pairing_by_direct_substitution():
    # Multiplying the matrix into the analytic state: up carries +eA for s=+1.
    f = AbFieldConfig(A_mag=1.5, theta=0.7, e_charge=2.0)
    up, down = analytic_eigenstates(0.7)
    h = h_ab(f)
    np.testing.assert_allclose(h @ up, 3.0 * up, atol=1e-12)
    np.testing.assert_allclose(h @ down, -3.0 * down, atol=1e-12)


def _check_pairs(h, analytic, tol_val=1e-12, tol_fid=1e-10):
    numeric = eig_hermitian_2x2(h)
    for (lam, v), (alam, av, _) in zip(numeric, analytic):
        assert abs(lam - alam) <= tol_val
        assert equal_up_to_global_phase(v, av, tol_fid)


def test_ab_eigenvectors_random(rng):
    for a, th, e in zip(rng.uniform(0.01, 5, 10_000), rng.uniform(-2 * np.pi, 2 * np.pi, 10_000),
                        rng.uniform(-3, 3, 10_000)):
        if abs(e * a) < 1e-6:
            continue
        f = AbFieldConfig(A_mag=a, theta=th, e_charge=e)
        _check_pairs(h_ab(f), ab_eigenpairs(f))


def test_ac_eigenvectors_random_both_reps(rng):
    for k in range(4000):
        s = 1 if k % 2 else -1
        f = AcFieldConfig(E_mag=rng.uniform(0.01, 5), theta=rng.uniform(-7, 7), mu=rng.uniform(0.05, 3))
        cfg = PlanarDiracConfig(s)
        _check_pairs(h_ac(f, cfg), ac_eigenpairs(f, cfg))


def test_ac_s_flip_swaps_assignment():
    f = AcFieldConfig(E_mag=1, theta=0.0, mu=1)
    assert ac_eigenpairs(f, PLUS)[0][2] == "up"
    assert ac_eigenpairs(f, MINUS)[0][2] == "down"
