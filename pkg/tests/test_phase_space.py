import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgrt.geometry import (
    CB,
    Sloped,
    apg_common_dapg_point,
    apg_lines,
    dapg_lines,
    dapg_points,
    line_points,
    lines_through_point,
)
from fgrt.operators import line_operator, point_operator
from fgrt.phase_space import (
    DimensionMismatch,
    NotADensityOperator,
    ProbabilityTable,
    QuasiDist,
    UnnormalizedTable,
    apg_quasi,
    apg_radon_table,
    check_density,
    overlap_via_quasi,
    project_psd,
    quasi_dist,
    quasi_values,
    radon_forward,
    radon_inverse,
    radon_transform,
    reconstruct_state,
    state_from_quasi,
)
from fgrt.tomography_sim import random_mixed, random_pure

TOL = 1e-10


def random_hermitian(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def ket0(d):
    rho = np.zeros((d, d), complex)
    rho[0, 0] = 1
    return rho


def quasi_oracle(rho):
    d = rho.shape[0]
    return np.array([np.trace(rho @ line_operator(d, j)) for j in dapg_lines(d)])


def table_oracle(rho):
    d = rho.shape[0]
    return np.array([[np.trace(rho @ point_operator(d, (m, b))).real for m in range(d)]
                     for b in range(CB, d)])


def test_quasi_maximally_mixed():
    v = quasi_dist(np.eye(3) / 3)
    assert np.allclose(v.values, 1 / 3, atol=TOL)


def test_quasi_ket0():
    v = quasi_dist(ket0(3))
    for j in dapg_lines(3):
        assert abs(v[j] - (j.m_minus1 == 0)) <= TOL


@settings(max_examples=30)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 2**32 - 1))
def test_quasi_matches_trace_oracle(d, seed):
    rho = random_mixed(d, d, seed)
    v = quasi_dist(rho)
    ref = quasi_oracle(rho)
    assert np.max(np.abs(ref.imag)) <= TOL
    assert np.max(np.abs(v.values - ref.real)) <= TOL
    assert abs(v.values.sum() / d - 1) <= TOL


def test_quasi_normalised_random_pure_d5():
    for seed in range(10):
        v = quasi_dist(random_pure(5, seed))
        assert abs(v.values.sum() / 5 - 1) <= TOL


def test_state_from_quasi_examples():
    assert np.allclose(state_from_quasi(QuasiDist(3, np.full(9, 1 / 3))), np.eye(3) / 3, atol=TOL)
    assert np.max(np.abs(state_from_quasi(quasi_dist(ket0(3))) - ket0(3))) <= TOL
    with pytest.raises(DimensionMismatch):
        QuasiDist(3, np.zeros(8))


def test_state_from_quasi_roundtrip_d7():
    worst = max(
        np.max(np.abs(state_from_quasi(quasi_dist(rho)) - rho))
        for rho in (random_mixed(7, 1 + s % 7, s) for s in range(50))
    )
    assert worst <= TOL


def test_radon_forward_examples():
    assert np.allclose(radon_forward(np.eye(3) / 3).probs, 1 / 3, atol=TOL)
    p = radon_forward(ket0(3))
    assert np.allclose(p.row(CB), [1, 0, 0], atol=TOL)
    assert np.allclose(p.probs[1:], 1 / 3, atol=TOL)


@pytest.mark.parametrize("seed", range(5))
def test_radon_forward_two_paths(seed):
    rho = random_mixed(5, 3, seed)
    direct = radon_forward(rho)
    via_lines = radon_transform(quasi_dist(rho))
    assert np.max(np.abs(direct.probs - via_lines.probs)) <= TOL
    assert np.max(np.abs(direct.probs - table_oracle(rho))) <= TOL
    assert np.allclose(direct.probs.sum(axis=1), 1, atol=TOL)
    # the line sum written out point by point
    v = quasi_dist(rho)
    for a in dapg_points(5):
        assert abs(sum(v[j] for j in lines_through_point(5, a)) / 5 - direct[a]) <= TOL


def test_radon_inverse_examples():
    v = radon_inverse(ProbabilityTable(3, np.full((4, 3), 1 / 3)))
    assert np.allclose(v.values, 1 / 3, atol=TOL)
    v = radon_inverse(radon_forward(ket0(3)))
    for j in dapg_lines(3):
        assert abs(v[j] - (j.m_minus1 == 0)) <= TOL


def test_radon_inverse_point_sum_oracle():
    rho = random_mixed(5, 2, 11)
    p = radon_forward(rho)
    v = radon_inverse(p)
    for j in dapg_lines(5):
        assert abs(v[j] - (sum(p[a] for a in line_points(5, j)) - 1)) <= TOL


def test_radon_inverse_roundtrip_d7():
    worst = 0.0
    for seed in range(50):
        rho = random_mixed(7, 1 + seed % 7, seed)
        worst = max(worst, np.max(np.abs(radon_inverse(radon_forward(rho)).values - quasi_dist(rho).values)))
    assert worst <= TOL


def test_radon_inverse_errors():
    bad = np.full((4, 3), 1 / 3)
    bad[2, 0] += 1e-3
    with pytest.raises(UnnormalizedTable):
        radon_inverse(ProbabilityTable(3, bad))
    radon_inverse(ProbabilityTable(3, bad), tol=1e-2)
    with pytest.raises(DimensionMismatch):
        ProbabilityTable(3, np.full((3, 3), 1 / 3))


def test_reconstruct_state_exact():
    rec = reconstruct_state(radon_forward(np.eye(3) / 3))
    assert np.max(np.abs(rec.rho - np.eye(3) / 3)) <= TOL
    for seed in range(10):
        rho = random_pure(5, seed)
        rec = reconstruct_state(radon_forward(rho))
        psi = np.linalg.eigh(rho)[1][:, -1]
        assert np.vdot(psi, rec.rho @ psi).real >= 1 - TOL
        assert rec.is_psd


def test_reconstruct_state_flags_negative_eigenvalues():
    # a noisy table that no state can produce
    p = radon_forward(random_pure(3, 0)).probs.copy()
    p[0] = [1, 0, 0]
    p[1] = [0, 1, 0]
    rec = reconstruct_state(ProbabilityTable(3, p))
    assert abs(np.trace(rec.rho) - 1) <= TOL
    assert np.max(np.abs(rec.rho - rec.rho.conj().T)) <= TOL
    assert rec.min_eigenvalue < 0 and not rec.is_psd
    projected = reconstruct_state(ProbabilityTable(3, p), project=True)
    assert projected.projected
    assert np.linalg.eigvalsh(projected.rho)[0] >= -TOL
    assert abs(np.trace(projected.rho) - 1) <= TOL


def test_reconstruction_is_affine():
    rng = np.random.default_rng(7)
    base = radon_forward(random_mixed(5, 5, 3))
    deltas = []
    for _ in range(2):
        delta = rng.standard_normal((6, 5))
        deltas.append(delta - delta.mean(axis=1, keepdims=True))
    rho0 = reconstruct_state(base).rho

    def shifted(delta, scale):
        return reconstruct_state(ProbabilityTable(5, base.probs + scale * delta), tol=1).rho - rho0

    for delta in deltas:
        assert np.max(np.abs(shifted(delta, 0.02) - 2 * shifted(delta, 0.01))) <= TOL
    combined = shifted(deltas[0] + deltas[1], 0.01)
    assert np.max(np.abs(combined - shifted(deltas[0], 0.01) - shifted(deltas[1], 0.01))) <= TOL


def test_overlap_examples():
    assert abs(overlap_via_quasi(np.eye(3), np.eye(3)) - 3) <= TOL
    assert abs(overlap_via_quasi(point_operator(3, (2, 0)), line_operator(3, (1, 2))) - 1) <= TOL
    with pytest.raises(DimensionMismatch):
        overlap_via_quasi(np.eye(3), np.eye(5))


@pytest.mark.parametrize("d", [3, 5])
def test_quasi_attributes_random_hermitian(d):
    rng = np.random.default_rng(d)
    for _ in range(20):
        a, b = random_hermitian(d, rng), random_hermitian(d, rng)
        va = quasi_values(a)
        assert np.max(np.abs(va.imag)) <= TOL
        assert abs(va.sum() / d - np.trace(a)) <= TOL
        assert abs(quasi_values(a @ b).sum() / d - np.trace(a @ b)) <= TOL
        assert abs(overlap_via_quasi(a, b) - np.trace(a @ b)) <= TOL


def test_apg_quasi_examples():
    v = apg_quasi(np.eye(3) / 3)
    for lam in apg_lines(3):
        assert abs(v.apg_radon(lam) - 1 / 3) <= TOL
    rho = random_mixed(3, 3, 5)
    v = apg_quasi(rho)
    assert abs(v.apg_radon(Sloped(1, 1)) - np.trace(rho @ point_operator(3, (0, 2))).real) <= TOL
    assert v.apg(1, 2) == v[(1, 2)]


@pytest.mark.parametrize("d", [3, 5, 7])
def test_apg_radon_reproduces_table(d):
    rho = random_mixed(d, 2, d)
    p = radon_forward(rho)
    sums = apg_radon_table(apg_quasi(rho))
    assert len(sums) == d * (d + 1)
    seen = set()
    for lam, value in sums.items():
        alpha = apg_common_dapg_point(d, lam)
        seen.add(alpha)
        assert abs(value - p[alpha]) <= TOL
    assert len(seen) == d * (d + 1)


def test_check_density_rejects():
    with pytest.raises(NotADensityOperator):
        check_density(np.eye(3))
    with pytest.raises(NotADensityOperator):
        check_density(np.diag([1.5, -0.5, 0]))
    with pytest.raises(DimensionMismatch):
        check_density(np.ones((3, 2)))


def test_project_psd():
    rho = project_psd(np.diag([0.7, 0.5, -0.2]).astype(complex))
    assert np.allclose(np.diag(rho).real, [0.7 / 1.2, 0.5 / 1.2, 0])
