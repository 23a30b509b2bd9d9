import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qboltz.errors import DimensionMismatchError, InvalidStateError, ZeroWeightError
from qboltz.qstate import (
    DOWN,
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Z,
    UP,
    DensityMatrix,
    KrausMap,
    ProjectorFamily,
    PureState,
    UnitaryMap,
    branch_weights,
    chain_site_operators,
    conditional_state,
    is_decoherent,
    mean_observable,
    partial_trace,
    pinch,
    product_density,
    random_density_matrix,
    random_kraus_map,
    random_projector_family,
    random_pure_state,
    random_unitary,
    tensor,
    trace_norm,
    trace_norm_pure_diff,
)

PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)


def rng(seed=0):
    return np.random.default_rng(seed)


# --- value types -----------------------------------------------------------


def test_density_matrix_rejects_bad_trace_and_negative_spectrum():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.eye(2))
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))


def test_density_matrix_is_immutable():
    rho = DensityMatrix(np.eye(2) / 2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.0


def test_pure_state_norm_invariant():
    with pytest.raises(InvalidStateError):
        PureState([1.0, 1.0])
    assert PureState(PLUS).dim == 2


def test_projector_family_checks_resolution_of_identity():
    with pytest.raises(InvalidStateError):
        ProjectorFamily((np.diag([1, 0]),))
    with pytest.raises(InvalidStateError):
        ProjectorFamily((np.diag([1, 0]), np.diag([1, 1])))
    fam = ProjectorFamily.computational(3)
    assert len(fam) == 3


def test_projector_family_from_observable_merges_degenerate_eigenvalues():
    fam = ProjectorFamily.from_observable(np.kron(SIGMA_Z, np.eye(2)))
    assert len(fam) == 2
    assert fam.labels == (-1.0, 1.0)
    assert np.abs(fam.observable() - np.kron(SIGMA_Z, np.eye(2))).max() < 1e-12


def test_unitary_from_generator_is_exp_iht():
    u = UnitaryMap.from_generator(SIGMA_X, math.pi / 2)
    assert np.abs(u.matrix - 1j * SIGMA_X).max() < 1e-12
    with pytest.raises(InvalidStateError):
        UnitaryMap(np.array([[1, 1], [0, 1]]))


def test_kraus_map_must_be_trace_preserving():
    with pytest.raises(InvalidStateError):
        KrausMap((np.eye(2), np.eye(2)))
    channel = random_kraus_map(4, 2, 3, rng())
    out = channel.apply(random_density_matrix(4, rng(1)))
    assert out.dim == 2


# --- tensor ----------------------------------------------------------------


def test_tensor_identity():
    assert np.abs(tensor(np.eye(2), np.eye(2)) - np.eye(4)).max() == 0


def test_tensor_basis_bookkeeping():
    v = tensor(UP, DOWN)
    assert np.argmax(np.abs(v)) == 1 and abs(v[1]) == 1


def test_tensor_flip_flip_oracle():
    # sigma1 (x) sigma1 written out by hand: anti-diagonal of ones
    hand = np.fliplr(np.eye(4))
    assert np.abs(tensor(SIGMA_X, SIGMA_X) - hand).max() == 0
    assert np.abs(tensor(SIGMA_X, SIGMA_X) @ tensor(UP, UP) - tensor(DOWN, DOWN)).max() == 0


def test_tensor_is_associative_and_left_slow():
    a, b, c = random_unitary(2, rng(1)).matrix, random_unitary(3, rng(2)).matrix, random_unitary(2, rng(3)).matrix
    assert np.abs(tensor(a, tensor(b, c)) - tensor(tensor(a, b), c)).max() < 1e-14
    assert np.abs(tensor(a, b, c) - tensor(a, tensor(b, c))).max() < 1e-14
    with pytest.raises(DimensionMismatchError):
        tensor(UP, np.eye(2))


# --- pinch -----------------------------------------------------------------


def test_pinch_erases_offdiagonal():
    out = pinch(DensityMatrix.from_pure(PLUS), ProjectorFamily.computational(2))
    assert np.abs(out.matrix - np.eye(2) / 2).max() < 1e-15


def test_pinch_trivial_family_is_identity_map():
    rho = random_density_matrix(4, rng())
    assert np.abs(pinch(rho, ProjectorFamily.trivial(4)).matrix - rho.matrix).max() < 1e-15


def test_pinch_matches_entrywise_triple_product():
    rho = random_density_matrix(4, rng(3))
    fam = random_projector_family(4, 2, rng(4))
    expected = np.zeros((4, 4), dtype=complex)
    for p in fam.members:
        for i in range(4):
            for j in range(4):
                expected[i, j] += sum(p[i, k] * rho.matrix[k, l] * p[l, j] for k in range(4) for l in range(4))
    assert np.abs(pinch(rho, fam).matrix - expected).max() < 1e-13


def test_pinch_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        pinch(random_density_matrix(4, rng()), ProjectorFamily.computational(2))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8), data=st.data())
def test_pinch_idempotent_and_decoherent(seed, dim, data):
    n_cells = data.draw(st.integers(1, dim))
    g = rng(seed)
    rho = random_density_matrix(dim, g)
    fam = random_projector_family(dim, n_cells, g)
    once = pinch(rho, fam)
    assert np.abs(pinch(once, fam).matrix - once.matrix).max() < 1e-12
    assert abs(np.trace(once.matrix) - 1) < 1e-12
    assert is_decoherent(once, fam, 1e-10)


# --- conditional_state -----------------------------------------------------


def test_conditional_state_mixed():
    state, w = conditional_state(DensityMatrix(np.eye(2) / 2), 0, ProjectorFamily.computational(2))
    assert w == pytest.approx(0.5, abs=1e-15)
    assert np.abs(state.matrix - np.diag([1, 0])).max() < 1e-15


def test_conditional_state_zero_weight():
    with pytest.raises(ZeroWeightError):
        conditional_state(DensityMatrix.from_pure(UP), 1, ProjectorFamily.computational(2))


def test_conditional_weights_sum_to_one():
    g = rng(5)
    for _ in range(20):
        rho = random_density_matrix(6, g)
        fam = random_projector_family(6, 3, g)
        total = sum(conditional_state(rho, a, fam)[1] for a in range(len(fam)))
        assert abs(total - 1) < 1e-12
        assert abs(branch_weights(rho, fam).sum() - 1) < 1e-12


# --- partial_trace ---------------------------------------------------------


def test_partial_trace_of_product():
    a, b = random_density_matrix(2, rng(1)), random_density_matrix(3, rng(2))
    joint = DensityMatrix(tensor(a, b))
    assert np.abs(partial_trace(joint, [2, 3], [0]).matrix - a.matrix).max() < 1e-12
    assert np.abs(partial_trace(joint, [2, 3], [1]).matrix - b.matrix).max() < 1e-12


def test_partial_trace_bell_state():
    bell = DensityMatrix.from_pure(np.array([1, 0, 0, 1]) / math.sqrt(2))
    for keep in (0, 1):
        assert np.abs(partial_trace(bell, [2, 2], [keep]).matrix - np.eye(2) / 2).max() < 1e-15


def test_partial_trace_matches_index_contraction():
    rho = random_density_matrix(4, rng(7))
    r = rho.matrix
    keep_a = np.array([[sum(r[2 * i + k, 2 * j + k] for k in range(2)) for j in range(2)] for i in range(2)])
    keep_b = np.array([[sum(r[2 * k + i, 2 * k + j] for k in range(2)) for j in range(2)] for i in range(2)])
    assert np.abs(partial_trace(rho, [2, 2], [0]).matrix - keep_a).max() < 1e-14
    assert np.abs(partial_trace(rho, [2, 2], [1]).matrix - keep_b).max() < 1e-14


def test_partial_trace_three_factors_keeps_order():
    a, b, c = (random_density_matrix(2, rng(s)) for s in (1, 2, 3))
    joint = DensityMatrix(tensor(a, b, c))
    assert np.abs(partial_trace(joint, [2, 2, 2], [0, 2]).matrix - tensor(a, c)).max() < 1e-12
    with pytest.raises(DimensionMismatchError):
        partial_trace(joint, [2, 2], [0])


# --- trace norm ------------------------------------------------------------


def test_trace_norm_equal_and_orthogonal():
    psi = PureState(PLUS)
    assert trace_norm_pure_diff(psi, psi) < 1e-12
    assert trace_norm_pure_diff(PureState(UP), PureState(DOWN)) == pytest.approx(2, abs=1e-15)


def test_trace_norm_matches_singular_values():
    g = rng(11)
    for dim in range(2, 17):
        for _ in range(5):
            a, b = random_pure_state(dim, g), random_pure_state(dim, g)
            diff = np.outer(a.vector, a.vector.conj()) - np.outer(b.vector, b.vector.conj())
            assert abs(trace_norm_pure_diff(a, b) - trace_norm(diff)) < 1e-10


# --- decoherence and mean observables --------------------------------------


def test_is_decoherent_examples():
    comp = ProjectorFamily.computational(2)
    assert is_decoherent(DensityMatrix(np.diag([0.3, 0.7])), comp, 1e-10)
    assert not is_decoherent(DensityMatrix.from_pure(PLUS), comp, 1e-10)


def test_mean_observable_polarised_chain():
    rho = product_density([np.outer(UP, UP)] * 3)
    assert mean_observable(rho, chain_site_operators(SIGMA_Z, 3)) == pytest.approx(1, abs=1e-15)


def test_mean_observable_thermal_chain_is_tanh():
    beta_b = 0.7
    m = math.tanh(beta_b)
    site = (IDENTITY_2 + m * SIGMA_Z) / 2
    rho = product_density([site] * 3)
    assert abs(mean_observable(rho, chain_site_operators(SIGMA_Z, 3)) - m) < 1e-12


def test_mean_observable_maximally_mixed():
    assert abs(mean_observable(DensityMatrix.maximally_mixed(8), chain_site_operators(SIGMA_Z, 3))) < 1e-15


def test_site_operator_convention_system_is_leftmost():
    ops = chain_site_operators(SIGMA_Z, 2, offset=1, total=3)
    assert np.abs(ops[0] - tensor(IDENTITY_2, SIGMA_Z, IDENTITY_2)).max() == 0
