from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybkit.tensor import (
    CheckReport,
    GaugeSandwich,
    RMatrix,
    SupportError,
    apply_gauge,
    dumps_rmatrix,
    loads_rmatrix,
    projective_distance,
    read_rmatrix,
    require_support,
    support_violations,
    write_rmatrix,
    ybe_defect,
    ybe_residual,
)

finite = st.floats(-3, 3, allow_nan=False)
cplx = st.builds(complex, finite, finite)
nonzero = cplx.filter(lambda z: abs(z) > 0.1)


def swap_matrix(d=2) -> RMatrix:
    P = np.zeros((d, d, d, d), complex)
    for i in range(d):
        for j in range(d):
            P[i, j, j, i] = 1
    return RMatrix(P)


def random_rmatrix(rng, d1=2, d2=2) -> RMatrix:
    return RMatrix(rng.normal(size=(d1, d2, d1, d2)) + 1j * rng.normal(size=(d1, d2, d1, d2)))


def test_entries_are_read_only_and_validated():
    R = RMatrix.identity(2)
    with pytest.raises(ValueError):
        R.entries[0, 0, 0, 0] = 5
    with pytest.raises(ValueError):
        RMatrix(np.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        RMatrix(np.zeros((2, 3, 3, 2)))
    bad = np.zeros((2, 2, 2, 2), complex)
    bad[0, 0, 0, 0] = np.nan
    with pytest.raises(ValueError):
        RMatrix(bad)


def test_matrix_rows_are_outgoing_pairs():
    E = np.zeros((2, 2, 2, 2), complex)
    E[0, 1, 1, 0] = 7  # in (0,1) -> out (1,0)
    M = RMatrix(E).matrix()
    assert M[2, 1] == 7 and np.count_nonzero(M) == 1
    assert np.array_equal(RMatrix.from_matrix(M, (2, 2)).entries, E)


def test_identity_and_swap_solve_ybe():
    for R in (RMatrix.identity(3), swap_matrix(3)):
        assert ybe_residual(R, R, R) == 0.0


def test_generic_matrix_violates_ybe():
    R = random_rmatrix(np.random.default_rng(1))
    assert ybe_residual(R, R, R) > 1e-2


def test_ybe_dimension_mismatch_names_spaces():
    A = random_rmatrix(np.random.default_rng(0), 2, 3)
    B = random_rmatrix(np.random.default_rng(1), 3, 2)
    with pytest.raises(ValueError, match="space"):
        ybe_residual(A, B, A)


def test_ybe_mixed_dimensions_consistent():
    rng = np.random.default_rng(2)
    raw, rel = ybe_defect(random_rmatrix(rng, 2, 3), random_rmatrix(rng, 2, 4), random_rmatrix(rng, 3, 4))
    assert raw >= 0 and rel >= 0


def test_support_rules():
    P = swap_matrix(2)
    assert support_violations(P, "multiset") == []
    assert support_violations(P, "charge") == []
    E = np.zeros((2, 2, 2, 2), complex)
    E[0, 0, 0, 1] = 1
    with pytest.raises(SupportError):
        require_support(RMatrix(E), "multiset")
    with pytest.raises(ValueError):
        support_violations(P, "bogus")


@settings(max_examples=40, deadline=None)
@given(s=nonzero, seed=st.integers(0, 2**16))
def test_ybe_residual_scale_invariant(s, seed):
    rng = np.random.default_rng(seed)
    R = random_rmatrix(rng)
    r0 = ybe_residual(R, R, R)
    r1 = ybe_residual(R.scaled(s), R.scaled(s), R.scaled(s))
    assert abs(r0 - r1) <= 1e-12 * max(1.0, r0)


@settings(max_examples=40, deadline=None)
@given(lams=st.lists(nonzero, min_size=4, max_size=4), seed=st.integers(0, 2**16))
def test_gauge_inverse_round_trip(lams, seed):
    R = random_rmatrix(np.random.default_rng(seed))
    g = GaugeSandwich(*[[1, z] for z in lams])
    back = apply_gauge(apply_gauge(R, g), g.inverse())
    assert np.allclose(back.entries, R.entries, rtol=1e-11, atol=1e-11)


@settings(max_examples=40, deadline=None)
@given(s=nonzero, seed=st.integers(0, 2**16))
def test_projective_distance_ignores_scale(s, seed):
    R = random_rmatrix(np.random.default_rng(seed))
    assert projective_distance(R.scaled(s), R) < 1e-13
    assert projective_distance(R, R.scaled(s)) < 1e-13


def test_projective_distance_detects_difference():
    rng = np.random.default_rng(3)
    assert projective_distance(random_rmatrix(rng), random_rmatrix(rng)) > 0.1
    with pytest.raises(ValueError):
        projective_distance(RMatrix.identity(2), RMatrix(np.zeros((2, 2, 2, 2))))


def test_diag_gauge_sides():
    g = GaugeSandwich.diag(2.0, "+-+-")
    assert np.allclose(g.pre_left, [2, 0.5]) and np.allclose(g.pre_right, [0.5, 2])
    f = g.factors()
    # keep-state in (0,1) -> out (0,1): 2 * 2 * 2 * 2
    assert f[0, 1, 0, 1] == 16 and f[0, 1, 1, 0] == 1 and f[0, 0, 0, 0] == 1
    with pytest.raises(ValueError):
        GaugeSandwich([1, 0], [1, 1], [1, 1], [1, 1])


def test_dump_round_trip_is_bit_exact(tmp_path):
    R = random_rmatrix(np.random.default_rng(4)).with_meta(model="test", degenerate=False)
    S = loads_rmatrix(dumps_rmatrix(R))
    assert np.array_equal(S.entries, R.entries) and S.meta == R.meta
    write_rmatrix(R, tmp_path / "r.json")
    assert np.array_equal(read_rmatrix(tmp_path / "r.json").entries, R.entries)


def test_check_report_pass_rule():
    assert CheckReport("x", {}, 1e-11, 1e-10).passed
    assert not CheckReport("x", {}, 1e-9, 1e-10).passed
    with pytest.raises(ValueError):
        CheckReport("x", {}, 0.0, -1.0)
