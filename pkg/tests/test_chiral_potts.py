from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybkit import chiral_potts as cp
from ybkit.tensor import support_violations

MOD = cp.Modulus.from_k_prime(0.8)


def points(seed, N, count, mod=MOD):
    return cp.conditioned_points(np.random.default_rng(seed), mod, N, count)


def test_sample_point_example():
    # k' = 0.8, a = b = 1, N = 3: c^3 = d^3 = (1 + k') / k = 3
    p = cp.sample_curve_point(MOD, 3, 1, 1)
    assert abs(p.c - 3 ** (1 / 3)) < 1e-12 and abs(p.d - 1.442250) < 1e-6
    assert p.curve_residual() < 1e-12


@pytest.mark.parametrize("N", range(2, 8))
def test_every_branch_lies_on_curve(N):
    for rc in range(N):
        for rd in range(N):
            assert cp.sample_curve_point(MOD, N, 0.3 + 1.1j, -0.7, rc, rd).curve_residual() < 1e-12


def test_off_curve_point_rejected():
    p = cp.sample_curve_point(MOD, 3, 1, 1)
    with pytest.raises(ValueError, match="off the curve"):
        cp.CPPoint(p.a, p.b, p.c * 1.01, p.d, MOD, 3)


def test_modulus_validated():
    with pytest.raises(ValueError):
        cp.Modulus(0.5, 0.5)


@pytest.mark.parametrize("N", range(2, 8))
def test_coinciding_rapidities(N):
    (p,) = points(N, N, 1)
    w = cp.cp_weight_tables(p, p)
    assert np.abs(w.W - 1).max() < 1e-14
    assert np.abs(w.Wb - np.eye(N)[0]).max() < 1e-14


def test_conditioning_flags_poles():
    (p,) = points(0, 3, 1)
    assert cp.pair_conditioning(p, p) == float("inf")
    assert all(cp.pair_conditioning(a, b) <= cp.MAX_CONDITIONING
               for a, b in zip(points(1, 4, 5), points(1, 4, 5)[1:]))


def test_closure_at_coinciding_rapidities_hits_pole():
    (p,) = points(0, 3, 1)
    with pytest.raises(cp.PoleError):
        cp.cyclic_closure(p, p)


@settings(max_examples=40, deadline=None)
@given(N=st.integers(2, 7), seed=st.integers(0, 2**20))
def test_cyclic_closure(N, seed):
    p, q = points(seed, N, 2)
    assert cp.cyclic_closure(p, q) < 1e-10


@settings(max_examples=20, deadline=None)
@given(N=st.integers(2, 5), seed=st.integers(0, 2**20))
def test_star_triangle(N, seed):
    p, q, r = points(seed, N, 3)
    assert cp.star_triangle_residual(p, q, r) < 1e-9


def test_star_triangle_sensitive_to_weights():
    # swapping the roles of p and q in one factor breaks it
    p, q, r = points(5, 3, 3)
    assert cp.star_triangle_residual(q, p, r) < 1e-9
    assert cp.star_triangle_residual(p, r, q) < 1e-9
    pq, pr, qr = cp.cp_weight_tables(p, q), cp.cp_weight_tables(p, r), cp.cp_weight_tables(q, r)
    N = 3
    rho = set()
    for a in range(N):
        for b in range(N):
            for c in range(N):
                star = sum(qr.W[(b - d) % N] * pr.W[(a - d) % N] * pq.Wb[(d - c) % N] for d in range(N))
                tri = pq.W[(a - b) % N] * pr.Wb[(b - c) % N] * qr.W[(a - c) % N]
                rho.add(np.round(star / tri, 6))
    assert len(rho) > 1


def test_weights_are_projective_in_points():
    p, q = points(11, 4, 2)
    w1 = cp.cp_weight_tables(p, q)
    w2 = cp.cp_weight_tables(p.scaled(2.5 - 1j), q.scaled(0.3j))
    assert np.allclose(w1.W, w2.W, atol=1e-13) and np.allclose(w1.Wb, w2.Wb, atol=1e-13)


def test_mismatched_points_rejected():
    p = points(1, 3, 1)[0]
    q = points(1, 4, 1)[0]
    with pytest.raises(ValueError):
        cp.cp_weight_tables(p, q)
    r = points(1, 3, 1, cp.Modulus.from_k_prime(0.5))[0]
    with pytest.raises(ValueError):
        cp.cp_weight_tables(p, r)


def test_weight_dump_round_trip(tmp_path):
    p, q = points(2, 5, 2)
    w = cp.cp_weight_tables(p, q)
    cp.write_weights(p, q, w, tmp_path / "w.json")
    p2, q2, w2 = cp.read_weights(tmp_path / "w.json")
    assert np.array_equal(w2.W, w.W) and np.array_equal(w2.Wb, w.Wb)
    assert (p2.a, p2.d, q2.c) == (p.a, p.d, q.c)


def test_default_weights_normalised():
    p = cp.sample_curve_point(MOD, 3, 1, 1)
    q = cp.sample_curve_point(MOD, 3, 0.7 + 0.2j, 1.3 - 0.5j)
    w = cp.cp_weight_tables(p, q)
    assert w.W[0] == 1 and w.Wb[0] == 1


# composed R-matrix

def pairs(seed, N):
    pts = points(seed, N, 6)
    return (pts[0], pts[1]), (pts[2], pts[3]), (pts[4], pts[5])


@pytest.mark.parametrize("N", [2, 3])
def test_star_translation_invariant_and_charge(N):
    P, Q, _ = pairs(N, N)
    w = cp.compose_star(*P, *Q)
    assert w.translation_invariant
    R = cp.wkw_vertex_map(w)
    assert support_violations(R, "charge") == []


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("seed", [0, 1])
def test_star_uniform_ybe(N, seed):
    assert cp.uniform_ybe_4cp(pairs(seed, N), "star") < 1e-8


@pytest.mark.parametrize("N", [2, 3])
def test_diamond_strip_ybe(N):
    assert cp.uniform_ybe_4cp(pairs(7, N), "diamond") < 1e-8


def test_diamond_difference_map_is_not_a_solution():
    assert cp.uniform_ybe_4cp(pairs(7, 3), "diamond-wkw") > 1e-2


@pytest.mark.parametrize("face", range(4))
def test_swapped_face_breaks_ybe(face):
    placement = cp.swap_face(cp.STAR_PLACEMENT, face)
    assert cp.uniform_ybe_4cp(pairs(3, 3), "star", placement) > 1e-2


def test_frozen_placement_is_the_unique_solution():
    scan = cp.placement_scan(pairs(4, 3))
    passing = [kinds for kinds, res in scan if res < 1e-8]
    assert passing == [tuple(f[0] for f in cp.STAR_PLACEMENT)]


def test_difference_map_rejects_non_invariant_weight():
    rng = np.random.default_rng(0)
    w = cp.IRFWeight(2, rng.normal(size=(2, 2, 2, 2)))
    assert not w.translation_invariant
    with pytest.raises(ValueError, match="translation"):
        cp.wkw_vertex_map(w)


def test_unknown_composition():
    P, Q, _ = pairs(0, 2)
    with pytest.raises(ValueError):
        cp.composed_rmatrix(P, Q, "triangle")


def test_star_triangle_with_coinciding_pair():
    p, q = points(6, 3, 2)
    assert cp.star_triangle_residual(p, q, q) < 1e-9


def test_star_collapses_when_all_rapidities_coincide():
    (p,) = points(8, 3, 1)
    S = cp.compose_star(p, p, p, p).table
    # both Wbar faces pin the centre: e = b = d, the W faces are then 1
    b, d = np.meshgrid(np.arange(3), np.arange(3), indexing="ij")
    expected = (b == d).astype(float)[None, :, None, :] * np.ones((3, 3, 3, 3))
    assert np.abs(S - expected).max() < 1e-14


def test_diamond_at_coinciding_pairs():
    # p = q and p' = q': the Wbar faces become deltas, the W faces mix p with p'
    p, p2 = points(9, 3, 2)
    D = cp.compose_diamond(p, p2, p, p2).table
    w12, w21 = cp.cp_weight_tables(p, p2).W, cp.cp_weight_tables(p2, p).W
    N = 3
    for a, b, c, d in np.ndindex(N, N, N, N):
        expected = (b == c) * (a == d) * w12[(a - b) % N] * w21[(d - c) % N]
        assert abs(D[a, b, c, d] - expected) < 1e-14
