"""Tensor layer: validators, decomposition, contractions, plane search, IO."""

import json
from fractions import Fraction

import numpy as np
import pytest

from pinchcert import models, tensors
from pinchcert.errors import (
    DegeneratePlane,
    DimensionMismatch,
    DimensionTooSmall,
    SingularMetric,
    TensorFormatError,
)


def sphere4():
    return models.space_form(4, 1).curvature


# -- validators -------------------------------------------------------------------


def test_validate_metric_accepts_spd():
    tensors.validate_metric(np.diag([1.0, 2.0, 3.0]))
    tensors.validate_metric(tensors.identity_metric(5, exact=True))


def test_validate_metric_rejects_bad_shapes():
    with pytest.raises(TensorFormatError):
        tensors.validate_metric(np.ones((2, 3)))
    with pytest.raises(TensorFormatError):
        tensors.validate_metric(np.ones(4))


def test_validate_metric_rejects_asymmetric():
    g = np.eye(3)
    g[0, 1] = 0.5
    with pytest.raises(TensorFormatError):
        tensors.validate_metric(g)


def test_validate_metric_rejects_indefinite():
    with pytest.raises(SingularMetric):
        tensors.validate_metric(np.diag([1.0, -1.0, 1.0]))
    with pytest.raises(SingularMetric):
        tensors.validate_metric(np.diag([1.0, 0.0, 1.0]))


def test_validate_sym():
    tensors.validate_sym(np.eye(3))
    a = np.eye(3)
    a[0, 1] = 1e-3
    with pytest.raises(TensorFormatError):
        tensors.validate_sym(a)
    with pytest.raises(TensorFormatError):
        tensors.validate_sym(np.zeros((2, 3)))


def test_validate_three():
    rng = np.random.default_rng(0)
    a = rng.uniform(-1, 1, size=(4, 4, 4))
    a = 0.5 * (a + a.transpose(1, 0, 2))
    a -= np.einsum("k,ij->ijk", np.einsum("iik->k", a) / 4, np.eye(4))
    tensors.validate_three(a)
    with pytest.raises(TensorFormatError):
        tensors.validate_three(rng.uniform(-1, 1, size=(4, 4, 4)))
    bad = a + np.einsum("k,ij->ijk", np.ones(4), np.eye(4))
    with pytest.raises(TensorFormatError):
        tensors.validate_three(bad)
    with pytest.raises(TensorFormatError):
        tensors.validate_three(np.zeros((3, 3)))


def test_validate_curvature_accepts_fixtures():
    for m in models.all_fixtures():
        tensors.validate_curvature(m.curvature, tol=0)


def test_validate_curvature_rejects_each_breakage():
    t = np.asarray(sphere4(), dtype=float)
    for i, j, k, l in [(0, 0, 1, 2), (0, 1, 2, 2), (0, 1, 2, 3)]:
        bad = t.copy()
        bad[i, j, k, l] += 1.0
        with pytest.raises(TensorFormatError):
            tensors.validate_curvature(bad)
    # a pair-symmetry breakage that keeps both antisymmetries
    bad = t.copy()
    delta = np.zeros((4, 4, 4, 4))
    delta[0, 1, 2, 3] = 1.0
    delta = delta - delta.transpose(1, 0, 2, 3)
    delta = delta - delta.transpose(0, 1, 3, 2)
    with pytest.raises(TensorFormatError):
        tensors.validate_curvature(bad + delta)
    with pytest.raises(TensorFormatError):
        tensors.validate_curvature(np.zeros((3, 3, 3)))


# -- algebraic building blocks ------------------------------------------------------


def test_exact_inverse_roundtrip():
    g = np.array(
        [[Fraction(2), Fraction(1), Fraction(0)],
         [Fraction(1), Fraction(3), Fraction(1)],
         [Fraction(0), Fraction(1), Fraction(4)]],
        dtype=object,
    )
    inv = tensors._inv(g)
    prod = g @ inv
    assert all(prod[i, j] == Fraction(int(i == j)) for i in range(3) for j in range(3))


def test_exact_inverse_singular():
    g = np.array([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], dtype=object)
    with pytest.raises(SingularMetric):
        tensors._inv(g)


def test_kulkarni_nomizu_definition():
    rng = np.random.default_rng(3)
    h = rng.uniform(-1, 1, size=(4, 4))
    h = 0.5 * (h + h.T)
    k = rng.uniform(-1, 1, size=(4, 4))
    k = 0.5 * (k + k.T)
    kn = tensors.kulkarni_nomizu(h, k)
    for idx in np.ndindex(4, 4, 4, 4):
        i, j, a, b = idx
        want = h[i, a] * k[j, b] + h[j, b] * k[i, a] - h[i, b] * k[j, a] - h[j, a] * k[i, b]
        assert abs(kn[idx] - want) < 1e-14
    tensors.validate_curvature(kn, tol=1e-12)
    with pytest.raises(DimensionMismatch):
        tensors.kulkarni_nomizu(h, np.eye(3))


def test_ricci_of_kulkarni_nomizu_with_metric():
    # Ric(h (x) g) = (n-2) h + tr(h) g in an orthonormal frame
    rng = np.random.default_rng(5)
    n = 5
    h = rng.uniform(-1, 1, size=(n, n))
    h = 0.5 * (h + h.T)
    ric = tensors.ricci(tensors.kulkarni_nomizu(h, np.eye(n)))
    want = (n - 2) * h + np.trace(h) * np.eye(n)
    assert np.max(np.abs(ric - want)) < 1e-13


def test_space_form_invariants_exact():
    m = models.space_form(4, 1)
    ric = tensors.ricci(m.curvature)
    assert all(ric[i, j] == 3 * Fraction(int(i == j)) for i in range(4) for j in range(4))
    assert tensors.scalar_curv(m.curvature) == 12
    r0 = tensors.traceless_ricci(m.curvature)
    assert tensors._max_abs(r0) == 0


def test_norm2_with_metric():
    g = np.diag([4.0, 1.0, 1.0])
    v = np.array([2.0, 0.0, 0.0])  # lower-index components
    assert abs(tensors.norm2(v, g) - 1.0) < 1e-14
    a = np.diag([4.0, 0.0, 0.0])
    assert abs(tensors.norm2(a, g) - 1.0) < 1e-14
    assert tensors.norm2(np.array([3.0, 4.0])) == 25.0


# -- decomposition -------------------------------------------------------------------


def test_decompose_cp2_exact():
    cp2 = models.fubini_study_cp2()
    dec = tensors.decompose(cp2.curvature)
    assert dec.scalar == 24
    assert tensors._max_abs(dec.traceless_ricci) == 0
    assert tensors.norm2(dec.weyl) == 96
    back = tensors.recompose(dec)
    assert tensors._max_abs(back - cp2.curvature) == 0
    # the Weyl part is totally trace-free
    assert tensors._max_abs(tensors.ricci(dec.weyl)) == 0


def test_decompose_space_form_has_no_weyl():
    dec = tensors.decompose(models.space_form(5, 1).curvature)
    assert tensors._max_abs(dec.weyl) == 0
    assert dec.scalar == 20


def test_decompose_rejects_small_dimension():
    with pytest.raises(DimensionTooSmall):
        tensors.decompose(np.zeros((2, 2, 2, 2)))


def test_norm_additivity_exact_on_cp2():
    cp2 = models.fubini_study_cp2()
    dec = tensors.decompose(cp2.curvature)
    ric_part = Fraction(1, 2) * tensors.kulkarni_nomizu(dec.traceless_ricci, cp2.metric)
    scal_part = Fraction(dec.scalar, 24) * tensors.kulkarni_nomizu(cp2.metric, cp2.metric)
    assert tensors.norm2(cp2.curvature) == (
        tensors.norm2(dec.weyl) + tensors.norm2(ric_part) + tensors.norm2(scal_part)
    )


def test_roundtrip_and_orthogonality_random():
    for n in (3, 4, 5):
        for i in range(20):
            t = tensors.random_curvature(n, seed=100 * n + i)
            dec = tensors.decompose(t)
            back = tensors.recompose(dec)
            assert np.max(np.abs(back - t)) < 1e-12
            ric_part = tensors.kulkarni_nomizu(dec.traceless_ricci, np.eye(n)) / (n - 2)
            scal_part = dec.scalar / (2 * n * (n - 1)) * tensors.kulkarni_nomizu(
                np.eye(n), np.eye(n)
            )
            total = tensors.norm2(t)
            parts = (
                tensors.norm2(dec.weyl)
                + tensors.norm2(ric_part)
                + tensors.norm2(scal_part)
            )
            assert abs(total - parts) < 1e-10 * max(1.0, total)


# -- contractions ---------------------------------------------------------------------


def test_contractions_space_form():
    # for the unit space form quad = (tr r)^2 - |r|^2 and cubic = tr r^3
    t = np.asarray(sphere4(), dtype=float)
    r = np.diag([2.0, -1.0, -1.0, 0.0])
    parts = tensors.contractions(t, r)
    assert abs(parts["quad"] - (0.0 - 6.0)) < 1e-13
    assert abs(parts["cubic"] - 6.0) < 1e-13


def test_contractions_match_loops():
    rng = np.random.default_rng(11)
    n = 4
    t = tensors.random_curvature(n, seed=21)
    r = rng.uniform(-1, 1, size=(n, n))
    r = 0.5 * (r + r.T)
    quad = sum(
        t[i, k, j, l] * r[i, j] * r[k, l]
        for i in range(n) for j in range(n) for k in range(n) for l in range(n)
    )
    cubic = sum(
        r[i, j] * r[i, k] * r[j, k]
        for i in range(n) for j in range(n) for k in range(n)
    )
    parts = tensors.contractions(t, r)
    assert abs(parts["quad"] - quad) < 1e-12
    assert abs(parts["cubic"] - cubic) < 1e-12


def test_product_spheres_quad_exact():
    ps = models.product_spheres(1, 2)
    r0 = tensors.traceless_ricci(ps.curvature)
    want = [Fraction(3, 8), Fraction(3, 8), Fraction(-3, 8), Fraction(-3, 8)]
    assert [r0[i, i] for i in range(4)] == want
    parts = tensors.contractions(ps.curvature, r0)
    assert parts["quad"] == Fraction(45, 128)
    assert parts["cubic"] == 0


# -- sectional curvature and plane search --------------------------------------------


def test_sectional_space_form_any_plane():
    t = sphere4()
    rng = np.random.default_rng(7)
    for _ in range(25):
        x = rng.standard_normal(4)
        y = rng.standard_normal(4)
        assert abs(tensors.sectional(t, x, y) - 1.0) < 1e-10


def test_sectional_cp2_extremes():
    t = models.fubini_study_cp2().curvature
    e = np.eye(4)
    assert abs(tensors.sectional(t, e[0], e[1]) - 4.0) < 1e-13
    assert abs(tensors.sectional(t, e[0], e[2]) - 1.0) < 1e-13


def test_sectional_product_mixed_plane_flat():
    t = models.product_spheres(1, 2).curvature
    e = np.eye(4)
    assert abs(tensors.sectional(t, e[0], e[2])) < 1e-14
    assert abs(tensors.sectional(t, e[0], e[1]) - 1.0) < 1e-13
    assert abs(tensors.sectional(t, e[2], e[3]) - 0.25) < 1e-13


def test_sectional_degenerate_plane():
    t = sphere4()
    x = np.array([1.0, 0.0, 0.0, 0.0])
    with pytest.raises(DegeneratePlane):
        tensors.sectional(t, x, 2 * x)
    with pytest.raises(DegeneratePlane):
        tensors.sectional(t, x, np.zeros(4))


def test_sectional_invariant_under_plane_basis_change():
    t = tensors.random_curvature(5, seed=9)
    rng = np.random.default_rng(13)
    x = rng.standard_normal(5)
    y = rng.standard_normal(5)
    base = tensors.sectional(t, x, y)
    for _ in range(10):
        a, b, c, d = rng.uniform(-2, 2, size=4)
        if abs(a * d - b * c) < 0.1:
            continue
        again = tensors.sectional(t, a * x + b * y, c * x + d * y)
        assert abs(again - base) < 1e-9 * max(1.0, abs(base))


def test_min_sectional_fixtures():
    val, (x, y) = tensors.min_sectional(np.asarray(sphere4(), dtype=float))
    assert abs(val - 1.0) < 1e-10
    assert abs(x @ x - 1) < 1e-12 and abs(y @ y - 1) < 1e-12 and abs(x @ y) < 1e-12
    val, _ = tensors.min_sectional(models.fubini_study_cp2().curvature)
    assert abs(val - 1.0) < 1e-10
    val, _ = tensors.min_sectional(models.product_spheres(1, 2).curvature)
    assert abs(val) < 1e-10
    val, _ = tensors.min_sectional(models.space_form(4, -1).curvature)
    assert abs(val + 1.0) < 1e-10


def test_min_sectional_is_deterministic_and_attained():
    t = tensors.random_curvature(5, seed=77)
    v1, (x1, y1) = tensors.min_sectional(t, seed=5)
    v2, (x2, y2) = tensors.min_sectional(t, seed=5)
    assert v1 == v2
    assert np.array_equal(x1, x2) and np.array_equal(y1, y2)
    assert abs(tensors.sectional(t, x1, y1) - v1) < 1e-9
    # no sampled plane beats the reported minimum
    rng = np.random.default_rng(123)
    for _ in range(200):
        x = rng.standard_normal(5)
        y = rng.standard_normal(5)
        assert tensors.sectional(t, x, y) >= v1 - 1e-9


def test_min_sectional_dimension_guards():
    with pytest.raises(DimensionTooSmall):
        tensors.min_sectional(np.zeros((2, 2, 2, 2)))
    with pytest.raises(ValueError):
        tensors.min_sectional(np.zeros((9, 9, 9, 9)))


def test_curvature_operator_space_form():
    op = tensors.curvature_operator(np.asarray(sphere4(), dtype=float))
    assert op.shape == (6, 6)
    assert np.max(np.abs(op - np.eye(6))) < 1e-14


def test_curvature_operator_lower_bounds_sectional():
    t = tensors.random_curvature(4, seed=31)
    lam = float(np.linalg.eigvalsh(tensors.curvature_operator(t))[0])
    val, _ = tensors.min_sectional(t)
    assert val >= lam - 1e-10


def test_curvature_shift_raises_sectional_by_2c():
    t = tensors.random_curvature(4, seed=41)
    c = 0.7
    shifted = t + c * tensors.kulkarni_nomizu(np.eye(4), np.eye(4))
    rng = np.random.default_rng(17)
    for _ in range(20):
        x = rng.standard_normal(4)
        y = rng.standard_normal(4)
        assert abs(
            tensors.sectional(shifted, x, y) - tensors.sectional(t, x, y) - 2 * c
        ) < 1e-9


# -- random curvature -----------------------------------------------------------------


def test_random_curvature_symmetries_and_determinism():
    t = tensors.random_curvature(5, seed=2)
    tensors.validate_curvature(t, tol=1e-13)
    again = tensors.random_curvature(5, seed=2)
    assert np.array_equal(t, again)
    other = tensors.random_curvature(5, seed=3)
    assert not np.array_equal(t, other)


def test_random_curvature_sec_floor():
    for seed in range(5):
        t = tensors.random_curvature(4, seed=seed, sec_floor=0.05)
        val, _ = tensors.min_sectional(t)
        assert val >= 0.05 - 1e-6


def test_random_curvature_accepts_seed_sequence():
    ss = np.random.SeedSequence(entropy=4, spawn_key=(3, 1))
    t = tensors.random_curvature(4, seed=ss, sec_floor=0.05)
    tensors.validate_curvature(t, tol=1e-13)


# -- non-identity metric paths ---------------------------------------------------------


def pushforward(t, mat):
    return np.einsum("ijkl,ia,jb,kc,ld->abcd", t, mat, mat, mat, mat)


def test_invariants_survive_frame_change():
    t = tensors.random_curvature(4, seed=55)
    rng = np.random.default_rng(19)
    mat = rng.uniform(-1, 1, size=(4, 4)) + 2 * np.eye(4)
    g = mat.T @ mat
    tprime = pushforward(t, mat)
    assert abs(tensors.scalar_curv(tprime, g) - tensors.scalar_curv(t)) < 1e-9
    assert abs(tensors.norm2(tprime, g) - tensors.norm2(t)) < 1e-8
    v1, _ = tensors.min_sectional(t)
    v2, (x, y) = tensors.min_sectional(tprime, g=g)
    assert abs(v1 - v2) < 1e-8
    # returned plane is g-orthonormal and attains the minimum
    assert abs(x @ g @ x - 1) < 1e-9 and abs(y @ g @ y - 1) < 1e-9
    assert abs(x @ g @ y) < 1e-9
    assert abs(tensors.sectional(tprime, x, y, g=g) - v2) < 1e-8


def test_to_orthonormal_frame_identity_passthrough():
    t = tensors.random_curvature(3, seed=66)
    out = tensors.to_orthonormal_frame(t, np.eye(3))
    assert np.array_equal(out, t)


def test_sectional_with_metric_space_form():
    # the unit-curvature space form written in a stretched frame
    mat = np.diag([2.0, 0.5, 1.0, 3.0])
    g = mat.T @ mat
    t = pushforward(np.asarray(sphere4(), dtype=float), mat)
    rng = np.random.default_rng(23)
    for _ in range(10):
        x = rng.standard_normal(4)
        y = rng.standard_normal(4)
        assert abs(tensors.sectional(t, x, y, g=g) - 1.0) < 1e-10


# -- total-curvature density -----------------------------------------------------------


def test_gauss_bonnet_fixture_values():
    assert tensors.gauss_bonnet_integrand(sphere4()) == 24
    quarter = models.space_form(4, Fraction(1, 4)).curvature
    assert tensors.gauss_bonnet_integrand(quarter) == Fraction(24, 16)
    assert tensors.gauss_bonnet_integrand(models.fubini_study_cp2().curvature) == 192
    assert tensors.gauss_bonnet_integrand(models.product_spheres(1, 1).curvature) == 8
    assert tensors.gauss_bonnet_integrand(models.product_spheres(1, 2).curvature) == 2


def test_gauss_bonnet_euler_consistency():
    # density times total volume equals 32 pi^2 chi on the known closed spaces
    import math

    vol_s4 = 8 * math.pi**2 / 3
    assert abs(float(tensors.gauss_bonnet_integrand(sphere4())) * vol_s4
               - 32 * math.pi**2 * 2) < 1e-9
    vol_cp2 = math.pi**2 / 2
    assert abs(192 * vol_cp2 - 32 * math.pi**2 * 3) < 1e-9
    vol_prod = (4 * math.pi) * (4 * math.pi * 4)
    assert abs(2 * vol_prod - 32 * math.pi**2 * 4) < 1e-9


# -- JSON round trip -------------------------------------------------------------------


def test_tensor_json_roundtrip_exact(tmp_path):
    path = tmp_path / "cp2.json"
    cp2 = models.fubini_study_cp2()
    tensors.save_tensor_json(path, cp2.curvature)
    back = tensors.load_tensor_json(path)
    assert back.dtype == object
    assert tensors._max_abs(back - cp2.curvature) == 0


def test_tensor_json_roundtrip_float(tmp_path):
    path = tmp_path / "rand.json"
    t = tensors.random_curvature(4, seed=8)
    tensors.save_tensor_json(path, t)
    back = tensors.load_tensor_json(path)
    assert np.max(np.abs(back - t)) == 0


def test_tensor_json_rejects_tampering(tmp_path):
    path = tmp_path / "t.json"
    tensors.save_tensor_json(path, np.asarray(sphere4(), dtype=float))
    payload = json.loads(path.read_text())
    payload["entries"][0][0][1][2] = 0.5
    path.write_text(json.dumps(payload))
    with pytest.raises(TensorFormatError):
        tensors.load_tensor_json(path)


def test_tensor_json_rejects_missing_keys(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 3, "entries": []}))
    with pytest.raises(TensorFormatError):
        tensors.load_tensor_json(path)


def test_tensor_json_rejects_shape_mismatch(tmp_path):
    path = tmp_path / "shape.json"
    payload = {
        "dim": 3,
        "convention": tensors.CONVENTION,
        "entries": np.zeros((2, 2, 2, 2)).tolist(),
    }
    path.write_text(json.dumps(payload))
    with pytest.raises(TensorFormatError):
        tensors.load_tensor_json(path)
