"""Dense algebraic curvature-tensor arithmetic at a point.

A curvature tensor here is an n^4 array T with the symmetries

    T[i,j,k,l] = -T[j,i,k,l] = -T[i,j,l,k] = T[k,l,i,j]
    T[i,j,k,l] + T[i,k,l,j] + T[i,l,j,k] = 0   (first Bianchi identity)

The sign convention is fixed so that the round unit sphere, built as
(1/2) g (x) g with the Kulkarni-Nomizu product, has sectional curvature +1:
Sec(X, Y) = sum T[i,j,k,l] X_i Y_j X_k Y_l divided by the Gram determinant
of the pair.  Ricci contraction follows Ric[i,k] = ginv[l,j] T[l,i,j,k].

Arrays may hold floats or exact Fractions (dtype=object); every operation
preserves the dtype it is given.  Metrics default to the identity, i.e.
components taken in an orthonormal frame.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegeneratePlane,
    DimensionMismatch,
    SingularMetric,
    TensorFormatError,
)

CONVENTION = (
    "R[i,j,k,l]; antisymmetric in (i,j) and (k,l); symmetric under pair "
    "exchange; first Bianchi identity; round unit sphere has Sec = +1"
)


def identity_metric(n, exact=False):
    if exact:
        return np.array(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)],
            dtype=object,
        )
    return np.eye(n)


def _is_identity(g):
    n = g.shape[0]
    return bool(np.array_equal(np.asarray(g, dtype=float), np.eye(n)))


def _max_abs(arr):
    flat = np.asarray(arr).ravel()
    if flat.size == 0:
        return 0.0
    return max(float(abs(x)) for x in flat) if flat.dtype == object else float(
        np.max(np.abs(flat))
    )


def validate_metric(g):
    """Check that g is a symmetric positive-definite matrix."""
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise TensorFormatError(f"metric must be a square matrix, got shape {g.shape}")
    if _max_abs(g - g.T) > 1e-12 * max(1.0, _max_abs(g)):
        raise TensorFormatError("metric is not symmetric")
    eigs = np.linalg.eigvalsh(np.asarray(g, dtype=float))
    if eigs[0] <= 1e-12 * max(1.0, eigs[-1]):
        raise SingularMetric(f"metric is not positive definite (eigenvalues {eigs})")


def validate_sym(a, tol=1e-12):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise TensorFormatError(f"expected a square 2-tensor, got shape {a.shape}")
    dev = _max_abs(a - a.T)
    if dev > tol * max(1.0, _max_abs(a)):
        raise TensorFormatError(f"2-tensor not symmetric (max deviation {dev:.3e})")


def validate_three(t, tol=1e-12):
    """Check the gradient-input format: T[i,j,k] = T[j,i,k], sum_i T[i,i,k] = 0."""
    t = np.asarray(t)
    if t.ndim != 3 or len(set(t.shape)) != 1:
        raise TensorFormatError(f"expected an n^3 tensor, got shape {t.shape}")
    scale = max(1.0, _max_abs(t))
    dev = _max_abs(t - t.transpose(1, 0, 2))
    if dev > tol * scale:
        raise TensorFormatError(f"3-tensor not symmetric in (i, j) (deviation {dev:.3e})")
    dev = _max_abs(np.einsum("iik->k", t))
    if dev > tol * scale:
        raise TensorFormatError(f"3-tensor has nonzero (i, j)-trace (deviation {dev:.3e})")


def validate_curvature(t, tol=1e-12):
    """Check all four index symmetries and the first Bianchi identity."""
    t = np.asarray(t)
    if t.ndim != 4 or len(set(t.shape)) != 1:
        raise TensorFormatError(f"expected an n^4 tensor, got shape {t.shape}")
    scale = max(1.0, _max_abs(t))
    checks = {
        "antisymmetry in (i,j)": t + t.transpose(1, 0, 2, 3),
        "antisymmetry in (k,l)": t + t.transpose(0, 1, 3, 2),
        "pair symmetry": t - t.transpose(2, 3, 0, 1),
        "first Bianchi identity": t + t.transpose(0, 2, 3, 1) + t.transpose(0, 3, 1, 2),
    }
    for label, dev in checks.items():
        worst = _max_abs(dev)
        if worst > tol * scale:
            raise TensorFormatError(f"{label} violated (max deviation {worst:.3e})")


def _inv(g):
    g = np.asarray(g)
    n = g.shape[0]
    if g.dtype != object:
        try:
            return np.linalg.inv(g)
        except np.linalg.LinAlgError as exc:
            raise SingularMetric(str(exc)) from exc
    # exact Gauss-Jordan elimination for Fraction entries
    m = [[Fraction(g[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SingularMetric("exact metric is singular")
        m[col], m[piv] = m[piv], m[col]
        lead = m[col][col]
        m[col] = [x / lead for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return np.array([row[n:] for row in m], dtype=object)


def kulkarni_nomizu(h, k):
    """(h (x) k)[i,j,k,l] = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il."""
    h = np.asarray(h)
    k = np.asarray(k)
    if h.shape != k.shape or h.ndim != 2:
        raise DimensionMismatch(f"incompatible shapes {h.shape} and {k.shape}")
    return (
        np.einsum("ik,jl->ijkl", h, k)
        + np.einsum("jl,ik->ijkl", h, k)
        - np.einsum("il,jk->ijkl", h, k)
        - np.einsum("jk,il->ijkl", h, k)
    )


def ricci(t, g=None):
    t = np.asarray(t)
    if g is None:
        return np.einsum("jijk->ik", t)
    validate_metric(g)
    return np.einsum("lj,lijk->ik", _inv(g), t)


def scalar_curv(t, g=None):
    ric = ricci(t, g)
    if g is None:
        return np.einsum("ii->", ric)
    return np.einsum("ik,ik->", _inv(g), ric)


def traceless_ricci(t, g=None):
    n = np.asarray(t).shape[0]
    ric = ricci(t, g)
    r_scal = scalar_curv(t, g)
    gmat = identity_metric(n, exact=np.asarray(t).dtype == object) if g is None else np.asarray(g)
    if np.asarray(t).dtype == object:
        return ric - Fraction(r_scal) / n * gmat
    return ric - (r_scal / n) * np.asarray(gmat, dtype=float)


def norm2(a, g=None):
    """Squared tensor norm with all indices raised by the inverse metric."""
    a = np.asarray(a)
    if g is None or _is_identity(np.asarray(g)):
        return (a * a).sum()
    ginv = _inv(g)
    paths = {
        1: ("a,ai,i->", 1),
        2: ("ab,ai,bj,ij->", 2),
        3: ("abc,ai,bj,ck,ijk->", 3),
        4: ("abcd,ai,bj,ck,dl,ijkl->", 4),
    }
    path, count = paths[a.ndim]
    return np.einsum(path, a, *([ginv] * count), a)


@dataclass(frozen=True)
class CurvDecomposition:
    """Orthogonal split of a curvature tensor into Weyl, Ricci, scalar parts."""

    weyl: np.ndarray
    traceless_ricci: np.ndarray
    scalar: object


def decompose(t, g=None):
    t = np.asarray(t)
    n = t.shape[0]
    if n < 3:
        from .errors import DimensionTooSmall

        raise DimensionTooSmall(f"decomposition needs n >= 3, got {n}")
    exact = t.dtype == object
    gmat = identity_metric(n, exact=exact) if g is None else np.asarray(g)
    if g is not None:
        validate_metric(gmat)
    ric0 = traceless_ricci(t, g)
    r_scal = scalar_curv(t, g)
    if exact:
        ricci_part = Fraction(1, n - 2) * kulkarni_nomizu(ric0, gmat)
        scalar_part = Fraction(r_scal) / (2 * n * (n - 1)) * kulkarni_nomizu(gmat, gmat)
    else:
        ricci_part = kulkarni_nomizu(ric0, gmat) / (n - 2)
        scalar_part = (r_scal / (2 * n * (n - 1))) * kulkarni_nomizu(gmat, gmat)
    weyl = t - ricci_part - scalar_part
    return CurvDecomposition(weyl=weyl, traceless_ricci=ric0, scalar=r_scal)


def recompose(dec, g=None):
    weyl = np.asarray(dec.weyl)
    n = weyl.shape[0]
    exact = weyl.dtype == object
    gmat = identity_metric(n, exact=exact) if g is None else np.asarray(g)
    if exact:
        return (
            weyl
            + Fraction(1, n - 2) * kulkarni_nomizu(dec.traceless_ricci, gmat)
            + Fraction(dec.scalar) / (2 * n * (n - 1)) * kulkarni_nomizu(gmat, gmat)
        )
    return (
        weyl
        + kulkarni_nomizu(dec.traceless_ricci, gmat) / (n - 2)
        + (dec.scalar / (2 * n * (n - 1))) * kulkarni_nomizu(gmat, gmat)
    )


def contractions(t, r):
    """quad = sum T[i,k,j,l] r_ij r_kl; cubic = sum r_ij r_ik r_jk.

    Components are taken in an orthonormal frame.
    """
    t = np.asarray(t)
    r = np.asarray(r)
    quad = np.einsum("ikjl,ij,kl->", t, r, r)
    cubic = np.einsum("ij,ik,jk->", r, r, r)
    return {"quad": quad, "cubic": cubic}


def sectional(t, x, y, g=None):
    """Sectional curvature of the plane spanned by x and y."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gmat = np.eye(len(x)) if g is None else np.asarray(g, dtype=float)
    gx, gy = gmat @ x, gmat @ y
    x2, y2, xy = x @ gx, y @ gy, x @ gy
    gram = x2 * y2 - xy * xy
    if x2 == 0.0 or y2 == 0.0 or gram <= 1e-12 * x2 * y2:
        raise DegeneratePlane(
            f"vectors do not span a 2-plane (gram {gram:.3e}, |x|^2 |y|^2 {x2 * y2:.3e})"
        )
    num = np.einsum("ijkl,i,j,k,l->", t, x, y, x, y)
    return float(num / gram)


def _orthonormal_frame_map(g):
    """Columns of the returned matrix form a g-orthonormal frame."""
    chol = np.linalg.cholesky(np.asarray(g, dtype=float))
    return np.linalg.inv(chol).T


def to_orthonormal_frame(t, g, *two_tensors):
    """Re-express a curvature tensor (and optional 2-tensors) in a g-orthonormal frame."""
    if g is None or _is_identity(np.asarray(g)):
        out = (np.asarray(t, dtype=float),) + tuple(
            np.asarray(a, dtype=float) for a in two_tensors
        )
        return out if two_tensors else out[0]
    validate_metric(g)
    frame = _orthonormal_frame_map(g)
    t_frame = np.einsum("ijkl,ia,jb,kc,ld->abcd", np.asarray(t, dtype=float),
                        frame, frame, frame, frame)
    rest = tuple(
        frame.T @ np.asarray(a, dtype=float) @ frame for a in two_tensors
    )
    return (t_frame,) + rest if two_tensors else t_frame


def _restricted_min_eig(m, y):
    """Smallest eigenpair of m on the hyperplane orthogonal to the unit vector y."""
    proj = np.eye(len(y)) - np.outer(y, y)
    lifted = proj @ m @ proj
    lift = float(np.abs(np.linalg.eigvalsh(m)).max()) + 1.0
    lifted = lifted + lift * np.outer(y, y)
    vals, vecs = np.linalg.eigh(lifted)
    x = vecs[:, 0]
    x = x - y * (y @ x)
    x = x / np.linalg.norm(x)
    return x


def min_sectional(t, g=None, restarts=8, iters=100, tol=1e-12, seed=0):
    """Multistart minimization of sectional curvature over 2-planes.

    Alternates exact one-vector minimizations: with y fixed, the best x is
    the smallest eigenvector of M[i,k] = sum_jl T[i,j,k,l] y_j y_l restricted
    to the orthogonal complement of y, and symmetrically.  Each step is a
    global minimization in its block, so the objective is non-increasing.
    Restart r uses seed + r; the best (value, restart index) wins.

    Returns (value, (x, y)) with x, y a g-orthonormal basis of the plane.
    """
    t = np.asarray(t)
    n = t.shape[0]
    if n < 3:
        from .errors import DimensionTooSmall

        raise DimensionTooSmall(f"plane search needs n >= 3, got {n}")
    if n > 8:
        raise ValueError(f"plane search supports n <= 8, got {n}")
    frame = None
    if g is not None and not _is_identity(np.asarray(g)):
        validate_metric(g)
        frame = _orthonormal_frame_map(g)
        tf = np.einsum("ijkl,ia,jb,kc,ld->abcd", np.asarray(t, dtype=float),
                       frame, frame, frame, frame)
    else:
        tf = np.asarray(t, dtype=float)
    best = None
    for ridx in range(restarts):
        rng = np.random.default_rng(seed + ridx)
        basis, _ = np.linalg.qr(rng.standard_normal((n, 2)))
        x, y = basis[:, 0], basis[:, 1]
        prev = np.inf
        for _ in range(iters):
            m_y = np.einsum("ijkl,j,l->ik", tf, y, y)
            x = _restricted_min_eig(m_y, y)
            m_x = np.einsum("ijkl,i,k->jl", tf, x, x)
            y = _restricted_min_eig(m_x, x)
            val = float(np.einsum("ijkl,i,j,k,l->", tf, x, y, x, y))
            if prev - val < tol * (1.0 + abs(val)):
                break
            prev = val
        val = float(np.einsum("ijkl,i,j,k,l->", tf, x, y, x, y))
        if best is None or val < best[0]:
            best = (val, ridx, x, y)
    value, _, x, y = best
    if frame is not None:
        x, y = frame @ x, frame @ y
    return value, (x, y)


def sec_safety_margin(value):
    """Shrink margin applied before turning a plane-search minimum into eps."""
    return 1e-6 * abs(value) + 1e-9


def curvature_operator(t):
    """Symmetric matrix of T acting on antisymmetric pairs e_i ^ e_j, i < j.

    Sectional curvatures are Gram-normalized values of this quadratic form on
    decomposable pairs, so every sectional curvature is at least its smallest
    eigenvalue (orthonormal frame).
    """
    t = np.asarray(t, dtype=float)
    n = t.shape[0]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mat = np.empty((len(pairs), len(pairs)))
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            mat[a, b] = t[i, j, k, l]
    return mat


def random_curvature(n, seed, sec_floor=None, shift_restarts=4):
    """Seeded random curvature tensor, optionally shifted to positive curvature.

    A uniform[-1, 1] array is symmetrized over the curvature symmetry group
    and projected onto the kernel of the first-Bianchi cyclic sum.  When
    sec_floor is given, a multiple of g (x) g is added so the estimated
    minimum sectional curvature reaches the floor (adding c * g (x) g raises
    every sectional curvature by exactly 2c).
    """
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, size=(n, n, n, n))
    a = 0.5 * (a - a.transpose(1, 0, 2, 3))
    a = 0.5 * (a - a.transpose(0, 1, 3, 2))
    a = 0.5 * (a + a.transpose(2, 3, 0, 1))
    cyc = (a + a.transpose(0, 2, 3, 1) + a.transpose(0, 3, 1, 2)) / 3.0
    t = a - cyc
    if sec_floor is not None:
        shift_seed = int(rng.integers(2**31))
        est, _ = min_sectional(t, restarts=shift_restarts, tol=1e-10, seed=shift_seed)
        if est < sec_floor:
            shift = 0.5 * (sec_floor - est)
            t = t + shift * kulkarni_nomizu(np.eye(n), np.eye(n))
    return t


def gauss_bonnet_integrand(t, g=None):
    """|W|^2 - 2|Ric|^2 + (2/3) R^2, the dimension-4 total-curvature density."""
    dec = decompose(t, g)
    w2 = norm2(dec.weyl, g)
    ric2 = norm2(ricci(t, g), g)
    r_scal = scalar_curv(t, g)
    return w2 - 2 * ric2 + 2 * r_scal * r_scal / 3


def save_tensor_json(path, t, convention=CONVENTION):
    t = np.asarray(t)
    if t.dtype == object:
        entries = np.vectorize(lambda x: str(Fraction(x)), otypes=[object])(t).tolist()
    else:
        entries = t.tolist()
    payload = {"dim": t.shape[0], "convention": convention, "entries": entries}
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True)


def load_tensor_json(path, tol=1e-12):
    with open(path) as fh:
        payload = json.load(fh)
    for key in ("dim", "convention", "entries"):
        if key not in payload:
            raise TensorFormatError(f"tensor file missing '{key}'")
    entries = payload["entries"]
    flat = np.asarray(entries, dtype=object).ravel()
    if flat.size and isinstance(flat[0], str):
        t = np.vectorize(Fraction, otypes=[object])(np.asarray(entries, dtype=object))
    else:
        t = np.asarray(entries, dtype=float)
    n = payload["dim"]
    if t.shape != (n, n, n, n):
        raise TensorFormatError(f"entries shape {t.shape} does not match dim {n}")
    validate_curvature(t, tol=tol)
    return t
