"""Pointwise curvature inequalities and contraction identities.

Evaluates, on explicit tensor data, the two bounds on the quadratic
curvature contraction quad = sum T[i,k,j,l] r_ij r_kl (r the traceless
Ricci tensor) under the pinching hypothesis Sec >= eps * R, their mixing
over s in [0, 1], the squared-norm expansion of the combined gradient
3-tensor, and the contracted Weitzenboeck identity.  All evaluators work
on components in a g-orthonormal frame; passing a non-identity metric
re-expresses the inputs in such a frame first.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import proof, tensors
from .algebra import Poly, RationalFunc
from .certificates import ExactIdentity
from .errors import (
    DimensionTooSmall,
    HypothesisUnverified,
    NonTracelessInput,
    SOutOfRange,
)


@dataclass(frozen=True)
class IneqReport:
    """One evaluated inequality: violation means slack < -tolerance."""

    name: str
    lhs: float
    rhs: float
    slack: float
    params: dict = field(default_factory=dict)
    witness: str = ""

    def violates(self, tol=1e-9):
        return self.slack < -tol

    def to_json_line(self):
        return json.dumps(
            {
                "name": self.name,
                "lhs": self.lhs,
                "rhs": self.rhs,
                "slack": self.slack,
                "params": {k: (str(v) if isinstance(v, Fraction) else v)
                           for k, v in self.params.items()},
                "witness": self.witness,
            },
            sort_keys=True,
        )


def _frame_and_parts(t, g):
    tf = tensors.to_orthonormal_frame(t, g) if g is not None else np.asarray(t, dtype=float)
    r = tensors.traceless_ricci(tf)
    r_scal = float(tensors.scalar_curv(tf))
    return tf, r, r_scal


def _check_hypothesis(eps, r_scal, sec_min):
    margin = tensors.sec_safety_margin(sec_min)
    if eps * r_scal > sec_min + margin:
        raise HypothesisUnverified(
            f"eps * R = {eps * r_scal:.6g} exceeds the certified minimum "
            f"sectional curvature {sec_min:.6g} (+ margin {margin:.3g})"
        )


def admissible_eps(t, g=None, seed=0, restarts=6):
    """Largest safely-testable eps for the hypothesis Sec >= eps * R.

    Runs the plane search, shrinks by the safety margin, divides by the
    scalar curvature.  Returns (eps, sec_min, scalar).
    """
    tf = tensors.to_orthonormal_frame(t, g) if g is not None else np.asarray(t, dtype=float)
    sec_min, _ = tensors.min_sectional(tf, restarts=restarts, seed=seed)
    r_scal = float(tensors.scalar_curv(tf))
    if r_scal == 0.0:
        raise ZeroDivisionError("scalar curvature is zero; eps is unconstrained")
    eps = (sec_min - tensors.sec_safety_margin(sec_min)) / r_scal
    return eps, sec_min, r_scal


def quad_bound_first(t, eps, g=None, sec_min=None, seed=0, restarts=6, witness=""):
    """quad <= ((1 - n^2 eps)/n) R |r|^2 + cubic under Sec >= eps R."""
    tf, r, r_scal = _frame_and_parts(t, g)
    n = tf.shape[0]
    if sec_min is None:
        sec_min, _ = tensors.min_sectional(tf, restarts=restarts, seed=seed)
    _check_hypothesis(eps, r_scal, sec_min)
    parts = tensors.contractions(tf, r)
    r2 = float((r * r).sum())
    lhs = float(parts["quad"])
    rhs = (1 - n * n * eps) / n * r_scal * r2 + float(parts["cubic"])
    return IneqReport(
        name="quad_bound_first",
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        params={"n": n, "eps": eps, "s": None},
        witness=witness,
    )


def quad_bound_second(t, eps, g=None, sec_min=None, seed=0, restarts=6, witness=""):
    """quad <= ((n^2-4n+2 - n^2(n-2)(n-3) eps)/(2n)) R |r|^2 - (n-1) cubic."""
    tf, r, r_scal = _frame_and_parts(t, g)
    n = tf.shape[0]
    if sec_min is None:
        sec_min, _ = tensors.min_sectional(tf, restarts=restarts, seed=seed)
    _check_hypothesis(eps, r_scal, sec_min)
    parts = tensors.contractions(tf, r)
    r2 = float((r * r).sum())
    lhs = float(parts["quad"])
    coef = (n * n - 4 * n + 2 - n * n * (n - 2) * (n - 3) * eps) / (2 * n)
    rhs = coef * r_scal * r2 - (n - 1) * float(parts["cubic"])
    return IneqReport(
        name="quad_bound_second",
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        params={"n": n, "eps": eps, "s": None},
        witness=witness,
    )


def quad_bound_mixed(t, eps, s, g=None, sec_min=None, seed=0, restarts=6, witness=""):
    """The s-interpolation of the two quadratic-contraction bounds, s in [0, 1].

    At s = 1 the coefficients reduce to the first bound, at s = 0 to the
    second; see mixed_bound_endpoint_identities for the exact reductions.
    """
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise SOutOfRange(f"s must lie in [0, 1], got {s}")
    tf, r, r_scal = _frame_and_parts(t, g)
    n = tf.shape[0]
    if sec_min is None:
        sec_min, _ = tensors.min_sectional(tf, restarts=restarts, seed=seed)
    _check_hypothesis(eps, r_scal, sec_min)
    parts = tensors.contractions(tf, r)
    r2 = float((r * r).sum())
    lhs = float(parts["quad"])
    coef_r = (n * n - 4 * n + 2 - n * n * (n - 2) * (n - 3) * eps) / (2 * n) - (
        (n - 4) / 2 * (1 - n * (n - 1) * eps) * s
    )
    coef_cubic = -(n - 1 - n * s)
    rhs = coef_r * r_scal * r2 + coef_cubic * float(parts["cubic"])
    return IneqReport(
        name="quad_bound_mixed",
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        params={"n": n, "eps": eps, "s": s},
        witness=witness,
    )


def mixed_bound_endpoint_identities():
    """Exact coefficient reductions of the mixed bound at s = 0 and s = 1."""
    n = RationalFunc(Poly.var("n"))
    eps = RationalFunc(Poly.var("eps"))
    s = RationalFunc(Poly.var("s"))
    one = RationalFunc.const(1)
    coef_r = (n * n - 4 * n + 2 - n * n * (n - 2) * (n - 3) * eps) / (2 * n) - (
        (n - 4) / 2 * (one - n * (n - 1) * eps) * s
    )
    coef_cubic = -(n - 1 - n * s)
    first_r = (one - n * n * eps) / n
    second_r = (n * n - 4 * n + 2 - n * n * (n - 2) * (n - 3) * eps) / (2 * n)
    return (
        ExactIdentity(
            "mixed_coef_R_at_s1",
            coef_r.subst({"s": Fraction(1)}),
            first_r,
            note="R|r|^2 coefficient at s = 1 equals the first bound's",
        ),
        ExactIdentity(
            "mixed_coef_cubic_at_s1",
            coef_cubic.subst({"s": Fraction(1)}),
            one,
            note="cubic coefficient at s = 1 equals the first bound's (+1)",
        ),
        ExactIdentity(
            "mixed_coef_R_at_s0",
            coef_r.subst({"s": Fraction(0)}),
            second_r,
            note="R|r|^2 coefficient at s = 0 equals the second bound's",
        ),
        ExactIdentity(
            "mixed_coef_cubic_at_s0",
            coef_cubic.subst({"s": Fraction(0)}),
            -(n - 1),
            note="cubic coefficient at s = 0 equals the second bound's -(n-1)",
        ),
    )


def f_norm_identity(grad_ric, a1, a2, b1, b2, b3):
    """Direct and expanded values of |F|^2 for the combined gradient 3-tensor.

    F[i,j,k] = G[i,j,k] + a1 G[i,k,j] + a2 G[j,k,i]
               + b1 v_k d_ij + b2 v_j d_ik + b3 v_i d_jk

    where G is symmetric and traceless in (i, j) (the gradient of a traceless
    symmetric 2-tensor, derivative index last) and v_i = (2n/(n-2)) G[i,k,k]
    is the scalar-gradient vector the trace of G determines.  The expansion is

    |F|^2 = (1 + a1^2 + a2^2)|G|^2 + 2(a1 + a2 + a1 a2) sum G[i,j,k] G[i,k,j]
            + Q0(a, b, n) |v|^2.

    Returns (direct, formula); the two agree to roundoff for every choice of
    the five coefficients.
    """
    grad = np.asarray(grad_ric, dtype=float)
    n = grad.shape[0]
    if n < 3:
        raise DimensionTooSmall(f"the trace factor 2n/(n-2) needs n >= 3, got {n}")
    tensors.validate_three(grad, tol=1e-9)
    a1, a2, b1, b2, b3 = (float(x) for x in (a1, a2, b1, b2, b3))
    v = (2 * n / (n - 2)) * np.einsum("ikk->i", grad)
    eye = np.eye(n)
    f = (
        grad
        + a1 * grad.transpose(0, 2, 1)
        + a2 * grad.transpose(2, 0, 1)
        + b1 * np.einsum("k,ij->ijk", v, eye)
        + b2 * np.einsum("j,ik->ijk", v, eye)
        + b3 * np.einsum("i,jk->ijk", v, eye)
    )
    direct = float((f * f).sum())
    cross = float(np.einsum("ijk,ikj->", grad, grad))
    q0 = float(
        proof.build_q0().evaluate(
            {"a1": a1, "a2": a2, "b1": b1, "b2": b2, "b3": b3, "n": n}
        )
    )
    formula = (
        (1 + a1 * a1 + a2 * a2) * float((grad * grad).sum())
        + 2 * (a1 + a2 + a1 * a2) * cross
        + q0 * float(v @ v)
    )
    return direct, formula


def weitzenboeck_contract(t, r, hess, coupling, g=None):
    """Both sides of the contracted Weitzenboeck identity.

    lhs pairs the traceless Ricci r against the curvature terms of the
    rough-Laplacian equation for r (with free symmetric input hess playing
    the scalar-curvature Hessian and coupling playing t):

        (1+2t) hess - ((1+2t)/n) tr(hess) g - 2 T[i,k,j,l] r_kl
        - ((2+2nt)/n) R r + (2/n) |r|^2 g

    rhs collects what survives tracelessness:

        (1+2t) <hess, r> - 2 quad - ((2+2nt)/n) R |r|^2.

    Returns (lhs, rhs); equal to roundoff.
    """
    coupling = float(coupling)
    if g is not None:
        tf, rf, hf = tensors.to_orthonormal_frame(t, g, r, hess)
    else:
        tf = np.asarray(t, dtype=float)
        rf = np.asarray(r, dtype=float)
        hf = np.asarray(hess, dtype=float)
    n = tf.shape[0]
    scale = max(1.0, float(np.abs(rf).max(initial=0.0)))
    if abs(float(np.trace(rf))) > 1e-9 * scale:
        raise NonTracelessInput(
            f"r must be traceless, got trace {float(np.trace(rf)):.3e}"
        )
    r_scal = float(tensors.scalar_curv(tf))
    quad = float(tensors.contractions(tf, rf)["quad"])
    r2 = float((rf * rf).sum())
    eye = np.eye(n)
    one_2t = 1 + 2 * coupling
    el = (
        one_2t * hf
        - (one_2t / n) * float(np.trace(hf)) * eye
        - 2 * np.einsum("ikjl,kl->ij", tf, rf)
        - ((2 + 2 * n * coupling) / n) * r_scal * rf
        + (2 / n) * r2 * eye
    )
    lhs = float((el * rf).sum())
    rhs = (
        one_2t * float((hf * rf).sum())
        - 2 * quad
        - ((2 + 2 * n * coupling) / n) * r_scal * r2
    )
    return lhs, rhs


def random_sym(n, rng):
    a = rng.uniform(-1.0, 1.0, size=(n, n))
    return 0.5 * (a + a.T)


def random_traceless_sym(n, rng):
    a = random_sym(n, rng)
    return a - (np.trace(a) / n) * np.eye(n)


def random_grad_ric(n, rng):
    """Random 3-tensor symmetric and traceless in its first two indices."""
    a = rng.uniform(-1.0, 1.0, size=(n, n, n))
    a = 0.5 * (a + a.transpose(1, 0, 2))
    trace = np.einsum("iik->k", a)
    return a - np.einsum("k,ij->ijk", trace / n, np.eye(n))
