"""Exact curvature fixtures of known spaces, used as oracles throughout.

Every fixture carries its curvature tensor in an orthonormal frame with
exact rational entries, together with a dictionary of known invariants
(scalar curvature, Ricci eigenvalues, sectional-curvature range, Einstein
and Weyl-flat flags) that the tensor layer must reproduce.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import tensors
from .errors import DimensionTooSmall


@dataclass(frozen=True)
class ModelSpace:
    name: str
    dim: int
    metric: np.ndarray
    curvature: np.ndarray
    known: dict = field(default_factory=dict)


def space_form(n, kappa):
    """Constant-curvature space: curvature (kappa/2) g (x) g in an orthonormal frame.

    Covers the round sphere (kappa > 0) and its quotients such as real
    projective space, which share the same local curvature data; flat space
    (kappa = 0); and hyperbolic space (kappa < 0).
    """
    if n < 2:
        raise DimensionTooSmall(f"space form needs n >= 2, got {n}")
    kappa = Fraction(kappa)
    g = tensors.identity_metric(n, exact=True)
    curv = Fraction(1, 2) * kappa * tensors.kulkarni_nomizu(g, g)
    known = {
        "scalar": n * (n - 1) * kappa,
        "ricci_eigenvalues": [(n - 1) * kappa] * n,
        "sec_range": (kappa, kappa),
        "is_einstein": True,
        "weyl_zero": True,
    }
    return ModelSpace(
        name=f"space_form(n={n}, kappa={kappa})",
        dim=n,
        metric=g,
        curvature=curv,
        known=known,
    )


def fubini_study_cp2():
    """The complex projective plane, normalized so Sec ranges over [1, 4].

    The tensor is generated from the standard complex structure J:

        T[i,j,k,l] = d_ik d_jl - d_il d_jk + J_ik J_jl - J_il J_jk + 2 J_ij J_kl

    giving constant holomorphic sectional curvature 4, scalar curvature 24,
    and Ric = 6 g; an Einstein space with nonzero Weyl part whose minimum
    sectional curvature sits strictly inside the positive cone.
    """
    n = 4
    jmat = np.array(
        [
            [Fraction(0), Fraction(1), Fraction(0), Fraction(0)],
            [Fraction(-1), Fraction(0), Fraction(0), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
            [Fraction(0), Fraction(0), Fraction(-1), Fraction(0)],
        ],
        dtype=object,
    )
    delta = tensors.identity_metric(n, exact=True)
    curv = (
        np.einsum("ik,jl->ijkl", delta, delta)
        - np.einsum("il,jk->ijkl", delta, delta)
        + np.einsum("ik,jl->ijkl", jmat, jmat)
        - np.einsum("il,jk->ijkl", jmat, jmat)
        + 2 * np.einsum("ij,kl->ijkl", jmat, jmat)
    )
    known = {
        "scalar": Fraction(24),
        "ricci_eigenvalues": [Fraction(6)] * n,
        "sec_range": (Fraction(1), Fraction(4)),
        "is_einstein": True,
        "weyl_zero": False,
    }
    return ModelSpace(
        name="fubini_study_cp2",
        dim=n,
        metric=delta,
        curvature=curv,
        known=known,
    )


def product_spheres(r1, r2):
    """S^2(r1) x S^2(r2) in an orthonormal frame: two curvature blocks.

    Mixed planes are flat, so the minimum sectional curvature is 0 for
    every choice of radii; the product is Einstein exactly when r1 = r2.
    """
    r1 = Fraction(r1)
    r2 = Fraction(r2)
    if r1 <= 0 or r2 <= 0:
        raise ValueError(f"radii must be positive, got {r1}, {r2}")
    kappa1 = 1 / (r1 * r1)
    kappa2 = 1 / (r2 * r2)
    n = 4
    g = tensors.identity_metric(n, exact=True)
    block1 = np.array(
        [[g[i, j] if i < 2 and j < 2 else Fraction(0) for j in range(n)] for i in range(n)],
        dtype=object,
    )
    block2 = g - block1
    curv = (
        Fraction(1, 2) * kappa1 * tensors.kulkarni_nomizu(block1, block1)
        + Fraction(1, 2) * kappa2 * tensors.kulkarni_nomizu(block2, block2)
    )
    known = {
        "scalar": 2 * kappa1 + 2 * kappa2,
        "ricci_eigenvalues": [kappa1, kappa1, kappa2, kappa2],
        "sec_range": (Fraction(0), max(kappa1, kappa2)),
        "is_einstein": r1 == r2,
        "weyl_zero": False,
    }
    return ModelSpace(
        name=f"product_spheres(r1={r1}, r2={r2})",
        dim=n,
        metric=g,
        curvature=curv,
        known=known,
    )


def all_fixtures():
    """The standard oracle set used by the verification suites."""
    return [
        space_form(3, 1),
        space_form(4, 1),
        space_form(4, Fraction(1, 4)),
        space_form(5, 1),
        space_form(4, 0),
        space_form(4, -1),
        fubini_study_cp2(),
        product_spheres(1, 1),
        product_spheres(1, 2),
        product_spheres(Fraction(1, 2), 2),
    ]
