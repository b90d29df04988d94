"""Coefficient functions of the gradient argument and the optimal pinching threshold.

Everything here works in exact rational arithmetic over the fixed variable
set.  The central objects are the quadratic forms Q0..Q3Rc tying the norm
of a parametrized 3-tensor to the gradient terms, the elimination value of
the interpolation weight s, and the threshold function

    eps(a1, a2, n, t) = (1 + 2t) / (2n*h + 4 + n(n-3)),
    h = (a1 + a2 + a1*a2) / (1 + a1^2 + a2^2),

whose global extremum over (a1, a2) yields the piecewise pinching bound

    (1 + 2t)/(n-2)^2        for t <= -1/2,
    (1 + 2t)/(n^2 - n + 4)  for t >  -1/2.

Optimality is certified, not searched for: exact sum-of-squares identities
bound h in [-1/2, 1], and exact gap identities express eps minus each
branch value as a manifestly signed product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .algebra import Poly, RationalFunc, rf_to_text
from .certificates import (
    BFeasibility,
    ExactIdentity,
    PinchCertificate,
    ShiftPositivityWitness,
    SosCertificate,
    StationaryMinCertificate,
)
from .errors import DimensionTooSmall, NegativeRadicand

_A1 = Poly.var("a1")
_A2 = Poly.var("a2")
_B1 = Poly.var("b1")
_B2 = Poly.var("b2")
_B3 = Poly.var("b3")
_T = Poly.var("t")
_N = Poly.var("n")
_EPS = Poly.var("eps")
_S = Poly.var("s")

HALF = Fraction(1, 2)


def _check_dim(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("dimension n must be an integer")
    if n < 3:
        raise DimensionTooSmall(f"n = {n}; the argument needs n >= 3")
    return n


# -- the basic scalar functions of (a1, a2) ------------------------------------


@lru_cache(maxsize=None)
def h_func() -> RationalFunc:
    """h = (a1 + a2 + a1*a2) / (1 + a1^2 + a2^2), bounded in [-1/2, 1]."""
    return RationalFunc(_A1 + _A2 + _A1 * _A2, 1 + _A1**2 + _A2**2)


@lru_cache(maxsize=None)
def f_func() -> RationalFunc:
    """f = a1 + a2 + a1*a2 + 1 + a1^2 + a2^2, with global minimum 2/3."""
    return RationalFunc(_A1 + _A2 + _A1 * _A2 + 1 + _A1**2 + _A2**2)


@lru_cache(maxsize=None)
def g_func() -> RationalFunc:
    """g = (n-1)*f + a1 + a2 + a1*a2; positivity gives the lower range of s."""
    return RationalFunc(_N - 1) * f_func() + RationalFunc(_A1 + _A2 + _A1 * _A2)


# -- the quadratic forms --------------------------------------------------------


@lru_cache(maxsize=None)
def build_q0() -> RationalFunc:
    """Coefficient of |grad R|^2 in the squared norm of the parametrized 3-tensor."""
    linear = _A1 * (_B1 + _B3) + _A2 * (_B1 + _B2) + _B2 + _B3
    quad = _N * (_B1**2 + _B2**2 + _B3**2) + 2 * (
        _B1 * _B2 + _B1 * _B3 + _B2 * _B3
    )
    return RationalFunc(_N - 2, _N) * RationalFunc(linear) + RationalFunc(quad)


@lru_cache(maxsize=None)
def build_q1() -> RationalFunc:
    denom = RationalFunc(1 + _A1**2 + _A2**2)
    correction = (
        RationalFunc(_N - 2, 2 * _N) ** 2
        * RationalFunc(2 * (_A1 + _A2 + _A1 * _A2))
        / denom
    )
    return build_q0() / denom + correction


@lru_cache(maxsize=None)
def build_q2() -> RationalFunc:
    return build_q1() + RationalFunc((_N - 2) * (1 + 2 * _T), 2 * _N)


@lru_cache(maxsize=None)
def build_q_rrc() -> RationalFunc:
    """Coefficient of R|ric|^2 before the s-elimination, in (a, t, n, eps, s)."""
    h = h_func()
    two_n = RationalFunc(2, _N)
    first = h * two_n - RationalFunc(2 * (1 + _N * _T), _N)
    bracket = RationalFunc(
        _N**2 - 4 * _N + 2 - _N**2 * (_N - 2) * (_N - 3) * _EPS, 2 * _N
    ) - RationalFunc((_N - 4) * (1 - _N * (_N - 1) * _EPS), 2) * RationalFunc(_S)
    return first - (2 * h + 2) * bracket


@lru_cache(maxsize=None)
def build_q3rc() -> RationalFunc:
    """Coefficient of the cubic trace term; solving it to zero fixes s."""
    h = h_func()
    return 2 * h + (2 * h + 2) * RationalFunc(_N - 1 - _N * _S)


@lru_cache(maxsize=None)
def q3rc_collected() -> RationalFunc:
    """The collected form 2*h*n*(1-s) + 2*(n - 1 - n*s)."""
    h = h_func()
    return 2 * h * RationalFunc(_N * (1 - _S)) + RationalFunc(2 * (_N - 1 - _N * _S))


@lru_cache(maxsize=None)
def s_func() -> RationalFunc:
    """The unique s with Q3Rc = 0: s = (n(1+h) - 1) / (n(1+h))."""
    w = RationalFunc(_N) * (1 + h_func())
    return (w - 1) / w


@lru_cache(maxsize=None)
def eps_func() -> RationalFunc:
    """eps = (1+2t) / (2n*h + 4 + n(n-3)); the denominator is >= (n-2)^2 > 0."""
    den = 2 * RationalFunc(_N) * h_func() + 4 + RationalFunc(_N * (_N - 3))
    return RationalFunc(1 + 2 * _T) / den


@lru_cache(maxsize=None)
def q_rrc_after_s() -> RationalFunc:
    """Q_RRc with the solved s substituted: -1 - 2t + (2n*h + 4 + n(n-3))*eps."""
    return build_q_rrc().subst({"s": s_func()})


def q_rrc_collected_form() -> RationalFunc:
    return (
        RationalFunc(-1 - 2 * _T)
        + (2 * RationalFunc(_N) * h_func() + 4 + RationalFunc(_N * (_N - 3)))
        * RationalFunc(_EPS)
    )


# -- pointwise evaluations -------------------------------------------------------


def _as_frac(x, what: str) -> Fraction:
    if isinstance(x, bool):
        raise TypeError(f"{what} must be a rational number")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"{what} must be a rational number, got {type(x).__name__}")


def solve_s(a1, a2, n=None):
    """The s nulling Q3Rc, exactly; Fraction for integer n, symbolic otherwise."""
    bindings = {"a1": _as_frac(a1, "a1"), "a2": _as_frac(a2, "a2")}
    if n is not None:
        bindings["n"] = Fraction(_check_dim(n))
    out = s_func().subst(bindings)
    return out.constant_value() if n is not None else out


def eps_bound(a1, a2, n, t) -> Fraction:
    """Value of the threshold function at rational (a1, a2, t) and integer n."""
    bindings = {
        "a1": _as_frac(a1, "a1"),
        "a2": _as_frac(a2, "a2"),
        "n": Fraction(_check_dim(n)),
        "t": _as_frac(t, "t"),
    }
    return eps_func().subst(bindings).constant_value()


def threshold(n: int, t) -> Fraction:
    """The piecewise optimal bound; the t = -1/2 seam gives 0 on both branches."""
    n = _check_dim(n)
    t = _as_frac(t, "t")
    if t <= -HALF:
        return Fraction(1 + 2 * t, (n - 2) ** 2)
    return Fraction(1 + 2 * t, n * n - n + 4)


def eq_choices(t) -> tuple[Fraction, Fraction]:
    """The (a1, a2) attaining the piecewise bound."""
    t = _as_frac(t, "t")
    if t < -HALF:
        return (Fraction(-2), Fraction(1))
    if t == -HALF:
        return (Fraction(0), Fraction(0))
    return (Fraction(1), Fraction(1))


# -- certificates ------------------------------------------------------------------


def sos_h_plus_half() -> SosCertificate:
    """2(a1+a2+a1a2) + (1+a1^2+a2^2) = (a1+a2+1)^2 certifies h >= -1/2."""
    base = _A1 + _A2 + 1
    squares = tuple((Fraction(1), base * m) for m in (Poly.one(), _A1, _A2))
    return SosCertificate(
        name="h_lower_bound",
        claim=h_func() + HALF,
        multiplier=Poly.const(2),
        squares=squares,
        note="equality exactly on the line a1 + a2 + 1 = 0",
    )


def sos_one_minus_h() -> SosCertificate:
    """2[(1+a1^2+a2^2) - (a1+a2+a1a2)] = (a1-a2)^2 + (a1-1)^2 + (a2-1)^2."""
    bases = (_A1 - _A2, _A1 - 1, _A2 - 1)
    squares = tuple(
        (Fraction(1), b * m) for b in bases for m in (Poly.one(), _A1, _A2)
    )
    return SosCertificate(
        name="h_upper_bound",
        claim=1 - h_func(),
        multiplier=Poly.const(2),
        squares=squares,
        note="equality exactly at a1 = a2 = 1",
    )


def sos_f_min() -> SosCertificate:
    """36(f - 2/3) = (6a1 + 3a2 + 3)^2 + 3(3a2 + 1)^2, so f >= 2/3 everywhere."""
    return SosCertificate(
        name="f_above_two_thirds",
        claim=f_func() - Fraction(2, 3),
        multiplier=Poly.const(36),
        squares=(
            (Fraction(1), 6 * _A1 + 3 * _A2 + 3),
            (Fraction(3), 3 * _A2 + 1),
        ),
        note="equality exactly at a1 = a2 = -1/3",
    )


def sos_den_at_origin() -> SosCertificate:
    """4(n^2 - 3n + 4) = (2n - 3)^2 + 7 > 0: denominator at a1 = a2 = 0."""
    return SosCertificate(
        name="denominator_origin",
        claim=RationalFunc(_N**2 - 3 * _N + 4),
        multiplier=Poly.const(4),
        squares=((Fraction(1), 2 * _N - 3), (Fraction(7), Poly.one())),
        strict=True,
    )


def sos_den_at_upper() -> SosCertificate:
    """4(n^2 - n + 4) = (2n - 1)^2 + 15 > 0: denominator at a1 = a2 = 1."""
    return SosCertificate(
        name="denominator_upper",
        claim=RationalFunc(_N**2 - _N + 4),
        multiplier=Poly.const(4),
        squares=((Fraction(1), 2 * _N - 1), (Fraction(15), Poly.one())),
        strict=True,
    )


@lru_cache(maxsize=None)
def denominator_identities() -> tuple[ExactIdentity, ExactIdentity]:
    """Exact gaps pinning the eps denominator D = 2n*h + 4 + n(n-3) to [ (n-2)^2, n^2-n+4 ]."""
    d = 2 * RationalFunc(_N) * h_func() + 4 + RationalFunc(_N * (_N - 3))
    lower = ExactIdentity(
        name="den_minus_lower_branch",
        lhs=d - RationalFunc((_N - 2) ** 2),
        rhs=2 * RationalFunc(_N) * (h_func() + HALF),
        note="with h >= -1/2 this gives D >= (n-2)^2 > 0 for n >= 3",
    )
    upper = ExactIdentity(
        name="upper_branch_minus_den",
        lhs=RationalFunc(_N**2 - _N + 4) - d,
        rhs=2 * RationalFunc(_N) * (1 - h_func()),
        note="with h <= 1 this gives D <= n^2 - n + 4",
    )
    return lower, upper


@lru_cache(maxsize=None)
def optimality_identities() -> tuple[ExactIdentity, ExactIdentity]:
    """eps minus each branch value, written as a manifestly signed product."""
    eps = eps_func()
    h = h_func()
    d = 2 * RationalFunc(_N) * h + 4 + RationalFunc(_N * (_N - 3))
    one_two_t = RationalFunc(1 + 2 * _T)
    low = RationalFunc(1 + 2 * _T, (_N - 2) ** 2)
    up = RationalFunc(1 + 2 * _T, _N**2 - _N + 4)
    gap_low = ExactIdentity(
        name="eps_gap_lower_branch",
        lhs=eps - low,
        rhs=-2 * RationalFunc(_N) * one_two_t * (h + HALF)
        / (d * RationalFunc((_N - 2) ** 2)),
        note=(
            "for t < -1/2 the right side is >= 0 (each factor signed by its "
            "certificate), so eps >= (1+2t)/(n-2)^2 with equality iff h = -1/2"
        ),
    )
    gap_up = ExactIdentity(
        name="eps_gap_upper_branch",
        lhs=eps - up,
        rhs=2 * RationalFunc(_N) * one_two_t * (1 - h)
        / (d * RationalFunc(_N**2 - _N + 4)),
        note=(
            "for t > -1/2 the right side is >= 0, so eps >= (1+2t)/(n^2-n+4) "
            "with equality iff h = 1"
        ),
    )
    return gap_low, gap_up


def _witness(name: str, p: Poly, note: str = "") -> ShiftPositivityWitness:
    return ShiftPositivityWitness(name=name, poly=p, note=note)


@lru_cache(maxsize=None)
def certify_f_g_positivity() -> tuple:
    """Certificates behind the sign analysis of f and g.

    f is certified globally by a sum of squares; g, whose minimum depends on
    the dimension symbol, by an exact stationary-point computation for a
    quadratic with positive-definite Hessian, with positivity of every
    dimension-dependent quantity witnessed on n >= 3 by nonnegative shifted
    coefficients.
    """
    f = f_func()
    third = Fraction(-1, 3)
    f_cert = StationaryMinCertificate(
        name="f_global_min",
        function=f,
        point={"a1": RationalFunc.const(third), "a2": RationalFunc.const(third)},
        value=RationalFunc.const(Fraction(2, 3)),
        hessian_det=Poly.const(3),
        positivity=(
            _witness("f_hessian_det", Poly.const(3)),
            _witness("f_hessian_corner", Poly.const(2)),
        ),
        note="quadratic with constant Hessian [[2, 1], [1, 2]]",
    )
    g = g_func()
    crit = RationalFunc(-_N, 3 * _N - 2)
    g_cert = StationaryMinCertificate(
        name="g_global_min",
        function=g,
        point={"a1": crit, "a2": crit},
        value=RationalFunc(2 * _N**2 - 5 * _N + 2, 3 * _N - 2),
        hessian_det=3 * _N**2 - 8 * _N + 4,
        positivity=(
            _witness(
                "g_hessian_det",
                3 * _N**2 - 8 * _N + 4,
                note="shift n = m + 3 gives 3m^2 + 10m + 7",
            ),
            _witness("g_hessian_corner", 2 * _N - 2, note="shift gives 2m + 4"),
            _witness(
                "g_min_numerator",
                2 * _N**2 - 5 * _N + 2,
                note="shift gives 2m^2 + 7m + 5, so the minimum is positive",
            ),
            _witness("g_min_denominator", 3 * _N - 2, note="shift gives 3m + 7"),
        ),
        note="Hessian [[2(n-1), n], [n, 2(n-1)]]; minimum value (2n^2-5n+2)/(3n-2)",
    )
    return (sos_f_min(), f_cert, g_cert)


# -- threshold optimization ----------------------------------------------------------


@dataclass(frozen=True)
class OptimizeResult:
    a1: Fraction
    a2: Fraction
    epsilon: Fraction
    certificates: tuple
    attaining_locus: str


def optimize_eps(n: int, t) -> OptimizeResult:
    """The exact extremum of eps over (a1, a2), with optimality certificates.

    The sign of 1 + 2t decides the branch: for t < -1/2 the bound is the
    minimum of eps and is attained on the line a1 + a2 + 1 = 0 (the
    representative reported is (-2, 1)); for t > -1/2 at the single point
    (1, 1); for t = -1/2 eps vanishes identically.
    """
    n = _check_dim(n)
    t = _as_frac(t, "t")
    a1, a2 = eq_choices(t)
    epsilon = eps_bound(a1, a2, n, t)
    assert epsilon == threshold(n, t)
    gap_low, gap_up = optimality_identities()
    den_low, den_up = denominator_identities()
    if t < -HALF:
        certs = (sos_h_plus_half(), gap_low, den_low, sos_den_at_origin())
        locus = "a1 + a2 + 1 = 0 (h = -1/2); representative (-2, 1)"
    elif t == -HALF:
        certs = (
            ExactIdentity(
                name="eps_vanishes_at_seam",
                lhs=eps_func().subst({"t": -HALF}),
                rhs=RationalFunc.const(0),
                note="numerator 1 + 2t vanishes, so every (a1, a2) attains 0",
            ),
            sos_h_plus_half(),
            den_low,
        )
        locus = "all (a1, a2); eps is identically 0 at t = -1/2"
    else:
        certs = (sos_one_minus_h(), gap_up, den_up, sos_h_plus_half(), den_low)
        locus = "a1 = a2 = 1 (h = 1)"
    return OptimizeResult(a1=a1, a2=a2, epsilon=epsilon, certificates=certs,
                          attaining_locus=locus)


# -- minimization of Q2 over (b1, b2, b3) ----------------------------------------------


@dataclass(frozen=True)
class BMinResult:
    min_value: object  # Fraction, or RationalFunc when n or t stays symbolic
    b_star: tuple  # exact minimizer (Fractions or RationalFuncs)
    feasible: object  # bool when decidable, None when symbolic
    zero_offset_squared: object = None  # Fraction >= 0 when feasible


_B_NAMES = ("b1", "b2", "b3")


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def q2_min_over_b(n, t, a1, a2) -> BMinResult:
    """Exact global minimum of Q2 over (b1, b2, b3).

    Q2 is a quadratic form in the b's whose Hessian 2n*I + 2(ones - I) is
    positive definite for every n >= 3 (leading minors 2n, 4(n^2 - 1),
    (2n + 4)(2n - 2)^2), so the stationary linear system has a unique
    solution: the global minimizer.  n may be None to keep the dimension
    symbolic; t likewise.
    """
    bindings = {"a1": _as_frac(a1, "a1"), "a2": _as_frac(a2, "a2")}
    if n is not None:
        bindings["n"] = Fraction(_check_dim(n))
    if t is not None:
        bindings["t"] = _as_frac(t, "t")
    q2 = build_q2().subst(bindings)

    grads = [q2.diff(b) for b in _B_NAMES]
    hess = [[grads[i].diff(b) for b in _B_NAMES] for i in range(3)]
    zero_b = {b: Fraction(0) for b in _B_NAMES}
    rhs = [-(grad.subst(zero_b)) for grad in grads]

    for row in hess:
        for entry in row:
            for b in _B_NAMES:
                assert entry.diff(b).is_zero(), "Q2 must be quadratic in b"
    # positive definiteness of the Hessian (assert, never handle)
    m1 = hess[0][0]
    m2 = hess[0][0] * hess[1][1] - hess[0][1] * hess[1][0]
    m3 = _det3(hess)
    for minor in (m1, m2, m3):
        if minor.is_constant():
            assert minor.constant_value() > 0, "Hessian minor must be positive"
        else:
            num = minor.num
            den = minor.den
            assert _witness("minor_num", num).check() and _witness("minor_den", den).check()

    det = m3
    b_star = []
    for j in range(3):
        col = [[hess[i][k] if k != j else rhs[i] for k in range(3)] for i in range(3)]
        b_star.append(_det3(col) / det)
    min_value = q2.subst(dict(zip(_B_NAMES, b_star)))

    if n is not None and t is not None:
        min_value = min_value.constant_value()
        b_star_out = tuple(b.constant_value() for b in b_star)
        feasible = min_value <= 0
        offset = None
        if feasible:
            alpha = hess[0][0].constant_value() / 2
            offset = -min_value / alpha
        return BMinResult(min_value, b_star_out, feasible, offset)
    return BMinResult(min_value, tuple(b_star), None, None)


@lru_cache(maxsize=None)
def q2_min_closed_forms() -> dict:
    """Frozen closed forms of the b-minimum at the three optimal (a1, a2)."""
    return {
        (Fraction(1), Fraction(1)): RationalFunc(
            (_N - 2) * (_N + _T * (_N + 2)), _N * (_N + 2)
        ),
        (Fraction(-2), Fraction(1)): RationalFunc(_N - 2, 2 * _N)
        * (RationalFunc(1 + 2 * _T) - RationalFunc(_N - 2, 2 * (_N - 1))),
        (Fraction(0), Fraction(0)): RationalFunc(
            -((_N - 2) ** 2), 2 * _N * (_N - 1) * (_N + 2)
        ),
    }


@lru_cache(maxsize=None)
def q2_min_upper_positivity() -> tuple:
    """Why the (1, 1) minimum is positive for every n >= 3, t > -1/2.

    Writing t = -1/2 + u, the minimum becomes
        (n-2) * [ (n-2)/2 + u*(n+2) ] / (n(n+2)),
    a product of factors positive for n >= 3 and u > 0.
    """
    rf = q2_min_closed_forms()[(Fraction(1), Fraction(1))]
    # substitute t = -1/2 + u, reusing the s slot for u (unused by this form)
    shifted = rf.subst({"t": RationalFunc(_S) - HALF})
    expected = (
        RationalFunc(_N - 2)
        * (RationalFunc(_N - 2, 2) + RationalFunc(_S) * RationalFunc(_N + 2))
        / RationalFunc(_N * (_N + 2))
    )
    identity = ExactIdentity(
        name="q2_min_upper_shifted",
        lhs=shifted,
        rhs=expected,
        note="with u = t + 1/2 > 0 every factor is positive for n >= 3",
    )
    witnesses = (
        _witness("factor_n_minus_2", _N - 2),
        _witness("factor_n", _N),
        _witness("factor_n_plus_2", _N + 2),
    )
    return (identity,) + witnesses


# -- the published b values ---------------------------------------------------------


@dataclass(frozen=True)
class PaperBCheck:
    ok: bool
    residual: object  # mpf
    b: tuple  # mpf triple
    branch: str
    radicand: Fraction  # argument of the square root, exact


def paper_b_radicand(n: int, t) -> Fraction:
    """3n^2 (n-2) [4t - (1+4t)n] / (2(n-1)), the square-root argument for t < -1/2."""
    n = _check_dim(n)
    t = _as_frac(t, "t")
    return Fraction(3 * n * n * (n - 2), 2 * (n - 1)) * (4 * t - (1 + 4 * t) * n)


def verify_paper_b(n: int, t, dps: int = 60, tol: str = "1e-40") -> PaperBCheck:
    """Evaluate the published (b1, b2, b3) and check Q2 = 0 at high precision.

    Uses >= 50 significant digits; the residual must fall below 1e-40.
    Raises NegativeRadicand when the square-root argument is negative
    (its sign for general (n, t) is reported, never assumed).
    """
    n = _check_dim(n)
    t = _as_frac(t, "t")
    if t > -HALF:
        raise ValueError("published b formulas exist only for t <= -1/2")
    old_dps = mpmath.mp.dps
    mpmath.mp.dps = max(dps, 50)
    try:
        if t < -HALF:
            branch = "t < -1/2"
            rad = paper_b_radicand(n, t)
            if rad < 0:
                raise NegativeRadicand(
                    f"radicand {rad} < 0 at n = {n}, t = {t}"
                )
            root = mpmath.sqrt(mpmath.mpf(rad.numerator) / rad.denominator)
            b1 = (
                mpmath.mpf(1) / n
                + mpmath.mpf(1) / (2 - 2 * n)
                - root / n**2
            )
            b2 = mpmath.mpf(-(n - 2)) / (n * (n - 1))
            b3 = mpmath.mpf(n * n - n - 2) / (2 * n * (n + 1) * (n - 1))
            a1, a2 = Fraction(-2), Fraction(1)
        else:
            branch = "t = -1/2"
            rad = Fraction(2 * (n - 2) ** 2, n * n + n - 2)
            root = mpmath.sqrt(mpmath.mpf(rad.numerator) / rad.denominator)
            b1 = (
                mpmath.mpf(1) / n
                - root / (2 * n)
                - mpmath.mpf(n) / (n * n + n - 2)
            )
            b2 = b3 = mpmath.mpf(-(n - 2)) / (2 * (n * n + n - 2))
            a1, a2 = Fraction(0), Fraction(0)
        q2 = build_q2().subst(
            {"a1": a1, "a2": a2, "n": Fraction(n), "t": t}
        )
        residual = abs(
            q2.evaluate({"b1": b1, "b2": b2, "b3": b3})
        )
        return PaperBCheck(
            ok=residual < mpmath.mpf(tol),
            residual=residual,
            b=(b1, b2, b3),
            branch=branch,
            radicand=rad,
        )
    finally:
        mpmath.mp.dps = old_dps


# -- the assembled certificate ----------------------------------------------------------


def theorem_lookup(n: int, t) -> PinchCertificate:
    """Full pinching certificate at integer n >= 3 and rational t."""
    n = _check_dim(n)
    t = _as_frac(t, "t")
    opt = optimize_eps(n, t)
    s_val = solve_s(opt.a1, opt.a2, n)
    requires_const = t > -HALF

    bmin = q2_min_over_b(n, t, opt.a1, opt.a2)
    if bmin.feasible:
        residual = None
        if t <= -HALF:
            check = verify_paper_b(n, t)
            residual = mpmath.nstr(check.residual, 8, strip_zeros=False)
        feas = BFeasibility(
            feasible=True,
            min_value=bmin.min_value,
            b_at_min=bmin.b_star,
            zero_offset_squared=bmin.zero_offset_squared,
            paper_b_residual=residual,
            note=(
                "the b-quadratic reaches a nonpositive minimum, so its zero set "
                "is nonempty: no constant-scalar-curvature assumption is needed"
            ),
        )
    else:
        feas = BFeasibility(
            feasible=False,
            min_value=bmin.min_value,
            b_at_min=bmin.b_star,
            positivity=q2_min_upper_positivity(),
            note=(
                "the b-quadratic is bounded below by a positive value, so no "
                "real (b1, b2, b3) nulls it; constant scalar curvature is assumed"
            ),
        )
    assert requires_const == (not feas.feasible)

    subs = {"a1": opt.a1, "a2": opt.a2, "n": Fraction(n), "t": t}
    q_coeffs = {
        "Q0": rf_to_text(build_q0().subst(subs)),
        "Q1": rf_to_text(build_q1().subst(subs)),
        "Q2": rf_to_text(build_q2().subst(subs)),
        "Q_RRc": rf_to_text(build_q_rrc().subst(subs)),
        "Q3Rc": rf_to_text(build_q3rc().subst(subs)),
    }

    notes = []
    if t <= -HALF:
        notes.append("scalar curvature may vary: the threshold needs only R >= 0")
    else:
        notes.append("threshold valid under constant scalar curvature, R >= 0")
    if n == 4 and t == Fraction(-1, 3):
        notes.append(
            "dimension-4 quarter case: critical metrics are the Bach-flat ones, "
            "threshold 1/48; Einstein metrics under the strict bound are round "
            "spheres, their quotients, or the complex projective plane"
        )

    return PinchCertificate(
        n=n,
        t=t,
        epsilon_threshold=opt.epsilon,
        a1=opt.a1,
        a2=opt.a2,
        s=s_val,
        q_coeffs=q_coeffs,
        b_feasibility=feas,
        sos=opt.certificates,
        requires_constant_R=requires_const,
        attaining_locus=opt.attaining_locus,
        notes=tuple(notes),
    )
