"""Exact multivariate polynomials over the rationals.

Polynomials live in a fixed, ordered variable set

    (a1, a2, b1, b2, b3, t, n, eps, s)

with ``fractions.Fraction`` coefficients and a graded-lexicographic
monomial order (total degree first, then lex on the exponent vector in
the order above).  The dimension symbol ``n`` is an ordinary variable,
specialized by substitution when a concrete dimension is wanted.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Mapping

VARIABLES: tuple[str, ...] = ("a1", "a2", "b1", "b2", "b3", "t", "n", "eps", "s")
VAR_INDEX: dict[str, int] = {name: i for i, name in enumerate(VARIABLES)}
NVARS = len(VARIABLES)

_ZERO_EXP: tuple[int, ...] = (0,) * NVARS

Exponents = tuple[int, ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


def grlex_key(exp: Exponents) -> tuple[int, Exponents]:
    """Sort key for the graded-lexicographic order (larger key = larger monomial)."""
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial: map exponent-vector -> nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, Fraction] | None = None):
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = _as_fraction(coeff)
                if c != 0:
                    if len(exp) != NVARS:
                        raise ValueError(f"exponent vector must have arity {NVARS}")
                    clean[tuple(exp)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_args):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly({_ZERO_EXP: Fraction(1)})

    @staticmethod
    def const(c) -> "Poly":
        return Poly({_ZERO_EXP: _as_fraction(c)})

    @staticmethod
    def var(name: str) -> "Poly":
        i = VAR_INDEX[name]
        exp = tuple(1 if j == i else 0 for j in range(NVARS))
        return Poly({exp: Fraction(1)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXP for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = VAR_INDEX[name]
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def variables(self) -> set[str]:
        used: set[str] = set()
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    used.add(VARIABLES[i])
        return used

    def leading(self) -> tuple[Exponents, Fraction]:
        """Leading (exponents, coefficient) under graded lex; zero poly -> (0-exp, 0)."""
        if not self.terms:
            return (_ZERO_EXP, Fraction(0))
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        from .parse import poly_to_text

        return f"Poly({poly_to_text(self)})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return Poly.zero()
            return Poly({e: cc * c for e, cc in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and evaluation -------------------------------------------

    def diff(self, name: str) -> "Poly":
        i = VAR_INDEX[name]
        out: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            p = e[i]
            if p == 0:
                continue
            exp = e[:i] + (p - 1,) + e[i + 1 :]
            s = out.get(exp, Fraction(0)) + c * p
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Poly(out)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a full numeric point (Fraction / float / mpf values).

        Every variable occurring in the polynomial must be bound.
        """
        missing = self.variables() - set(point)
        if missing:
            raise ValueError(f"unbound variables: {sorted(missing)}")
        values = [point.get(v) for v in VARIABLES]
        total = 0
        for e, c in self.terms.items():
            prod = c
            for i, p in enumerate(e):
                if p:
                    prod = prod * values[i] ** p
            total = total + prod
        return total

    def substitute(self, bindings: Mapping[str, Fraction]) -> "Poly":
        """Exactly specialize a subset of variables to rational values."""
        idx = {VAR_INDEX[v]: _as_fraction(val) for v, val in bindings.items()}
        out: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            coeff = c
            exp = list(e)
            for i, val in idx.items():
                p = e[i]
                if p:
                    coeff *= val**p
                    exp[i] = 0
            if coeff == 0:
                continue
            key = tuple(exp)
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly(out)

    # -- canonical scaling ---------------------------------------------------

    def rational_content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients.

        Returns 1 for the zero polynomial.  The value carries no sign: use
        together with ``leading()`` when a sign normalization is wanted.
        """
        if not self.terms:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = _igcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // _igcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> "Poly":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.rational_content()
        _, lead = self.leading()
        if lead < 0:
            c = -c
        return Poly({e: cc / c for e, cc in self.terms.items()})


# -- exact division and gcd --------------------------------------------------


class ExactDivisionError(ArithmeticError):
    pass


def exact_div(f: Poly, g: Poly) -> Poly:
    """Divide f by g, requiring a zero remainder."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return Poly.zero()
    quotient: dict[Exponents, Fraction] = {}
    g_exp, g_lead = g.leading()
    rem = f
    while not rem.is_zero():
        r_exp, r_lead = rem.leading()
        q_exp = tuple(a - b for a, b in zip(r_exp, g_exp))
        if any(p < 0 for p in q_exp):
            raise ExactDivisionError("division is not exact")
        q_coeff = r_lead / g_lead
        quotient[q_exp] = quotient.get(q_exp, Fraction(0)) + q_coeff
        rem = rem - Poly({q_exp: q_coeff}) * g
    return Poly(quotient)


def _as_univariate(f: Poly, name: str) -> dict[int, Poly]:
    """View f as a univariate polynomial in `name` with Poly coefficients."""
    i = VAR_INDEX[name]
    coeffs: dict[int, dict[Exponents, Fraction]] = {}
    for e, c in f.terms.items():
        d = e[i]
        stripped = e[:i] + (0,) + e[i + 1 :]
        bucket = coeffs.setdefault(d, {})
        bucket[stripped] = bucket.get(stripped, Fraction(0)) + c
    return {d: Poly(bucket) for d, bucket in coeffs.items() if Poly(bucket)}


def _from_univariate(coeffs: Mapping[int, Poly], name: str) -> Poly:
    i = VAR_INDEX[name]
    out: dict[Exponents, Fraction] = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            exp = e[:i] + (d,) + e[i + 1 :]
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
    return Poly(out)


def _univ_degree(coeffs: Mapping[int, Poly]) -> int:
    return max(coeffs) if coeffs else -1


def _pseudo_rem(a: dict[int, Poly], b: dict[int, Poly], name: str) -> dict[int, Poly]:
    """Pseudo-remainder of a by b as univariate polynomials in `name`."""
    db = _univ_degree(b)
    lc_b = b[db]
    r = dict(a)
    dr = _univ_degree(r)
    while dr >= db and r:
        lc_r = r[dr]
        shift = dr - db
        new: dict[int, Poly] = {}
        for d, p in r.items():
            new[d] = p * lc_b
        for d, p in b.items():
            q = new.get(d + shift, Poly.zero()) - p * lc_r
            if q.is_zero():
                new.pop(d + shift, None)
            else:
                new[d + shift] = q
        r = {d: p for d, p in new.items() if not p.is_zero()}
        dr = _univ_degree(r)
    return r


def _content_wrt(f: Poly, name: str) -> Poly:
    """GCD of the coefficient polynomials of f viewed as univariate in `name`."""
    coeffs = list(_as_univariate(f, name).values())
    g = Poly.zero()
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            break
    return g if not g.is_zero() else Poly.zero()


# Deterministic specialization points for the coprimality fast path.
_SPECIALIZE_BASE = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def _univariate_image(f: Poly, keep: int, salt: int) -> list[Fraction]:
    """Dense coefficient list of f with all variables but `keep` set to integers."""
    coeffs = [Fraction(0)] * (max(e[keep] for e in f.terms) + 1)
    for e, c in f.terms.items():
        val = c
        for i, p in enumerate(e):
            if p and i != keep:
                val *= Fraction(_SPECIALIZE_BASE[i] + salt) ** p
        coeffs[e[keep]] += val
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _univ_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    """Degree of gcd of two dense univariate rational polynomials (Euclid)."""

    def is_zero(p: list[Fraction]) -> bool:
        return len(p) == 1 and p[0] == 0

    a = a[:]
    b = b[:]
    while not is_zero(b):
        r = a[:]
        db = len(b) - 1
        lead_b = b[-1]
        while len(r) - 1 >= db and not is_zero(r):
            factor = r[-1] / lead_b
            shift = len(r) - 1 - db
            for i, c in enumerate(b):
                r[shift + i] -= factor * c
            r.pop()  # leading term cancels exactly
            while len(r) > 1 and r[-1] == 0:
                r.pop()
            if not r:
                r = [Fraction(0)]
        if not r:
            r = [Fraction(0)]
        a, b = b, r
    return len(a) - 1


def _certainly_coprime(f: Poly, g: Poly) -> bool:
    """True only when gcd(f, g) is provably constant.

    For each variable x appearing in both, specialize the others to integers
    at a point where a leading coefficient in x survives; the gcd degree in x
    of the images then bounds deg_x gcd(f, g) from above.  All-zero bounds
    force a constant gcd.  Returning False is merely inconclusive.
    """
    shared = f.variables() & g.variables()
    for name in shared:
        keep = VAR_INDEX[name]
        fx = _as_univariate(f, name)
        lead_f = fx[max(fx)]
        verdict = None
        for salt in range(4):
            # the specialization is valid when f's leading x-coefficient survives
            lead_img = _univariate_image(lead_f, keep, salt) if not lead_f.is_constant() else [Fraction(1)]
            if lead_f.is_constant() or any(c != 0 for c in lead_img):
                fi = _univariate_image(f, keep, salt)
                gi = _univariate_image(g, keep, salt)
                if len(fi) - 1 < f.degree_in(name):
                    continue
                verdict = _univ_gcd_degree(fi, gi) == 0
                break
        if verdict is not True:
            return False
    return True


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Multivariate GCD via recursive content / primitive-part reduction.

    The result is canonical: coprime integer coefficients, positive leading
    coefficient under graded lex.  gcd(0, 0) = 0.
    """
    if f.is_zero() and g.is_zero():
        return Poly.zero()
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    if f.is_constant() or g.is_constant():
        return Poly.one()
    if _certainly_coprime(f, g):
        return Poly.one()

    used = f.variables() | g.variables()
    name = VARIABLES[max(VAR_INDEX[v] for v in used)]

    if f.degree_in(name) == 0:
        return poly_gcd(f, _content_wrt(g, name))
    if g.degree_in(name) == 0:
        return poly_gcd(_content_wrt(f, name), g)

    cf = _content_wrt(f, name)
    cg = _content_wrt(g, name)
    pf = exact_div(f, cf).primitive()
    pg = exact_div(g, cg).primitive()
    c = poly_gcd(cf, cg)

    a = _as_univariate(pf, name)
    b = _as_univariate(pg, name)
    if _univ_degree(a) < _univ_degree(b):
        a, b = b, a
    while b:
        if _univ_degree(b) == 0:
            # the primitive parts are coprime in `name`; since both are
            # primitive, their gcd is 1 and only the content gcd survives
            return c.primitive()
        r = _pseudo_rem(a, b, name)
        if r:
            rp = _from_univariate(r, name)
            rc = _content_wrt(rp, name)
            rp = exact_div(rp, rc).primitive()
            r = _as_univariate(rp, name)
        a, b = b, r
    result = _from_univariate(a, name)
    rc = _content_wrt(result, name)
    result = exact_div(result, rc)
    return (c * result).primitive()
