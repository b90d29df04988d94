"""Rational functions (quotients of exact polynomials) in the fixed variable set.

Every ``RationalFunc`` is normalized on construction: numerator and
denominator are divided by their polynomial GCD, scaled so the denominator
has coprime integer coefficients and a positive leading coefficient under
graded lex.  Equality of normal forms is therefore structural equality, and
it agrees with the cross-multiplication test ``p1*q2 == p2*q1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import ZeroDenominator
from .poly import Poly, exact_div, poly_gcd


def _coerce_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a polynomial")


def _scale_canonical(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Scale so den has coprime integer coefficients and a positive lead."""
    scale = den.rational_content()
    _, lead = den.leading()
    if lead < 0:
        scale = -scale
    return num * (1 / scale), den * (1 / scale)


def _cofactor(p: Poly, g: Poly) -> Poly:
    return p if g.is_constant() else exact_div(p, g)


class RationalFunc:
    """Immutable, normalized quotient of two exact polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = exact_div(num, g)
                den = exact_div(den, g)
            num, den = _scale_canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> "RationalFunc":
        """Wrap a pair already known to be coprime (skips the gcd step)."""
        self = object.__new__(cls)
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            num, den = _scale_canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    def __setattr__(self, *_args):
        raise AttributeError("RationalFunc is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def const(c) -> "RationalFunc":
        return RationalFunc(Poly.const(c))

    @staticmethod
    def var(name: str) -> "RationalFunc":
        return RationalFunc(Poly.var(name))

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        # Normal forms are unique, but use the defining test to be safe.
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        from .parse import rf_to_text

        return f"RationalFunc({rf_to_text(self)})"

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other) -> "RationalFunc":
        # reduced addition: gcds taken against the already-reduced parts,
        # never against the full cross-multiplied numerator and product
        # denominator (Henrici's scheme)
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        a, b = self.num, self.den
        c, d = other.num, other.den
        g = poly_gcd(b, d)
        if g.is_constant():
            return RationalFunc._reduced(a * d + c * b, b * d)
        b1 = exact_div(b, g)
        d1 = exact_div(d, g)
        t = a * d1 + c * b1
        h = poly_gcd(t, g)
        return RationalFunc._reduced(
            _cofactor(t, h), _cofactor(g, h) * b1 * d1
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc._reduced(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunc":
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunc":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunc":
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        return RationalFunc._reduced(
            _cofactor(self.num, g1) * _cofactor(other.num, g2),
            _cofactor(self.den, g2) * _cofactor(other.den, g1),
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunc":
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        if other.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return self * RationalFunc._reduced(other.den, other.num)

    def __rtruediv__(self, other) -> "RationalFunc":
        return RationalFunc(other) / self

    def __pow__(self, k: int) -> "RationalFunc":
        if not isinstance(k, int):
            raise ValueError("rational function powers must be integers")
        if k < 0:
            if self.is_zero():
                raise ZeroDenominator("negative power of zero")
            return RationalFunc._reduced(self.den ** (-k), self.num ** (-k))
        return RationalFunc._reduced(self.num**k, self.den**k)

    # -- calculus, substitution, evaluation ------------------------------------

    def diff(self, name: str) -> "RationalFunc":
        """Partial derivative by the quotient rule, kept in reduced form."""
        p, q = self.num, self.den
        if q == Poly.one():
            return RationalFunc._reduced(p.diff(name), Poly.one())
        raw = p.diff(name) * q - p * q.diff(name)
        g1 = poly_gcd(raw, q)
        n1 = _cofactor(raw, g1)
        g2 = poly_gcd(n1, q)
        return RationalFunc._reduced(
            _cofactor(n1, g2), _cofactor(q, g1) * _cofactor(q, g2)
        )

    def subst(self, bindings: Mapping[str, object]) -> "RationalFunc":
        """Substitute variables by rationals or by other rational functions.

        Raises ZeroDenominator if the substituted denominator vanishes
        identically.
        """
        rf_bindings: dict[str, RationalFunc] = {}
        frac_bindings: dict[str, Fraction] = {}
        for name, value in bindings.items():
            if isinstance(value, RationalFunc):
                rf_bindings[name] = value
            elif isinstance(value, Poly):
                rf_bindings[name] = RationalFunc(value)
            else:
                frac_bindings[name] = (
                    value if isinstance(value, Fraction) else Fraction(value)
                )
        num, den = self.num, self.den
        if frac_bindings:
            num = num.substitute(frac_bindings)
            den = den.substitute(frac_bindings)
        if not rf_bindings:
            if den.is_zero():
                raise ZeroDenominator("substitution makes the denominator vanish")
            return RationalFunc(num, den)
        top = _subst_poly(num, rf_bindings)
        bottom = _subst_poly(den, rf_bindings)
        if bottom.is_zero():
            raise ZeroDenominator("substitution makes the denominator vanish")
        return top / bottom

    def evaluate(self, point: Mapping[str, object]):
        """Numerically evaluate at a full point (Fraction / float / mpf)."""
        den_val = self.den.evaluate(point)
        if den_val == 0:
            raise ZeroDenominator("denominator vanishes at the evaluation point")
        num_val = self.num.evaluate(point)
        if isinstance(num_val, Fraction) and isinstance(den_val, Fraction):
            return num_val / den_val
        return num_val / den_val

    def is_stationary(self, point: Mapping[str, object]) -> bool:
        """True when every partial derivative in the bound variables vanishes.

        ``point`` maps a subset of the variables to rationals or rational
        functions (values may involve the remaining free variables, e.g. a
        critical point depending symbolically on ``n``).  Stationarity is
        checked exactly: for each bound variable the derivative is formed,
        the point substituted, and the result compared with zero as a
        rational function.
        """
        for name in point:
            d = self.diff(name).subst(point)
            if not d.is_zero():
                return False
        return True


def _subst_poly(p: Poly, bindings: Mapping[str, RationalFunc]) -> RationalFunc:
    """Substitute rational functions into a polynomial, term by term."""
    total = RationalFunc.const(0)
    var_rfs = {name: rf for name, rf in bindings.items()}
    from .poly import VARIABLES

    for exp, coeff in p.terms.items():
        term = RationalFunc.const(coeff)
        for i, power in enumerate(exp):
            if not power:
                continue
            name = VARIABLES[i]
            base = var_rfs.get(name)
            if base is None:
                base = RationalFunc.var(name)
            term = term * base**power
        total = total + term
    return total
