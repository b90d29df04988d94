"""Machine-checkable positivity and identity certificates.

Every certificate here is a frozen record with a ``check()`` method that
re-verifies its claim from scratch in exact arithmetic.  JSON serialization
uses canonical expression text for polynomials and rational functions and
"p/q" strings for rationals, with sorted keys, so emitted files are byte
stable across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, RationalFunc, poly_to_text, rf_to_text
from .errors import CertificateError

SCHEMA_VERSION = 1


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


@dataclass(frozen=True)
class SosCertificate:
    """Sum-of-squares witness that a rational function is nonnegative.

    The checked identity is

        multiplier * claim.num * claim.den == sum(coeff_i * square_i**2)

    with a positive multiplier and positive coefficients, which forces
    claim >= 0 wherever the claim's denominator does not vanish.  A strict
    certificate additionally carries a square with a positive constant
    polynomial, witnessing a strictly positive lower bound.
    """

    name: str
    claim: RationalFunc
    multiplier: Poly
    squares: tuple[tuple[Fraction, Poly], ...]
    strict: bool = False
    note: str = ""

    def check(self) -> bool:
        _, lead = self.multiplier.leading()
        if not self.multiplier.is_constant() or lead <= 0:
            return False
        if any(coeff <= 0 for coeff, _ in self.squares):
            return False
        lhs = self.multiplier * self.claim.num * self.claim.den
        rhs = Poly.zero()
        for coeff, sq in self.squares:
            rhs = rhs + coeff * sq * sq
        if lhs != rhs:
            return False
        if self.strict and not any(
            sq.is_constant() and not sq.is_zero() for _, sq in self.squares
        ):
            return False
        return True

    def to_dict(self) -> dict:
        return {
            "kind": "sos",
            "name": self.name,
            "claim": rf_to_text(self.claim),
            "relation": "> 0" if self.strict else ">= 0",
            "multiplier": poly_to_text(self.multiplier),
            "squares": [
                {"coefficient": frac_str(c), "polynomial": poly_to_text(p)}
                for c, p in self.squares
            ],
            "note": self.note,
        }


@dataclass(frozen=True)
class ExactIdentity:
    """An equality of two rational functions, checked by normal forms."""

    name: str
    lhs: RationalFunc
    rhs: RationalFunc
    note: str = ""

    def check(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "kind": "identity",
            "name": self.name,
            "lhs": rf_to_text(self.lhs),
            "rhs": rf_to_text(self.rhs),
            "note": self.note,
        }


@dataclass(frozen=True)
class ShiftPositivityWitness:
    """Positivity of a univariate polynomial on [3, infinity).

    Substituting n = m + 3 must produce a polynomial in m whose coefficients
    are all nonnegative with a positive constant term; every n >= 3 then
    gives a positive value.
    """

    name: str
    poly: Poly
    variable: str = "n"
    shift: int = 3
    note: str = ""

    def shifted(self) -> Poly:
        m = Poly.var(self.variable) + self.shift
        out = Poly.zero()
        for exp, coeff in self.poly.terms.items():
            power = exp[_var_index(self.variable)]
            rest = list(exp)
            rest[_var_index(self.variable)] = 0
            if any(rest):
                raise CertificateError(
                    f"{self.name}: shift witness requires a univariate polynomial"
                )
            out = out + coeff * m**power
        return out

    def check(self) -> bool:
        shifted = self.shifted()
        const = shifted.terms.get((0,) * 9, Fraction(0))
        return const > 0 and all(c >= 0 for c in shifted.terms.values())

    def to_dict(self) -> dict:
        return {
            "kind": "shift_positivity",
            "name": self.name,
            "polynomial": poly_to_text(self.poly),
            "variable": self.variable,
            "shift": self.shift,
            "shifted_polynomial": poly_to_text(self.shifted()),
            "note": self.note,
        }


def _var_index(name: str) -> int:
    from .algebra.poly import VAR_INDEX

    return VAR_INDEX[name]


@dataclass(frozen=True)
class StationaryMinCertificate:
    """Global minimum of a quadratic function of (a1, a2).

    The function must be a polynomial of degree two in (a1, a2) (other
    variables may appear in its coefficients); a positive-definite Hessian
    then makes the unique stationary point the global minimum.  Hessian
    positivity in the dimension symbol is certified by shift witnesses.
    """

    name: str
    function: RationalFunc
    point: dict
    value: RationalFunc
    hessian_det: Poly
    positivity: tuple[ShiftPositivityWitness, ...]
    note: str = ""

    def check(self) -> bool:
        func = self.function
        # quadratic in (a1, a2): all third partials vanish
        for v1 in ("a1", "a2"):
            d2 = func.diff(v1).diff(v1)
            if not d2.diff("a1").is_zero() or not d2.diff("a2").is_zero():
                return False
        if not func.is_stationary(self.point):
            return False
        if func.subst(self.point) != self.value:
            return False
        h11 = func.diff("a1").diff("a1")
        h22 = func.diff("a2").diff("a2")
        h12 = func.diff("a1").diff("a2")
        det = h11 * h22 - h12 * h12
        if det != RationalFunc(self.hessian_det):
            return False
        return all(w.check() for w in self.positivity)

    def to_dict(self) -> dict:
        return {
            "kind": "stationary_min",
            "name": self.name,
            "function": rf_to_text(self.function),
            "point": {k: rf_to_text(v) for k, v in self.point.items()},
            "value": rf_to_text(self.value),
            "hessian_det": poly_to_text(self.hessian_det),
            "positivity": [w.to_dict() for w in self.positivity],
            "note": self.note,
        }


Certificate = SosCertificate | ExactIdentity | ShiftPositivityWitness | StationaryMinCertificate


@dataclass(frozen=True)
class BFeasibility:
    """Outcome of minimizing the gradient-coefficient form over (b1, b2, b3)."""

    feasible: bool
    min_value: object  # Fraction for numeric (n, t); RationalFunc when symbolic
    b_at_min: tuple | None = None  # exact rational minimizer
    zero_offset_squared: Fraction | None = None  # shift along b1 reaching the zero set
    positivity: tuple[Certificate, ...] = ()
    paper_b_residual: str | None = None  # |Q2| at the published b, when checked
    note: str = ""

    def to_dict(self) -> dict:
        if isinstance(self.min_value, RationalFunc):
            min_text = rf_to_text(self.min_value)
        else:
            min_text = frac_str(self.min_value)
        out = {
            "status": "feasible" if self.feasible else "infeasible",
            "min_value": min_text,
            "note": self.note,
        }
        if self.b_at_min is not None:
            out["b_at_min"] = [frac_str(b) for b in self.b_at_min]
        if self.zero_offset_squared is not None:
            out["zero_witness"] = {
                "direction": "b1",
                "offset_squared": frac_str(self.zero_offset_squared),
            }
        if self.positivity:
            out["positivity"] = [c.to_dict() for c in self.positivity]
        if self.paper_b_residual is not None:
            out["published_b_residual"] = self.paper_b_residual
        return out


@dataclass(frozen=True)
class PinchCertificate:
    """Full record of one pinching-threshold derivation at integer n and rational t."""

    n: int
    t: Fraction
    epsilon_threshold: Fraction
    a1: Fraction
    a2: Fraction
    s: Fraction
    q_coeffs: dict
    b_feasibility: BFeasibility
    sos: tuple[Certificate, ...]
    requires_constant_R: bool
    attaining_locus: str = ""
    notes: tuple[str, ...] = ()

    def check(self) -> bool:
        if self.requires_constant_R != (not self.b_feasibility.feasible):
            return False
        return all(c.check() for c in self.sos)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "t": frac_str(self.t),
            "epsilon_threshold": frac_str(self.epsilon_threshold),
            "a1": frac_str(self.a1),
            "a2": frac_str(self.a2),
            "s": frac_str(self.s),
            "q_coefficients": dict(self.q_coeffs),
            "b_feasibility": self.b_feasibility.to_dict(),
            "certificates": [c.to_dict() for c in self.sos],
            "requires_constant_R": self.requires_constant_R,
            "attaining_locus": self.attaining_locus,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
