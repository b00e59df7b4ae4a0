"""Exact verification: cofactors, invariance certificates, Darboux exponents, audits."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import X, BiPoly, UniPoly, as_fraction, bipoly_divmod, divergence, lie_derivative
from .errors import DomainError, ModeError, ParameterError
from .linalg import nullspace
from .operators import (
    FamilySpec,
    Hypergeometric,
    eval_2f1,
    eval_2f1_derivative,
    hypergeometric_operator,
    hypergeometric_polynomial,
    is_nonpositive_integer,
)
from .systems import (
    COEFF_NAMES,
    CofactorLine,
    QuadraticSystem,
    build_invariant_curve,
    cll_parameters,
    cll_special_system,
    derive_system,
    family_bundle,
    paper_literal_system,
    proof_text_coefficients,
)

FIRST_INTEGRAL = "first-integral"
INTEGRATING_FACTOR = "integrating-factor"


@dataclass(frozen=True)
class InvarianceCertificate:
    P: BiPoly
    Q: BiPoly
    curve: BiPoly
    cofactor: Optional[BiPoly]
    residual: BiPoly
    status: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def extract_cofactor(P: BiPoly, Q: BiPoly, g: BiPoly) -> Optional[BiPoly]:
    """``K = X(g) / g`` when the division is exact, else ``None``."""
    if g.is_constant():
        raise DomainError("g must be nonconstant")
    return lie_derivative(P, Q, g).exact_div(g)


def verify_invariance(P: BiPoly, Q: BiPoly, g: BiPoly,
                      expected_cofactor: Optional[BiPoly] = None) -> InvarianceCertificate:
    """Certificate for ``X g = K g``.

    With ``expected_cofactor`` the residual is ``X g - K g``.  Without it the
    cofactor is extracted; if ``g`` does not divide ``X g`` the residual is the
    graded-lex remainder and no cofactor is recorded.
    """
    if g.is_constant():
        raise DomainError("g must be nonconstant")
    lie = lie_derivative(P, Q, g)
    if expected_cofactor is not None:
        K: Optional[BiPoly] = expected_cofactor
        residual = lie - expected_cofactor * g
    else:
        q, residual = bipoly_divmod(lie, g)
        K = q if residual.is_zero() else None
    ok = residual.is_zero() and K is not None and K.total_degree <= 1
    return InvarianceCertificate(P, Q, g, K, residual, "pass" if ok else "fail")


def verify_bundle(bundle) -> InvarianceCertificate:
    P, Q = bundle.system.vector_field()
    return verify_invariance(P, Q, bundle.g, bundle.cofactor.poly)


def _monomials(polys: Iterable[BiPoly]) -> List[Tuple[int, int]]:
    ms = set()
    for p in polys:
        ms.update(m for m, _ in p.items())
    return sorted(ms)


def _normalize_exponents(v: List[Fraction]) -> List[Fraction]:
    if v[-1] != 0:
        s = -1 / v[-1]
    else:
        s = 1 / next(x for x in v if x != 0)
    return [x * s for x in v]


def darboux_combination(pairs: Sequence[Tuple[object, BiPoly]], P: BiPoly, Q: BiPoly,
                        mode: str = FIRST_INTEGRAL) -> Optional[List[Fraction]]:
    """Exponents ``lambda_i`` with ``sum lambda_i K_i = 0`` (first integral) or
    ``= -div(P, Q)`` (integrating factor), or ``None``.

    First-integral vectors are scaled so the last exponent is -1 (or the
    first nonzero one is 1 when the last is 0).  The integrating-factor
    solution sets every free exponent to 0.
    """
    cofactors = [K for _, K in pairs]
    if not cofactors:
        return None
    if mode == FIRST_INTEGRAL:
        rows_polys = cofactors
    elif mode == INTEGRATING_FACTOR:
        rows_polys = cofactors + [divergence(P, Q)]
    else:
        raise ModeError(f"unknown mode {mode!r}")
    monos = _monomials(rows_polys)
    ncols = len(rows_polys)
    A = [[p.coeff(*m) for p in rows_polys] for m in monos]
    basis = nullspace(A, ncols)

    if mode == FIRST_INTEGRAL:
        if not basis:
            return None
        lam = _normalize_exponents(basis[0])
        target = BiPoly()
    else:
        sols = [v for v in basis if v[-1] != 0]
        if not sols:
            return None
        v = sols[-1]
        lam = [x / v[-1] for x in v[:-1]]
        target = -divergence(P, Q)
    total = BiPoly()
    for l, K in zip(lam, cofactors):
        total = total + K.scale(l)
    if total != target:
        raise ArithmeticError("Darboux exponents fail re-substitution")
    return lam


# --- four-curve hypergeometric set ------------------------------------------

@dataclass(frozen=True)
class HypergeometricCurve:
    """``F(x) (y + shift(x)) + p2(x) F'(x)`` with ``F = 2F1(a, b; c; x)``.

    Used when ``F`` does not terminate; evaluated in floating point.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    p2: UniPoly
    shift: UniPoly

    @property
    def terminating(self) -> bool:
        return is_nonpositive_integer(self.a) or is_nonpositive_integer(self.b)

    def exact(self) -> BiPoly:
        if not self.terminating:
            raise ModeError("2F1 does not terminate; evaluate numerically")
        F = hypergeometric_polynomial(self.a, self.b, self.c)
        return BiPoly.from_y_coeffs([F * self.shift + self.p2 * F.derivative(), F])

    def evaluate(self, x, y, tol: float = 1e-16):
        F = eval_2f1(self.a, self.b, self.c, x, tol)
        dF = eval_2f1_derivative(self.a, self.b, self.c, x, tol)
        return F * (y + self.shift(x)) + self.p2(x) * dF


Curve = Union[BiPoly, HypergeometricCurve]


@dataclass(frozen=True)
class DarbouxSystemSet:
    system: QuadraticSystem
    curves: Tuple[Curve, ...]
    cofactors: Tuple[BiPoly, ...]
    exponents: Optional[Tuple[Fraction, ...]]
    mode: str = FIRST_INTEGRAL
    notes: Tuple[str, ...] = ()

    def relation_holds(self) -> bool:
        if self.exponents is None:
            return False
        total = BiPoly()
        for l, K in zip(self.exponents, self.cofactors):
            total = total + K.scale(l)
        if self.mode == FIRST_INTEGRAL:
            return total.is_zero()
        P, Q = self.system.vector_field()
        return total == -divergence(P, Q)


def _operator_cofactor(sys: QuadraticSystem, a, b, c) -> CofactorLine:
    """Cofactor line making ``sys`` the derived system of the 2F1(a, b; c) operator.

    Raises if no such line exists.  Equality of derived systems certifies
    invariance for every solution of the operator, terminating or not.
    """
    op = hypergeometric_operator(a, b, c)
    p2 = sys.p2
    beta = (sys.q1.coeff(1) - op.r.coeff(1) + 2 * p2.coeff(2)) / 2
    gamma = (sys.q1.coeff(0) - op.r.coeff(0) + p2.coeff(1)) / 2
    line = CofactorLine(beta, gamma)
    if derive_system(op, line) != sys:
        raise ArithmeticError("system is not derived from this hypergeometric operator")
    return line


def cll_curve_set(a, b, c, require_polynomial: bool = False) -> DarbouxSystemSet:
    """Four invariant curves of the special hypergeometric system and their exponents.

    ``g1 = x``, ``g2 = x - 1``, ``g3`` from ``F(a, b; c)`` and ``g4`` from
    ``F(1+a-c, 1+b-c; 2-c)``.  ``g4`` is exact only when that series
    terminates; otherwise it is a :class:`HypergeometricCurve` whose cofactor
    is certified through the operator.
    """
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if not (a.denominator == 1 and a <= -1):
        raise ParameterError("a must be a negative integer")
    if c.denominator == 1:
        raise ParameterError("c must not be an integer")
    sys = cll_special_system(a, b, c)
    P, Q = sys.vector_field()
    beta, gamma = cll_parameters(a, b, c)
    notes = []

    g1, g2 = X, X - 1
    F1 = hypergeometric_polynomial(a, b, c)
    g3 = build_invariant_curve(F1, sys, CofactorLine(beta, gamma)).g
    curves: List[Curve] = [g1, g2, g3]
    cofactors = []
    for g in curves:
        K = extract_cofactor(P, Q, g)
        if K is None:
            raise ArithmeticError(f"curve {g} is not invariant")
        cofactors.append(K)

    a2, b2, c2 = 1 + a - c, 1 + b - c, 2 - c
    line4 = _operator_cofactor(sys, a2, b2, c2)
    shift4 = sys.q1 - line4.linear_part
    g4c = HypergeometricCurve(a2, b2, c2, sys.p2, shift4)
    if g4c.terminating:
        g4: Curve = g4c.exact()
        K4 = extract_cofactor(P, Q, g4)
        if K4 is None:
            raise ArithmeticError("g4 is not invariant")
    else:
        if require_polynomial:
            raise ModeError("g4 is not polynomial for these parameters; use the numeric path")
        g4 = g4c
        K4 = line4.poly
        notes.append("g4 non-terminating: cofactor certified via operator-derived system")
    curves.append(g4)
    cofactors.append(K4)

    pairs = list(zip(curves, cofactors))
    lam = darboux_combination(pairs, P, Q, FIRST_INTEGRAL)
    return DarbouxSystemSet(
        system=sys,
        curves=tuple(curves),
        cofactors=tuple(cofactors),
        exponents=None if lam is None else tuple(lam),
        mode=FIRST_INTEGRAL,
        notes=tuple(notes),
    )


# --- audit ------------------------------------------------------------------

@dataclass(frozen=True)
class AuditReport:
    family: FamilySpec
    canonical: QuadraticSystem
    literal: QuadraticSystem
    coefficient_diffs: Dict[str, Tuple[Fraction, Fraction]]
    literal_invariance: str
    literal_residual: BiPoly
    canonical_invariance: str
    notes: Tuple[str, ...] = field(default_factory=tuple)


def _with_degree(family: FamilySpec, n: int) -> FamilySpec:
    if isinstance(family, Hypergeometric):
        if is_nonpositive_integer(family.a) or not is_nonpositive_integer(family.b):
            return dataclasses.replace(family, a=Fraction(-n))
        return dataclasses.replace(family, b=Fraction(-n))
    return dataclasses.replace(family, n=n)


def audit_one(family: FamilySpec) -> AuditReport:
    bundle = family_bundle(family)
    canonical = bundle.system
    literal = paper_literal_system(family)
    cc, lc = canonical.coefficients(), literal.coefficients()
    diffs = {k: (cc[k], lc[k]) for k in COEFF_NAMES if cc[k] != lc[k]}
    K = bundle.cofactor.poly
    canon_cert = verify_bundle(bundle)
    lit_cert = verify_invariance(literal.P, literal.Q, bundle.g, K)

    notes = []
    proof = proof_text_coefficients(family)
    if proof is not None:
        disagree = sorted(k for k, v in proof.items() if v != cc[k])
        if disagree:
            notes.append("proof text differs from derived system in " + ", ".join(disagree))
        else:
            notes.append("proof text agrees with derived system")
    return AuditReport(
        family=family,
        canonical=canonical,
        literal=literal,
        coefficient_diffs=diffs,
        literal_invariance=lit_cert.status,
        literal_residual=lit_cert.residual,
        canonical_invariance=canon_cert.status,
        notes=tuple(notes),
    )


def audit_family(family: FamilySpec, n_range: Iterable[int]) -> List[AuditReport]:
    """Compare the printed closed form with the derived system for each degree."""
    return [audit_one(_with_degree(family, n)) for n in n_range]
