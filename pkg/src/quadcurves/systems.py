"""Quadratic systems ``x' = p2(x)``, ``y' = y**2 + q1(x) y + q2(x)`` and their curves.

:func:`derive_system` is the ground truth: it matches the ``y**1`` and
``y**0`` coefficients of ``X g - K g`` for ``g = a0 y + a1`` and checks the
result against every polynomial solution of the operator.  The
``*_literal_*`` functions transcribe published closed forms as printed so
they can be audited against it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .algebra import X, Y, BiPoly, UniPoly, as_fraction, lie_derivative
from .errors import ParameterError
from .operators import (
    FamilySpec,
    HermiteLike,
    Hypergeometric,
    Jacobi,
    Laguerre,
    SturmOperator,
    classical_generator,
    hypergeometric_operator,
    matching_degrees,
    polynomial_kernel,
)

COEFF_NAMES = ("p22", "p21", "p20", "q11", "q10", "q22", "q21", "q20")


@dataclass(frozen=True)
class QuadraticSystem:
    p2: UniPoly
    q1: UniPoly
    q2: UniPoly

    def __post_init__(self):
        if self.p2.degree > 2 or self.q1.degree > 1 or self.q2.degree > 2:
            raise ParameterError("degree bounds: p2 <= 2, q1 <= 1, q2 <= 2")

    @classmethod
    def from_coefficients(cls, **c) -> "QuadraticSystem":
        g = lambda k: as_fraction(c.get(k, 0))  # noqa: E731
        return cls(
            UniPoly((g("p20"), g("p21"), g("p22"))),
            UniPoly((g("q10"), g("q11"))),
            UniPoly((g("q20"), g("q21"), g("q22"))),
        )

    def coefficients(self) -> Dict[str, Fraction]:
        return {
            "p22": self.p2.coeff(2), "p21": self.p2.coeff(1), "p20": self.p2.coeff(0),
            "q11": self.q1.coeff(1), "q10": self.q1.coeff(0),
            "q22": self.q2.coeff(2), "q21": self.q2.coeff(1), "q20": self.q2.coeff(0),
        }

    @property
    def P(self) -> BiPoly:
        return self.p2.to_bipoly()

    @property
    def Q(self) -> BiPoly:
        return Y * Y + self.q1.to_bipoly() * Y + self.q2.to_bipoly()

    def vector_field(self) -> Tuple[BiPoly, BiPoly]:
        return self.P, self.Q

    def __str__(self):
        return f"x' = {self.P}\ny' = {self.Q}"


@dataclass(frozen=True)
class CofactorLine:
    """The cofactor ``K = y + beta x + gamma``."""

    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "beta", as_fraction(self.beta))
        object.__setattr__(self, "gamma", as_fraction(self.gamma))

    @property
    def poly(self) -> BiPoly:
        return Y + X.scale(self.beta) + self.gamma

    @property
    def linear_part(self) -> UniPoly:
        """``beta x + gamma``."""
        return UniPoly((self.gamma, self.beta))


@dataclass(frozen=True)
class CurveBundle:
    a0: UniPoly
    g: BiPoly
    n: int
    system: QuadraticSystem
    cofactor: CofactorLine


@dataclass(frozen=True)
class PencilSpec:
    g: BiPoly
    nu: BiPoly
    lambda1: BiPoly
    lambda2: BiPoly

    def __post_init__(self):
        if self.g.is_constant():
            raise ParameterError("g must be nonconstant")


def _shift(sys: QuadraticSystem, k: CofactorLine) -> UniPoly:
    # s(x) = (q11 - beta) x + (q10 - gamma), so that a1 = p2 a0' + s a0
    return sys.q1 - k.linear_part


def derive_system(op: SturmOperator, k: CofactorLine) -> QuadraticSystem:
    """The quadratic system whose curves ``g = a0 y + a1`` have cofactor ``k``
    for every polynomial solution ``a0`` of ``op``."""
    p2, r, kappa = op.p2, op.r, op.kappa
    if p2.is_zero():
        raise ParameterError("p2 must be nonzero")
    beta, gamma = k.beta, k.gamma
    q11 = r.coeff(1) - 2 * p2.coeff(2) + 2 * beta
    q10 = r.coeff(0) - p2.coeff(1) + 2 * gamma
    s = UniPoly((q10 - gamma, q11 - beta))
    q2 = p2.scale(kappa + beta - q11) + k.linear_part * s
    sys = QuadraticSystem(p2, UniPoly((q10, q11)), q2)

    degs = matching_degrees(op)
    if degs:
        P, Q = sys.vector_field()
        K = k.poly
        for _, a0 in polynomial_kernel(op, max(degs)):
            g = build_invariant_curve(a0, sys, k).g
            if lie_derivative(P, Q, g) != K * g:
                raise ArithmeticError("derived system fails invariance for a kernel element")
    return sys


def build_invariant_curve(a0: UniPoly, sys: QuadraticSystem, k: CofactorLine) -> CurveBundle:
    """``g = a0 y + p2 a0' + ((q11 - beta) x + q10 - gamma) a0``."""
    if a0.is_zero():
        raise ParameterError("a0 must be nonzero")
    a1 = sys.p2 * a0.derivative() + _shift(sys, k) * a0
    g = BiPoly.from_y_coeffs([a1, a0])
    return CurveBundle(a0=a0, g=g, n=a0.degree, system=sys, cofactor=k)


def family_bundle(spec: FamilySpec) -> CurveBundle:
    """Derived system plus the invariant curve of the family's polynomial."""
    k = CofactorLine(spec.beta, spec.gamma)
    sys = derive_system(spec.operator(), k)
    return build_invariant_curve(classical_generator(spec), sys, k)


def paper_literal_system(family: FamilySpec) -> QuadraticSystem:
    """Closed-form systems exactly as printed for each family (typos kept)."""
    b_, g_ = family.beta, family.gamma
    if isinstance(family, Hypergeometric):
        a, b, c = family.a, family.b, family.c
        return QuadraticSystem.from_coefficients(
            p22=-1, p21=1, p20=0,
            q11=2 * b_ - a - b + 1,
            q10=c - 1 + 2 * g_,
            q22=b_**2 + (2 - a - b) * b_ + (a - 1) * (b - 1),
            q21=c * b_ - a * b + (1 - g_) * (-2 * b_ - 1 + a + b),
            q20=g_ * (g_ + c - 1),
        )
    if isinstance(family, Jacobi):
        A, B, n = family.A, family.B, family.n
        return QuadraticSystem.from_coefficients(
            p22=-1, p21=0, p20=1,
            q11=2 * b_ - A - B,
            q10=2 * g_ + A - B,
            q22=b_**2 + b_ - n * (n + 1) - (1 + n + b_) * (A + B),
            q21=(b_ - g_) * A - (g_ + b_) * B + 2 * g_ * b_,
            q20=(n + 1 - g_) * B + (n + 1 + g_) * A + n * (n + 1) + g_**2 - b_,
        )
    if isinstance(family, Laguerre):
        A, n = family.A, family.n
        return QuadraticSystem.from_coefficients(
            p22=0, p21=1, p20=0,
            q11=2 * b_ - 1,
            q10=2 * g_ + A,
            q22=(b_ - 1) * b_,
            q21=b_ * (A + 2 * g_ - 1) + n + 1 - g_,
            q20=A * g_ + g_**2,
        )
    if isinstance(family, HermiteLike):
        n = family.n
        return QuadraticSystem.from_coefficients(
            p22=0, p21=0, p20=1,
            q11=2 * b_ - 1,
            q10=2 * g_,
            q22=b_**2 - 2 * b_,
            q21=2 * g_ * (b_ - 1),
            q20=g_**2 - b_ + 2 * (n + 1),
        )
    raise ParameterError(f"unknown family {family!r}")


# Published derivations print intermediate coefficients that disagree with
# their own displays; kept so the audit can report both.
def proof_text_coefficients(family: FamilySpec) -> Optional[Dict[str, Fraction]]:
    b_, g_ = family.beta, family.gamma
    if isinstance(family, HermiteLike):
        # printed with kappa = -lambda; lambda is read as n here
        lam = family.n
        return {"q11": 2 * b_ - 1, "q10": 2 * g_, "q20": lam - b_ + 1 + g_**2,
                "q21": g_ * (2 * b_ - 1), "q22": b_**2 - b_}
    if isinstance(family, Laguerre):
        n = family.n
        return {"q11": -1 + 2 * b_, "q10": 1 + 2 * g_, "q20": g_ + g_**2,
                "q21": 2 * g_ * b_ + 1 - n - g_, "q22": b_**2 - b_}
    if isinstance(family, Jacobi):
        A, B, n = family.A, family.B, family.n
        return {"q11": 2 * b_ - A - B, "q10": 2 * g_ + A - B,
                "q22": b_**2 + b_ - n * (n + 1) - (1 + n + b_) * (A + B),
                "q20": g_**2 - b_ + n * (n + 1) + (1 + n + g_) * A + (n + 1 - g_) * B}
    if isinstance(family, Hypergeometric):
        a, b, c = family.a, family.b, family.c
        return {"q11": 2 * b_ - a - b + 1, "q10": 2 * g_ - 1 + c,
                "q20": g_ * (g_ + c - 1),
                "q21": (1 - g_) * (a + b - 2 * b_ - 1) + c * b_ - a * b,
                "q22": b_**2 + (2 - a - b) * b_ + (b - 1) * (a - 1)}
    return None


def general_literal_system(op: SturmOperator, k: CofactorLine, grouped: bool = False) -> QuadraticSystem:
    """The general closed form with ``tau11 = r1, tau10 = r0, tau0 = kappa``.

    The printed ``q21`` reads ``2 p22 - (2 beta - tau0 + tau11) p21 + ...``;
    ``grouped=True`` uses ``(2 p22 - (2 beta - tau0 + tau11)) p21`` instead.
    """
    p22, p21, p20 = op.p2.coeff(2), op.p2.coeff(1), op.p2.coeff(0)
    t11, t10, t0 = op.r.coeff(1), op.r.coeff(0), op.kappa
    b_, g_ = k.beta, k.gamma
    if grouped:
        q21_head = (2 * p22 - (2 * b_ - t0 + t11)) * p21
    else:
        q21_head = 2 * p22 - (2 * b_ - t0 + t11) * p21
    return QuadraticSystem.from_coefficients(
        p22=p22, p21=p21, p20=p20,
        q11=2 * b_ - 2 * p22 + t11,
        q10=2 * g_ + t10 - p21,
        q22=2 * p22**2 - (t11 - t0 + 3 * b_) * p22 + b_**2 + b_ * t11,
        q21=q21_head + g_ * (t11 - 2 * p22 + 2 * b_) + b_ * t10,
        q20=p20 * (2 * p22 - t11 + t0 - b_) + g_ * (g_ + t10 - p21),
    )


def reduction_literal_system(op: SturmOperator, k: CofactorLine) -> QuadraticSystem:
    """``q2 = (kappa + r') p2 - (beta x + gamma)((beta - q11) x + gamma - q10)`` as printed,
    with ``q11, q10`` from the coefficient comparison."""
    p2 = op.p2
    q11 = op.r.coeff(1) - 2 * p2.coeff(2) + 2 * k.beta
    q10 = op.r.coeff(0) - p2.coeff(1) + 2 * k.gamma
    inner = UniPoly((k.gamma - q10, k.beta - q11))
    q2 = p2.scale(op.kappa + op.r.coeff(1)) - k.linear_part * inner
    return QuadraticSystem(p2, UniPoly((q10, q11)), q2)


@dataclass(frozen=True)
class FuchsCertificate:
    """Comparison of the derived second-order equation with the printed one.

    Both are normalized to ``p2**2 w'' + p2 T1 w' + M w = 0``.
    """

    t1: UniPoly
    m: UniPoly
    literal_t1: UniPoly
    literal_m: UniPoly
    operator: Optional[SturmOperator] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def t1_matches_literal(self) -> bool:
        return self.t1 == self.literal_t1

    @property
    def m_matches_literal(self) -> bool:
        return self.m == self.literal_m

    @property
    def operator_match(self) -> Optional[bool]:
        """``T1 == r`` and ``M == kappa p2``, when an operator was supplied."""
        if self.operator is None:
            return None
        op = self.operator
        return self.t1 == op.r and self.m == op.p2.scale(op.kappa)


def fuchs_reduction(sys: QuadraticSystem, k: CofactorLine,
                    op: Optional[SturmOperator] = None) -> Tuple[UniPoly, UniPoly, FuchsCertificate]:
    """Second-order equation ``p2**2 w'' + p2 T1 w' + M w = 0`` satisfied by ``a0``."""
    p2 = sys.p2
    if p2.is_zero():
        raise ParameterError("p2 must be nonzero")
    lin = k.linear_part
    s = _shift(sys, k)
    q11, q10 = sys.q1.coeff(1), sys.q1.coeff(0)
    q22, q21, q20 = sys.q2.coeff(2), sys.q2.coeff(1), sys.q2.coeff(0)
    beta, gamma = k.beta, k.gamma
    t1 = p2.derivative() + s - lin
    m = p2.scale(q11 - beta) + sys.q2 - lin * s

    lit_t1 = UniPoly((2 * p2.coeff(1) + q10 - 2 * gamma, 2 * p2.coeff(2) + q11 - 2 * beta))
    lit_quad = UniPoly((
        gamma**2 - gamma * q10 + q20,
        q21 + 2 * gamma * beta - q10 * beta - gamma * q11,
        beta**2 + q22 - beta * q11,
    ))
    lit_m = -(p2.scale(q11 - beta)) - lit_quad
    notes = []
    if t1 != lit_t1:
        notes.append("w' coefficient differs from the printed form")
    if m != lit_m:
        notes.append("w coefficient differs from the printed form")
    cert = FuchsCertificate(t1, m, lit_t1, lit_m, op, tuple(notes))
    return t1, m, cert


def pencil_system(spec: PencilSpec) -> Tuple[BiPoly, BiPoly]:
    """``P = -nu g_y + lambda1 g``, ``Q = nu g_x + lambda2 g``."""
    gx, gy = spec.g.derivative("x"), spec.g.derivative("y")
    P = -(spec.nu * gy) + spec.lambda1 * spec.g
    Q = spec.nu * gx + spec.lambda2 * spec.g
    return P, Q


def cll_parameters(a, b, c) -> Tuple[Fraction, Fraction]:
    """``(beta, gamma) = (a + b - ab/c - 1, 1 - c)``."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if c == 0:
        raise ParameterError("c must be nonzero")
    return a + b - a * b / c - 1, 1 - c


def cll_special_system(a, b, c) -> QuadraticSystem:
    """Hypergeometric system at ``beta = a + b - ab/c - 1``, ``gamma = 1 - c``."""
    beta, gamma = cll_parameters(a, b, c)
    return derive_system(hypergeometric_operator(a, b, c), CofactorLine(beta, gamma))
