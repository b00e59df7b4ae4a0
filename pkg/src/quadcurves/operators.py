"""Polynomial solutions of ``p2(x) w'' + r(x) w' + kappa w = 0``.

The classical families (Gauss hypergeometric, Jacobi, Laguerre and the
Hermite-like ``f'' - x f' + n f = 0``) are presets of this operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Tuple, Union

import numpy as np

from .algebra import UniPoly, as_fraction
from .errors import DomainError, ParameterError, ResourceError
from .linalg import nullspace

MAX_KERNEL_DEGREE = 512
MAX_SERIES_TERMS = 10**6


def is_nonpositive_integer(v: Fraction) -> bool:
    return v.denominator == 1 and v <= 0


@dataclass(frozen=True)
class SturmOperator:
    """The operator ``p2 w'' + r w' + kappa w`` with ``deg p2 <= 2``, ``deg r <= 1``."""

    p2: UniPoly
    r: UniPoly
    kappa: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kappa", as_fraction(self.kappa))
        if self.p2.is_zero():
            raise ParameterError("p2 must be nonzero")
        if self.p2.degree > 2:
            raise ParameterError("p2 must have degree <= 2")
        if self.r.degree > 1:
            raise ParameterError("r must have degree <= 1")
        if self.kappa == 0:
            raise ParameterError("kappa must be nonzero")

    def apply(self, w: UniPoly) -> UniPoly:
        d1 = w.derivative()
        return self.p2 * d1.derivative() + self.r * d1 + w.scale(self.kappa)

    def admissible_kappa(self, n: int) -> Fraction:
        return admissible_kappa(self.p2, self.r, n)


def admissible_kappa(p2: UniPoly, r: UniPoly, n: int) -> Fraction:
    """The only ``kappa`` for which a degree-``n`` polynomial solution can exist."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    return -(n * (n - 1) * p2.coeff(2) + n * r.coeff(1))


def operator_matrix(op: SturmOperator, n: int) -> List[List[Fraction]]:
    """Matrix of the operator on polynomials of degree <= n (rows: powers of x)."""
    p22, p21, p20 = op.p2.coeff(2), op.p2.coeff(1), op.p2.coeff(0)
    r1, r0 = op.r.coeff(1), op.r.coeff(0)
    M = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        M[j][j] += p22 * j * (j - 1) + r1 * j + op.kappa
        if j >= 1:
            M[j - 1][j] += p21 * j * (j - 1) + r0 * j
        if j >= 2:
            M[j - 2][j] += p20 * j * (j - 1)
    return M


def matching_degrees(op: SturmOperator, nmax: int = MAX_KERNEL_DEGREE) -> List[int]:
    """Degrees ``1 <= n <= nmax`` whose admissible kappa equals ``op.kappa``.

    ``kappa(n)`` is quadratic in ``n``, so at most two degrees match.
    """
    p22, r1 = op.p2.coeff(2), op.r.coeff(1)
    # p22 n^2 + (r1 - p22) n + kappa = 0
    qa, qb, qc = p22, r1 - p22, op.kappa
    if qa == 0:
        roots = [] if qb == 0 else [-qc / qb]
    else:
        disc = qb * qb - 4 * qa * qc
        if disc < 0:
            return []
        sq = _rational_sqrt(disc)
        if sq is None:
            return []
        roots = [(-qb + sq) / (2 * qa), (-qb - sq) / (2 * qa)]
    return sorted({int(v) for v in roots if v.denominator == 1 and 1 <= v <= nmax})


def _rational_sqrt(v: Fraction):
    n, d = isqrt(v.numerator), isqrt(v.denominator)
    if n * n == v.numerator and d * d == v.denominator:
        return Fraction(n, d)
    return None


def polynomial_kernel(op: SturmOperator, nmax: int) -> List[Tuple[int, UniPoly]]:
    """All polynomial solutions of degree <= ``nmax``, as ``(degree, poly)`` pairs.

    Only degrees whose admissible kappa equals ``op.kappa`` are solved.  Each
    returned polynomial has leading coefficient 1 and is checked by
    substitution.  When two degrees share the same kappa the kernel has
    dimension 2 and both basis vectors are returned.
    """
    if nmax < 1:
        raise ParameterError("nmax must be >= 1")
    if nmax > MAX_KERNEL_DEGREE:
        raise ParameterError(f"nmax must be <= {MAX_KERNEL_DEGREE}")
    found: List[Tuple[int, UniPoly]] = []
    seen = set()
    for n in matching_degrees(op, nmax):
        for v in nullspace(operator_matrix(op, n), n + 1):
            w = UniPoly(v).monic()
            if w in seen:
                continue
            if not op.apply(w).is_zero():
                raise ArithmeticError(f"kernel element fails substitution at degree {n}")
            seen.add(w)
            found.append((w.degree, w))
    found.sort(key=lambda t: t[0])
    return found


def hypergeometric_operator(a, b, c) -> SturmOperator:
    """``x(1-x) w'' + (c - (a+b+1) x) w' - ab w``."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    return SturmOperator(UniPoly((0, 1, -1)), UniPoly((c, -(a + b + 1))), -a * b)


# --- families -------------------------------------------------------------

@dataclass(frozen=True)
class Hypergeometric:
    a: Fraction
    b: Fraction
    c: Fraction
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    kind = "hyp"

    def __post_init__(self):
        for name in ("a", "b", "c", "beta", "gamma"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if is_nonpositive_integer(self.c):
            raise ParameterError("c must not be a non-positive integer")

    @property
    def n(self) -> int:
        """Degree of the terminating series."""
        degs = [-v for v in (self.a, self.b) if is_nonpositive_integer(v)]
        if not degs:
            raise ParameterError("a or b must be a non-positive integer for a polynomial solution")
        return int(min(degs))

    def operator(self) -> SturmOperator:
        return hypergeometric_operator(self.a, self.b, self.c)


@dataclass(frozen=True)
class Jacobi:
    A: Fraction
    B: Fraction
    n: int
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    kind = "jacobi"

    def __post_init__(self):
        for name in ("A", "B", "beta", "gamma"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        _check_degree(self.n)

    def operator(self) -> SturmOperator:
        A, B, n = self.A, self.B, self.n
        return SturmOperator(UniPoly((1, 0, -1)), UniPoly((A - B, -(A + B + 2))), n * (n + A + B + 1))


@dataclass(frozen=True)
class Laguerre:
    A: Fraction
    n: int
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    kind = "laguerre"

    def __post_init__(self):
        for name in ("A", "beta", "gamma"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        _check_degree(self.n)

    def operator(self) -> SturmOperator:
        return SturmOperator(UniPoly((0, 1)), UniPoly((self.A + 1, -1)), self.n)


@dataclass(frozen=True)
class HermiteLike:
    """``f'' - x f' + n f = 0`` (not the physicists' ``f'' - 2x f' + 2n f``)."""

    n: int
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    kind = "hermite"

    def __post_init__(self):
        for name in ("beta", "gamma"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        _check_degree(self.n)

    def operator(self) -> SturmOperator:
        return SturmOperator(UniPoly((1,)), UniPoly((0, -1)), self.n)


FamilySpec = Union[Hypergeometric, Jacobi, Laguerre, HermiteLike]


def _check_degree(n) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParameterError(f"degree n must be a positive integer, got {n!r}")


def pochhammer(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def hypergeometric_polynomial(a, b, c) -> UniPoly:
    """Terminating Gauss series ``sum_k (a)_k (b)_k / ((c)_k k!) x**k`` as exact coefficients."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if is_nonpositive_integer(c):
        raise ParameterError("c must not be a non-positive integer")
    degs = [int(-v) for v in (a, b) if is_nonpositive_integer(v)]
    if not degs:
        raise ParameterError("series does not terminate: neither a nor b is a non-positive integer")
    n = min(degs)
    coeffs = [Fraction(1)]
    for k in range(n):
        coeffs.append(coeffs[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    return UniPoly(coeffs)


def classical_generator(spec: FamilySpec) -> UniPoly:
    """The polynomial ``a0`` of a family.

    Hypergeometric uses the Pochhammer series directly; the orthogonal
    families are solved from their operator and normalized to leading 1.
    """
    if isinstance(spec, Hypergeometric):
        return hypergeometric_polynomial(spec.a, spec.b, spec.c)
    if not isinstance(spec, (Jacobi, Laguerre, HermiteLike)):
        raise ParameterError(f"unknown family {spec!r}")
    for deg, w in polynomial_kernel(spec.operator(), spec.n):
        if deg == spec.n:
            return w
    raise ParameterError(f"{spec.kind} operator has no degree-{spec.n} polynomial solution")


# --- float evaluation -----------------------------------------------------

def eval_2f1(a, b, c, x, tol: float = 1e-16):
    """Gauss hypergeometric series at ``|x| < 1``.

    Terminating parameters give the exact finite sum (evaluated in float).
    Otherwise terms are added until three consecutive terms are below
    ``tol * |partial sum|``.  ``x`` may be a float or a numpy array.
    """
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if tol <= 0:
        raise DomainError("tol must be positive")
    if is_nonpositive_integer(c):
        raise DomainError("c must not be a non-positive integer")
    scalar = np.ndim(x) == 0
    xs = np.asarray(x, dtype=float)
    if np.any(np.abs(xs) >= 1):
        raise DomainError("eval_2f1 requires |x| < 1")
    if is_nonpositive_integer(a) or is_nonpositive_integer(b):
        out = hypergeometric_polynomial(a, b, c)(xs)
        return float(out) if scalar else out

    af, bf, cf = float(a), float(b), float(c)
    total = np.ones_like(xs)
    term = np.ones_like(xs)
    quiet = np.zeros(xs.shape, dtype=int)
    for k in range(MAX_SERIES_TERMS):
        term = term * ((af + k) * (bf + k) / ((cf + k) * (k + 1))) * xs
        total = total + term
        small = np.abs(term) < tol * np.abs(total)
        quiet = np.where(small, quiet + 1, 0)
        if np.all(quiet >= 3):
            break
    else:
        raise ResourceError("2F1 series did not converge within the term cap")
    return float(total) if scalar else total


def eval_2f1_derivative(a, b, c, x, tol: float = 1e-16):
    """``d/dx 2F1(a, b; c; x) = (ab/c) 2F1(a+1, b+1; c+1; x)``."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    factor = a * b / c
    if factor == 0:
        return 0.0 if np.ndim(x) == 0 else np.zeros_like(np.asarray(x, dtype=float))
    return float(factor) * eval_2f1(a + 1, b + 1, c + 1, x, tol)

