"""Batch invariance checks over families, degrees and cofactor lines."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .darboux import verify_bundle
from .operators import (
    FamilySpec,
    HermiteLike,
    Hypergeometric,
    Jacobi,
    Laguerre,
    classical_generator,
    polynomial_kernel,
)
from .systems import family_bundle

F = Fraction

STANDARD_LINES: Tuple[Tuple[Fraction, Fraction], ...] = ((F(0), F(0)), (F(1), F(0)), (F(-1, 2), F(1, 3)))

STANDARD_FAMILIES: Dict[str, Callable[[int, Fraction, Fraction], FamilySpec]] = {
    "hyp": lambda n, b, g: Hypergeometric(-n, F(5, 2), F(1, 3), b, g),
    "jacobi": lambda n, b, g: Jacobi(F(1, 2), F(0), n, b, g),
    "laguerre": lambda n, b, g: Laguerre(F(2), n, b, g),
    "hermite": lambda n, b, g: HermiteLike(n, b, g),
}


@dataclass(frozen=True)
class CaseResult:
    family: str
    n: int
    beta: Fraction
    gamma: Fraction
    status: str
    residual_zero: bool
    cofactor_exact: bool
    degree_ok: bool

    @property
    def passed(self) -> bool:
        return self.status == "pass" and self.residual_zero and self.cofactor_exact and self.degree_ok


def check_case(spec: FamilySpec) -> CaseResult:
    bundle = family_bundle(spec)
    cert = verify_bundle(bundle)
    n = bundle.n
    return CaseResult(
        family=spec.kind, n=n, beta=spec.beta, gamma=spec.gamma,
        status=cert.status,
        residual_zero=cert.residual.is_zero(),
        cofactor_exact=cert.cofactor == bundle.cofactor.poly,
        degree_ok=bundle.g.total_degree == n + 1,
    )


def invariance_sweep(n_values: Iterable[int],
                     families: Sequence[str] = tuple(STANDARD_FAMILIES),
                     lines: Sequence[Tuple[Fraction, Fraction]] = STANDARD_LINES) -> List[CaseResult]:
    out = []
    for name in families:
        make = STANDARD_FAMILIES[name]
        for n in n_values:
            for beta, gamma in lines:
                out.append(check_case(make(n, beta, gamma)))
    return out


def proportional(p, q) -> bool:
    """True when ``p = s q`` for a nonzero rational ``s``."""
    if p.is_zero() or q.is_zero() or p.degree != q.degree:
        return False
    s = p.leading / q.leading
    return p == q.scale(s)


def kernel_consistency(spec: FamilySpec) -> Tuple[bool, bool]:
    """(kernel solves the operator, kernel is proportional to the generator)."""
    op = spec.operator()
    n = spec.n
    kernel = [w for d, w in polynomial_kernel(op, n) if d == n]
    solves = bool(kernel) and all(op.apply(w).is_zero() for w in kernel)
    gen = classical_generator(spec)
    return solves, any(proportional(w, gen) for w in kernel)
