"""Floating-point checks: RK4 trajectories, first-integral drift, grid samples."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import BiPoly, as_fraction, bipoly_evaluate
from .darboux import DarbouxSystemSet, extract_cofactor
from .errors import DomainError, ParameterError
from .operators import eval_2f1, hypergeometric_operator, hypergeometric_polynomial
from .systems import CofactorLine, QuadraticSystem, derive_system

BLOWUP = 1e6
STRIP_MARGIN = 1e-6
STANDARD_SEEDS: Tuple[Tuple[float, float], ...] = tuple(
    (x0, y0) for x0 in (0.2, 0.5, 0.8) for y0 in (-1.0, 0.0, 1.0, 2.0)
)

COMPLETED, BLOWN_UP, LEFT_DOMAIN = "completed", "blowup", "left-domain"


@dataclass
class Trajectory:
    samples: np.ndarray  # shape (N, 3): t, x, y
    terminated: str

    @property
    def t(self):
        return self.samples[:, 0]

    @property
    def x(self):
        return self.samples[:, 1]

    @property
    def y(self):
        return self.samples[:, 2]


def _float_field(sys: QuadraticSystem):
    p = [float(v) for v in (sys.p2.coeff(0), sys.p2.coeff(1), sys.p2.coeff(2))]
    q1 = [float(v) for v in (sys.q1.coeff(0), sys.q1.coeff(1))]
    q2 = [float(v) for v in (sys.q2.coeff(0), sys.q2.coeff(1), sys.q2.coeff(2))]

    def rhs(x, y):
        dx = p[0] + x * (p[1] + x * p[2])
        dy = y * y + (q1[0] + q1[1] * x) * y + q2[0] + x * (q2[1] + x * q2[2])
        return dx, dy

    return rhs


def integrate_trajectory(sys: QuadraticSystem, x0: float, y0: float, h: float, T: float,
                         unit_strip: bool = False) -> Trajectory:
    """Fixed-step classical RK4 from ``(x0, y0)`` over ``[0, T]``.

    Stops early on ``|y| > 1e6`` or a nonfinite state (``blowup``) and, when
    ``unit_strip`` is set, when ``x`` leaves ``(1e-6, 1 - 1e-6)``.
    """
    if h <= 0 or T <= 0:
        raise DomainError("h and T must be positive")
    rhs = _float_field(sys)
    steps = int(round(T / h))
    out = [(0.0, float(x0), float(y0))]
    x, y = float(x0), float(y0)
    status = COMPLETED
    lo, hi = STRIP_MARGIN, 1 - STRIP_MARGIN
    for k in range(1, steps + 1):
        k1x, k1y = rhs(x, y)
        k2x, k2y = rhs(x + 0.5 * h * k1x, y + 0.5 * h * k1y)
        k3x, k3y = rhs(x + 0.5 * h * k2x, y + 0.5 * h * k2y)
        k4x, k4y = rhs(x + h * k3x, y + h * k3y)
        x = x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        y = y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        if not (math.isfinite(x) and math.isfinite(y)) or abs(y) > BLOWUP:
            status = BLOWN_UP
            break
        if unit_strip and not (lo < x < hi):
            status = LEFT_DOMAIN
            break
        out.append((k * h, x, y))
    return Trajectory(np.array(out, dtype=float), status)


# --- first integrals ----------------------------------------------------------

Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SpecialFactor:
    """A non-polynomial curve, evaluated numerically."""

    evaluate: Evaluator
    label: str = ""
    variant: str = ""


@dataclass(frozen=True)
class FirstIntegralSpec:
    """``prod |f_i| ** lambda_i`` over polynomial and special factors."""

    power_factors: Tuple[Tuple[BiPoly, Fraction], ...] = ()
    special_factors: Tuple[Tuple[SpecialFactor, Fraction], ...] = ()

    def factor_values(self, x, y) -> List[Tuple[np.ndarray, float]]:
        vals = [(np.asarray(bipoly_evaluate(f, x, y), dtype=float), float(l))
                for f, l in self.power_factors]
        vals += [(np.asarray(s.evaluate(x, y), dtype=float), float(l))
                 for s, l in self.special_factors]
        return vals

    def log_abs(self, x, y) -> np.ndarray:
        """``log |F|`` (the sign of each factor is fixed along a trajectory)."""
        x = np.asarray(x, dtype=float)
        total = np.zeros_like(x)
        for v, l in self.factor_values(x, y):
            with np.errstate(divide="ignore"):
                total = total + l * np.log(np.abs(v))
        return total

    def __call__(self, x, y):
        return np.exp(self.log_abs(x, y))


@dataclass(frozen=True)
class SeedDrift:
    x0: float
    y0: float
    drift: Optional[float]
    status: str  # "ok" or "skipped"
    terminated: str
    samples: int
    reason: str = ""


@dataclass(frozen=True)
class DriftReport:
    seeds: Tuple[SeedDrift, ...]
    h: float
    T: float
    tol: float
    verdict: str
    label: str = ""

    @property
    def max_drift(self) -> float:
        ds = [s.drift for s in self.seeds if s.drift is not None]
        return max(ds) if ds else 0.0


def trajectory_drift(traj: Trajectory, spec: FirstIntegralSpec) -> Tuple[Optional[float], str]:
    """Max relative drift ``|F(t) - F(0)| / |F(0)|`` along ``traj``."""
    x, y = traj.x, traj.y
    vals = spec.factor_values(x, y)
    for v, _ in vals:
        if v[0] == 0 or not np.isfinite(v[0]):
            return None, "factor vanishes at the seed"
        if np.any(np.sign(v) != np.sign(v[0])) or not np.all(np.isfinite(v)):
            return None, "trajectory crosses a factor zero"
    logF = spec.log_abs(x, y)
    rel = np.abs(np.expm1(logF - logF[0]))
    return float(np.max(rel)), ""


def drift_report(sys: QuadraticSystem, spec: FirstIntegralSpec,
                 seeds: Sequence[Tuple[float, float]] = STANDARD_SEEDS,
                 h: float = 1e-3, T: float = 2.0, tol: float = 1e-6,
                 unit_strip: bool = True, label: str = "") -> DriftReport:
    out = []
    for x0, y0 in seeds:
        traj = integrate_trajectory(sys, x0, y0, h, T, unit_strip=unit_strip)
        d, reason = trajectory_drift(traj, spec)
        out.append(SeedDrift(float(x0), float(y0), d, "skipped" if d is None else "ok",
                             traj.terminated, len(traj.samples), reason))
    checked = [s for s in out if s.drift is not None]
    ok = bool(checked) and all(s.drift <= tol for s in checked)
    return DriftReport(tuple(out), h, T, tol, "pass" if ok else "fail", label)


def darboux_first_integral(dset: DarbouxSystemSet, tol: float = 1e-16) -> FirstIntegralSpec:
    """``prod g_i ** lambda_i`` from a curve set with exact exponents."""
    if dset.exponents is None:
        raise DomainError("curve set has no exponents")
    power, special = [], []
    for g, lam in zip(dset.curves, dset.exponents):
        if lam == 0:
            continue
        if isinstance(g, BiPoly):
            power.append((g, lam))
        else:
            special.append((SpecialFactor(lambda x, y, g=g: g.evaluate(x, y, tol), label=str(g.a)), lam))
    return FirstIntegralSpec(tuple(power), tuple(special))


def hypergeometric_system(a, b, c, beta, gamma) -> QuadraticSystem:
    return derive_system(hypergeometric_operator(a, b, c), CofactorLine(beta, gamma))


# The general two-curve integral has one ambiguous parameter slot; the two
# readings put ``1 + a + c`` (v1) or ``1 + a - c`` (v2) there, and likewise
# ``2 + a + c`` / ``2 + a - c`` in the second curve.
VARIANTS = ("v1", "v2")


def general_integral_spec(a, b, c, beta, gamma, variant: str, tol: float = 1e-16) -> FirstIntegralSpec:
    a, b, c, beta, gamma = (as_fraction(v) for v in (a, b, c, beta, gamma))
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}")
    sgn = 1 if variant == "v1" else -1
    first1, first2 = 1 + a + sgn * c, 2 + a + sgn * c
    lin = lambda x, y: y + float(1 - b + beta) * x + float(gamma + c - 1 - a)  # noqa: E731
    k = float(1 + a - c)

    def g1(x, y):
        return (lin(x, y) * eval_2f1(first1, 1 + b - c, 2 - c, x, tol)
                + k * (1 - x) * eval_2f1(1 + a, b, c, x, tol) + k)

    def g2(x, y):
        return (lin(x, y) * eval_2f1(a, b, c, x, tol)
                + float(a) * (1 - x) * eval_2f1(first2, 1 + b - c, 2 - c, x, tol) + k)

    return FirstIntegralSpec(
        power_factors=((BiPoly.x(), 1 - c),),
        special_factors=((SpecialFactor(g1, "g1", variant), Fraction(1)),
                         (SpecialFactor(g2, "g2", variant), Fraction(-1))),
    )


def general_integral_curves(a, b, c, beta, gamma, variant: str) -> Optional[Tuple[BiPoly, BiPoly]]:
    """Exact ``(g1, g2)`` of a reading when every series involved terminates."""
    a, b, c, beta, gamma = (as_fraction(v) for v in (a, b, c, beta, gamma))
    sgn = 1 if variant == "v1" else -1
    params = [(1 + a + sgn * c, 1 + b - c, 2 - c), (1 + a, b, c), (a, b, c), (2 + a + sgn * c, 1 + b - c, 2 - c)]
    try:
        F = [hypergeometric_polynomial(*p).to_bipoly() for p in params]
    except ParameterError:
        return None
    lin = BiPoly.y() + BiPoly.x().scale(1 - b + beta) + (gamma + c - 1 - a)
    one_minus_x = 1 - BiPoly.x()
    k = 1 + a - c
    g1 = lin * F[0] + (one_minus_x * F[1]).scale(k) + k
    g2 = lin * F[2] + (one_minus_x * F[3]).scale(a) + k
    return g1, g2


@dataclass(frozen=True)
class AmbiguityReport:
    parameters: Tuple[Fraction, ...]  # a, b, c, beta, gamma
    reports: Tuple[Tuple[str, DriftReport], ...]
    passing: Tuple[str, ...]
    # variant -> (g1 invariant, g2 invariant), exact; absent if a series does not terminate
    exact_invariance: Tuple[Tuple[str, Optional[Tuple[bool, bool]]], ...] = ()

    def text(self) -> str:
        a, b, c, beta, gamma = self.parameters
        lines = [f"general two-curve integral, a={a} b={b} c={c} beta={beta} gamma={gamma}"]
        for name, rep in self.reports:
            lines.append(f"  {name}: verdict={rep.verdict} max_drift={rep.max_drift:.3e} tol={rep.tol:g}")
        for name, inv in self.exact_invariance:
            if inv is not None:
                lines.append(f"  {name}: exact invariance g1={'yes' if inv[0] else 'no'} "
                             f"g2={'yes' if inv[1] else 'no'}")
        lines.append("  passing variant: " + (", ".join(self.passing) if self.passing else "none"))
        return "\n".join(lines)


def ambiguity_report(a, b, c, beta=0, gamma=0, seeds=STANDARD_SEEDS,
                     h: float = 1e-3, T: float = 2.0, tol: float = 1e-5) -> AmbiguityReport:
    """Run the drift harness on both readings of the general integral."""
    params = tuple(as_fraction(v) for v in (a, b, c, beta, gamma))
    sys = hypergeometric_system(*params)
    reports = []
    for v in VARIANTS:
        spec = general_integral_spec(*params, variant=v)
        reports.append((v, drift_report(sys, spec, seeds, h, T, tol, unit_strip=True, label=v)))
    passing = tuple(v for v, r in reports if r.verdict == "pass")
    P, Q = sys.vector_field()
    exact = []
    for v in VARIANTS:
        curves = general_integral_curves(*params, variant=v)
        if curves is None:
            exact.append((v, None))
            continue
        exact.append((v, tuple(not g.is_constant() and extract_cofactor(P, Q, g) is not None
                               for g in curves)))
    return AmbiguityReport(params, tuple(reports), passing, tuple(exact))


# --- grids ------------------------------------------------------------------

def level_samples(f: Union[BiPoly, Callable], region: Tuple[float, float, float, float],
                  grid: Tuple[int, int]) -> List[Tuple[float, float, Optional[float]]]:
    """Row-major ``(x, y, f)`` over ``region = (xmin, xmax, ymin, ymax)``; ``x`` varies fastest.

    Nonfinite values (poles) become ``None``.
    """
    nx, ny = grid
    if nx < 2 or ny < 2:
        raise DomainError("grid must be at least 2x2")
    xmin, xmax, ymin, ymax = region
    xs = np.linspace(xmin, xmax, nx)
    ys = np.linspace(ymin, ymax, ny)
    rows = []
    for yv in ys:
        for xv in xs:
            try:
                if isinstance(f, BiPoly):
                    val = float(bipoly_evaluate(f, float(xv), float(yv)))
                else:
                    with np.errstate(all="ignore"):
                        val = float(f(float(xv), float(yv)))
            except ZeroDivisionError:
                val = math.nan
            rows.append((float(xv), float(yv), val if math.isfinite(val) else None))
    return rows
