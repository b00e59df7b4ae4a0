"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line in ``RESULTS``; the lines are printed in
the pytest terminal summary and when this file is run as a script.
"""
import random
import time
from fractions import Fraction as F

import numpy as np

from quadcurves.algebra import X, Y, BiPoly
from quadcurves.darboux import audit_family, cll_curve_set, darboux_combination, extract_cofactor
from quadcurves.numeric import (
    STANDARD_SEEDS,
    ambiguity_report,
    darboux_first_integral,
    drift_report,
    integrate_trajectory,
)
from quadcurves.operators import HermiteLike, polynomial_kernel
from quadcurves.sweep import STANDARD_FAMILIES, STANDARD_LINES, invariance_sweep, kernel_consistency, proportional
from quadcurves.systems import PencilSpec, family_bundle, pencil_system

RESULTS = {}
CLL = (F(-4), F(5, 2), F(1, 3))


def record(key: str, ok: bool, detail: str) -> None:
    RESULTS[key] = f"[{key}] {'PASS' if ok else 'FAIL'}: {detail}"


def test_criterion_1_arbitrary_degree_invariance():
    t0 = time.perf_counter()
    results = invariance_sweep(range(1, 26))
    elapsed = time.perf_counter() - t0
    bad = [r for r in results if not r.passed]
    ok = len(results) == 300 and not bad and elapsed <= 30
    record("criterion 1", ok, f"{len(results) - len(bad)}/{len(results)} cases exact, {elapsed:.1f}s")
    assert len(results) == 300
    assert not bad
    assert elapsed <= 30


def test_criterion_2_kernel_correctness():
    failures = []
    for name, make in STANDARD_FAMILIES.items():
        for n in range(1, 26):
            for beta, gamma in STANDARD_LINES:
                spec = make(n, beta, gamma)
                op = spec.operator()
                kernel = polynomial_kernel(op, n)
                if not kernel or not all(op.apply(w).is_zero() for _, w in kernel):
                    failures.append((name, n, beta, gamma, "solve"))
            if n <= 20:
                solves, prop = kernel_consistency(make(n, F(0), F(0)))
                if not (solves and prop):
                    failures.append((name, n, "proportional"))
    record("criterion 2", not failures, f"{len(failures)} kernel failures")
    assert not failures


def test_criterion_3_audit():
    lines = []
    ok = True
    for name in ("hyp", "jacobi", "laguerre"):
        for beta, gamma in STANDARD_LINES:
            reports = audit_family(STANDARD_FAMILIES[name](1, beta, gamma), range(1, 6))
            if any(r.coefficient_diffs for r in reports):
                ok = False
                lines.append(f"{name} has diffs at beta={beta} gamma={gamma}")
    # Hermite: the printed q21 and q20 differ from the derived ones
    for gamma in (F(1, 3), F(-1, 2)):
        for r in audit_family(HermiteLike(1, F(0), gamma), range(1, 6)):
            if set(r.coefficient_diffs) != {"q21", "q20"}:
                ok = False
                lines.append(f"hermite n={r.family.n} gamma={gamma} diffs {sorted(r.coefficient_diffs)}")
    [r] = audit_family(HermiteLike(1), [1])
    if not (r.literal_invariance == "fail" and r.literal_residual == X.scale(2)
            and set(r.coefficient_diffs) <= {"q21", "q20"}):
        ok = False
        lines.append(f"hermite n=1 origin: {r.literal_invariance}, residual {r.literal_residual}")
    record("criterion 3", ok, "; ".join(lines) or "three agreeing families, hermite diffs q21/q20, residual 2*x")
    assert ok, lines


def _drift(h):
    dset = cll_curve_set(*CLL)
    return drift_report(dset.system, darboux_first_integral(dset), STANDARD_SEEDS, h=h, T=2.0, tol=1e-6)


def test_criterion_4_cll_darboux_relation():
    dset = cll_curve_set(*CLL)
    P, Q = dset.system.vector_field()
    lam = darboux_combination(list(zip(dset.curves, dset.cofactors)), P, Q)
    total = BiPoly()
    for l, K in zip(lam, dset.cofactors):
        total = total + K.scale(l)
    exact_ok = lam is not None and total.is_zero()

    coarse, fine = _drift(1e-3), _drift(5e-4)
    used = [s for s in coarse.seeds if s.drift is not None]
    drift_ok = len(used) >= 10 and coarse.max_drift <= 1e-6
    ratio = coarse.max_drift / fine.max_drift if fine.max_drift > 0 else float("inf")
    ratio_ok = 8 <= ratio <= 32
    ok = exact_ok and drift_ok and ratio_ok
    record("criterion 4", ok,
           f"exact relation {'ok' if exact_ok else 'missing'}; max drift {coarse.max_drift:.2e} over "
           f"{len(used)} seeds (tol 1e-6); halving ratio {ratio:.2f} (need 8..32)")
    assert exact_ok
    assert drift_ok, f"max drift {coarse.max_drift:.3e}"
    assert ratio_ok, f"ratio {ratio:.3f}"


def test_cll_drift_on_resolved_segment():
    # Diagnostic, not a criterion: every standard seed reaches the movable pole
    # of this Riccati system before T = 2.  Restricted to |y| < 10 the drift is
    # at integrator level and converges at fourth order.
    dset = cll_curve_set(*CLL)
    spec = darboux_first_integral(dset)

    def worst(h):
        out = 0.0
        for x0, y0 in STANDARD_SEEDS:
            tr = integrate_trajectory(dset.system, x0, y0, h, 2.0, unit_strip=True)
            assert tr.terminated == "blowup"
            big = np.nonzero(np.abs(tr.y) >= 10)[0]
            stop = big[0] if len(big) else len(tr.y)
            logF = spec.log_abs(tr.x[:stop], tr.y[:stop])
            out = max(out, float(np.max(np.abs(np.expm1(logF - logF[0])))))
        return out

    d1, d2 = worst(1e-3), worst(5e-4)
    assert d1 <= 1e-6
    assert 8 <= d1 / d2 <= 32


def test_criterion_5_hermite_riccati():
    bad = []
    for n in range(1, 26):
        for beta, gamma in STANDARD_LINES:
            b = family_bundle(HermiteLike(n, beta, gamma))
            a0 = b.a0.to_bipoly()
            riccati = (Y + X.scale(beta - 1) + gamma) * a0 + b.a0.derivative().to_bipoly()
            if b.g != riccati:
                bad.append((n, beta, gamma))
    record("criterion 5", not bad, f"{75 - len(bad)}/75 Hermite curves equal the Riccati form")
    assert not bad


def _random_poly(rng, nonconstant=False):
    while True:
        terms = {(i, j): F(rng.randint(-10, 10), 2) for i in range(3) for j in range(3 - i)
                 if rng.random() < 0.6}
        p = BiPoly(terms)
        if not nonconstant or not p.is_constant():
            return p


def test_criterion_6_pencil_property():
    rng = random.Random(20261017)
    bad = 0
    for _ in range(100):
        g = _random_poly(rng, nonconstant=True)
        spec = PencilSpec(g, _random_poly(rng), _random_poly(rng), _random_poly(rng))
        P, Q = pencil_system(spec)
        K = extract_cofactor(P, Q, g)
        if K != spec.lambda1 * g.derivative("x") + spec.lambda2 * g.derivative("y"):
            bad += 1
    record("criterion 6", bad == 0, f"{100 - bad}/100 pencils give the expected cofactor")
    assert bad == 0


def test_criterion_7_ambiguity_report():
    # 1 + b - c = -1 and a = -2 close every series of both readings
    params = (F(-2), F(-5, 3), F(1, 3))
    r1 = ambiguity_report(*params, tol=1e-5)
    r2 = ambiguity_report(*params, tol=1e-5)
    text = r1.text()
    deterministic = text == r2.text()
    names = "passing variant:" in text
    passing = text.rsplit("passing variant: ", 1)[-1]
    record("criterion 7", deterministic and names, f"report deterministic, passing variant: {passing}")
    assert deterministic and names


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
    for key in sorted(RESULTS):
        print(RESULTS[key])
