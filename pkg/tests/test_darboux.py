from fractions import Fraction as F

import pytest

from quadcurves.algebra import X, Y, BiPoly
from quadcurves.darboux import (
    FIRST_INTEGRAL,
    INTEGRATING_FACTOR,
    HypergeometricCurve,
    audit_family,
    cll_curve_set,
    darboux_combination,
    extract_cofactor,
    verify_invariance,
)
from quadcurves.errors import DomainError, ModeError, ParameterError
from quadcurves.operators import HermiteLike, Hypergeometric, Jacobi, Laguerre
from quadcurves.systems import family_bundle, paper_literal_system

A, B, C = F(-4), F(5, 2), F(1, 3)


@pytest.fixture(scope="module")
def cll():
    return cll_curve_set(A, B, C)


def test_cll_line_cofactors(cll):
    assert cll.cofactors[0] == 1 - X
    assert cll.cofactors[1] == -X


def test_cll_hypergeometric_cofactors(cll):
    # g3 carries the line y + beta x + gamma it was built with
    beta = A + B - A * B / C - 1
    assert cll.cofactors[2] == Y + X.scale(beta) + (1 - C)
    assert cll.cofactors[2] == Y + X.scale(F(55, 2)) + F(2, 3)
    # the companion curve carries y - ((b - c)(a - c)/c) x
    assert cll.cofactors[3] == Y - X.scale((B - C) * (A - C) / C)


def test_cll_exponents(cll):
    assert cll.exponents == (C - 1, 0, 1, -1)
    assert cll.relation_holds()


def test_cll_g4_numeric_certificate(cll):
    g4 = cll.curves[3]
    assert isinstance(g4, HypergeometricCurve) and not g4.terminating
    with pytest.raises(ModeError):
        cll_curve_set(A, B, C, require_polynomial=True)


def test_cll_terminating_g4_is_exact():
    # 1 + b - c = -1 makes the companion series terminate
    s = cll_curve_set(-2, F(-5, 3), F(1, 3), require_polynomial=True)
    assert all(isinstance(g, BiPoly) for g in s.curves)
    P, Q = s.system.vector_field()
    for g, K in zip(s.curves, s.cofactors):
        assert extract_cofactor(P, Q, g) == K
    assert s.relation_holds()


def test_cll_parameter_errors():
    with pytest.raises(ParameterError):
        cll_curve_set(F(1, 2), 1, F(1, 3))
    with pytest.raises(ParameterError):
        cll_curve_set(-2, 1, 2)


def test_combination_trivial_cases():
    K = Y + X
    P, Q = BiPoly.constant(1), Y
    assert darboux_combination([(X, K), (Y, K)], P, Q) == [1, -1]
    assert darboux_combination([(X, K)], P, Q, FIRST_INTEGRAL) is None
    with pytest.raises(ModeError):
        darboux_combination([(X, K)], P, Q, "nope")


def test_integrating_factor_mode():
    # x' = x, y' = y: div = 2, curves x and y with cofactors 1 and 1
    P, Q = X, Y
    lam = darboux_combination([(X, BiPoly.constant(1)), (Y, BiPoly.constant(1))], P, Q, INTEGRATING_FACTOR)
    assert lam is not None
    assert sum(lam) == -2


def test_extract_cofactor_examples():
    b = family_bundle(HermiteLike(1))
    P, Q = b.system.vector_field()
    assert extract_cofactor(P, Q, b.g) == Y
    assert extract_cofactor(P, Q, X) is None
    with pytest.raises(DomainError):
        extract_cofactor(P, Q, BiPoly.constant(2))


def test_verify_invariance_literal_hermite():
    b = family_bundle(HermiteLike(1))
    lit = paper_literal_system(HermiteLike(1))
    cert = verify_invariance(lit.P, lit.Q, b.g, Y)
    assert cert.status == "fail"
    assert cert.residual == X.scale(2)
    free = verify_invariance(lit.P, lit.Q, b.g)
    assert free.status == "fail" and free.cofactor is None


@pytest.mark.parametrize("beta,gamma", [(0, 0), (1, 0), (F(-1, 2), F(1, 3))])
def test_hermite_riccati_curve(beta, gamma):
    for n in (1, 4, 9):
        b = family_bundle(HermiteLike(n, beta, gamma))
        a0 = b.a0.to_bipoly()
        riccati = (Y + X.scale(beta - 1) + gamma) * a0 + b.a0.derivative().to_bipoly()
        assert b.g == riccati


@pytest.mark.parametrize("spec", [Hypergeometric(-1, F(5, 2), F(1, 3), F(1, 2), F(-1)),
                                  Jacobi(F(1, 2), F(0), 1, F(2), F(1, 3)),
                                  Laguerre(F(2), 1, F(-1), F(3))])
def test_audit_agreeing_families(spec):
    for r in audit_family(spec, range(1, 5)):
        assert r.coefficient_diffs == {}
        assert r.literal_invariance == "pass"


def test_audit_hermite():
    [r] = audit_family(HermiteLike(1, 0, F(1, 3)), [1])
    assert set(r.coefficient_diffs) == {"q21", "q20"}
    [r] = audit_family(HermiteLike(1), [1])
    assert r.literal_invariance == "fail"
    assert r.literal_residual == X.scale(2)
    # with beta != 0 the printed q22 also differs
    [r] = audit_family(HermiteLike(2, 1, 0), [2])
    assert "q22" in r.coefficient_diffs


def test_audit_proof_text_notes():
    [r] = audit_family(Laguerre(F(2), 2, F(1, 2), F(1, 3)), [2])
    assert any("proof text differs" in n for n in r.notes)
    [r] = audit_family(HermiteLike(2, F(1, 2), F(1, 3)), [2])
    assert "proof text agrees with derived system" in r.notes
