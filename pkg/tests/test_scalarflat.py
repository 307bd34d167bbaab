import math
from fractions import Fraction

import numpy as np
import pytest

from torickahler.curvature import hessian_t_family, scalar_curvature_reduced
from torickahler.errors import AccuracyError, DimensionError, DomainError
from torickahler.jets import constant
from torickahler.potentials import (
    custom_potential,
    f2_value,
    generalized_burns_potential,
)
from torickahler.scalarflat import (
    boundary_match,
    boundary_regularity,
    burns_simanca_potential,
    delta_check,
    reconstruct_F,
    solve_boundary_coefficients,
)


def _poly_eval(coeffs, t):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_derivative(coeffs):
    return [Fraction(k) * c for k, c in enumerate(coeffs)][1:]


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


# ---------------------------------------------------------------------------
# Exact boundary matching
# ---------------------------------------------------------------------------


def test_solve_n3():
    match = solve_boundary_coefficients(3)
    assert (match.A, match.B) == (Fraction(2), Fraction(-1))
    assert match.quotient == (Fraction(-1), Fraction(1), Fraction(1))  # t^2 + t - 1
    assert match.remainder == 0


def test_solve_n2():
    match = solve_boundary_coefficients(2)
    assert (match.A, match.B) == (Fraction(1), Fraction(0))
    assert match.quotient == (Fraction(0), Fraction(1))  # Q(t) = t


def test_solve_n1_rejected():
    with pytest.raises(DimensionError):
        solve_boundary_coefficients(1)


@pytest.mark.parametrize("n", range(2, 13))
def test_exact_division_identity(n):
    match = solve_boundary_coefficients(n)
    # (t - 1) Q(t) must reproduce t^n - A t - B coefficient for coefficient.
    product = _poly_mul([Fraction(-1), Fraction(1)], list(match.quotient))
    expected = [Fraction(0)] * (n + 1)
    expected[n] = Fraction(1)
    expected[1] = -match.A
    expected[0] += -match.B
    assert product == expected
    assert match.remainder == 0


@pytest.mark.parametrize("n", range(2, 13))
def test_quotient_is_geometric_sum_minus_constant(n):
    match = solve_boundary_coefficients(n)
    expected = tuple([Fraction(-(n - 2))] + [Fraction(1)] * (n - 1))
    assert match.quotient == expected
    assert _poly_eval(list(match.quotient), Fraction(1)) == 1


def test_matching_conditions_have_unique_solution():
    # The linear system (A+B=1, A=n-1) has determinant -1; its unique exact
    # solution is (n-1, 2-n).
    for n in range(2, 13):
        match = solve_boundary_coefficients(n)
        assert match.A == n - 1
        assert match.B == 2 - n


# ---------------------------------------------------------------------------
# The matched potential
# ---------------------------------------------------------------------------


def test_burns_simanca_n2_equals_generalized_burns():
    bs = burns_simanca_potential(2)
    gb = generalized_burns_potential()
    for t in np.linspace(1.05, 12.0, 40):
        assert f2_value(bs, float(t)) == pytest.approx(f2_value(gb, float(t)), rel=1e-13)


def test_burns_simanca_n3_value():
    # ((n-1)t + 2 - n) / (t (t^n - (n-1)t - 2 + n)) = 3 / (2 * 5) at n=3, t=2.
    assert f2_value(burns_simanca_potential(3), 2.0) == pytest.approx(0.3, abs=1e-14)


def test_burns_simanca_admissible_everywhere():
    from torickahler.potentials import admissibility

    for n in (2, 4, 6):
        pot = burns_simanca_potential(n)
        report = admissibility(pot, (1.0001, 100.0), 300)
        assert report.passed
        assert f2_value(pot, 5.0) > 0.0


def test_burns_simanca_scalar_flat_n3():
    pot = burns_simanca_potential(3)
    for t in (1.01, 1.1, 2.0, 10.0, 100.0):
        assert scalar_curvature_reduced(pot, 3, t) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("n", range(2, 9))
def test_denominator_positive_beyond_one(n):
    for t in np.linspace(1.0001, 50.0, 200):
        assert t**n - (n - 1) * t - 2 + n > 0.0
    match = solve_boundary_coefficients(n)
    assert all(c >= 0 for c in match.quotient[1:])
    assert _poly_eval(list(match.quotient), Fraction(1)) == 1


# ---------------------------------------------------------------------------
# delta positivity and the determinant factorization
# ---------------------------------------------------------------------------


def test_delta_at_one():
    match = solve_boundary_coefficients(3)
    assert match.delta(1.0) == pytest.approx(8.0, abs=1e-14)


def test_delta_factorization_n2_unit_point():
    match = solve_boundary_coefficients(2)
    pot = burns_simanca_potential(2)
    h = hessian_t_family(pot, [1.0, 1.0])
    # All three facet values at (1,1) are 1, so det G^{-1} = delta(2).
    assert h.det_G_inv == pytest.approx(2.0, abs=1e-13)
    assert match.delta(2.0) * 1.0 * 1.0 * 1.0 == pytest.approx(2.0, abs=1e-13)


@pytest.mark.parametrize("n", (2, 3, 5))
def test_delta_check_passes_for_matched_coefficients(n):
    # Determinants grow like t^n, so the absolute 1e-10 gate is checked on
    # moderate t; larger samples are still covered by the relative gate inside.
    match = solve_boundary_coefficients(n)
    report = delta_check(match, [1.0, 1.2, 2.0, 3.5, 5.0])
    assert report.passed
    assert report.max_det_deviation < 1e-10
    wide = delta_check(match, [1.0, 2.0, 25.0, 100.0])
    assert wide.passed


def test_delta_check_fails_for_mismatched_coefficients():
    bad = boundary_match(3, 0, 0)
    assert bad.remainder != 0
    report = delta_check(bad, [1.0, 2.0])
    assert not report.passed
    assert report.witness == 1.0


# ---------------------------------------------------------------------------
# Reconstruction of F and the boundary diagnostic
# ---------------------------------------------------------------------------


def test_reconstruct_burns_simanca_n2_affine_gauge():
    # F'' agrees with the product-metric potential, so the reconstruction can
    # differ from its closed form only by an affine function of t.
    bs = burns_simanca_potential(2)
    closed = generalized_burns_potential().value_fn
    ts = [1.3, 1.7, 2.5, 4.0]
    diffs = [reconstruct_F(bs, t)[0] - closed(t) for t in ts]
    slopes = [(diffs[i + 1] - diffs[i]) / (ts[i + 1] - ts[i]) for i in range(3)]
    for i in range(2):
        assert slopes[i + 1] == pytest.approx(slopes[i], abs=1e-8)


def test_reconstruct_first_derivative():
    from helpers import central_derivative

    bs = burns_simanca_potential(3)
    value_at = lambda t: reconstruct_F(bs, t)[0]
    for t in (1.6, 2.5):
        fd = central_derivative(value_at, t, 1, 1e-5)
        assert reconstruct_F(bs, t)[1] == pytest.approx(fd, abs=1e-8)


def test_reconstruct_flat_at_anchor():
    from torickahler.potentials import flat_potential

    assert reconstruct_F(flat_potential(), 1.0, anchor=1.0) == (0.0, 0.0)


def test_boundary_regularity_extends_to_one():
    # Exact limit by polynomial calculus: r(t) = (N - t Q)/(t (t-1) Q) with both
    # N - t Q and t (t-1) Q vanishing at 1, so the limit is the derivative ratio.
    n = 3
    match = solve_boundary_coefficients(n)
    N = [match.B, match.A]
    tQ = [Fraction(0)] + list(match.quotient)
    numer = [a - b for a, b in zip(N + [Fraction(0)] * (len(tQ) - len(N)), tQ)]
    denom = _poly_mul([Fraction(0), Fraction(1)], _poly_mul([Fraction(-1), Fraction(1)], list(match.quotient)))
    assert _poly_eval(numer, Fraction(1)) == 0
    assert _poly_eval(denom, Fraction(1)) == 0
    limit = _poly_eval(_poly_derivative(numer), Fraction(1)) / _poly_eval(
        _poly_derivative(denom), Fraction(1)
    )

    pot = burns_simanca_potential(n)
    near = boundary_regularity(pot, 1.0 + 1e-6)
    nearer = boundary_regularity(pot, 1.0 + 1e-7)
    assert math.isfinite(near)
    assert near == pytest.approx(float(limit), abs=1e-4)
    # Closer to the facet the subtraction loses digits like eps/(t-1)^2, so the
    # probe at 1e-7 only confirms continuity at its own noise floor.
    assert nearer == pytest.approx(float(limit), abs=1e-2)


def test_boundary_regularity_rejects_t_below_one():
    with pytest.raises(DomainError):
        boundary_regularity(burns_simanca_potential(3), 0.9)


def test_reconstruct_reports_nonconvergence():
    wild = custom_potential(
        lambda t, order: constant(math.sin(3.0e7 * t) / t, base=t, order=order),
        (0.1, math.inf),
        label="oscillatory",
    )
    with pytest.raises(AccuracyError):
        reconstruct_F(wild, 9.0, anchor=0.5)
