import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hconvex.errors import DomainError, NonConvergenceError
from hconvex.quadrature import integrate01

import oracles


@pytest.mark.parametrize("smooth", [True, False])
@pytest.mark.parametrize("degree", range(7))
def test_monomials_exact(degree, smooth):
    r = integrate01(lambda t: t ** degree, smooth_endpoints=smooth)
    assert abs(r.value - 1.0 / (degree + 1)) <= 1e-12


def test_error_bound_within_tolerance():
    r = integrate01(np.exp, tol=1e-9)
    assert r.abs_error_bound <= 1e-9
    assert abs(r.value - (np.e - 1.0)) <= 1e-9
    assert r.n_evals > 0


def test_sqrt_endpoint_singularity():
    assert integrate01(np.sqrt).value == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_matches_frozen_riemann_value():
    r = integrate01(lambda t: ((1 - t) ** 2 + t ** 2) ** 0.25)
    assert r.value == pytest.approx(oracles.RIEMANN_QUARTER_ROOT, abs=1e-12)


def test_interior_cusp_needs_breakpoint():
    g = lambda t: np.abs(t - 0.3) ** 0.5
    exact = (0.3 ** 1.5 + 0.7 ** 1.5) / 1.5
    assert integrate01(g, breakpoints=[0.3]).value == pytest.approx(exact, abs=1e-11)
    with pytest.raises(NonConvergenceError):
        integrate01(g, smooth_endpoints=False, max_depth=12)


def test_non_finite_integrand_rejected():
    with pytest.raises(DomainError), np.errstate(divide="ignore"):
        integrate01(lambda t: 1.0 / (t - 0.5), smooth_endpoints=False)


def test_scalar_only_callable_is_accepted():
    r = integrate01(math.exp)
    assert r.value == pytest.approx(math.e - 1.0, abs=1e-12)


def test_bad_tolerance():
    with pytest.raises(ValueError):
        integrate01(np.sin, tol=0.0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=7))
def test_random_polynomials(coeffs):
    g = lambda t: sum(c * t ** k for k, c in enumerate(coeffs))
    assert integrate01(g).value == pytest.approx(oracles.poly_integral01(coeffs), abs=1e-12)
