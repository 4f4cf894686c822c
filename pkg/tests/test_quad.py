import math

import pytest

from lzdephase.errors import QuadratureError
from lzdephase.formulas import q_closed
from lzdephase.quad import gk15, integrate_adaptive, integrate_real_line, integrate_tail


def test_kronrod_rule_exact_for_polynomials():
    for d in range(23):
        k, _, _ = gk15(lambda t: t**d, 0.0, 1.0)
        assert k == pytest.approx(1 / (d + 1), rel=1e-14)
    for d in range(14):
        _, g, _ = gk15(lambda t: t**d, 0.0, 1.0)
        assert g == pytest.approx(1 / (d + 1), rel=1e-14)


def test_adaptive_examples():
    v, e = integrate_adaptive(lambda t: t, 0.0, 1.0, 1e-14)
    assert abs(v - 0.5) <= 1e-14
    v, e = integrate_adaptive(lambda t: 4 / (1 + t * t), 0.0, 1.0, 1e-13)
    assert abs(v - math.pi) <= 1e-12
    v, e = integrate_adaptive(lambda t: t**3, -1.0, 1.0, 1e-14)
    assert abs(v) <= 1e-14


def test_real_line_examples():
    v, e = integrate_real_line(lambda t: 1 / (1 + t * t), 1e-13)
    assert abs(v - math.pi) <= 1e-12
    v, e = integrate_real_line(lambda t: (t * t + 1) ** -2 / (t * t + 2), 1e-12)
    assert abs(v - q_closed(1.0)) <= 1e-9
    v, e = integrate_real_line(lambda t: t / (1 + t * t) ** 2, 1e-12)
    assert abs(v) <= 1e-12


@pytest.mark.parametrize("f, a, b, exact", [
    (math.exp, 0.0, 3.0, math.e**3 - 1),
    (lambda t: math.sqrt(t), 0.0, 1.0, 2 / 3),
    (lambda t: 1 / (1e-4 + t * t), -1.0, 1.0, 2 * math.atan(1e2) * 1e2),
])
def test_error_estimate_bounds_true_error(f, a, b, exact):
    v, e = integrate_adaptive(f, a, b, 1e-10)
    assert abs(v - exact) <= max(e, 1e-13 * abs(exact))
    assert e <= 1e-10


def test_tail_integral():
    v, _ = integrate_tail(lambda t: 1 / t**2, 4.0, 1e-13)
    assert v == pytest.approx(0.25, abs=1e-13)


def test_depth_limit(monkeypatch):
    import lzdephase.quad as quad

    monkeypatch.setattr(quad, "MAX_DEPTH", 6)
    with pytest.raises(QuadratureError):
        quad.integrate_adaptive(lambda t: abs(t - 0.3) ** 0.5, 0.0, 1.0, 1e-14)


def test_nonfinite_integrand():
    with pytest.raises(QuadratureError):
        integrate_adaptive(lambda t: math.inf, 0.0, 1.0)


def test_argument_checks():
    with pytest.raises(ValueError):
        integrate_adaptive(lambda t: t, 1.0, 0.0)
    with pytest.raises(ValueError):
        integrate_adaptive(lambda t: t, 0.0, 1.0, 0.0)
