import math

import mpmath as mp
import pytest

from whithamcert.rigor import RS, RigorousScalar
from whithamcert import specfun as sf
from whithamcert.quadrature import (
    IntegrandSpec,
    QuadratureConfig,
    integrate_rigorous,
    integrate_with_singular_ends,
)

mp.mp.dps = 40

CFG = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-6)


def spec_poly():
    return IntegrandSpec(value=lambda x: x * x, second_derivative=lambda x: RS(2))


def test_t_squared():
    r = integrate_rigorous(spec_poly(), 0, 1, CFG)
    assert not r.overflow
    assert r.value.contains(mp.nstr(mp.mpf(1) / 3, 35))
    assert r.value.width_float() <= CFG.abs_tol


def test_sin_over_0_pi():
    f = IntegrandSpec(value=lambda x: x.sin(), second_derivative=lambda x: -x.sin())
    r = integrate_rigorous(f, 0, sf.pi_rs(), CFG)
    assert r.value.contains(2)


def test_abs_integrand_sign_split():
    # |cos| over [0, pi] = 2, crosses zero at pi/2
    f = IntegrandSpec(
        value=lambda x: x.cos(), second_derivative=lambda x: -x.cos(), absolute_value=True
    )
    r = integrate_rigorous(f, 0, sf.pi_rs(), QuadratureConfig(abs_tol=1e-6, rel_tol=1e-4))
    assert r.value.contains(2)
    assert r.value.width_float() < 1e-3


CLOSED_FORMS = [
    (lambda x: x.exp(), lambda x: x.exp(), "0", "1", mp.e - 1),
    (lambda x: 1 / (1 + x * x), None, "0", "1", mp.pi / 4),
    (lambda x: x.sqrt(), None, "0", "4", mp.mpf(16) / 3),
    (lambda x: (2 * x).sin(), lambda x: -4 * (2 * x).sin(), "0", "1", (1 - mp.cos(2)) / 2),
    (lambda x: x.log(), None, "1", "3", 3 * mp.log(3) - 2),
    (lambda x: 1 / x, None, "1", "2", mp.log(2)),
    (lambda x: x * x * x - x, lambda x: 6 * x, "0", "2", mp.mpf(2)),
    (lambda x: (-x).exp(), lambda x: (-x).exp(), "0", "10", 1 - mp.exp(-10)),
    (lambda x: x.cos() * x.cos(), None, "0", "3.14159", mp.mpf("3.14159") / 2 + mp.sin(2 * mp.mpf("3.14159")) / 4),
    (lambda x: (1 + x).sqrt(), None, "0", "1", (2 * mp.sqrt(8) - 2) / 3),
    (lambda x: x.sinh(), lambda x: x.sinh(), "0", "1", mp.cosh(1) - 1),
    (lambda x: x.tanh(), None, "0", "2", mp.log(mp.cosh(2))),
    (lambda x: 1 / (2 + x.sin()), None, "0", "6.2831853", None),
    (lambda x: x * x.exp(), None, "0", "1", mp.mpf(1)),
    (lambda x: abs(x), None, "-1", "1", mp.mpf(1)),
    (lambda x: x.atan(), None, "0", "1", mp.pi / 4 - mp.log(2) / 2),
    (lambda x: 1 / (1 + x).sqrt(), None, "0", "3", mp.mpf(2)),
    (lambda x: (x * x).exp(), None, "0", "0.5", None),
    (lambda x: (5 * x).cos(), lambda x: -25 * (5 * x).cos(), "0", "1", mp.sin(5) / 5),
    (lambda x: x ** 5, None, "0", "1", mp.mpf(1) / 6),
]


def test_twenty_closed_forms_containment():
    hits = 0
    for fn, d2, a, b, exact in CLOSED_FORMS:
        spec = IntegrandSpec(value=fn, second_derivative=d2)
        for tol in (1e-4, 1e-6):
            cfg = QuadratureConfig(abs_tol=tol, rel_tol=1e-3)
            r = integrate_rigorous(spec, RS(a), RS(b), cfg)
            assert r.value.valid
            if exact is None:
                exact_v = mp.quad(
                    lambda t: (
                        fn_point(fn, t)
                    ),
                    [mp.mpf(a), mp.mpf(b)],
                )
            else:
                exact_v = exact
            assert r.value.contains(mp.nstr(exact_v, 30)), (a, b, tol)
        hits += 1
    assert hits == 20


def fn_point(fn, t):
    v = fn(RS(mp.nstr(t, 30)))
    return (mp.mpf(v.lower_float()) + mp.mpf(v.upper_float())) / 2


def test_refinement_tolerance_consistency():
    spec = spec_poly()
    loose = integrate_rigorous(spec, 0, 1, QuadratureConfig(abs_tol=1e-3, rel_tol=1e-2))
    tight = integrate_rigorous(spec, 0, 1, QuadratureConfig(abs_tol=1e-9, rel_tol=1e-7))
    assert loose.value.overlaps(tight.value)
    assert tight.value.width_float() <= loose.value.width_float()


def test_determinism():
    spec = IntegrandSpec(value=lambda x: (3 * x).sin() / (1 + x))
    r1 = integrate_rigorous(spec, 0, 2, CFG)
    r2 = integrate_rigorous(spec, 0, 2, CFG)
    assert r1.value.serialize() == r2.value.serialize()


def test_queue_overflow_flag_sound():
    # nasty oscillatory integrand with a tiny queue: must stay sound
    spec = IntegrandSpec(value=lambda x: (50 * x).sin())
    cfg = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-12, qsize=8)
    r = integrate_rigorous(spec, 0, 1, cfg)
    assert r.overflow
    exact = (1 - mp.cos(50)) / 50
    assert r.value.contains(mp.nstr(exact, 25))


def test_singular_end_sqrt():
    # f = t^{-1/2} on [0,1] with exact left expansion: total encloses 2
    left = sf.AsymptoticExpansion(
        [(RS("-0.5"), RS(1))], sf.SeriesRemainder(RS(0), None), None
    )
    spec = IntegrandSpec(value=lambda x: 1 / x.sqrt())
    r = integrate_with_singular_ends(
        spec, (left, None), ("1e-6", None), 0, 1, QuadratureConfig(abs_tol=1e-7, rel_tol=1e-5)
    )
    assert r.value.contains(2)
    assert r.value.width_float() < 1e-3


def test_cb_core_integral_via_singular_split():
    # int_0^1 (1/sqrt(1-t) + 1/sqrt(1+t) - 2) t^{-5/2} t-weighted core piece:
    # the paper's first split value is (2/3)(sqrt(2)+2) for the plain integral
    # with weight; we check the w-form: int_0^1 |...| w dw equals it (oracle).
    def g(w):
        return (1 / (1 - w).sqrt() + 1 / (1 + w).sqrt() - 2) / w ** RS("2.5")

    spec = IntegrandSpec(value=g)
    # endpoints are singular on both sides; oracle by mpmath quad
    oracle = mp.quad(
        lambda t: (1 / mp.sqrt(1 - t) + 1 / mp.sqrt(1 + t) - 2) * t ** mp.mpf("-2.5"),
        [0, 1],
    )
    # left sliver: integrand ~ (3/4) t^{-1/2} + O(t^(1/2)); use C0 bound terms
    # derived from the series (1-t)^(-1/2)+(1+t)^(-1/2)-2 = (3/4)t^2 + r(t),
    # 0 <= r(t) <= c t^4 on [0, d] with c = value at d of r(t)/t^4 monotone.
    d = RS("0.01")
    c_up = ((1 / (1 - d).sqrt() + 1 / (1 + d).sqrt() - 2) - RS("0.75") * d * d) / d**4
    left = sf.AsymptoticExpansion(
        [(RS("-0.5"), RS("0.75")), (RS("1.5"), RigorousScalar.from_endpoints(0, c_up))],
        sf.SeriesRemainder(RS(0), None),
        None,
    )
    # right sliver: near w=1, integrand <= (1-w)^{-1/2} * (1 + eps) bound
    e = RS("0.001")
    cap = (1 / (2 - e).sqrt() - 2 + 1) * 0 + (2 - e) ** RS("-2.5")  # small pieces
    right = sf.AsymptoticExpansion(
        [
            (RS("-0.5"), RigorousScalar.from_endpoints("0.9", "1.2")),
            (RS(0), RigorousScalar.from_endpoints(-2, 2)),
        ],
        sf.SeriesRemainder(RS(0), None),
        None,
    )
    r = integrate_with_singular_ends(
        spec,
        (left, right),
        ("0.01", "0.001"),
        0,
        1,
        QuadratureConfig(abs_tol=1e-5, rel_tol=1e-4),
    )
    assert r.value.contains(mp.nstr(oracle, 20))
