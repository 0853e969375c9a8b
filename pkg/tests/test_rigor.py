import math
import random

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whithamcert.rigor import RS, RigorousScalar, get_precision, set_precision


def test_add_endpoints():
    x = RigorousScalar.from_endpoints(1, 2)
    y = RigorousScalar.from_endpoints(3, 4)
    z = x + y
    assert z.contains(4) and z.contains(6)
    assert z.lower_float() == 4.0 and z.upper_float() == 6.0


def test_mul_mixed_signs():
    x = RigorousScalar.from_endpoints(-1, 2)
    y = RigorousScalar.from_endpoints(3, 4)
    z = x * y
    assert z.lower_float() == -4.0 and z.upper_float() == 8.0


def test_sqrt_point_width():
    z = RS(4).sqrt()
    assert z.contains(2)
    assert z.width_float() <= 2.0 ** (-95)


def test_hull_absorption_idempotence():
    assert RigorousScalar.from_endpoints(1, 2).hull(
        RigorousScalar.from_endpoints(3, 4)
    ).serialize() == RigorousScalar.from_endpoints(1, 4).serialize()
    p = RS(2)
    assert p.hull(p).is_point()
    big = RigorousScalar.from_endpoints(0, 5)
    small = RigorousScalar.from_endpoints(1, 2)
    h = big.hull(small)
    assert h.lower_float() == 0.0 and h.upper_float() == 5.0


def test_split_mid():
    a, b = RigorousScalar.from_endpoints(0, 2).split_mid()
    assert a.contains(0) and a.contains(1)
    assert b.contains(1) and b.contains(2)
    c, d = RigorousScalar.from_endpoints(-1, 1).split_mid()
    assert c.contains(-1) and d.contains(1)
    x = RigorousScalar.pi()
    lo, hi = x.split_mid()
    assert lo.hull(hi).contains(x)


def test_invalid_propagates():
    bad = RS(-1).sqrt()
    assert not bad.valid
    assert not (bad + 1).valid
    assert not (bad * 0).valid
    assert not abs(bad).valid
    assert not (RS(1) / RigorousScalar.from_endpoints(-1, 1)).valid
    assert not RigorousScalar.from_endpoints(-1, 1).log().valid


def test_division():
    z = RS(1) / RigorousScalar.from_endpoints(2, 4)
    assert z.contains(0.25) and z.contains(0.5)


def test_pow_interval_exponent():
    z = RigorousScalar.from_endpoints(1, 2) ** RS("0.5")
    assert z.contains(1) and z.contains("1.41421356237")
    z2 = RigorousScalar.from_endpoints(-2, 3) ** 2
    assert z2.contains(0) and z2.contains(9) and not z2.contains(-1)


def test_serialize_roundtrip_outward():
    x = RigorousScalar.pi()
    s = x.serialize()
    y = RigorousScalar.deserialize(s)
    assert y.contains(x)
    z = RigorousScalar.from_endpoints("-1.25", "7.5e-3")
    back = RigorousScalar.deserialize(z.serialize())
    assert back.contains(z)


def test_precision_scaling_point_inputs():
    set_precision(100)
    a = RS("1.7").exp()
    set_precision(200)
    b = RS("1.7").exp()
    set_precision(100)
    assert a.contains(b)
    assert b.width_float() <= a.width_float()


_UNARY = {
    "exp": (lambda r: r.exp(), mp.exp, (-20, 5)),
    "log": (lambda r: r.log(), mp.log, (1e-6, 50)),
    "sqrt": (lambda r: r.sqrt(), mp.sqrt, (0, 50)),
    "sin": (lambda r: r.sin(), mp.sin, (-10, 10)),
    "cos": (lambda r: r.cos(), mp.cos, (-10, 10)),
    "sinh": (lambda r: r.sinh(), mp.sinh, (-8, 8)),
    "cosh": (lambda r: r.cosh(), mp.cosh, (-8, 8)),
    "tanh": (lambda r: r.tanh(), mp.tanh, (-8, 8)),
    "atan": (lambda r: r.atan(), mp.atan, (-50, 50)),
    "abs": (lambda r: abs(r), abs, (-10, 10)),
}

_BINARY = {
    "add": (lambda a, b: a + b, lambda a, b: a + b),
    "sub": (lambda a, b: a - b, lambda a, b: a - b),
    "mul": (lambda a, b: a * b, lambda a, b: a * b),
    "div": (lambda a, b: a / b, lambda a, b: a / b),
    "pow": (lambda a, b: a**b, lambda a, b: a**b),
}


def test_soundness_fuzz_10k():
    """10^4 random (x, y, op): the high-precision point result lies inside."""
    rng = random.Random(20170213)
    mp.mp.prec = 200
    checked = 0
    while checked < 10_000:
        if rng.random() < 0.5:
            name = rng.choice(sorted(_UNARY))
            fn, ref, (lo, hi) = _UNARY[name]
            a = lo + (hi - lo) * rng.random()
            wid = 10.0 ** rng.uniform(-12, -1)
            X = RigorousScalar.from_endpoints(repr(a), repr(a + wid))
            x = a + wid * rng.random()
            if name in ("log", "sqrt") and x <= 0:
                continue
            res = fn(X)
            if not res.valid:
                continue
            truth = ref(mp.mpf(repr(x)))
            assert res.contains(str(truth)), (name, a, wid, x)
        else:
            name = rng.choice(sorted(_BINARY))
            fn, ref = _BINARY[name]
            a = rng.uniform(-10, 10)
            b = rng.uniform(-10, 10)
            if name == "pow":
                a = abs(a) + 0.1
                b = rng.uniform(-3, 3)
            wa = 10.0 ** rng.uniform(-12, -2)
            wb = 10.0 ** rng.uniform(-12, -2)
            X = RigorousScalar.from_endpoints(repr(a), repr(a + wa))
            Y = RigorousScalar.from_endpoints(repr(b), repr(b + wb))
            x = a + wa * rng.random()
            y = b + wb * rng.random()
            if name == "div" and Y.contains_zero():
                continue
            res = fn(X, Y)
            if not res.valid:
                continue
            truth = ref(mp.mpf(repr(x)), mp.mpf(repr(y)))
            assert res.contains(str(truth)), (name, a, b)
        checked += 1


@given(
    lo=st.floats(-5, 5, allow_nan=False),
    w1=st.floats(0, 1, allow_nan=False),
    w2=st.floats(0, 1, allow_nan=False),
)
@settings(max_examples=200, deadline=None)
def test_unary_inclusion_monotonicity(lo, w1, w2):
    """X subset of X' implies f(X) subset of f(X') for unary ops."""
    inner = RigorousScalar.from_endpoints(repr(lo + w2 * 0.3), repr(lo + w2 * 0.3 + w1))
    outer = RigorousScalar.from_endpoints(repr(lo), repr(lo + w1 + w2 + 0.6))
    for name in ("exp", "sin", "cos", "tanh", "atan"):
        fn = _UNARY[name][0]
        fi, fo = fn(inner), fn(outer)
        assert fo.contains(fi), name


def test_euler_pi_constants():
    g = RigorousScalar.euler_gamma()
    assert g.contains("0.5772156649015328606065120900824024310421593359399")
    assert g.width_float() < 1e-28
    p = RigorousScalar.pi()
    assert p.contains("3.14159265358979323846264338327950288419716939937510")


def test_certain_comparisons():
    a = RigorousScalar.from_endpoints(1, 2)
    b = RigorousScalar.from_endpoints(3, 4)
    assert a.lt(b) and b.gt(a)
    assert not a.lt(RigorousScalar.from_endpoints("1.5", 5))
    assert RS(2).ge(2) and RS(2).le(2)


def test_min_precision_enforced():
    with pytest.raises(ValueError):
        set_precision(32)
    assert get_precision() >= 53
