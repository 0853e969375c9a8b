"""Rigorous enclosures of the special functions the certificate consumes.

Provides the Riemann zeta function (Euler-Maclaurin with exact Bernoulli
fractions and an enveloping remainder), the gamma and digamma functions, the
Clausen functions C_z / S_z of real non-integer order, the cosine integral
Ci, and Euler's constant.

Clausen evaluation strategy.  A direct evaluation of Re/Im Li_z(e^{ix}) on an
interval is hopeless, so point values use the singular-plus-zeta power series

    C_z(x) = Gamma(1-z) sin(pi z/2) |x|^{z-1}
             + sum_m (-1)^m zeta(z-2m) x^{2m} / (2m)!,

which converges for |x| < 2 pi, with a certified geometric tail bound.
Interval enclosures then exploit that C_z is strictly monotone on (0, pi]
for every non-integer real z (so C_z(X) is the hull of the endpoint values),
while S_z, which is not monotone, uses the mean-value form
S_z(X) = S_z(x0) + (X - x0) C_{z-1}(X) around the midpoint x0.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import bernfrac
from mpmath import libmp
from mpmath.libmp import libmpi as _mpi
from mpmath.libmp import (
    fone,
    from_int,
    fzero,
    mpf_ge,
    mpf_gt,
    mpf_le,
    mpf_lt,
    mpf_neg,
    to_int,
)

from .rigor import RS, RigorousScalar, get_precision

__all__ = [
    "zeta_rs",
    "gamma_rs",
    "digamma_rs",
    "zeta_gamma",
    "euler_gamma",
    "pi_rs",
    "two_pi",
    "pow_nonneg",
    "ClausenTable",
    "SeriesRemainder",
    "AsymptoticExpansion",
    "clausen_C",
    "clausen_S",
    "clausen_asymptotic",
    "cosine_integral",
    "default_table",
]


def pi_rs(prec=None) -> RigorousScalar:
    return RigorousScalar.pi(prec)


def two_pi(prec=None) -> RigorousScalar:
    return RigorousScalar.pi(prec) * 2


def euler_gamma(prec=None) -> RigorousScalar:
    return RigorousScalar.euler_gamma(prec)


def pow_nonneg(x: RigorousScalar, e: RigorousScalar) -> RigorousScalar:
    """x**e for x >= 0 and e > 0, sound when the lower endpoint is 0."""
    e = RS(e, x.prec)
    if not (x.valid and e.valid):
        return RigorousScalar.invalid(x.prec)
    if not x.is_nonnegative() or not e.is_positive():
        return x**e
    if x.lower_float() > 0.0:
        return x**e
    hi = x.upper_part() ** e if x.upper_float() > 0.0 else RS(0, x.prec)
    if not hi.valid:
        return RigorousScalar.invalid(x.prec)
    return RigorousScalar.from_endpoints(0, hi, x.prec).hull(hi)


# ----------------------------------------------------------------------
# Riemann zeta via Euler-Maclaurin
# ----------------------------------------------------------------------

_BERN_CACHE: dict[int, Fraction] = {}


def _bern(n: int) -> Fraction:
    if n not in _BERN_CACHE:
        p, q = bernfrac(n)
        _BERN_CACHE[n] = Fraction(int(p), int(q))
    return _BERN_CACHE[n]


def _zeta_em(s: RigorousScalar, N: int = 32, K: int = 16) -> RigorousScalar:
    """Euler-Maclaurin zeta for real s > -(2K+1), s != 1.

    The remainder after the B_{2K} term is bounded in absolute value by the
    first omitted term for real s (the Bernoulli series envelopes the true
    value), provided s > -(2K+1).
    """
    p = s.prec
    one = RS(1, p)
    acc = RS(0, p)
    for n in range(1, N):
        acc = acc + RS(n, p) ** (-s)
    Nrs = RS(N, p)
    acc = acc + Nrs ** (one - s) / (s - 1)
    acc = acc + (Nrs ** (-s)) / 2
    # Bernoulli correction terms with running Pochhammer product s(s+1)...
    poch = RS(1, p)
    j = 0
    Npow = Nrs ** (-s - 1)  # N^{-s-2k+1} at k=1 start: N^{-s-1}
    Ninv2 = (one / Nrs) ** 2
    term = RS(0, p)
    for k in range(1, K + 1):
        while j <= 2 * k - 2:
            poch = poch * (s + j)
            j += 1
        coeff = RigorousScalar.from_fraction(_bern(2 * k) / math.factorial(2 * k), p)
        term = coeff * poch * Npow
        acc = acc + term
        Npow = Npow * Ninv2
    # remainder bound: first omitted term
    while j <= 2 * K:
        poch = poch * (s + j)
        j += 1
    coeff = RigorousScalar.from_fraction(
        _bern(2 * K + 2) / math.factorial(2 * K + 2), p
    )
    rem = abs(coeff * poch * Npow)
    return acc + RigorousScalar.from_endpoints(-rem.upper_part(), rem.upper_part(), p)


def zeta_rs(s, prec=None) -> RigorousScalar:
    """Sound enclosure of the Riemann zeta function at real s != 1."""
    s = RS(s, prec)
    p = s.prec
    if not s.valid:
        return RigorousScalar.invalid(p)
    if s.contains(1):
        return RigorousScalar.invalid(p)
    if s.lower_float() > -0.75:
        return _zeta_em(s)
    # functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    pi = pi_rs(p)
    refl = _zeta_em(1 - s)
    return (RS(2, p) ** s) * pi ** (s - 1) * (pi * s / 2).sin() * gamma_rs(1 - s) * refl


# ----------------------------------------------------------------------
# Gamma and digamma
# ----------------------------------------------------------------------


def _contains_nonpositive_integer(s: RigorousScalar) -> bool:
    if s.lower_float() > 0.0:
        return False
    lo = math.floor(s.lower_float() - 1e-12)
    hi = math.ceil(s.upper_float() + 1e-12)
    for n in range(max(lo, -10**6), min(hi, 0) + 1):
        if s.overlaps(RS(n, s.prec)):
            return True
    return False


def gamma_rs(s, prec=None) -> RigorousScalar:
    """Sound enclosure of Gamma at real non-pole s (via mpmath's interval gamma)."""
    s = RS(s, prec)
    if not s.valid or not s.is_finite() or _contains_nonpositive_integer(s):
        return RigorousScalar.invalid(s.prec)
    try:
        lo, hi = _mpi.mpi_gamma(s.mpi, s.prec, type=0)
    except Exception:
        return RigorousScalar.invalid(s.prec)
    return RigorousScalar(lo, hi, s.prec)


def digamma_rs(s, prec=None) -> RigorousScalar:
    """Sound enclosure of the digamma function psi(s) for real non-pole s.

    Stirling with enveloping remainder on [16, inf), pushed there with the
    recurrence psi(x+1) = psi(x) + 1/x; reflection for negative arguments.
    """
    s = RS(s, prec)
    p = s.prec
    if not s.valid or _contains_nonpositive_integer(s):
        return RigorousScalar.invalid(p)
    if s.upper_float() < 0.5:
        # psi(x) = psi(1-x) - pi*cot(pi*x)
        pi = pi_rs(p)
        return digamma_rs(1 - s) - pi * (pi * s).cot()
    shift = RS(0, p)
    x = s
    while x.lower_float() < 16.0:
        shift = shift + 1 / x
        x = x + 1
    # Stirling: psi(x) = ln x - 1/(2x) - sum B_{2k}/(2k x^{2k}) + R,
    # |R| <= |B_{2K+2}| / ((2K+2) x^{2K+2})
    K = 20
    acc = x.log() - 1 / (2 * x)
    x2 = x * x
    xpow = x2
    for k in range(1, K + 1):
        b = RigorousScalar.from_fraction(_bern(2 * k) / (2 * k), p)
        acc = acc - b / xpow
        xpow = xpow * x2
    b = RigorousScalar.from_fraction(abs(_bern(2 * K + 2)) / (2 * K + 2), p)
    rem = (b / xpow).upper_part()
    acc = acc + RigorousScalar.from_endpoints(-rem, rem, p)
    return acc - shift


def zeta_gamma(s, prec=None):
    """Enclosures of (zeta(s), Gamma(s)) at real s away from the poles."""
    s = RS(s, prec)
    return zeta_rs(s), gamma_rs(s)


# ----------------------------------------------------------------------
# Asymptotic expansions with certified remainders
# ----------------------------------------------------------------------


class SeriesRemainder:
    """An upper bound for an absolute truncation error on a stated interval."""

    def __init__(self, bound: RigorousScalar, valid_on):
        self.bound = abs(RS(bound)).upper_part()
        self.valid_on = valid_on

    def as_interval(self) -> RigorousScalar:
        return RigorousScalar.from_endpoints(-self.bound, self.bound)

    def __repr__(self):
        return f"SeriesRemainder(<= {self.bound.str_pretty(6)})"


class AsymptoticExpansion:
    """Finite sum of coefficient * x^exponent terms plus a certified remainder.

    Sound contract: for every x in ``valid_on``, the target function value
    lies in ``evaluate(x)``.
    """

    def __init__(self, terms, remainder: SeriesRemainder, valid_on):
        self.terms = list(terms)
        self.remainder = remainder
        self.valid_on = valid_on

    def evaluate(self, x) -> RigorousScalar:
        x = RS(x)
        acc = self.remainder.as_interval()
        for e, c in self.terms:
            e = RS(e)
            if e.contains_zero() and e.is_point():
                acc = acc + c
            else:
                acc = acc + c * pow_nonneg(x, e)
        return acc

    def lowest_exponent(self) -> float:
        return min(RS(e).lower_float() for e, _ in self.terms)

    def integral_over(self, a, b) -> RigorousScalar:
        """Integral of the expansion over [a, b] with 0 <= a <= b (termwise)."""
        a, b = RS(a), RS(b)
        acc = self.remainder.as_interval() * (b - a)
        for e, c in self.terms:
            e1 = RS(e) + 1
            acc = acc + c * (pow_nonneg(b, e1) - pow_nonneg(a, e1)) / e1
        return acc

    def scaled(self, factor) -> "AsymptoticExpansion":
        f = RS(factor)
        return AsymptoticExpansion(
            [(e, c * f) for e, c in self.terms],
            SeriesRemainder(self.remainder.bound * abs(f), self.remainder.valid_on),
            self.valid_on,
        )

    def plus(self, other: "AsymptoticExpansion") -> "AsymptoticExpansion":
        return AsymptoticExpansion(
            self.terms + other.terms,
            SeriesRemainder(
                self.remainder.bound + other.remainder.bound, self.remainder.valid_on
            ),
            self.valid_on,
        )


# ----------------------------------------------------------------------
# Clausen functions
# ----------------------------------------------------------------------


class _ClausenSeries:
    """Coefficient tables for one real non-integer order z."""

    def __init__(self, z: RigorousScalar, prec: int):
        self.z = z
        self.prec = prec
        p = prec
        if _contains_integer(z):
            raise ValueError(f"Clausen order must be non-integer, got {z!r}")
        pi = pi_rs(p)
        self.g1z = gamma_rs(1 - z, p)
        halfpiz = pi * z / 2
        self.sing_C = self.g1z * halfpiz.sin()
        self.sing_S = self.g1z * halfpiz.cos()
        # tail prefactors |sin(pi z/2)| 2^z pi^{z-1} and |cos(..)| 2^{z-1} pi^{z-2}
        self._pref_C = (abs(halfpiz.sin()) * RS(2, p) ** z * pi ** (z - 1)).upper_part()
        self._pref_S = (
            abs(halfpiz.cos()) * RS(2, p) ** (z - 1) * pi ** (z - 2)
        ).upper_part()
        self._coef_C: list = []  # (-1)^m zeta(z-2m)/(2m)!  as raw mpi
        self._coef_S: list = []  # (-1)^m zeta(z-2m-1)/(2m+1)!
        self._tail_cache: dict = {}

    def coef_C(self, m: int):
        while len(self._coef_C) <= m:
            k = len(self._coef_C)
            c = zeta_rs(self.z - 2 * k, self.prec) / math.factorial(2 * k)
            if k % 2:
                c = -c
            self._coef_C.append(c.mpi)
        return self._coef_C[m]

    def coef_S(self, m: int):
        while len(self._coef_S) <= m:
            k = len(self._coef_S)
            c = zeta_rs(self.z - 2 * k - 1, self.prec) / math.factorial(2 * k + 1)
            if k % 2:
                c = -c
            self._coef_S.append(c.mpi)
        return self._coef_S[m]

    def _tail_data(self, M: int, sine: bool):
        key = (M, sine)
        if key not in self._tail_cache:
            p = self.prec
            shift = 1 if sine else 0
            arg = (2 * M + 1 + shift) - self.z
            r = gamma_rs(arg, p) / RigorousScalar.from_int(
                math.factorial(2 * M + shift), p
            )
            zt = zeta_rs(arg, p)
            s = (-self.z).upper_float()
            if s > 0:
                rho = (1 + RS(repr(s), p) / (2 * M + 1 + shift)) * (
                    1 + RS(repr(s), p) / (2 * M + 2 + shift)
                )
                rho = rho.upper_part()
            else:
                rho = RS(1, p)
            pref = self._pref_S if sine else self._pref_C
            self._tail_cache[key] = (pref * r.upper_part() * zt.upper_part(), rho)
        return self._tail_cache[key]

    def tail_bound(self, M: int, q: RigorousScalar, sine: bool) -> RigorousScalar:
        """Upper bound for |sum_{m>=M} term_m| with q = (x/2pi)^2 (in x-power units)."""
        front, rho = self._tail_data(M, sine)
        den = 1 - rho * q.upper_part()
        if not den.is_positive():
            return RigorousScalar.invalid(self.prec)
        qM = pow_int_upper(q, M)
        return (front * qM / den).upper_part()


def pow_int_upper(q: RigorousScalar, M: int) -> RigorousScalar:
    out = RS(1, q.prec)
    base = q
    m = M
    while m:
        if m & 1:
            out = out * base
        base = base * base
        m >>= 1
    return out


def _contains_integer(z: RigorousScalar) -> bool:
    lo = math.floor(z.lower_float() - 1e-9)
    hi = math.ceil(z.upper_float() + 1e-9)
    return any(z.overlaps(RS(n, z.prec)) for n in range(lo, hi + 1))


class ClausenTable:
    """Cache of Clausen coefficient tables, keyed by order and precision."""

    def __init__(self, prec=None):
        self.prec = prec if prec is not None else get_precision()
        self._series: dict[str, _ClausenSeries] = {}
        self._pi = pi_rs(self.prec)
        self._twopi = self._pi * 2

    def series(self, z) -> _ClausenSeries:
        z = RS(z, self.prec)
        key = z.serialize()
        if key not in self._series:
            self._series[key] = _ClausenSeries(z, self.prec)
        return self._series[key]

    # -- point evaluation (x a tight enclosure in [0, 2pi)) ---------------

    def _series_sum(self, ser: _ClausenSeries, x: RigorousScalar, sine: bool):
        """Polynomial part plus tail over [0, 2pi); returns RS."""
        p = self.prec
        x2 = (x * x).mpi
        q = x2_div_4pi2 = (x / self._twopi) ** 2
        qhi = q.upper_float()
        if qhi >= 0.999:
            return RigorousScalar.invalid(p)
        zf = ser.z.upper_float()
        m_min = max(1, math.ceil((zf + 1) / 2) + 1)
        target = libmp.mpf_shift(fone, -(p + 6))
        acc = (fzero, fzero)
        xpow = (fone, fone) if not sine else x.mpi
        m = 0
        coef = ser.coef_S if sine else ser.coef_C
        while True:
            c = coef(m)
            term = _mpi.mpi_mul(c, xpow, p)
            acc = _mpi.mpi_add(acc, term, p)
            m += 1
            if m >= m_min:
                mag = max(abs(libmp.to_float(term[0])), abs(libmp.to_float(term[1])))
                amag = max(
                    abs(libmp.to_float(acc[0])), abs(libmp.to_float(acc[1])), 1e-300
                )
                if mag < amag * 2.0 ** (-(p + 4)) or m >= 8 * p:
                    break
            xpow = _mpi.mpi_mul(xpow, x2, p)
        tail = ser.tail_bound(m, q, sine)
        if not tail.valid:
            return RigorousScalar.invalid(p)
        if sine:
            tail = tail * abs(x)
        out = RigorousScalar(acc[0], acc[1], p)
        return out + RigorousScalar.from_endpoints(-tail.upper_part(), tail.upper_part(), p)

    def _z_is_two(self, z) -> bool:
        z = RS(z, self.prec)
        return z.is_point() and z.contains(2)

    def C2_poly(self, x) -> RigorousScalar:
        """C_2(x) = pi^2/6 - pi x/2 + x^2/4 exactly, for x in [0, 2pi]."""
        x = RS(x, self.prec)
        pi = self._pi
        return pi * pi / 6 - pi * x / 2 + x * x / 4

    def C_point(self, z, x) -> RigorousScalar:
        """C_z at a (tight) x in [0, 2pi); folds x > pi back to [0, pi]."""
        x = RS(x, self.prec)
        if not x.valid or x.lower_float() < 0:
            return RigorousScalar.invalid(self.prec)
        if self._z_is_two(z):
            return self.C2_poly(x)
        if x.lower_float() > self._pi.upper_float():
            x = self._twopi - x
        ser = self.series(z)
        zf = ser.z.upper_float()
        if x.contains_zero():
            if zf > 1:
                # series part continuous at 0; singular term -> 0 (z > 1)
                sing = ser.sing_C * pow_nonneg(x, ser.z - 1)
            else:
                return RigorousScalar.invalid(self.prec)
        else:
            sing = ser.sing_C * x ** (ser.z - 1)
        return sing + self._series_sum(ser, x, sine=False)

    def S_point(self, z, x) -> RigorousScalar:
        x = RS(x, self.prec)
        if not x.valid or x.lower_float() < 0:
            return RigorousScalar.invalid(self.prec)
        sign = RS(1, self.prec)
        if x.lower_float() > self._pi.upper_float():
            x = self._twopi - x
            sign = -sign
        ser = self.series(z)
        zf = ser.z.upper_float()
        if x.contains_zero():
            if zf > 1:
                sing = ser.sing_S * pow_nonneg(x, ser.z - 1)
            else:
                return RigorousScalar.invalid(self.prec)
        else:
            sing = ser.sing_S * x ** (ser.z - 1)
        return sign * (sing + self._series_sum(ser, x, sine=True))

    # -- interval evaluation on (0, pi] ------------------------------------

    def C_interval(self, z, X) -> RigorousScalar:
        """Hull of the endpoint values; sound because C_z is monotone on (0, pi]."""
        X = RS(X, self.prec)
        if not X.valid or X.lower_float() < 0:
            return RigorousScalar.invalid(self.prec)
        if self._z_is_two(z):
            # parabola with its minimum at pi; hull endpoints plus the vertex
            out = self.C2_poly(X.lower_part()).hull(self.C2_poly(X.upper_part()))
            if X.overlaps(self._pi):
                out = out.hull(self.C2_poly(self._pi))
            return out
        if X.upper_float() > self._pi.upper_float() + 1e-15:
            # fold into [0, pi] in monotone pieces
            out = None
            for piece, _folded in _fold_pieces(X, self._pi, self._twopi):
                v = self.C_interval(z, piece)
                if not v.valid:
                    return v
                out = v if out is None else out.hull(v)
            return out
        lo = self.C_point(z, X.lower_part())
        hi = self.C_point(z, X.upper_part())
        if not (lo.valid and hi.valid):
            return RigorousScalar.invalid(self.prec)
        return lo.hull(hi)

    def S_interval(self, z, X) -> RigorousScalar:
        """Mean-value form S(x0) + (X - x0) C_{z-1}(X) around the midpoint."""
        X = RS(X, self.prec)
        if not X.valid or X.lower_float() < 0:
            return RigorousScalar.invalid(self.prec)
        if X.is_point():
            return self.S_point(z, X)
        if X.upper_float() > self._pi.upper_float() + 1e-15:
            out = None
            for piece, folded in _fold_pieces(X, self._pi, self._twopi):
                v = self.S_interval(z, piece)
                if not v.valid:
                    return v
                if folded:  # folded piece carries the odd sign
                    v = -v
                out = v if out is None else out.hull(v)
            return out
        x0 = X.mid()
        s0 = self.S_point(z, x0)
        c1 = self.C_interval(RS(z, self.prec) - 1, X)
        if not (s0.valid and c1.valid):
            return RigorousScalar.invalid(self.prec)
        return s0 + (X - x0) * c1

    # -- asymptotic expansion objects --------------------------------------

    def expansion_C(self, z, M: int, X) -> AsymptoticExpansion:
        """C_z as singular term + polynomial + paper-form remainder on X near 0."""
        ser = self.series(z)
        X = RS(X, self.prec)
        p = self.prec
        terms = [(ser.z - 1, ser.sing_C)]
        for m in range(M):
            terms.append((RS(2 * m, p), RigorousScalar(*ser.coef_C(m), p)))
        xhi = X.upper_part()
        z_ = ser.z
        bound = (
            2
            * (self._twopi ** (1 + z_ - 2 * M))
            * zeta_rs(2 * M + 1 - z_, p)
            * pow_int_upper(xhi, 2 * M)
            / (4 * self._pi**2 - xhi**2)
        )
        return AsymptoticExpansion(terms, SeriesRemainder(bound, X), X)

    def expansion_S(self, z, M: int, X) -> AsymptoticExpansion:
        ser = self.series(z)
        X = RS(X, self.prec)
        p = self.prec
        terms = [(ser.z - 1, ser.sing_S)]
        for m in range(M):
            terms.append((RS(2 * m + 1, p), RigorousScalar(*ser.coef_S(m), p)))
        xhi = X.upper_part()
        z_ = ser.z
        bound = (
            2
            * (self._twopi ** (z_ - 2 * M))
            * zeta_rs(2 * M + 2 - z_, p)
            * pow_int_upper(xhi, 2 * M + 1)
            / (4 * self._pi**2 - xhi**2)
        )
        return AsymptoticExpansion(terms, SeriesRemainder(bound, X), X)


def _fold_pieces(X, pi, twopi):
    """Split X (within [0, 2pi]) at pi; map the upper piece to [0, pi].

    Returns (piece, folded) pairs; a folded piece is the image of [max(lo,
    pi), hi] under t -> 2pi - t, where sine-type functions pick up a sign.
    """
    if X.upper_float() > twopi.upper_float() + 1e-15:
        raise ValueError("argument outside [0, 2pi]")
    pieces = []
    if X.lower_float() < pi.upper_float():
        pieces.append(
            (RigorousScalar.from_endpoints(X.lower_part(), pi.upper_part()), False)
        )
    fold_hi = twopi - X.lower_part()
    if fold_hi.upper_float() > pi.upper_float():
        fold_hi = pi.upper_part()
    pieces.append(
        (
            RigorousScalar.from_endpoints(
                (twopi - X.upper_part()).lower_part(), fold_hi.upper_part()
            ),
            True,
        )
    )
    return pieces


_DEFAULT_TABLE: dict[int, ClausenTable] = {}


def default_table(prec=None) -> ClausenTable:
    p = prec if prec is not None else get_precision()
    if p not in _DEFAULT_TABLE:
        _DEFAULT_TABLE[p] = ClausenTable(p)
    return _DEFAULT_TABLE[p]


def clausen_C(z, X, prec=None) -> RigorousScalar:
    """Enclosure of C_z on the interval X, X inside (0, pi] (0 allowed if z>1)."""
    return default_table(prec).C_interval(z, X)


def clausen_S(z, X, prec=None) -> RigorousScalar:
    return default_table(prec).S_interval(z, X)


def clausen_asymptotic(z, M: int, X, sine: bool = False, prec=None) -> AsymptoticExpansion:
    """Expansion of C_z (or S_z) near 0 with the explicit tail-bound remainder."""
    t = default_table(prec)
    return t.expansion_S(z, M, X) if sine else t.expansion_C(z, M, X)


# ----------------------------------------------------------------------
# Cosine integral
# ----------------------------------------------------------------------


def _ci_point(x: RigorousScalar) -> RigorousScalar:
    p = x.prec
    xf = x.upper_float()
    if xf <= 9.0:
        # Ci(x) = gamma + log x + sum_{k>=1} (-1)^k x^{2k} / (2k (2k)!)
        acc = euler_gamma(p) + x.log()
        x2 = x * x
        xpow = x2
        k = 1
        while True:
            term = xpow / (2 * k * math.factorial(2 * k))
            if k % 2:
                acc = acc - term
            else:
                acc = acc + term
            xpow = xpow * x2
            k += 1
            nxt = (xpow / (2 * k * math.factorial(2 * k))).upper_part()
            # terms decrease once (2k-1)2k > x^2; then alternating tail bound
            if (2 * k - 1) * 2 * k > xf * xf and nxt.upper_float() < 2.0 ** (-(p + 4)) * max(
                1.0, abs(acc.upper_float())
            ):
                return acc + RigorousScalar.from_endpoints(-nxt, nxt, p)
            if k > 6 * p:
                return RigorousScalar.invalid(p)
    # asymptotic: Ci(x) = f(x) sin x - g(x) cos x, enveloping alternating series
    K = max(4, min(int(xf / 2), 40))
    f = RS(0, p)
    g = RS(0, p)
    xinv = 1 / x
    xpow_f = xinv
    xpow_g = xinv * xinv
    for k in range(K):
        tf = math.factorial(2 * k) * xpow_f
        tg = math.factorial(2 * k + 1) * xpow_g
        if k % 2:
            f = f - tf
            g = g - tg
        else:
            f = f + tf
            g = g + tg
        xpow_f = xpow_f * xinv * xinv
        xpow_g = xpow_g * xinv * xinv
    rf = (math.factorial(2 * K) * xpow_f).upper_part()
    rg = (math.factorial(2 * K + 1) * xpow_g).upper_part()
    f = f + RigorousScalar.from_endpoints(-rf, rf, p)
    g = g + RigorousScalar.from_endpoints(-rg, rg, p)
    return f * x.sin() - g * x.cos()


def cosine_integral(X, prec=None) -> RigorousScalar:
    """Sound enclosure of Ci on X > 0 (mean-value form for wide intervals)."""
    X = RS(X, prec)
    p = X.prec
    if not X.valid or X.lower_float() <= 0.0:
        return RigorousScalar.invalid(p)
    if X.is_point() or X.width_float() < 2.0 ** (-p // 2):
        return _ci_point(X)
    x0 = X.mid()
    # Ci'(x) = cos(x)/x
    return _ci_point(x0) + (X - x0) * X.cos() / X
