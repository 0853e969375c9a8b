"""Guaranteed real-number enclosures (interval arithmetic) at configurable precision.

Every number that enters a certified statement in this package is a
``RigorousScalar``: a closed interval [lower, upper] of arbitrary-precision
floats with outward (directed) rounding at every operation, so that for any
supported operation * and any x in X, y in Y we have x * y in X * Y.

The endpoint kernels come from mpmath's ``libmp``/``libmpi`` layer, which
implements correctly-rounded arbitrary-precision floats and sound interval
versions of the elementary functions.  This module adds the contract layer:
a sticky invalid state (domain errors propagate, they never become silently
wrong numbers), hyperbolic functions, hulls/splits, and an outward-rounded
decimal serialization.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import libmp
from mpmath.libmp import libmpi as _mpi
from mpmath.libmp import (
    fhalf,
    finf,
    fnan,
    fninf,
    fone,
    from_int,
    from_man_exp,
    from_rational,
    from_str,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_eq,
    mpf_ge,
    mpf_gt,
    mpf_le,
    mpf_lt,
    mpf_neg,
    mpf_shift,
    mpf_sub,
    to_float,
    to_str,
)

__all__ = [
    "PrecisionConfig",
    "RigorousScalar",
    "get_precision",
    "set_precision",
    "RS",
]

_MIN_BITS = 53


class PrecisionConfig:
    """Global working precision, in bits of mantissa (>= 53, default 100)."""

    def __init__(self, bits: int = 100):
        if bits < _MIN_BITS:
            raise ValueError(f"precision must be >= {_MIN_BITS} bits, got {bits}")
        self.bits = int(bits)


_CONFIG = PrecisionConfig(100)


def set_precision(bits: int) -> None:
    global _CONFIG
    _CONFIG = PrecisionConfig(bits)


def get_precision() -> int:
    return _CONFIG.bits


def _is_nan(x) -> bool:
    return x == fnan


class RigorousScalar:
    """A closed interval enclosure of a real number.

    Instances are immutable; all operations return new enclosures.  The
    invalid state (domain error, NaN input) is explicit and sticky: any
    operation with an invalid operand is invalid.
    """

    __slots__ = ("_lo", "_hi", "prec", "valid")

    def __init__(self, lo, hi, prec=None, valid=True):
        # lo/hi are raw libmp mpf tuples; use the named constructors below.
        self.prec = prec if prec is not None else get_precision()
        if not valid or _is_nan(lo) or _is_nan(hi) or mpf_gt(lo, hi):
            self._lo = fnan
            self._hi = fnan
            self.valid = False
        else:
            self._lo = lo
            self._hi = hi
            self.valid = True

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def invalid(cls, prec=None) -> "RigorousScalar":
        return cls(fnan, fnan, prec, valid=False)

    @classmethod
    def from_int(cls, n: int, prec=None) -> "RigorousScalar":
        v = from_int(int(n))
        return cls(v, v, prec)

    @classmethod
    def from_fraction(cls, fr: Fraction, prec=None) -> "RigorousScalar":
        p = prec if prec is not None else get_precision()
        lo = from_rational(fr.numerator, fr.denominator, p, "f")
        hi = from_rational(fr.numerator, fr.denominator, p, "c")
        return cls(lo, hi, p)

    @classmethod
    def from_str(cls, s: str, prec=None) -> "RigorousScalar":
        """Parse a decimal string, rounding outward."""
        p = prec if prec is not None else get_precision()
        s = s.strip()
        lo = from_str(s, p, "f")
        hi = from_str(s, p, "c")
        return cls(lo, hi, p)

    @classmethod
    def from_endpoints(cls, lo, hi, prec=None) -> "RigorousScalar":
        """Build from two endpoint specifications (str/int/float/Fraction)."""
        a = cls.convert(lo, prec)
        b = cls.convert(hi, prec)
        if not (a.valid and b.valid):
            return cls.invalid(prec)
        return cls(a._lo, b._hi, prec)

    @classmethod
    def convert(cls, x, prec=None) -> "RigorousScalar":
        if isinstance(x, RigorousScalar):
            return x
        if isinstance(x, int):
            return cls.from_int(x, prec)
        if isinstance(x, Fraction):
            return cls.from_fraction(x, prec)
        if isinstance(x, str):
            return cls.from_str(x, prec)
        if isinstance(x, float):
            v = libmp.from_float(x)
            if _is_nan(v):
                return cls.invalid(prec)
            return cls(v, v, prec)
        raise TypeError(f"cannot convert {type(x)!r} to RigorousScalar")

    @classmethod
    def pi(cls, prec=None) -> "RigorousScalar":
        p = prec if prec is not None else get_precision()
        lo, hi = _mpi.mpi_pi(p)
        return cls(lo, hi, p)

    @classmethod
    def euler_gamma(cls, prec=None) -> "RigorousScalar":
        p = prec if prec is not None else get_precision()
        return cls(libmp.mpf_euler(p, "f"), libmp.mpf_euler(p, "c"), p)

    @classmethod
    def posinf_upper(cls, lo, prec=None) -> "RigorousScalar":
        """Enclosure [lo, +inf) used for one-sided statements."""
        a = cls.convert(lo, prec)
        return cls(a._lo, finf, a.prec)

    # ------------------------------------------------------------------
    # accessors
    # ------------------------------------------------------------------

    @property
    def mpi(self):
        return (self._lo, self._hi)

    def lower_float(self) -> float:
        return to_float(self._lo, rnd="f")

    def upper_float(self) -> float:
        return to_float(self._hi, rnd="c")

    def mid(self) -> "RigorousScalar":
        """A thin enclosure of the midpoint (a valid point inside self)."""
        self._need_valid()
        m = mpf_shift(mpf_add(self._lo, self._hi, self.prec + 8, "n"), -1)
        # clamp into the interval (outward rounding could escape)
        if mpf_lt(m, self._lo):
            m = self._lo
        if mpf_gt(m, self._hi):
            m = self._hi
        return RigorousScalar(m, m, self.prec)

    def width(self) -> "RigorousScalar":
        self._need_valid()
        w = mpf_sub(self._hi, self._lo, self.prec, "c")
        return RigorousScalar(fzero, w, self.prec)

    def width_float(self) -> float:
        if not self.valid:
            return float("inf")
        return to_float(mpf_sub(self._hi, self._lo, self.prec, "c"), rnd="c")

    def is_finite(self) -> bool:
        return self.valid and self._lo not in (finf, fninf) and self._hi not in (finf, fninf)

    def _need_valid(self):
        if not self.valid:
            raise ValueError("operation on invalid enclosure")

    # ------------------------------------------------------------------
    # predicates (certain comparisons; False means "not certainly")
    # ------------------------------------------------------------------

    def contains(self, other) -> bool:
        other = RigorousScalar.convert(other, self.prec)
        if not (self.valid and other.valid):
            return False
        return mpf_le(self._lo, other._lo) and mpf_ge(self._hi, other._hi)

    def contains_zero(self) -> bool:
        return self.valid and mpf_le(self._lo, fzero) and mpf_ge(self._hi, fzero)

    def lt(self, other) -> bool:
        """Certainly less-than."""
        other = RigorousScalar.convert(other, self.prec)
        return self.valid and other.valid and mpf_lt(self._hi, other._lo)

    def le(self, other) -> bool:
        other = RigorousScalar.convert(other, self.prec)
        return self.valid and other.valid and mpf_le(self._hi, other._lo)

    def gt(self, other) -> bool:
        other = RigorousScalar.convert(other, self.prec)
        return self.valid and other.valid and mpf_gt(self._lo, other._hi)

    def ge(self, other) -> bool:
        other = RigorousScalar.convert(other, self.prec)
        return self.valid and other.valid and mpf_ge(self._lo, other._hi)

    def is_positive(self) -> bool:
        return self.valid and mpf_gt(self._lo, fzero)

    def is_negative(self) -> bool:
        return self.valid and mpf_lt(self._hi, fzero)

    def is_nonnegative(self) -> bool:
        return self.valid and mpf_ge(self._lo, fzero)

    def overlaps(self, other) -> bool:
        other = RigorousScalar.convert(other, self.prec)
        if not (self.valid and other.valid):
            return False
        return not (mpf_lt(self._hi, other._lo) or mpf_gt(self._lo, other._hi))

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _binary(self, other, fn):
        other = RigorousScalar.convert(other, self.prec)
        p = max(self.prec, other.prec)
        if not (self.valid and other.valid):
            return RigorousScalar.invalid(p)
        lo, hi = fn(self.mpi, other.mpi, p)
        return RigorousScalar(lo, hi, p)

    def __add__(self, other):
        return self._binary(other, _mpi.mpi_add)

    def __radd__(self, other):
        return RigorousScalar.convert(other, self.prec) + self

    def __sub__(self, other):
        return self._binary(other, _mpi.mpi_sub)

    def __rsub__(self, other):
        return RigorousScalar.convert(other, self.prec) - self

    def __mul__(self, other):
        return self._binary(other, _mpi.mpi_mul)

    def __rmul__(self, other):
        return RigorousScalar.convert(other, self.prec) * self

    def __truediv__(self, other):
        other = RigorousScalar.convert(other, self.prec)
        p = max(self.prec, other.prec)
        if not (self.valid and other.valid) or other.contains_zero():
            return RigorousScalar.invalid(p)
        lo, hi = _mpi.mpi_div(self.mpi, other.mpi, p)
        return RigorousScalar(lo, hi, p)

    def __rtruediv__(self, other):
        return RigorousScalar.convert(other, self.prec) / self

    def __neg__(self):
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        return RigorousScalar(mpf_neg(self._hi), mpf_neg(self._lo), self.prec)

    def __pow__(self, other):
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        if isinstance(other, int):
            lo, hi = _mpi.mpi_pow_int(self.mpi, other, self.prec)
            if other < 0 and self.contains_zero():
                return RigorousScalar.invalid(self.prec)
            return RigorousScalar(lo, hi, self.prec)
        other = RigorousScalar.convert(other, self.prec)
        p = max(self.prec, other.prec)
        if not other.valid:
            return RigorousScalar.invalid(p)
        # exact integer point exponent reduces to the integer case
        if other.is_point() and other.is_finite():
            n = libmp.to_int(other._lo)
            if abs(n) < 2**24 and mpf_eq(from_int(n), other._lo):
                return self.__pow__(int(n))
        if not mpf_gt(self._lo, fzero):
            return RigorousScalar.invalid(p)
        lo, hi = _mpi.mpi_pow(self.mpi, other.mpi, p)
        return RigorousScalar(lo, hi, p)

    def __rpow__(self, other):
        return RigorousScalar.convert(other, self.prec) ** self

    def is_point(self) -> bool:
        return self.valid and mpf_eq(self._lo, self._hi)

    def __abs__(self):
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        lo, hi = _mpi.mpi_abs(self.mpi, self.prec)
        return RigorousScalar(lo, hi, self.prec)

    # ------------------------------------------------------------------
    # elementary functions
    # ------------------------------------------------------------------

    def _unary(self, fn):
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        lo, hi = fn(self.mpi, self.prec)
        return RigorousScalar(lo, hi, self.prec)

    def sqrt(self):
        if not self.valid or mpf_lt(self._lo, fzero):
            return RigorousScalar.invalid(self.prec)
        return self._unary(_mpi.mpi_sqrt)

    def exp(self):
        return self._unary(_mpi.mpi_exp)

    def log(self):
        if not self.valid or mpf_le(self._lo, fzero):
            return RigorousScalar.invalid(self.prec)
        return self._unary(_mpi.mpi_log)

    def sin(self):
        return self._unary(_mpi.mpi_sin)

    def cos(self):
        return self._unary(_mpi.mpi_cos)

    def tan(self):
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        try:
            lo, hi = _mpi.mpi_tan(self.mpi, self.prec)
        except Exception:
            return RigorousScalar.invalid(self.prec)
        return RigorousScalar(lo, hi, self.prec)

    def atan(self):
        return self._unary(_mpi.mpi_atan)

    def cot(self):
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        try:
            lo, hi = _mpi.mpi_cot(self.mpi, self.prec)
        except Exception:
            return RigorousScalar.invalid(self.prec)
        return RigorousScalar(lo, hi, self.prec)

    def cosh(self):
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        ch, _ = _mpi.mpi_cosh_sinh(self.mpi, self.prec)
        return RigorousScalar(ch[0], ch[1], self.prec)

    def sinh(self):
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        _, sh = _mpi.mpi_cosh_sinh(self.mpi, self.prec)
        return RigorousScalar(sh[0], sh[1], self.prec)

    def tanh(self):
        # tanh is increasing; evaluate soundly at the endpoints via
        # tanh(x) = 1 - 2/(e^{2x}+1), all pieces monotone.
        if not self.valid:
            return RigorousScalar.invalid(self.prec)
        p = self.prec
        one = RigorousScalar.from_int(1, p)
        two = RigorousScalar.from_int(2, p)
        e2x = (self * two).exp()
        return one - two / (e2x + one)

    # ------------------------------------------------------------------
    # set operations
    # ------------------------------------------------------------------

    def hull(self, other) -> "RigorousScalar":
        """Smallest enclosure containing both operands."""
        other = RigorousScalar.convert(other, self.prec)
        p = max(self.prec, other.prec)
        if not (self.valid and other.valid):
            return RigorousScalar.invalid(p)
        lo = self._lo if mpf_le(self._lo, other._lo) else other._lo
        hi = self._hi if mpf_ge(self._hi, other._hi) else other._hi
        return RigorousScalar(lo, hi, p)

    def intersect(self, other) -> "RigorousScalar":
        other = RigorousScalar.convert(other, self.prec)
        p = max(self.prec, other.prec)
        if not (self.valid and other.valid):
            return RigorousScalar.invalid(p)
        lo = self._lo if mpf_ge(self._lo, other._lo) else other._lo
        hi = self._hi if mpf_le(self._hi, other._hi) else other._hi
        if mpf_gt(lo, hi):
            return RigorousScalar.invalid(p)
        return RigorousScalar(lo, hi, p)

    def split_mid(self):
        """Two enclosures covering self, meeting at the midpoint."""
        self._need_valid()
        if not self.is_finite():
            raise ValueError("cannot split an unbounded enclosure")
        m = self.mid()._lo
        return (
            RigorousScalar(self._lo, m, self.prec),
            RigorousScalar(m, self._hi, self.prec),
        )

    def split_at_zero(self):
        """Split an interval straddling 0 into its [lo, 0] and [0, hi] parts."""
        self._need_valid()
        if not self.contains_zero():
            raise ValueError("interval does not contain zero")
        return (
            RigorousScalar(self._lo, fzero, self.prec),
            RigorousScalar(fzero, self._hi, self.prec),
        )

    def lower_part(self) -> "RigorousScalar":
        """Degenerate enclosure of the lower endpoint."""
        self._need_valid()
        return RigorousScalar(self._lo, self._lo, self.prec)

    def upper_part(self) -> "RigorousScalar":
        self._need_valid()
        return RigorousScalar(self._hi, self._hi, self.prec)

    # ------------------------------------------------------------------
    # serialization: decimal "lower_upper" with outward rounding
    # ------------------------------------------------------------------

    def serialize(self, dps=None) -> str:
        if not self.valid:
            return "invalid"
        d = dps if dps is not None else libmp.prec_to_dps(self.prec) + 3
        return f"{_decimal_dir(self._lo, d, 'f')}_{_decimal_dir(self._hi, d, 'c')}"

    @classmethod
    def deserialize(cls, s: str, prec=None) -> "RigorousScalar":
        p = prec if prec is not None else get_precision()
        s = s.strip()
        if s == "invalid":
            return cls.invalid(p)
        try:
            lo_s, hi_s = s.rsplit("_", 1)
        except ValueError as exc:
            raise ValueError(f"bad enclosure string {s!r}") from exc
        lo = from_str(lo_s, p, "f")
        hi = from_str(hi_s, p, "c")
        if mpf_gt(lo, hi):
            raise ValueError(f"bad enclosure string {s!r}: lower > upper")
        return cls(lo, hi, p)

    def __repr__(self):
        if not self.valid:
            return "RigorousScalar(invalid)"
        return f"[{to_str(self._lo, 17)}, {to_str(self._hi, 17)}]"

    def str_pretty(self, dps=15) -> str:
        if not self.valid:
            return "invalid"
        return f"[{_decimal_dir(self._lo, dps, 'f')}, {_decimal_dir(self._hi, dps, 'c')}]"


def _decimal_dir(x, dps, rnd) -> str:
    """Decimal string of mpf `x` rounded in direction `rnd` ('f' or 'c').

    ``to_str`` rounds to nearest, which may cross the true value; nudge by
    one unit in the last printed place until the reparse lands on the sound
    side.
    """
    if x == fzero:
        return "0.0"
    if x == finf:
        return "+inf"
    if x == fninf:
        return "-inf"
    s = to_str(x, dps, strip_zeros=False)
    for _ in range(4):
        back = from_str(s, libmp.dps_to_prec(dps) + 8, rnd)
        if (rnd == "f" and mpf_le(back, x)) or (rnd == "c" and mpf_ge(back, x)):
            return s
        s = _nudge_decimal(s, down=(rnd == "f"))
    raise AssertionError(f"directed decimal rendering failed for {x}")


def _nudge_decimal(s: str, down: bool) -> str:
    """Decrement (or increment) a decimal string by one unit in the last place."""
    mant, sep, expo = s.partition("e")
    neg = mant.startswith("-")
    if neg:
        mant = mant[1:]
    digits = list(mant)
    # step direction in magnitude space
    dec = down != neg
    i = len(digits) - 1
    while i >= 0:
        if digits[i] == ".":
            i -= 1
            continue
        if dec:
            if digits[i] == "0":
                digits[i] = "9"
                i -= 1
            else:
                digits[i] = str(int(digits[i]) - 1)
                break
        else:
            if digits[i] == "9":
                digits[i] = "0"
                i -= 1
            else:
                digits[i] = str(int(digits[i]) + 1)
                break
    else:
        if not dec:
            digits.insert(0, "1")
    out = "".join(digits)
    if neg:
        out = "-" + out
    return out + (sep + expo if sep else "")


def RS(x, prec=None) -> RigorousScalar:
    """Shorthand converter used throughout the package."""
    return RigorousScalar.convert(x, prec)
