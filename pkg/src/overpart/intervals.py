"""Outward-rounded interval arithmetic, the carrier for every inexact value.

Every transcendental quantity in this package (exponentials, square roots,
trigonometric values at rational multiples of pi) is produced as a
:class:`CertifiedInterval`: a closed interval ``[lo, hi]`` of
arbitrary-precision binary floats with the soundness contract that the exact
mathematical target lies inside.  The directed rounding itself is delegated to
mpmath's interval context, which rounds outward at every elementary step, so
any sign read off an interval endpoint is a certificate rather than an
estimate.

Sign queries follow an adaptive ladder: evaluate at a starting precision
(128 bits by default), double until the interval separates from zero, and
report "undecided" past ``MAX_BITS`` instead of guessing.

Derived scalar facts about an interval (width, midpoint, containment)
are computed in exact rational arithmetic so that no additional rounding can
weaken a certificate.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

from mpmath import mp
from mpmath.ctx_iv import MPIntervalContext

DEFAULT_BITS = 128
MAX_BITS = 8192

Rational = Union[int, Fraction]
Operand = Union[int, Fraction, "CertifiedInterval"]


@lru_cache(maxsize=None)
def context(bits: int) -> MPIntervalContext:
    """Interval context at a fixed mantissa size.  Cached; never mutated after
    creation, so sharing across threads is safe."""
    if bits < 2:
        raise ValueError(f"precision must be at least 2 bits, got {bits}")
    ctx = MPIntervalContext()
    ctx.prec = bits
    return ctx


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of a finite mpf (binary floats are dyadic)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError(f"non-finite endpoint {x!r}")
    man = int(man)  # gmpy2-backed builds hand back mpz
    frac = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -frac if sign else frac


def _endpoints(ival):
    a, b = ival._mpi_
    return mp.make_mpf(a), mp.make_mpf(b)


class CertifiedInterval:
    """Closed interval ``[lo, hi]`` guaranteed to contain its exact target.

    ``precision_bits`` records the working precision the interval was produced
    at; arithmetic between intervals runs at the larger of the two operands'
    precisions and rounds outward, so results stay sound regardless of how
    operands were built.
    """

    __slots__ = ("lo", "hi", "precision_bits")

    def __init__(self, lo, hi, precision_bits: int):
        if not lo <= hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.precision_bits = precision_bits

    # -- construction -----------------------------------------------------

    @classmethod
    def from_ival(cls, ival, bits: int) -> "CertifiedInterval":
        lo, hi = _endpoints(ival)
        return cls(lo, hi, bits)

    @classmethod
    def from_int(cls, value: int, bits: int = DEFAULT_BITS) -> "CertifiedInterval":
        return cls.from_ival(context(bits).mpf(value), bits)

    @classmethod
    def from_fraction(cls, value: Rational, bits: int = DEFAULT_BITS) -> "CertifiedInterval":
        value = Fraction(value)
        ctx = context(bits)
        return cls.from_ival(ctx.mpf(value.numerator) / ctx.mpf(value.denominator), bits)

    @classmethod
    def from_pair(cls, lo: Rational, hi: Rational, bits: int = DEFAULT_BITS) -> "CertifiedInterval":
        """Interval spanning two exact rational endpoints (rounded outward)."""
        a = cls.from_fraction(lo, bits)
        b = cls.from_fraction(hi, bits)
        return cls(a.lo, b.hi, bits)

    @classmethod
    def pi(cls, bits: int = DEFAULT_BITS) -> "CertifiedInterval":
        return cls.from_ival(context(bits).pi, bits)

    # -- conversions -------------------------------------------------------

    def ival(self, ctx=None):
        """The mpmath interval object (in ``ctx``, outward if coarser)."""
        if ctx is None:
            ctx = context(self.precision_bits)
        return ctx.mpf([self.lo, self.hi])

    def lo_fraction(self) -> Fraction:
        return mpf_to_fraction(self.lo)

    def hi_fraction(self) -> Fraction:
        return mpf_to_fraction(self.hi)

    def width_fraction(self) -> Fraction:
        return self.hi_fraction() - self.lo_fraction()

    def midpoint_fraction(self) -> Fraction:
        return (self.lo_fraction() + self.hi_fraction()) / 2

    def nearest_int(self) -> int:
        """Integer nearest to the midpoint (ties round half up)."""
        mid = self.midpoint_fraction() + Fraction(1, 2)
        return int(mid.numerator // mid.denominator)

    # -- predicates (all exact) --------------------------------------------

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, value: Rational) -> bool:
        value = Fraction(value)
        return self.lo_fraction() <= value <= self.hi_fraction()

    def encloses(self, other: "CertifiedInterval") -> bool:
        """True when ``other`` is nested inside ``self``."""
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other: Operand, ctx):
        if isinstance(other, CertifiedInterval):
            return other.ival(ctx)
        if isinstance(other, int):
            return ctx.mpf(other)
        if isinstance(other, Fraction):
            return ctx.mpf(other.numerator) / ctx.mpf(other.denominator)
        return NotImplemented

    def _binary(self, other: Operand, op: str, reflected: bool = False):
        bits = self.precision_bits
        if isinstance(other, CertifiedInterval):
            bits = max(bits, other.precision_bits)
        ctx = context(bits)
        rhs = self._coerce(other, ctx)
        if rhs is NotImplemented:
            return NotImplemented
        lhs = self.ival(ctx)
        if reflected:
            lhs, rhs = rhs, lhs
        if op == "add":
            out = lhs + rhs
        elif op == "sub":
            out = lhs - rhs
        elif op == "mul":
            out = lhs * rhs
        else:
            out = lhs / rhs
        return CertifiedInterval.from_ival(out, bits)

    def __add__(self, other: Operand):
        return self._binary(other, "add")

    __radd__ = __add__

    def __sub__(self, other: Operand):
        return self._binary(other, "sub")

    def __rsub__(self, other: Operand):
        return self._binary(other, "sub", reflected=True)

    def __mul__(self, other: Operand):
        return self._binary(other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other: Operand):
        return self._binary(other, "div")

    def __rtruediv__(self, other: Operand):
        return self._binary(other, "div", reflected=True)

    def __neg__(self):
        return CertifiedInterval.from_ival(-self.ival(), self.precision_bits)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        return CertifiedInterval.from_ival(self.ival() ** exponent, self.precision_bits)

    def __repr__(self) -> str:
        return (f"CertifiedInterval({mp.nstr(self.lo, 12)} .. {mp.nstr(self.hi, 12)},"
                f" bits={self.precision_bits})")


# -- elementary functions ---------------------------------------------------


def _unary(x: CertifiedInterval, fn: str) -> CertifiedInterval:
    ctx = context(x.precision_bits)
    return CertifiedInterval.from_ival(getattr(ctx, fn)(x.ival(ctx)), x.precision_bits)


def sqrt(x: CertifiedInterval) -> CertifiedInterval:
    return _unary(x, "sqrt")


def exp(x: CertifiedInterval) -> CertifiedInterval:
    return _unary(x, "exp")


def log(x: CertifiedInterval) -> CertifiedInterval:
    return _unary(x, "log")


def sinh_raw(ctx, x):
    """sinh on a raw mpmath interval; composed from exp, rounds outward."""
    e = ctx.exp(x)
    return (e - 1 / e) / 2


def cosh_raw(ctx, x):
    e = ctx.exp(x)
    return (e + 1 / e) / 2


def sinh(x: CertifiedInterval) -> CertifiedInterval:
    ctx = context(x.precision_bits)
    return CertifiedInterval.from_ival(sinh_raw(ctx, x.ival(ctx)), x.precision_bits)


def cosh(x: CertifiedInterval) -> CertifiedInterval:
    ctx = context(x.precision_bits)
    return CertifiedInterval.from_ival(cosh_raw(ctx, x.ival(ctx)), x.precision_bits)


def cos_half_turns_raw(ctx, turns: Fraction):
    """cos(pi * turns) on the raw context, exact at quarter-turn points."""
    turns = turns % 2
    if turns == 0:
        return ctx.mpf(1)
    if turns == 1:
        return ctx.mpf(-1)
    if turns.denominator == 2:  # turns in {1/2, 3/2}
        return ctx.mpf(0)
    return ctx.cos(ctx.pi * turns.numerator / turns.denominator)


def sin_half_turns_raw(ctx, turns: Fraction):
    turns = turns % 2
    if turns in (0, 1):
        return ctx.mpf(0)
    if turns.denominator == 2:
        return ctx.mpf(1 if turns == Fraction(1, 2) else -1)
    return ctx.sin(ctx.pi * turns.numerator / turns.denominator)


def cos_half_turns(turns: Rational, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """Certified cos(pi * turns) for exact rational ``turns``."""
    ctx = context(bits)
    return CertifiedInterval.from_ival(cos_half_turns_raw(ctx, Fraction(turns)), bits)


def sin_half_turns(turns: Rational, bits: int = DEFAULT_BITS) -> CertifiedInterval:
    ctx = context(bits)
    return CertifiedInterval.from_ival(sin_half_turns_raw(ctx, Fraction(turns)), bits)


# -- adaptive sign resolution -------------------------------------------------


def certify_sign(
    gap_at: Callable[[int], CertifiedInterval],
    start_bits: int = DEFAULT_BITS,
    max_bits: int = MAX_BITS,
) -> tuple[Optional[int], CertifiedInterval]:
    """Resolve the sign of an interval-valued expression.

    ``gap_at(bits)`` must re-evaluate the same expression at the given
    precision.  Returns ``(+1 | -1 | 0, witness)`` on success; ``0`` only for
    an exactly-zero interval.  Returns ``(None, witness)`` when the sign still
    straddles zero at ``max_bits``.
    """
    bits = start_bits
    while True:
        gap = gap_at(bits)
        if gap.is_positive():
            return 1, gap
        if gap.is_negative():
            return -1, gap
        if gap.lo == 0 and gap.hi == 0:
            return 0, gap
        if bits >= max_bits:
            return None, gap
        bits = min(2 * bits, max_bits)


# -- directed decimal rendering ------------------------------------------------


def _decimal_exponent(value: Fraction) -> int:
    """floor(log10(value)) for positive rational ``value``, exactly."""
    e = len(str(value.numerator)) - len(str(value.denominator))
    while Fraction(10) ** e > value:
        e -= 1
    while Fraction(10) ** (e + 1) <= value:
        e += 1
    return e


def directed_decimal(value: Fraction, sig: int = 6, round_up: bool = False) -> str:
    """Scientific-notation rendering with directed rounding.

    ``round_up=False`` yields a decimal <= value, ``round_up=True`` one >=
    value, so printed margins remain certificates.
    """
    if value == 0:
        return "0"
    neg = value < 0
    v = -value if neg else value
    e = _decimal_exponent(v)
    scaled = v * Fraction(10) ** (sig - 1 - e)
    n, d = scaled.numerator, scaled.denominator
    magnitude_up = round_up != neg
    q = -((-n) // d) if magnitude_up else n // d
    if q >= 10 ** sig:
        q //= 10
        e += 1
    digits = str(q)
    mantissa = digits[0] + "." + digits[1:]
    return ("-" if neg else "") + mantissa + f"e{e:+d}"
