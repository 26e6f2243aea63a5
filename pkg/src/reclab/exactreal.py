"""Exact real arithmetic for circle computations.

A ``Real`` is one of three kinds:

* ``fractions.Fraction`` -- exact rational;
* ``Surd`` -- exact quadratic irrational ``p + q*sqrt(d)`` with rational
  p, q and square-free integer d >= 2;
* ``Approx`` -- a rational midpoint with a tracked absolute error bound.

All comparisons involving only the first two kinds are decided exactly.
Comparisons that touch an ``Approx`` either clear the tracked error bound or
raise :class:`UncertainAtPrecision`; nothing is ever silently misclassified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

from .errors import UncertainAtPrecision

# Default working precision (bits) for operations that must leave the exact
# kinds, e.g. square roots or sums across different quadratic fields.  The
# CLI overrides this from RECLAB_PRECISION_BITS.
DEFAULT_PRECISION_BITS = 192

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, core) with d == s*s*core and core square-free."""
    s, core, f = 1, d, 2
    while f * f <= core:
        while core % (f * f) == 0:
            core //= f * f
            s *= f
        f += 1
    return s, core


def _sqrt_bounds(core: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational bracket of sqrt(core) with width 2**-bits."""
    n = isqrt(core << (2 * bits))
    scale = 1 << bits
    return Fraction(n, scale), Fraction(n + 1, scale)


class Surd:
    """Exact quadratic irrational p + q*sqrt(d); q != 0, d square-free >= 2."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q, d: int):
        p, q = Fraction(p), Fraction(q)
        if d <= 1:
            raise ValueError("surd radicand must be >= 2")
        s, core = _squarefree_split(d)
        q = q * s
        if core == 1 or q == 0:
            raise ValueError("value is rational; use Fraction instead")
        self.p, self.q, self.d = p, q, core

    @staticmethod
    def make(p, q, d: int) -> "Real":
        """Like the constructor, but folds rational results into Fraction."""
        p, q = Fraction(p), Fraction(q)
        if q == 0:
            return p
        s, core = _squarefree_split(d)
        if core == 1:
            return p + q * s
        out = object.__new__(Surd)
        out.p, out.q, out.d = p, q * s, core
        return out

    # -- arithmetic within the field (and with rationals) --------------

    def __neg__(self):
        return Surd.make(-self.p, -self.q, self.d)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd.make(self.p + other, self.q, self.d)
        if isinstance(other, Surd) and other.d == self.d:
            return Surd.make(self.p + other.p, self.q + other.q, self.d)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            return self.__add__(-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return _ZERO
            return Surd.make(self.p * other, self.q * other, self.d)
        if isinstance(other, Surd) and other.d == self.d:
            return Surd.make(
                self.p * other.p + self.q * other.q * self.d,
                self.p * other.q + self.q * other.p,
                self.d,
            )
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self) -> "Real":
        den = self.p * self.p - self.q * self.q * self.d
        # den == 0 would make the surd rational, excluded by construction
        return Surd.make(self.p / den, -self.q / den, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd.make(self.p / other, self.q / other, self.d)
        if isinstance(other, Surd) and other.d == self.d:
            return self.__mul__(other.reciprocal())
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.reciprocal().__mul__(other)
        return NotImplemented

    # -- exact order ----------------------------------------------------

    def sign(self) -> int:
        p, q = self.p, self.q
        if p >= 0 and q > 0:
            return 1
        if p <= 0 and q < 0:
            return -1
        # p and q have opposite signs; compare p^2 against q^2 d
        lhs, rhs = p * p, q * q * self.d
        if p > 0:  # q < 0
            return 1 if lhs > rhs else -1  # equality impossible (irrational)
        return 1 if rhs > lhs else -1

    def _cmp_exact(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            return Surd.make(self.p - other, self.q, self.d).sign()
        if isinstance(other, Surd) and other.d == self.d:
            diff = Surd.make(self.p - other.p, self.q - other.q, self.d)
            return diff.sign() if isinstance(diff, Surd) else _sign_fraction(diff)
        raise TypeError("cross-field comparison requires real_cmp")

    def __lt__(self, other):
        return self._cmp_exact(other) < 0

    def __le__(self, other):
        return self._cmp_exact(other) <= 0

    def __gt__(self, other):
        return self._cmp_exact(other) > 0

    def __ge__(self, other):
        return self._cmp_exact(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False  # irrational
        if isinstance(other, Surd):
            return self.d == other.d and self.p == other.p and self.q == other.q
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.q, self.d))

    # -- rounding / conversion -------------------------------------------

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        lo, hi = _sqrt_bounds(self.d, bits)
        if self.q >= 0:
            return self.p + self.q * lo, self.p + self.q * hi
        return self.p + self.q * hi, self.p + self.q * lo

    def floor(self) -> int:
        # bracket width is |q| * 2**-bits; widen until at most one integer
        # can sit inside, then settle that case exactly
        bits = max(64, self.q.numerator.bit_length())
        while True:
            lo, hi = self.bounds(bits)
            fl, fh = _floor_fraction(lo), _floor_fraction(hi)
            if fl == fh:
                return fl
            if fh == fl + 1:
                return fh if self._cmp_exact(fh) >= 0 else fl
            bits *= 2

    def __float__(self):
        lo, hi = self.bounds(80)
        return float((lo + hi) / 2)

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    def __repr__(self):
        return f"Surd({self.p} + {self.q}*sqrt({self.d}))"


@dataclass(frozen=True)
class Approx:
    """Rational midpoint with a tracked absolute error bound."""

    value: Fraction
    err: Fraction

    def __post_init__(self):
        if self.err < 0:
            raise ValueError("error bound must be nonnegative")

    def bounds(self, bits: int = 0) -> tuple[Fraction, Fraction]:
        return self.value - self.err, self.value + self.err

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"Approx({float(self.value)!r} +- {float(self.err):.3g})"


Real = Union[Fraction, Surd, Approx]
_EXACT = (Fraction, Surd)


def _sign_fraction(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def as_real(x) -> Real:
    """Coerce ints, Fractions, floats, surds and decimal strings to Real."""
    if isinstance(x, (Surd, Approx)):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # the float is an exact binary rational of unknown provenance;
        # budget a few ulps of representation error
        exact = Fraction(x)
        ulp = Fraction(abs(x) or 2.0**-1022) * Fraction(1, 2**52)
        return Approx(exact, 4 * ulp)
    if isinstance(x, str):
        return parse_real(x)
    raise TypeError(f"cannot interpret {x!r} as a real")


def parse_real(text: str) -> Real:
    """Parse 'p/q', 'sqrt:d:a:b:c' meaning (a + b*sqrt(d))/c, or a decimal."""
    text = text.strip()
    if text.startswith("sqrt:"):
        parts = text.split(":")
        if len(parts) != 5:
            raise ValueError("surd format is sqrt:d:a:b:c for (a + b*sqrt(d))/c")
        d, a, b, c = (int(p) for p in parts[1:])
        if c == 0:
            raise ValueError("surd denominator c must be nonzero")
        return Surd.make(Fraction(a, c), Fraction(b, c), d)
    return Fraction(text)  # handles 'p/q', '3', '0.618' exactly


# ---------------------------------------------------------------------------
# kind-dispatching arithmetic
# ---------------------------------------------------------------------------


def real_bounds(x: Real, bits: int) -> tuple[Fraction, Fraction]:
    if isinstance(x, Fraction):
        return x, x
    return x.bounds(bits)


def _to_approx(x: Real, bits: int) -> Approx:
    lo, hi = real_bounds(x, bits)
    mid = (lo + hi) / 2
    return Approx(mid, (hi - lo) / 2)


def real_neg(x: Real) -> Real:
    if isinstance(x, Approx):
        return Approx(-x.value, x.err)
    return -x


def real_add(x: Real, y: Real) -> Real:
    x, y = as_real(x), as_real(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + y
    if isinstance(x, _EXACT) and isinstance(y, _EXACT):
        if isinstance(x, Fraction) or isinstance(y, Fraction) or x.d == y.d:
            return x + y
        # different quadratic fields: degrade to a tracked approximation
        a = _to_approx(x, DEFAULT_PRECISION_BITS)
        b = _to_approx(y, DEFAULT_PRECISION_BITS)
        return Approx(a.value + b.value, a.err + b.err)
    a = x if isinstance(x, Approx) else _to_approx(x, DEFAULT_PRECISION_BITS)
    b = y if isinstance(y, Approx) else _to_approx(y, DEFAULT_PRECISION_BITS)
    return Approx(a.value + b.value, a.err + b.err)


def real_sub(x: Real, y: Real) -> Real:
    return real_add(x, real_neg(as_real(y)))


def real_mul(x: Real, y: Real) -> Real:
    x, y = as_real(x), as_real(y)
    if isinstance(x, _EXACT) and isinstance(y, _EXACT):
        if isinstance(x, Fraction) or isinstance(y, Fraction) or x.d == y.d:
            return x * y
        a = _to_approx(x, DEFAULT_PRECISION_BITS)
        b = _to_approx(y, DEFAULT_PRECISION_BITS)
        return _approx_mul(a, b)
    a = x if isinstance(x, Approx) else _to_approx(x, DEFAULT_PRECISION_BITS)
    b = y if isinstance(y, Approx) else _to_approx(y, DEFAULT_PRECISION_BITS)
    return _approx_mul(a, b)


def _approx_mul(a: Approx, b: Approx) -> Approx:
    err = abs(a.value) * b.err + abs(b.value) * a.err + a.err * b.err
    return Approx(a.value * b.value, err)


def real_mul_int(x: Real, n: int) -> Real:
    x = as_real(x)
    if isinstance(x, Approx):
        return Approx(x.value * n, x.err * abs(n))
    return x * n


def real_abs(x: Real) -> Real:
    x = as_real(x)
    if isinstance(x, Approx):
        return Approx(abs(x.value), x.err)
    return abs(x)


def real_floor(x: Real) -> int:
    """Exact for Fraction/Surd.  For Approx uses the midpoint (documented:
    callers must tolerate a fold when the midpoint sits near an integer)."""
    x = as_real(x)
    if isinstance(x, Fraction):
        return _floor_fraction(x)
    if isinstance(x, Surd):
        return x.floor()
    return _floor_fraction(x.value)


def real_frac(x: Real) -> Real:
    return real_sub(x, Fraction(real_floor(x)))


def nearest_int(x: Real) -> int:
    return real_floor(real_add(x, _HALF))


def torus_norm1(x) -> Real:
    """Distance from x to the nearest integer; same kind as the input.

    Lipschitz-1 in x, so an Approx keeps its error bound unchanged.
    """
    x = as_real(x)
    k = nearest_int(x)
    return real_abs(real_sub(x, Fraction(k)))


def real_cmp(x, y) -> int:
    """Three-way compare.  Exact kinds are decided exactly; comparisons that
    involve an Approx raise UncertainAtPrecision when the intervals overlap.
    """
    x, y = as_real(x), as_real(y)
    if isinstance(x, _EXACT) and isinstance(y, _EXACT):
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            return _sign_fraction(x - y)
        if isinstance(x, Surd) and (isinstance(y, Fraction) or (isinstance(y, Surd) and y.d == x.d)):
            return x._cmp_exact(y)
        if isinstance(y, Surd) and isinstance(x, Fraction):
            return -y._cmp_exact(x)
        # distinct quadratic fields: values can never coincide, so a
        # refinement loop terminates for any actual input
        for bits in (64, 128, 256, 512, 1024, 2048, 4096):
            xl, xh = real_bounds(x, bits)
            yl, yh = real_bounds(y, bits)
            if xh < yl:
                return -1
            if xl > yh:
                return 1
        raise UncertainAtPrecision("cross-field comparison did not separate")
    xl, xh = real_bounds(x, DEFAULT_PRECISION_BITS)
    yl, yh = real_bounds(y, DEFAULT_PRECISION_BITS)
    if xh < yl:
        return -1
    if xl > yh:
        return 1
    if xl == xh and yl == yh:  # two exact-by-luck approximations
        return 0
    gap = min(abs(xh - yl), abs(xl - yh))
    raise UncertainAtPrecision(
        "intervals overlap within tracked error", margin=float(gap)
    )


def real_lt(x, y) -> bool:
    return real_cmp(x, y) < 0


def real_le(x, y) -> bool:
    return real_cmp(x, y) <= 0


def real_eq(x, y) -> bool:
    return real_cmp(x, y) == 0


def real_min(values: Iterable[Real]) -> Real:
    best = None
    for v in values:
        if best is None or real_cmp(v, best) < 0:
            best = v
    if best is None:
        raise ValueError("real_min of empty iterable")
    return best


def real_sort(values: Iterable[Real]) -> list[Real]:
    import functools

    return sorted(values, key=functools.cmp_to_key(real_cmp))


def real_sqrt(x: Real, bits: int | None = None) -> Real:
    """Square root; exact when x is the square of a rational, or when x is a
    plain square-free integer times a rational square.  Otherwise a tracked
    approximation at the requested precision."""
    x = as_real(x)
    bits = bits or DEFAULT_PRECISION_BITS
    if isinstance(x, Fraction):
        if x < 0:
            raise ValueError("sqrt of negative value")
        num, den = x.numerator, x.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        # sqrt(num/den) = sqrt(num*den)/den
        return Surd.make(0, Fraction(1, den), num * den)
    lo, hi = real_bounds(x, bits)
    lo = max(lo, _ZERO)
    if hi < 0:
        raise ValueError("sqrt of negative value")
    sl = _fraction_sqrt_lower(lo, bits)
    sh = _fraction_sqrt_upper(hi, bits)
    return Approx((sl + sh) / 2, (sh - sl) / 2)


def _fraction_sqrt_lower(x: Fraction, bits: int) -> Fraction:
    if x <= 0:
        return _ZERO
    scale = 1 << bits
    n = isqrt((x.numerator * scale * scale) // x.denominator)
    return Fraction(n, scale)


def _fraction_sqrt_upper(x: Fraction, bits: int) -> Fraction:
    if x <= 0:
        return _ZERO
    scale = 1 << bits
    n = isqrt((x.numerator * scale * scale) // x.denominator) + 1
    return Fraction(n, scale)


def real_to_float(x) -> float:
    return float(as_real(x))


def real_error_bound(x: Real) -> Fraction:
    return x.err if isinstance(x, Approx) else _ZERO


def real_to_json(x: Real) -> dict:
    """Serializable description: float view plus exactness metadata."""
    x = as_real(x)
    out = {"float": float(x)}
    if isinstance(x, Fraction):
        out["kind"] = "rational"
        out["exact"] = f"{x.numerator}/{x.denominator}"
    elif isinstance(x, Surd):
        out["kind"] = "surd"
        out["exact"] = f"({x.p}) + ({x.q})*sqrt({x.d})"
    else:
        out["kind"] = "approx"
        out["max_error"] = float(x.err)
    return out


# ---------------------------------------------------------------------------
# points on the circle / torus
# ---------------------------------------------------------------------------


class TorusPoint:
    """A coordinate on the unit circle, stored reduced into [0, 1)."""

    __slots__ = ("value",)

    def __init__(self, value):
        v = as_real(value)
        self.value = real_frac(v)

    @classmethod
    def from_text(cls, text: str) -> "TorusPoint":
        return cls(parse_real(text))

    def multiple(self, n: int) -> Real:
        return real_mul_int(self.value, n)

    def multiple_norm(self, n: int) -> Real:
        """Distance of n*value from the nearest integer."""
        return torus_norm1(real_mul_int(self.value, n))

    @property
    def is_rational(self) -> bool:
        return isinstance(self.value, Fraction)

    def __eq__(self, other):
        return isinstance(other, TorusPoint) and self.value == other.value

    def __hash__(self):
        return hash(("TorusPoint", self.value))

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"TorusPoint({self.value!r})"


def golden_rotation() -> TorusPoint:
    """(sqrt(5) - 1) / 2, the canonical badly-approximable rotation number."""
    return TorusPoint(Surd.make(Fraction(-1, 2), Fraction(1, 2), 5))


def sqrt2_rotation() -> TorusPoint:
    """sqrt(2) - 1."""
    return TorusPoint(Surd.make(Fraction(-1), Fraction(1), 2))
