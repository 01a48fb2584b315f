"""Rational interval enclosures for real algebraic quantities.

An :class:`Enclosure` is a closed rational interval known to contain one
specific real number, together with a way of producing a tighter enclosure
of the same number.  Strict comparisons are decided only when enclosures
separate; nothing is ever decided from a float.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .exceptions import Unresolved
from .poly import Polynomial, as_fraction, format_rational

INF = math.inf
DEFAULT_MAX_REFINE = 256


class Status(enum.Enum):
    YES = "yes"
    NO = "no"
    BOUNDARY = "boundary"
    UNRESOLVED = "unresolved"

    def __bool__(self):
        return self is Status.YES


def interval_mul(a_lo, a_hi, b_lo, b_hi):
    ps = (a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi)
    return min(ps), max(ps)


def interval_eval(P: Polynomial, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Bounds on ``P`` over ``[lo, hi]`` by interval Horner."""
    if lo == hi:
        v = P(lo)
        return v, v
    vlo = vhi = Fraction(0)
    for c in reversed(P.coeffs):
        vlo, vhi = interval_mul(vlo, vhi, lo, hi)
        vlo += c
        vhi += c
    return vlo, vhi


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root when ``x`` is the square of a rational, else ``None``."""
    x = as_fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_bounds(x: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 2**-bits`` (exact when possible)."""
    x = as_fraction(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    r = rational_sqrt(x)
    if r is not None:
        return r, r
    scale = 1 << bits
    # sqrt(n/d) = sqrt(n*d)/d
    n, d = x.numerator, x.denominator
    s = math.isqrt(n * d * scale * scale)
    return Fraction(s, d * scale), Fraction(s + 1, d * scale)


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` holding one real number.

    ``lo`` / ``hi`` may be ``±inf`` for unbounded values.  ``refiner``
    returns a strictly tighter enclosure of the same number (or ``None``
    when no further tightening is possible).
    """

    lo: object
    hi: object
    refiner: Optional[Callable[[], "Enclosure"]] = field(default=None, compare=False, repr=False)

    @classmethod
    def exact(cls, x) -> "Enclosure":
        if isinstance(x, float) and math.isinf(x):
            return cls(x, x)
        x = as_fraction(x)
        return cls(x, x)

    @classmethod
    def of_sqrt(cls, x, bits: int = 64) -> "Enclosure":
        lo, hi = sqrt_bounds(x, bits)
        if lo == hi:
            return cls(lo, hi)
        return cls(lo, hi, lambda: cls.of_sqrt(x, bits * 2))

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError("enclosure is not exact")
        return self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refined(self) -> "Enclosure":
        if self.is_exact or self.refiner is None:
            return self
        return self.refiner()

    def refine_to(self, width, max_rounds: int = DEFAULT_MAX_REFINE) -> "Enclosure":
        e = self
        for _ in range(max_rounds):
            if e.is_exact or e.width <= width:
                return e
            nxt = e.refined()
            if nxt is e:
                break
            e = nxt
        if not (e.is_exact or e.width <= width):
            raise Unresolved(f"could not refine enclosure below width {width}")
        return e

    def __float__(self):
        if math.isinf(self.lo) and self.lo == self.hi:
            return self.lo
        return float((self.lo + self.hi) / 2)

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, (lambda: -self.refined()) if self.refiner else None)

    def scaled(self, c) -> "Enclosure":
        c = as_fraction(c)
        lo, hi = (self.lo * c, self.hi * c) if c >= 0 else (self.hi * c, self.lo * c)
        return Enclosure(lo, hi, (lambda: self.refined().scaled(c)) if self.refiner else None)

    def shifted(self, c) -> "Enclosure":
        c = as_fraction(c)
        return Enclosure(self.lo + c, self.hi + c, (lambda: self.refined().shifted(c)) if self.refiner else None)

    def __str__(self):
        if self.is_exact:
            return _fmt(self.lo)
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"


def _fmt(x) -> str:
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    return format_rational(x)


def enclosure_max(encs: Iterable[Enclosure]) -> Enclosure:
    """Enclosure of the maximum of several enclosed numbers."""
    encs = tuple(encs)
    lo = max(e.lo for e in encs)
    hi = max(e.hi for e in encs)
    if any(e.refiner for e in encs) and lo != hi:
        return Enclosure(lo, hi, lambda: enclosure_max(e.refined() for e in encs))
    return Enclosure(lo, hi)


def enclosure_min(encs: Iterable[Enclosure]) -> Enclosure:
    encs = tuple(encs)
    lo = min(e.lo for e in encs)
    hi = min(e.hi for e in encs)
    if any(e.refiner for e in encs) and lo != hi:
        return Enclosure(lo, hi, lambda: enclosure_min(e.refined() for e in encs))
    return Enclosure(lo, hi)


def compare(a: Enclosure, b: Enclosure, max_rounds: int = DEFAULT_MAX_REFINE) -> int:
    """Sign of ``a - b``.  Returns 0 only when both are exact and equal.

    Raises :class:`Unresolved` if the enclosures still overlap after
    ``max_rounds`` refinements.
    """
    for _ in range(max_rounds + 1):
        if a.hi < b.lo:
            return -1
        if a.lo > b.hi:
            return 1
        if a.is_exact and b.is_exact:
            return 0
        a2, b2 = a.refined(), b.refined()
        if a2 is a and b2 is b:
            break
        a, b = a2, b2
    raise Unresolved("enclosures overlap after refinement budget")


def compare_to(a: Enclosure, x, max_rounds: int = DEFAULT_MAX_REFINE) -> int:
    return compare(a, Enclosure.exact(x), max_rounds)


@dataclass(frozen=True)
class Interval:
    """Open interval ``]lo; hi[`` whose endpoints are enclosures.

    An interval with ``lo >= hi`` is representable; it marks an empty set of
    admissible values.
    """

    lo: Enclosure
    hi: Enclosure

    @classmethod
    def of(cls, lo, hi) -> "Interval":
        lo = lo if isinstance(lo, Enclosure) else Enclosure.exact(lo)
        hi = hi if isinstance(hi, Enclosure) else Enclosure.exact(hi)
        return cls(lo, hi)

    def is_empty(self, max_rounds: int = DEFAULT_MAX_REFINE) -> Status:
        """YES when ``lo > hi`` certainly, BOUNDARY when ``lo == hi`` exactly."""
        try:
            c = compare(self.lo, self.hi, max_rounds)
        except Unresolved:
            return Status.UNRESOLVED
        if c < 0:
            return Status.NO
        return Status.YES if c > 0 else Status.BOUNDARY

    def contains(self, x, max_rounds: int = DEFAULT_MAX_REFINE) -> Status:
        """YES if ``lo < x < hi``; BOUNDARY if ``x`` equals an endpoint exactly."""
        x = as_fraction(x)
        try:
            a = compare_to(self.lo, x, max_rounds)
            b = compare_to(self.hi, x, max_rounds)
        except Unresolved:
            return Status.UNRESOLVED
        if a < 0 < b:
            return Status.YES
        if a == 0 or b == 0:
            return Status.BOUNDARY
        return Status.NO

    def refined(self) -> "Interval":
        return Interval(self.lo.refined(), self.hi.refined())

    def scaled(self, c) -> "Interval":
        c = as_fraction(c)
        if c > 0:
            return Interval(self.lo.scaled(c), self.hi.scaled(c))
        return Interval(self.hi.scaled(c), self.lo.scaled(c))

    def interior(self, frac: Fraction, max_rounds: int = DEFAULT_MAX_REFINE) -> tuple[Fraction, Fraction]:
        """A certified rational sub-interval ``[L, H]`` strictly inside.

        Endpoints are refined until each enclosure is narrower than
        ``frac`` times the certified gap.
        """
        lo, hi = self.lo, self.hi
        for _ in range(max_rounds):
            if math.isinf(lo.hi) or math.isinf(hi.lo):
                raise ValueError("interior() needs a bounded interval")
            gap = hi.lo - lo.hi
            if gap > 0 and lo.width <= frac * gap and hi.width <= frac * gap:
                return lo.hi, hi.lo
            lo2, hi2 = lo.refined(), hi.refined()
            if lo2 is lo and hi2 is hi:
                if gap > 0:
                    return lo.hi, hi.lo
                break
            lo, hi = lo2, hi2
        raise Unresolved("interval endpoints could not be separated")

    def __str__(self):
        return f"]{self.lo}; {self.hi}["
