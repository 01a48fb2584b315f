"""Explicit conditions for quartics and quintics.

Quartics are written ``x^4 + 2p x^2 + 4q x + 4r`` and quintics
``x^5 + (10p/3) x^3 + 10q x^2 + 20r x + 20s``, so that the derivative of the
quintic divided by 5 is the quartic with the same ``(p, q, r)``.

The quintic with two double roots ``a, b`` and simple root ``c`` is handled
through ``Y = a + b``: then ``X = ab = 3Y^2/2 + 5p/3``, ``c = -2Y``,
``q = Y^3/2 + pY/3``, ``s = X^2 Y/10`` and ``Y`` must be a root of
``g(Y) = X^2 - (8p/3) X + 12r``.  The two roots of ``X^2 - (8p/3)X + 12r``,
``x1 >= x2``, give the consecutive (``c`` outside ``[a, b]``) and the
separated (``a < c < b``) arrangements.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .enclosure import (
    DEFAULT_MAX_REFINE,
    Enclosure,
    Interval,
    Status,
    enclosure_max,
    enclosure_min,
)
from .exceptions import (
    HypothesisFailed,
    NegativeDelta2,
    NotThreeRealRoots,
    OutOfRange,
    PreconditionFailed,
    Unresolved,
)
from .params import ConditionReport, QuarticParams, QuinticParams
from .poly import Polynomial, as_fraction, euclid_div
from .roots import (
    RealRoot,
    RootSet,
    compare_roots,
    compare_values,
    cubic_roots_ordered,
    isolate_real_roots,
    roots_of_squarefree,
    value_as_root,
)

Number = Union[Fraction, Enclosure]


def assemble(params: QuinticParams) -> Polynomial:
    return params.assemble()


def disassemble(P: Polynomial) -> QuinticParams:
    return QuinticParams.disassemble(P)


def r2_zero(p, q) -> Polynomial:
    """Constant-free remainder of the quartic: ``-p x^2 - 3q x``."""
    return Polynomial([0, -3 * as_fraction(q), -as_fraction(p)])


def r3_zero(p, q, r) -> Polynomial:
    """Constant-free remainder of the quintic: ``-(4/3)p x^3 - 6q x^2 - 16r x``."""
    p, q, r = map(as_fraction, (p, q, r))
    return Polynomial([0, -16 * r, -6 * q, Fraction(-4, 3) * p])


def _combine(statuses) -> Status:
    statuses = list(statuses)
    if all(s is Status.YES for s in statuses):
        return Status.YES
    if any(s is Status.NO for s in statuses):
        return Status.NO
    return Status.BOUNDARY


# -- quartic -------------------------------------------------------------------


def quartic_conditions(qp: QuarticParams, max_refine: int = DEFAULT_MAX_REFINE) -> ConditionReport:
    """``p < 0``, ``|q| < 2(-p/3)^{3/2}`` and ``4r`` inside the remainder interval.

    The interval for ``4r`` is ``]R2_0(a2), min(R2_0(a1), R2_0(a3))[`` over the
    ordered roots of ``x^3 + p x + q``.  Exact ties give BOUNDARY, as do
    comparisons the refinement budget cannot settle (with a note).
    """
    p, q, r = qp.p, qp.q, qp.r
    rep = ConditionReport()
    rep.add("p<0", Status.YES if p < 0 else Status.NO)
    # q^2 < -4p^3/27 is the squared form of the cubic's q-interval
    gap = -4 * p**3 - 27 * q**2
    rep.add("q-interval", Status.YES if gap > 0 else Status.BOUNDARY if gap == 0 and p < 0 else Status.NO)
    if rep.conditions["q-interval"] is not Status.YES:
        rep.add("r-interval", Status.NO)
        rep.notes.append("derivative does not have three distinct real roots")
        rep.verdict = _combine(rep.conditions.values())
        return rep
    roots = cubic_roots_ordered(p, q)
    R20 = r2_zero(p, q)
    R2 = R20 - 4 * r
    rep.details["cubic_roots"] = RootSet(roots, qp.cubic())
    rep.details["r_interval"] = Interval(
        roots[1].value_of(R20), enclosure_min([roots[0].value_of(R20), roots[2].value_of(R20)])
    )
    try:
        signs = [root.sign_of(R2, max_refine)[0] for root in roots]
    except Unresolved as exc:
        rep.add("r-interval", Status.BOUNDARY)
        rep.notes.append(f"unresolved: {exc}")
    else:
        want = (1, -1, 1)
        if any(s == -w for s, w in zip(signs, want)):
            rep.add("r-interval", Status.NO)
        elif 0 in signs:
            rep.add("r-interval", Status.BOUNDARY)
        else:
            rep.add("r-interval", Status.YES)
    rep.verdict = _combine(rep.conditions.values())
    return rep


def quartic_trig_bounds(p, q) -> tuple[float, float]:
    """Floating-point ``(lower, upper)`` bounds for ``4r`` from the trigonometric root form.

    Cross-check only.  With ``cos t = -|q| / (2(-p/3)^{3/2})`` the upper bound
    is ``(4p^2/3) cos(t/3) [cos(t/3) + cos t]`` and the lower bound is the same
    expression at ``t/3 - 2pi/3``.
    """
    p, q = float(p), float(q)
    if p >= 0 or -4 * p**3 - 27 * q**2 <= 0:
        raise NotThreeRealRoots("cubic derivative lacks three distinct real roots")
    t = math.acos(-abs(q) / (2 * (-p / 3) ** 1.5))

    def bound(phi):
        return 4 * p * p / 3 * math.cos(phi) * (math.cos(phi) + math.cos(t))

    return bound(t / 3 - 2 * math.pi / 3), bound(t / 3)


# -- hypothesis on the quartic for a quintic extension ---------------------------


class RangeCase(enum.Enum):
    LOW = "r < p^2/9"
    MIDDLE = "p^2/9 <= r < 5p^2/36"
    UPPER = "5p^2/36 <= r <= 4p^2/27"
    EXCLUDED = "r > 4p^2/27"

    def __str__(self):
        return self.value


@dataclass
class HypothesisReport:
    """Whether some ``s`` makes the quintic real-rooted, decided two ways.

    ``direct`` compares the remainder values at the four quartic roots;
    ``via_branches`` uses the case split on ``r`` and the extreme-root
    product ``X``.  ``holds`` follows ``direct`` when it resolves.
    """

    holds: Status
    case: RangeCase
    direct: Status
    via_branches: Status
    X: Optional[Enclosure] = None
    x1: Optional[Enclosure] = None
    x2: Optional[Enclosure] = None
    x3: Optional[Enclosure] = None
    x4: Optional[Enclosure] = None
    roots: Optional[RootSet] = None
    extreme_pair_sign: Optional[int] = None
    threshold_sign: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        resolved = (Status.YES, Status.NO, Status.BOUNDARY)
        if self.direct not in resolved or self.via_branches not in resolved:
            return True
        return self.direct is self.via_branches


def _product(a: RealRoot, b: RealRoot) -> Enclosure:
    ps = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    lo, hi = min(ps), max(ps)
    if lo == hi:
        return Enclosure(lo, hi)
    return Enclosure(lo, hi, lambda: _product(a.refined(), b.refined()))


def locate_root(enc: Enclosure, P: Polynomial, max_rounds: int = DEFAULT_MAX_REFINE) -> RealRoot:
    """The root of ``P`` enclosed by ``enc`` (which must enclose a root of ``P``)."""
    if enc.is_exact:
        if P.sign_at(enc.lo) != 0:
            raise ValueError("enclosed value is not a root")
        return RealRoot.exact(enc.lo)
    cands = list(isolate_real_roots(P))
    for _ in range(max_rounds):
        hits = [c for c in cands if not (c.hi < enc.lo or enc.hi < c.lo)]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise ValueError("enclosed value is not a root")
        cands = [c.refined() if c in hits else c for c in cands]
        enc = enc.refined()
    raise Unresolved("could not locate the enclosed root")


def x_relation(qp: QuarticParams) -> Polynomial:
    """``16q^2 X^3 - (4r - X^2)^2 (X^2 - 2pX + 4r)``, vanishing at the extreme-root product."""
    p, q, r = qp.p, qp.q, qp.r
    X = Polynomial.x()
    return 16 * q**2 * X**3 - (4 * r - X * X) ** 2 * (X * X - 2 * p * X + 4 * r)


def extreme_pair_polynomial(qp: QuarticParams) -> Polynomial:
    """``(6r/p - p) X (X^2 - 4r) + (9q^2/p + 2r) X^2 - 8r^2``; negative iff the extreme pair passes."""
    p, q, r = qp.p, qp.q, qp.r
    X = Polynomial.x()
    return (6 * r / p - p) * X * (X * X - 4 * r) + (9 * q**2 / p + 2 * r) * X * X - 8 * r**2


def threshold_polynomial(qp: QuarticParams) -> Polynomial:
    """``9 (X^2 - (8p/3)X + 12r)(X^2 + (2p/3)X - 4r/3)``, the product over the four thresholds."""
    p, r = qp.p, qp.r
    return Polynomial([-144 * r**2, 104 * p * r, 96 * r - 16 * p**2, -18 * p, 9])


def _thresholds(p, r):
    # x1, x2 = (4p +- 2 sqrt(4p^2 - 27r))/3 ; x3, x4 = (-p +- sqrt(p^2 + 12r))/3
    out = [None] * 4
    D = 4 * p**2 - 27 * r
    if D >= 0:
        sd = Enclosure.of_sqrt(D)
        out[0] = sd.scaled(Fraction(2, 3)).shifted(4 * p / 3)
        out[1] = sd.scaled(Fraction(-2, 3)).shifted(4 * p / 3)
    E = p**2 + 12 * r
    if E >= 0:
        se = Enclosure.of_sqrt(E)
        out[2] = se.scaled(Fraction(1, 3)).shifted(-p / 3)
        out[3] = se.scaled(Fraction(-1, 3)).shifted(-p / 3)
    return out


def range_case(p, r) -> RangeCase:
    p, r = as_fraction(p), as_fraction(r)
    if r < p**2 / 9:
        return RangeCase.LOW
    if r < 5 * p**2 / 36:
        return RangeCase.MIDDLE
    if r <= 4 * p**2 / 27:
        return RangeCase.UPPER
    return RangeCase.EXCLUDED


def _cmp_status(c: int) -> Status:
    return Status.YES if c < 0 else Status.BOUNDARY if c == 0 else Status.NO


def hypothesis_check(qp: QuarticParams, max_refine: int = DEFAULT_MAX_REFINE) -> HypothesisReport:
    """Decide whether the quintic interval for ``20s`` is nonempty.

    Requires the quartic to have four distinct real roots ``a < b < c < d``.
    The condition is ``max(R3_0(a), R3_0(c)) < min(R3_0(b), R3_0(d))``.
    """
    if not quartic_conditions(qp, max_refine).holds:
        raise PreconditionFailed("the quartic must have four distinct real roots")
    p, q, r = qp.p, qp.q, qp.r
    roots = roots_of_squarefree(qp.assemble())
    R0 = r3_zero(p, q, r)
    case = range_case(p, r)
    x1, x2, x3, x4 = _thresholds(p, r)
    rep = HypothesisReport(Status.UNRESOLVED, case, Status.UNRESOLVED, Status.UNRESOLVED, x1=x1, x2=x2, x3=x3, x4=x4, roots=roots)

    try:
        cmps = [compare_values(R0, roots[i], roots[j], max_refine) for i in (0, 2) for j in (1, 3)]
        rep.direct = _combine(_cmp_status(c) for c in cmps)
    except Unresolved as exc:
        rep.notes.append(f"direct route unresolved: {exc}")

    a, d = roots[0], roots[3]
    rep.X = _product(a, d)
    try:
        Xroot = locate_root(rep.X, x_relation(qp), max_refine)
        rep.extreme_pair_sign = Xroot.sign_of(extreme_pair_polynomial(qp), max_refine)[0]
        rep.threshold_sign = Xroot.sign_of(threshold_polynomial(qp), max_refine)[0]
        if case is RangeCase.LOW:
            rep.via_branches = Status.YES
        elif case is RangeCase.EXCLUDED:
            rep.via_branches = Status.NO
        else:
            ts = isolate_real_roots(Polynomial([12 * r, -8 * p / 3, 1]))
            lo_t, hi_t = ts[0], ts[-1]
            st = [_cmp_status(compare_roots(Xroot, hi_t, max_refine))]
            if case is RangeCase.UPPER:
                st.append(_cmp_status(compare_roots(lo_t, Xroot, max_refine)))
            rep.via_branches = _combine(st)
    except Unresolved as exc:
        rep.notes.append(f"branch route unresolved: {exc}")

    rep.holds = rep.direct if rep.direct is not Status.UNRESOLVED else rep.via_branches
    if not rep.agree:
        rep.notes.append("routes disagree")
    return rep


def admissible_s_interval(qp: QuarticParams, max_refine: int = DEFAULT_MAX_REFINE) -> Interval:
    """Open interval of ``s`` giving five distinct real roots.

    ``20s`` must lie in ``]max(R3_0(a), R3_0(c)), min(R3_0(b), R3_0(d))[``.
    """
    qr = quartic_conditions(qp, max_refine)
    if not qr.holds:
        raise PreconditionFailed(f"quartic conditions: {qr.verdict.value}", qr.verdict)
    rep = hypothesis_check(qp, max_refine)
    if not rep.holds:
        raise HypothesisFailed(f"no admissible s ({rep.holds.value})", rep.holds)
    R0 = r3_zero(qp.p, qp.q, qp.r)
    vals = [root.value_of(R0) for root in rep.roots]
    return Interval(enclosure_max([vals[0], vals[2]]), enclosure_min([vals[1], vals[3]])).scaled(Fraction(1, 20))


def delta2(qp: QuarticParams) -> Fraction:
    return 9 * qp.q**2 - 16 * qp.p * qp.r


def sublevel_s_interval_via_R2roots(qp: QuarticParams) -> Interval:
    """Interval of ``s`` for which the cubic remainder ``R3`` has three distinct real roots.

    ``20s`` in ``]R3_0(b2), R3_0(b1)[`` with ``b1 < b2`` the roots of
    ``R2 = -p x^2 - 3q x - 4r``; in closed form ``c -+ D^{3/2}/(3p^2)`` with
    ``c = -9q^3/p^2 + 24qr/p`` and ``D = 9q^2 - 16pr``.  Always contains the
    admissible interval.
    """
    p, q, r = qp.p, qp.q, qp.r
    if p >= 0:
        raise PreconditionFailed("needs p < 0")
    D = delta2(qp)
    if D <= 0:
        raise NegativeDelta2(f"9q^2 - 16pr = {D} is not positive")
    c = -9 * q**3 / p**2 + 24 * q * r / p
    half = Enclosure.of_sqrt(D).scaled(D / (3 * p**2))
    return Interval(half.scaled(-1).shifted(c), half.shifted(c)).scaled(Fraction(1, 20))


def sublevel_interval_direct(qp: QuarticParams) -> Interval:
    """Same interval, evaluating ``R3_0`` at the isolated roots of ``R2``."""
    p, q, r = qp.p, qp.q, qp.r
    if delta2(qp) <= 0:
        raise NegativeDelta2("9q^2 - 16pr is not positive")
    b = roots_of_squarefree(Polynomial([-4 * r, -3 * q, -p]))
    R0 = r3_zero(p, q, r)
    return Interval(b[1].value_of(R0), b[0].value_of(R0)).scaled(Fraction(1, 20))


def t1_remainder(params: QuinticParams) -> Polynomial:
    """Negated remainder of ``R3`` by ``R2``: ``(2(16pr - 9q^2)/(3p)) x + 20s - 8qr/p``."""
    p, q, r, s = params.p, params.q, params.r, params.s
    R3 = r3_zero(p, q, r) - 20 * s
    R2 = Polynomial([-4 * r, -3 * q, -p])
    return -euclid_div(R3, R2)[1]


def sublevel_witness(params: QuinticParams) -> Optional[Fraction]:
    """Root ``3(-10sp + 4qr)/(16pr - 9q^2)`` of the linear remainder, or None when it is constant.

    ``R3`` has three distinct real roots iff this root lies strictly between
    the roots of ``R2``.
    """
    p, q, r, s = params.p, params.q, params.r, params.s
    den = 16 * p * r - 9 * q**2
    if den == 0:
        return None
    return 3 * (-10 * s * p + 4 * q * r) / den


# -- degenerate families ---------------------------------------------------------


@dataclass
class DegenerateMember:
    """A quintic with double roots at the roots of ``x^2 - Yx + X`` and a simple root ``-2Y``.

    ``q`` and ``s`` are exact rationals when ``Y`` is rational, enclosures
    otherwise; ``Y`` is always available as an isolated root of ``g``.
    """

    p: Fraction
    r: Fraction
    q: Number
    s: Number
    Y: RealRoot
    X: Number
    family: str

    @property
    def exact(self) -> bool:
        return isinstance(self.q, Fraction) and isinstance(self.s, Fraction)

    def params(self) -> QuinticParams:
        if not self.exact:
            raise ValueError("member has irrational parameters")
        return QuinticParams(self.p, self.q, self.r, self.s)

    def q_squared(self) -> Number:
        if isinstance(self.q, Fraction):
            return self.q**2
        y2 = _q_poly(self.p) ** 2
        return self.Y.value_of(y2)

    def _signs(self, max_rounds):
        Xp = _x_poly(self.p)
        Y = Polynomial.x()
        residual = Xp * Xp - 4 * Xp * Y * Y - 20 * self.r
        split = Y * Y - 4 * Xp  # discriminant of x^2 - Yx + X
        at_c = 4 * Y * Y + 2 * Y * Y + Xp  # x^2 - Yx + X at x = -2Y
        return tuple(self.Y.sign_of(P, max_rounds)[0] for P in (residual, split, at_c))

    def profile(self, max_rounds: int = DEFAULT_MAX_REFINE) -> tuple[int, ...]:
        """Sorted root multiplicities, decided exactly from ``Y``."""
        residual, split, at_c = self._signs(max_rounds)
        if residual != 0:
            return ()
        if split < 0:
            return (2, 2, 1)  # complex conjugate double pair
        if split == 0:
            return (4, 1) if at_c != 0 else (5,)
        return (3, 2) if at_c == 0 else (2, 2, 1)

    def verify(self, max_rounds: int = DEFAULT_MAX_REFINE) -> bool:
        """Exact check that the quintic factors as ``(x^2 - Yx + X)^2 (x + 2Y)`` with real double roots."""
        residual, split, _ = self._signs(max_rounds)
        return residual == 0 and split >= 0

    def arrangement(self, max_rounds: int = DEFAULT_MAX_REFINE) -> str:
        """``'separated'`` when the simple root lies between the double roots."""
        s = self.Y.sign_of(_x_poly(self.p) - 4 * self.p / 3, max_rounds)[0]
        return "separated" if s < 0 else "consecutive" if s > 0 else "coincident"


def _x_poly(p) -> Polynomial:
    return Polynomial([5 * p / 3, 0, Fraction(3, 2)])


def _q_poly(p) -> Polynomial:
    return Polynomial([0, p / 3, 0, Fraction(1, 2)])


def _s_poly(p) -> Polynomial:
    Xp = _x_poly(p)
    return Xp * Xp * Polynomial.x() / 10


def y_polynomial(p, r) -> Polynomial:
    Xp = _x_poly(as_fraction(p))
    return Xp * Xp - (Fraction(8, 3) * as_fraction(p)) * Xp + 12 * as_fraction(r)


def _value(Y: RealRoot, P: Polynomial) -> Number:
    """``P(Y)``, as a Fraction whenever it is rational (even for irrational ``Y``)."""
    if Y.is_exact:
        return P(Y.lo)
    v = value_as_root(P, Y).rationalized()
    return v.lo if v.is_exact else Y.value_of(P)


def _member(p, r, Y: RealRoot, family: str) -> DegenerateMember:
    Y = Y.refine_to(Fraction(1, 1 << 64))
    return DegenerateMember(p, r, _value(Y, _q_poly(p)), _value(Y, _s_poly(p)), Y, _value(Y, _x_poly(p)), family)


def _negate(Y: RealRoot) -> RealRoot:
    if Y.is_exact:
        return RealRoot.exact(-Y.lo, Y.poly.compose(Polynomial([0, -1])))
    return RealRoot(Y.poly.compose(Polynomial([0, -1])), -Y.hi, -Y.lo, Y.multiplicity)


def _family(p, r, family: str, max_rounds: int) -> list[DegenerateMember]:
    g = y_polynomial(p, r)
    shift = _x_poly(p) - 4 * p / 3  # X - 4p/3
    out = []
    for Y in isolate_real_roots(g):
        Y = Y.rationalized()
        if Y.sign_of(Polynomial.x(), max_rounds)[0] < 0:
            continue
        side = Y.sign_of(shift, max_rounds)[0]
        if (family == "consecutive" and side < 0) or (family == "separated" and side > 0):
            continue
        pos = _member(p, r, Y, family)
        if Y.sign_of(Polynomial.x(), max_rounds)[0] == 0:
            out.append(pos)
            continue
        neg = _member(p, r, _negate(Y), family)
        q_sign = Y.sign_of(_q_poly(p), max_rounds)[0]
        out.extend([pos, neg] if q_sign >= 0 else [neg, pos])
    return out


def _check_p(p) -> Fraction:
    p = as_fraction(p)
    if p >= 0:
        raise OutOfRange(f"needs p < 0, got {p}")
    return p


def degenerate_consecutive(p, r, max_rounds: int = DEFAULT_MAX_REFINE) -> list[DegenerateMember]:
    """Quintics with two adjacent double roots, for ``-p^2/12 <= r <= 4p^2/27``."""
    p, r = _check_p(p), as_fraction(r)
    if not (-p**2 / 12 <= r <= 4 * p**2 / 27):
        raise OutOfRange(f"r = {r} outside [-p^2/12, 4p^2/27]")
    return _family(p, r, "consecutive", max_rounds)


def degenerate_separated(p, r, max_rounds: int = DEFAULT_MAX_REFINE) -> list[DegenerateMember]:
    """Quintics with double roots ``a < b`` and the simple root between them, for ``5p^2/36 <= r <= 4p^2/27``."""
    p, r = _check_p(p), as_fraction(r)
    if not (5 * p**2 / 36 <= r <= 4 * p**2 / 27):
        raise OutOfRange(f"r = {r} outside [5p^2/36, 4p^2/27]")
    return _family(p, r, "separated", max_rounds)


def triple_double_point(p, max_rounds: int = DEFAULT_MAX_REFINE) -> list[DegenerateMember]:
    """``r = 4p^2/27``, ``q^2 = -8p^3/729``, ``s = 4pq/5``: a triple and a double root.

    Members carry exact ``q, s`` when ``-8p^3/729`` is a rational square
    (``member.exact``), enclosures otherwise.
    """
    p = _check_p(p)
    return _family(p, 4 * p**2 / 27, "triple", max_rounds)


def triple_point_closed_form(p) -> tuple[Fraction, Fraction, Fraction]:
    """``(q^2, r, s/q)`` for the triple-and-double point."""
    p = _check_p(p)
    return -8 * p**3 / 729, 4 * p**2 / 27, 4 * p / 5


def family_q_squared(p, r, separated: bool = False) -> Enclosure:
    """``q^2 = (8/729)(11p^3 - 81pr +- 2(4p^2 - 27r)^{3/2})``, ``+`` for the consecutive family."""
    p, r = _check_p(p), as_fraction(r)
    D = 4 * p**2 - 27 * r
    if D < 0:
        raise OutOfRange("needs r <= 4p^2/27")
    d32 = Enclosure.of_sqrt(D).scaled(D)
    return d32.scaled(Fraction(-16 if separated else 16, 729)).shifted(Fraction(8, 729) * (11 * p**3 - 81 * p * r))


def family_s(p, q, X) -> Fraction:
    """``10s = 3q X^2 / (X - 2p/3)``; undefined (0/0) when ``X = 2p/3``."""
    p, q, X = map(as_fraction, (p, q, X))
    if X == 2 * p / 3:
        raise ZeroDivisionError("X = 2p/3: use the Y-parametrization")
    return 3 * q * X**2 / (X - 2 * p / 3) / 10
