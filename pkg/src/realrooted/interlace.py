"""Interlacing certification of real-rootedness.

A monic depressed ``P_n`` is split as ``P_n = x*P_{n-1} - R_{n-2}`` with
``P_{n-1} = P_n'/n``.  Given the ``n-1`` distinct roots ``a_1 < ... < a_{n-1}``
of ``P_{n-1}``, ``P_n`` has ``n`` distinct real roots iff ``R_{n-2}`` takes
strictly alternating signs on them, ending positive at ``a_{n-1}``.  Applying
that criterion from degree 2 upwards certifies the whole polynomial; every
sign is decided exactly (enclosure refinement, with zero certified through a
gcd), never from floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .enclosure import DEFAULT_MAX_REFINE, Enclosure, Interval, Status, enclosure_max, enclosure_min
from .exceptions import (
    DegreeTooSmall,
    NotDepressed,
    NotMonic,
    SizeMismatch,
    Unresolved,
    UnresolvableOrder,
    ZeroAtDerivativeRoot,
)
from .poly import DepressedForm, Polynomial, depress, derivative, gcd, squarefree_decomposition
from .roots import RealRoot, RootSet, compare_roots, roots_of_squarefree
from .sturm import count_real_roots


class Verdict(enum.Enum):
    ALL_REAL_DISTINCT = "AllRealDistinct"
    NOT_ALL_REAL = "NotAllReal"
    DEGENERATE = "Degenerate"
    HYPOTHESIS_UNRESOLVED = "HypothesisUnresolved"

    def __str__(self):
        return self.value


class DegeneracyKind(enum.Enum):
    SIMPLE = "Simple"
    ONE_DOUBLE = "OneDouble"
    TWO_DOUBLES = "TwoDoubles"
    TRIPLE = "Triple"
    TRIPLE_AND_DOUBLE = "TripleAndDouble"
    OTHER = "Other"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RemainderDecomposition:
    """``P_n = x * P_nminus1 - R`` and ``R0 = R + a0`` (no constant term)."""

    P_n: Polynomial
    P_nminus1: Polynomial
    R: Polynomial
    R0: Polynomial
    a0: Fraction

    @property
    def n(self) -> int:
        return self.P_n.degree


def decompose(P: Polynomial) -> RemainderDecomposition:
    n = P.degree
    if n < 2:
        raise DegreeTooSmall(f"decompose needs degree >= 2, got {n}")
    if not P.is_monic():
        raise NotMonic("decompose needs a monic polynomial")
    if P[n - 1] != 0:
        raise NotDepressed("decompose needs a depressed polynomial")
    Pm1 = derivative(P) / n
    R = Polynomial.x() * Pm1 - P
    a0 = P[0]
    return RemainderDecomposition(P, Pm1, R, R + a0, a0)


def required_signs(n: int) -> tuple[int, ...]:
    """Sign ``R_{n-2}`` must take at each root of ``P_{n-1}`` (1-based order).

    Positive at the largest critical point, alternating downwards.  This is
    the same rule for both parities of ``n``.
    """
    return tuple(1 if (n - 1 - k) % 2 == 0 else -1 for k in range(1, n))


def _signs_at(R: Polynomial, roots: RootSet, max_refine: int, common: Optional[Polynomial] = None):
    signs, refined = [], []
    for root in roots:
        s, r = root.sign_of(R, max_refine, common)
        signs.append(s)
        refined.append(r)
    return tuple(signs), RootSet(tuple(refined), roots.source)


def sign_alternation_check(R: Polynomial, deriv_roots: RootSet, n: int, max_refine: int = DEFAULT_MAX_REFINE) -> bool:
    """True iff ``R`` alternates strictly on the ``n-1`` critical points.

    A vanishing value with every other sign correct raises
    :class:`ZeroAtDerivativeRoot` (a boundary, not a failure).
    """
    if len(deriv_roots) != n - 1:
        raise SizeMismatch(f"expected {n - 1} derivative roots, got {len(deriv_roots)}")
    signs, _ = _signs_at(R, deriv_roots, max_refine)
    req = required_signs(n)
    if any(s == -e for s, e in zip(signs, req)):
        return False
    for k, s in enumerate(signs, 1):
        if s == 0:
            raise ZeroAtDerivativeRoot(k)
    return True


def a0_interval(R0: Polynomial, deriv_roots: RootSet, n: int) -> Interval:
    """Open interval of constants ``a0`` making ``x*P_{n-1} - R0 + a0`` real-rooted.

    The lower end is the sup of ``R0`` over the critical points where the
    remainder must be negative, the upper end the inf over those where it must
    be positive.  The result may be empty (``lo >= hi``).
    """
    if isinstance(R0, RemainderDecomposition):
        R0 = R0.R0
    if len(deriv_roots) != n - 1:
        raise SizeMismatch(f"expected {n - 1} derivative roots, got {len(deriv_roots)}")
    req = required_signs(n)
    below = [root.value_of(R0) for root, e in zip(deriv_roots, req) if e < 0]
    above = [root.value_of(R0) for root, e in zip(deriv_roots, req) if e > 0]
    lo = enclosure_max(below) if below else Enclosure.exact(-math.inf)
    hi = enclosure_min(above) if above else Enclosure.exact(math.inf)
    return Interval(lo, hi)


def is_interlaced(outer: RootSet, inner: RootSet, strict: bool = False, max_refine: int = DEFAULT_MAX_REFINE) -> bool:
    """``o_1 <= i_1 <= o_2 <= ... <= i_{m} <= o_{m+1}`` (strict if asked)."""
    if len(outer) != len(inner) + 1:
        raise SizeMismatch(f"need |outer| = |inner| + 1, got {len(outer)} and {len(inner)}")
    seq = []
    for k, o in enumerate(outer):
        seq.append(o)
        if k < len(inner):
            seq.append(inner[k])
    try:
        for a, b in zip(seq, seq[1:]):
            c = compare_roots(a, b, max_refine)
            if c > 0 or (strict and c == 0):
                return False
    except Unresolved as exc:
        raise UnresolvableOrder(str(exc)) from None
    return True


@dataclass
class LevelRecord:
    """One step of the certification walk (degree ``level``)."""

    level: int
    poly: Polynomial
    remainder: Polynomial
    a0: Fraction
    deriv_roots: RootSet
    signs: tuple[int, ...] = ()
    required: tuple[int, ...] = ()
    interval: Optional[Interval] = None
    status: Status = Status.YES
    note: str = ""


@dataclass
class Degeneracy:
    kind: DegeneracyKind
    multiplicities: tuple[int, ...]
    real_roots: RootSet
    witnessed: Optional[bool] = None

    def profile(self) -> dict:
        return self.real_roots.profile()


@dataclass
class Certificate:
    verdict: Verdict
    source: Polynomial
    form: Optional[DepressedForm]
    trail: list[LevelRecord] = field(default_factory=list)
    degeneracy: Optional[Degeneracy] = None
    failed_level: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    @property
    def all_real_distinct(self) -> bool:
        return self.verdict is Verdict.ALL_REAL_DISTINCT


def _classify(mults: list[int]) -> DegeneracyKind:
    big = sorted((m for m in mults if m > 1), reverse=True)
    return {
        (): DegeneracyKind.SIMPLE,
        (2,): DegeneracyKind.ONE_DOUBLE,
        (2, 2): DegeneracyKind.TWO_DOUBLES,
        (3,): DegeneracyKind.TRIPLE,
        (3, 2): DegeneracyKind.TRIPLE_AND_DOUBLE,
    }.get(tuple(big), DegeneracyKind.OTHER)


def detect_degenerate(P: Polynomial, max_refine: int = DEFAULT_MAX_REFINE) -> Degeneracy:
    """Multiplicity classification by squarefree decomposition.

    ``witnessed`` checks that every multiple real root is a common root of
    ``P'/n`` and of the remainder ``x*P'/n - P`` (computed on the monic form).
    """
    from .roots import isolate_real_roots

    if P.degree < 1:
        raise DegreeTooSmall("detect_degenerate needs degree >= 1")
    mults = []
    for f, k in squarefree_decomposition(P):
        mults.extend([k] * f.degree)
    real = isolate_real_roots(P)
    witnessed = None
    multiple = [r for r in real if r.multiplicity > 1]
    if multiple:
        M = P.monic()
        Pm1 = derivative(M) / M.degree
        R = Polynomial.x() * Pm1 - M
        witnessed = all(r.sign_of(Pm1, max_refine)[0] == 0 and r.sign_of(R, max_refine)[0] == 0 for r in multiple)
    return Degeneracy(_classify(mults), tuple(sorted(mults, reverse=True)), real, witnessed)


def _all_real_with_multiplicity(P: Polynomial) -> bool:
    total = sum(k * count_real_roots(f) for f, k in squarefree_decomposition(P))
    return total == P.degree


def certify_all_real(P: Polynomial, max_refine: int = DEFAULT_MAX_REFINE) -> Certificate:
    """Walk degrees 2..n deciding each level's sign-alternation condition.

    Non-monic or non-depressed input is normalised first; the certificate
    keeps the shift and scale.  Verdicts:

    * ``ALL_REAL_DISTINCT`` - every level passed strictly;
    * ``NOT_ALL_REAL`` - some level has a remainder value of the wrong sign;
    * ``DEGENERATE`` - a remainder value is exactly zero (a multiple root) and
      all roots are real counting multiplicity;
    * ``HYPOTHESIS_UNRESOLVED`` - refinement budget exhausted.
    """
    n = P.degree
    if n < 1:
        raise DegreeTooSmall("certify_all_real needs degree >= 1")
    if n == 1:
        return Certificate(Verdict.ALL_REAL_DISTINCT, P, None)
    form = depress(P)
    cert = Certificate(Verdict.ALL_REAL_DISTINCT, P, form)
    levels = {n: form.poly}
    for i in range(n, 1, -1):
        levels[i - 1] = derivative(levels[i]) / i

    prev_roots = RootSet((RealRoot.exact(0, levels[1]),), levels[1])
    for i in range(2, n + 1):
        dec = decompose(levels[i])
        req = required_signs(i)
        rec = LevelRecord(i, dec.P_n, dec.R, dec.a0, prev_roots, required=req)
        cert.trail.append(rec)
        try:
            common = gcd(dec.P_nminus1, dec.R) if not dec.R.is_zero() else None
            signs, prev_roots = _signs_at(dec.R, prev_roots, max_refine, common)
        except Unresolved as exc:
            rec.status = Status.UNRESOLVED
            rec.note = str(exc)
            cert.verdict = Verdict.HYPOTHESIS_UNRESOLVED
            cert.failed_level = i
            return cert
        rec.signs = signs
        rec.deriv_roots = prev_roots
        rec.interval = a0_interval(dec.R0, prev_roots, i)
        if any(s == -e for s, e in zip(signs, req)):
            rec.status = Status.NO
            cert.verdict = Verdict.NOT_ALL_REAL
            cert.failed_level = i
            return cert
        if 0 in signs:
            rec.status = Status.BOUNDARY
            cert.failed_level = i
            if i == n or _all_real_with_multiplicity(form.poly):
                if i < n:
                    cert.notes.append(f"boundary at level {i}; degree-{n} reality settled by exact root count")
                cert.verdict = Verdict.DEGENERATE
                cert.degeneracy = detect_degenerate(P, max_refine)
            else:
                cert.notes.append(f"boundary at level {i}; degree-{n} polynomial has non-real roots")
                cert.verdict = Verdict.NOT_ALL_REAL
            return cert
        if i < n:
            prev_roots = roots_of_squarefree(levels[i])
    return cert
