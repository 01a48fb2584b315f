"""Sturm chains, sign variations and real-root counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .enclosure import Status
from .exceptions import DegreeTooSmall, InvalidInterval
from .params import ConditionReport, QuarticParams, QuinticParams
from .poly import Polynomial, as_fraction, derivative, discriminant, euclid_div, squarefree_part


@dataclass(frozen=True)
class SturmChain:
    """``seq[0] = P``, ``seq[1] = P'``, then negated Euclidean remainders.

    ``squarefree`` is False when the chain stopped at a nonconstant element,
    which is then ``gcd(P, P')`` up to a constant.
    """

    seq: tuple[Polynomial, ...]
    source: Polynomial

    @property
    def squarefree(self) -> bool:
        return self.seq[-1].degree == 0

    @property
    def last(self) -> Polynomial:
        return self.seq[-1]

    @property
    def leading_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(s.lc for s in self.seq)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(s.degree for s in self.seq)

    def is_full(self) -> bool:
        """Degrees run n, n-1, ..., 0 with no gaps (no vanishing pivot)."""
        n = self.source.degree
        return self.degrees == tuple(range(n, -1, -1))

    def __len__(self):
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    def __getitem__(self, i):
        return self.seq[i]


@dataclass(frozen=True)
class SignSequence:
    signs: tuple[int, ...]

    @property
    def variations(self) -> int:
        return count_variations(self.signs)

    def __str__(self):
        return " ".join("+" if s > 0 else "-" if s < 0 else "0" for s in self.signs)


def count_variations(signs) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def sturm_chain(P: Polynomial) -> SturmChain:
    if P.degree < 1:
        raise DegreeTooSmall("a Sturm chain needs degree >= 1")
    seq = [P, derivative(P)]
    while seq[-1].degree > 0:
        rem = euclid_div(seq[-2], seq[-1])[1]
        if rem.is_zero():
            break
        seq.append(-rem)
    return SturmChain(tuple(seq), P)


def sign_variations(C: SturmChain, x) -> SignSequence:
    """Signs of the chain at ``x`` (a rational or ``±math.inf``)."""
    return SignSequence(tuple(s.sign_at(x) for s in C.seq))


def _ext(x):
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise TypeError("finite floats are not exact; pass a Fraction")
    return as_fraction(x)


class RootCounter:
    """Reusable Sturm counter for the squarefree part of ``P``.

    ``count(a, b)`` is the number of distinct real roots in ``(a, b]``.
    """

    __slots__ = ("poly", "chain", "_cache")

    def __init__(self, P: Polynomial):
        self.poly = squarefree_part(P)
        self.chain = sturm_chain(self.poly) if self.poly.degree >= 1 else None
        self._cache = {}

    def variations(self, x) -> int:
        if self.chain is None:
            return 0
        v = self._cache.get(x)
        if v is None:
            v = count_variations([s.sign_at(x) for s in self.chain.seq])
            self._cache[x] = v
        return v

    def count(self, a=-math.inf, b=math.inf) -> int:
        return self.variations(a) - self.variations(b)


def count_real_roots(P: Polynomial, a=-math.inf, b=math.inf) -> int:
    """Distinct real roots of ``P`` in the half-open interval ``(a, b]``.

    Uses the chain of the squarefree part, so endpoints that are roots need
    no perturbation.
    """
    a, b = _ext(a), _ext(b)
    if not a < b:
        raise InvalidInterval(f"need a < b, got ({a}, {b}]")
    if P.is_zero():
        raise InvalidInterval("the zero polynomial has infinitely many roots")
    if P.degree < 1:
        return 0
    return RootCounter(P).count(a, b)


def all_real_rooted_sturm(P: Polynomial) -> bool:
    """True iff ``P`` has ``deg P`` distinct real roots.

    All chain leading coefficients strictly positive, with one chain element
    per degree.
    """
    if P.degree < 1:
        return False
    if P.lc < 0:
        P = -P
    C = sturm_chain(P)
    return C.is_full() and all(c > 0 for c in C.leading_coefficients)


# -- closed forms for degrees 3, 4, 5 -------------------------------------------


def cubic_chain(p, q) -> SturmChain:
    """Closed-form chain of ``x^3 + p x + q``; generic algorithm when ``p = 0``."""
    p, q = as_fraction(p), as_fraction(q)
    P = Polynomial([q, p, 0, 1])
    if p == 0:
        return sturm_chain(P)
    seq = (
        P,
        Polynomial([p, 0, 3]),
        Polynomial([-q, -Fraction(2, 3) * p]),
        Polynomial([(-4 * p**3 - 27 * q**2) / (4 * p**2)]),
    )
    return SturmChain(_trim(seq), P)


def quartic_pivot(p, q, r) -> Fraction:
    return -4 * p * r + p**3 + 9 * q**2


def quartic_chain(p, q, r) -> SturmChain:
    """Closed-form chain of ``x^4 + 2p x^2 + 4q x + 4r``; generic on vanishing pivots."""
    p, q, r = map(as_fraction, (p, q, r))
    P = QuarticParams(p, q, r).assemble()
    piv = quartic_pivot(p, q, r)
    if p == 0 or piv == 0:
        return sturm_chain(P)
    seq = (
        P,
        Polynomial([4 * q, 4 * p, 0, 4]),
        Polynomial([-4 * r, -3 * q, -p]),
        Polynomial([q * (12 * r + p**2), piv]) * (Fraction(-4) / p**2),
        Polynomial([p**2 * discriminant(P) / (256 * piv**2)]),
    )
    return SturmChain(_trim(seq), P)


def quintic_pivot(p, q, r) -> Fraction:
    return 8 * p**3 - 48 * p * r + 81 * q**2


def quintic_a_s1(p, q, r, s) -> Fraction:
    return (
        -80 * p**4 * r - 2106 * q**2 * p * r + 1056 * p**2 * r**2 - 3456 * r**3
        + 240 * p**2 * q * s + 3240 * q * s * r + 40 * p**3 * q**2 + 729 * q**4 - 450 * p * s**2
    )


def quintic_b_s1(p, q, r, s) -> Fraction:
    return (
        -120 * p**4 * s - 1755 * s * p * q**2 + 1560 * p**2 * r * s - 4320 * r**2 * s
        + 40 * p**3 * q * r + 729 * q**3 * r - 864 * q * p * r**2 + 2025 * s**2 * q
    )


def quintic_chain(params: QuinticParams) -> SturmChain:
    """Closed-form chain of the parametrized quintic; generic on vanishing pivots."""
    p, q, r, s = params.p, params.q, params.r, params.s
    P = params.assemble()
    piv = quintic_pivot(p, q, r)
    a1 = quintic_a_s1(p, q, r, s)
    if p == 0 or piv == 0 or a1 == 0:
        return sturm_chain(P)
    b1 = quintic_b_s1(p, q, r, s)
    s2 = Polynomial([
        4 * r + 135 * q * s / (2 * p**2),
        (-15 * p * s + 4 * p**2 * q + 54 * q * r) / p**2,
        piv / (4 * p**2),
    ]) * -5
    s1 = Polynomial([b1, a1]) * (Fraction(-32) * p**2 / (3 * piv**2))
    # constant checked against the generic Euclidean chain
    s0 = Fraction(81, 640000) / p**2 * (piv / a1) ** 2 * discriminant(P)
    seq = (
        P,
        Polynomial([20 * r, 20 * q, 10 * p, 0, 5]),
        Polynomial([-20 * s, -16 * r, -6 * q, -Fraction(4, 3) * p]),
        s2,
        s1,
        Polynomial([s0]),
    )
    return SturmChain(_trim(seq), P)


def _trim(seq):
    # a zero last term means a multiple root: the chain stops one step earlier
    return seq[:-1] if seq[-1].is_zero() else seq


def cubic_sturm_conditions(p, q) -> ConditionReport:
    p, q = as_fraction(p), as_fraction(q)
    rep = ConditionReport()
    rep.add("p<0", _st(p < 0))
    rep.add("disc>0", _st(-4 * p**3 - 27 * q**2 > 0))
    rep.verdict = _all(rep)
    return rep


def quartic_sturm_conditions(p, q, r) -> ConditionReport:
    """``p<0``, ``-4pr+p^3+9q^2<0``, ``disc(P4)>0``."""
    p, q, r = map(as_fraction, (p, q, r))
    rep = ConditionReport()
    rep.add("p<0", _st(p < 0))
    piv = quartic_pivot(p, q, r)
    rep.add("-4pr+p^3+9q^2<0", _st(piv < 0))
    if piv == 0:
        rep.details["degenerate_pivot"] = "-4pr+p^3+9q^2"
    rep.add("disc>0", _st(discriminant(QuarticParams(p, q, r).assemble()) > 0))
    rep.verdict = _all(rep)
    return rep


def quintic_sturm_conditions(params: QuinticParams) -> ConditionReport:
    """The four quintic conditions ``p<0``, ``8p^3+81q^2-48pr<0``, ``a_S1<0``, ``disc>0``.

    A vanishing pivot is recorded in ``details['degenerate_pivots']`` and makes
    its strict condition fail; the closed-form chain is invalid there, so the
    verdict then agrees with the generic chain (which is shorter than full).
    """
    p, q, r, s = params.p, params.q, params.r, params.s
    rep = ConditionReport()
    piv = quintic_pivot(p, q, r)
    a1 = quintic_a_s1(p, q, r, s)
    disc = discriminant(params.assemble())
    rep.details.update(a_S1=a1, b_S1=quintic_b_s1(p, q, r, s), pivot=piv, disc=disc)
    degenerate = [name for name, v in (("p", p), ("8p^3-48pr+81q^2", piv), ("a_S1", a1)) if v == 0]
    if degenerate:
        rep.details["degenerate_pivots"] = degenerate
    rep.add("p<0", _st(p < 0))
    rep.add("8p^3+81q^2-48pr<0", _st(piv < 0))
    rep.add("a_S1<0", _st(a1 < 0))
    rep.add("disc>0", _st(disc > 0))
    rep.verdict = _all(rep)
    return rep


def _st(b: bool) -> Status:
    return Status.YES if b else Status.NO


def _all(rep: ConditionReport) -> Status:
    return Status.YES if all(v is Status.YES for v in rep.conditions.values()) else Status.NO
