"""Harness relating the last Sturm term to the discriminant.

For a monic depressed ``P`` with a full Sturm chain (one term per degree)
the constant last term ``S0`` is compared with ``disc(P)``: the expectation
under test is ``S0 = K * disc`` with ``K > 0``.  Nothing here assumes it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, TextIO

from .enclosure import DEFAULT_MAX_REFINE, Enclosure, interval_mul
from .exceptions import DegenerateInput, DegreeTooSmall, NotDepressed
from .poly import Polynomial, derivative, discriminant, format_poly, format_rational, parse_poly, parse_rational
from .roots import roots_of_squarefree
from .sturm import all_real_rooted_sturm, sturm_chain


class RecordStatus(enum.Enum):
    OK = "ok"
    DEGENERATE = "degenerate"
    PIVOT_DEGENERATE = "pivot-degenerate"

    def __str__(self):
        return self.value


@dataclass
class ConjectureRecord:
    poly: Polynomial
    status: RecordStatus
    disc: Fraction
    S0: Optional[Fraction] = None
    K: Optional[Fraction] = None
    product: Optional[Enclosure] = None
    product_holds: Optional[bool] = None

    @property
    def n(self) -> int:
        return self.poly.degree

    @property
    def sign_agrees(self) -> Optional[bool]:
        if self.S0 is None:
            return None
        return _sgn(self.S0) == _sgn(self.disc)

    @property
    def counterexample(self) -> bool:
        """Nondegenerate with ``K <= 0``."""
        return self.status is RecordStatus.OK and not (self.K is not None and self.K > 0)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def product_enclosure(P: Polynomial, max_refine: int = DEFAULT_MAX_REFINE) -> Optional[Enclosure]:
    """Enclosure of ``(-1)^{n(n-1)/2} n^n prod P(a)`` over the roots of ``P'``.

    Equals ``disc(P)`` for monic ``P``.  Only available when ``P'`` has
    ``n - 1`` distinct real roots.
    """
    n = P.degree
    dP = derivative(P)
    if not all_real_rooted_sturm(dP):
        return None
    roots = roots_of_squarefree(dP)
    const = Fraction(n) ** n * (-1 if (n * (n - 1) // 2) % 2 else 1)

    def build(rs):
        lo = hi = const
        for r in rs:
            e = r.value_of(P)
            lo, hi = interval_mul(lo, hi, e.lo, e.hi)
        if lo == hi:
            return Enclosure(lo, hi)
        return Enclosure(lo, hi, lambda: build([r.refined() for r in rs]))

    return build(list(roots))


def conjecture_check(P: Polynomial, strict: bool = False, max_refine: int = DEFAULT_MAX_REFINE) -> ConjectureRecord:
    """``S0``, ``disc`` and ``K = S0 / disc`` for a monic depressed ``P`` of degree >= 3.

    A multiple root gives status DEGENERATE (or :class:`DegenerateInput` when
    ``strict``); a chain with a missing degree gives PIVOT_DEGENERATE, still
    reporting ``S0`` but kept out of the ``K`` statistics.
    """
    if P.degree < 3:
        raise DegreeTooSmall("needs degree >= 3")
    if not P.is_depressed():
        raise NotDepressed("expected a monic depressed polynomial")
    disc = discriminant(P)
    if disc == 0:
        if strict:
            raise DegenerateInput("polynomial has a multiple root")
        return ConjectureRecord(P, RecordStatus.DEGENERATE, disc)
    chain = sturm_chain(P)
    S0 = chain.last[0]
    status = RecordStatus.OK if chain.is_full() else RecordStatus.PIVOT_DEGENERATE
    rec = ConjectureRecord(P, status, disc, S0, S0 / disc)
    prod = product_enclosure(P, max_refine)
    if prod is not None:
        # refine until the enclosure is tight relative to |disc|
        prod = prod.refine_to(abs(disc) / (1 << 20), max_refine)
        rec.product = prod
        rec.product_holds = prod.lo <= disc <= prod.hi
    return rec


def cubic_K(p) -> Fraction:
    return 1 / (4 * Fraction(p) ** 2)


def quartic_K(p, q, r) -> Fraction:
    p, q, r = map(Fraction, (p, q, r))
    return p**2 / (256 * (p**3 + 9 * q**2 - 4 * p * r) ** 2)


def quintic_K(p, q, r, s) -> Fraction:
    """``(81/640000) p^{-2} (pivot / a_S1)^2`` in the quintic parametrization."""
    from .sturm import quintic_a_s1, quintic_pivot

    p, q, r, s = map(Fraction, (p, q, r, s))
    return Fraction(81, 640000) / p**2 * (quintic_pivot(p, q, r) / quintic_a_s1(p, q, r, s)) ** 2


@dataclass
class BatchSummary:
    total: int = 0
    checked: int = 0
    agreements: int = 0
    disagreements: int = 0
    zero_S0: int = 0
    degenerate: int = 0
    pivot_degenerate: int = 0
    product_checked: int = 0
    product_failures: int = 0
    by_degree: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k not in ("counterexamples", "by_degree")}
        out["by_degree"] = {str(k): v for k, v in sorted(self.by_degree.items())}
        out["counterexamples"] = len(self.counterexamples)
        return out


def batch_report(polys: Iterable[Polynomial], max_refine: int = DEFAULT_MAX_REFINE) -> BatchSummary:
    out = BatchSummary()
    for P in polys:
        out.total += 1
        out.by_degree[P.degree] = out.by_degree.get(P.degree, 0) + 1
        rec = conjecture_check(P, max_refine=max_refine)
        if rec.product_holds is not None:
            out.product_checked += 1
            out.product_failures += not rec.product_holds
        if rec.status is RecordStatus.DEGENERATE:
            out.degenerate += 1
            continue
        if rec.status is RecordStatus.PIVOT_DEGENERATE:
            out.pivot_degenerate += 1
            continue
        out.checked += 1
        if rec.S0 == 0:
            out.zero_S0 += 1
        if rec.K is not None and rec.K > 0:
            out.agreements += 1
        else:
            out.disagreements += 1
            out.counterexamples.append(rec)
    return out


def write_counterexamples(records: Iterable[ConjectureRecord], stream: TextIO) -> int:
    """Polynomial line plus ``# S0 <rational> disc <rational>`` sidecar, per record."""
    k = 0
    for rec in records:
        stream.write(format_poly(rec.poly) + "\n")
        stream.write(f"# S0 {format_rational(rec.S0)} disc {format_rational(rec.disc)}\n")
        k += 1
    return k


def read_counterexamples(lines: Iterable[str]) -> list[tuple[Polynomial, Fraction, Fraction]]:
    out = []
    pending = None
    for no, line in enumerate(lines, 1):
        text = line.strip()
        if text.startswith("# S0"):
            parts = text[1:].split()
            if pending is None or len(parts) != 4 or parts[2] != "disc":
                raise ValueError(f"line {no}: unexpected sidecar")
            out.append((pending, parse_rational(parts[1]), parse_rational(parts[3])))
            pending = None
        elif text and not text.startswith("#"):
            pending = parse_poly(text, no)
    return out
