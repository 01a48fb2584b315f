"""Parametrized quartic/quintic families and condition reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .enclosure import Status
from .exceptions import NotDepressed
from .poly import Polynomial, as_fraction


@dataclass(frozen=True)
class QuarticParams:
    """``x^4 + 2p x^2 + 4q x + 4r``."""

    p: Fraction
    q: Fraction
    r: Fraction

    def __post_init__(self):
        for name in ("p", "q", "r"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def assemble(self) -> Polynomial:
        return Polynomial([4 * self.r, 4 * self.q, 2 * self.p, 0, 1])

    @classmethod
    def disassemble(cls, P: Polynomial) -> "QuarticParams":
        if P.degree != 4 or not P.is_depressed():
            raise NotDepressed("expected a monic depressed quartic")
        return cls(P[2] / 2, P[1] / 4, P[0] / 4)

    def cubic(self) -> Polynomial:
        """``P4'/4 = x^3 + p x + q``."""
        return Polynomial([self.q, self.p, 0, 1])


@dataclass(frozen=True)
class QuinticParams:
    """``x^5 + (10p/3) x^3 + 10q x^2 + 20r x + 20s``."""

    p: Fraction
    q: Fraction
    r: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ("p", "q", "r", "s"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def assemble(self) -> Polynomial:
        return Polynomial([20 * self.s, 20 * self.r, 10 * self.q, Fraction(10, 3) * self.p, 0, 1])

    @classmethod
    def disassemble(cls, P: Polynomial) -> "QuinticParams":
        if P.degree != 5 or not P.is_depressed():
            raise NotDepressed("expected a monic depressed quintic")
        return cls(P[3] * Fraction(3, 10), P[2] / 10, P[1] / 20, P[0] / 20)

    def quartic(self) -> QuarticParams:
        """``P5'/5 = x^4 + 2p x^2 + 4q x + 4r``."""
        return QuarticParams(self.p, self.q, self.r)


@dataclass
class ConditionReport:
    """Per-condition outcomes plus an overall verdict."""

    conditions: dict[str, Status] = field(default_factory=dict)
    verdict: Status = Status.YES
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def add(self, name: str, status: Status) -> Status:
        self.conditions[name] = status
        return status

    @property
    def holds(self) -> bool:
        return self.verdict is Status.YES
