"""Random real-rooted polynomials built by integrating level by level.

Starting from ``P_2 = x^2 + c`` with ``c < 0``, each step sets
``P_{i+1} = (i+1) * integral(P_i) + a0`` with ``a0`` drawn from the open
interval that keeps all roots real and distinct.  The result is monic,
depressed and certified by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .enclosure import DEFAULT_MAX_REFINE, Interval, Status
from .exceptions import DegreeTooSmall, Unresolved
from .interlace import a0_interval, decompose
from .poly import Polynomial, as_fraction, derivative
from .roots import RootSet, roots_of_squarefree

DEFAULT_GATE = 10
DEFAULT_MARGIN = Fraction(1, 10)
# after this many empty intervals at one level, re-draw the level below
_RETRIES = 8


@dataclass
class BuildState:
    """``poly`` is ``P_level``; ``history[k]`` is ``(constant, interval)`` for level ``k + 2``."""

    level: int
    poly: Polynomial
    history: list[tuple[Fraction, Interval]] = field(default_factory=list)
    roots: RootSet | None = None

    @classmethod
    def start(cls, c) -> "BuildState":
        """``P_2 = x^2 + c``; needs ``c < 0``."""
        c = as_fraction(c)
        if c >= 0:
            raise ValueError("the degree-2 constant must be negative")
        gate = Interval.of(float("-inf"), 0)
        return cls(2, Polynomial([c, 0, 1]), [(c, gate)])

    def derivative_roots(self) -> RootSet:
        if self.roots is None:
            self.roots = roots_of_squarefree(self.poly)
        return self.roots

    def lift(self) -> Polynomial:
        """``(i+1) * integral(P_i)`` with zero constant term."""
        return self.poly.integral() * (self.level + 1)

    def push(self, a0, interval: Interval) -> "BuildState":
        P = self.lift() + as_fraction(a0)
        return BuildState(self.level + 1, P, self.history + [(as_fraction(a0), interval)])

    def check(self) -> bool:
        """Recorded derivative relations hold between consecutive levels."""
        P = self.poly
        for lvl in range(self.level, 1, -1):
            if P.degree != lvl or P[0] != self.history[lvl - 2][0]:
                return False
            P = derivative(P) / lvl
        return P == Polynomial.x()


def next_interval(state: BuildState) -> Interval:
    """Admissible open interval for the constant term of ``P_{level+1}``."""
    R0 = decompose(state.lift()).R0
    return a0_interval(R0, state.derivative_roots(), state.level + 1)


def pick_inside(interval: Interval, margin, rng: random.Random, max_refine: int = DEFAULT_MAX_REFINE) -> Fraction:
    """A short rational in the middle ``1 - 2*margin`` of a nonempty bounded interval.

    Endpoint enclosures are refined until narrower than ``margin`` times the
    certified gap, so the choice is strictly interior.
    """
    margin = as_fraction(margin)
    if not (0 < margin <= Fraction(1, 2)):
        raise ValueError("margin must lie in (0, 1/2]")
    L, H = interval.interior(margin, max_refine)
    w = H - L
    lo, hi = L + margin * w, H - margin * w
    t = lo + (hi - lo) * Fraction(rng.getrandbits(32), 1 << 32)
    tol = (hi - lo) / 1024
    k = 1
    while True:
        c = t.limit_denominator(1 << k)
        if lo <= c <= hi and abs(c - t) <= tol:
            return c
        k += 1


def sample_gate(rng: random.Random, gate=DEFAULT_GATE) -> Fraction:
    """``a_{n-2}`` uniform on a grid of ``[-gate, 0)``."""
    return -as_fraction(gate) * Fraction(rng.randint(1, 1 << 10), 1 << 10)


def sample_state(n: int, seed: int, margin=DEFAULT_MARGIN, gate=DEFAULT_GATE, max_refine: int = DEFAULT_MAX_REFINE) -> BuildState:
    """The full build trail behind :func:`sample_real_rooted`."""
    if n < 2:
        raise DegreeTooSmall("need n >= 2")
    rng = random.Random(seed)
    a = sample_gate(rng, gate)
    stack = [BuildState.start(2 * a / (n * (n - 1)))]
    fails = [0] * (n + 1)
    while stack[-1].level < n:
        st = stack[-1]
        iv = next_interval(st)
        empty = iv.is_empty(max_refine)
        if empty is Status.NO:
            try:
                stack.append(st.push(pick_inside(iv, margin, rng, max_refine), iv))
                continue
            except Unresolved:
                pass
        # no room at this level: re-draw the constant below (or the gate)
        fails[st.level] += 1
        stack.pop()
        if fails[st.level] > _RETRIES or not stack:
            fails[st.level] = 0
            stack = [BuildState.start(2 * sample_gate(rng, gate) / (n * (n - 1)))]
            continue
        below = stack[-1]
        prev = st.history[-1][1]
        stack.append(below.push(pick_inside(prev, margin, rng, max_refine), prev))
    return stack[-1]


def sample_real_rooted(n: int, seed: int, margin=DEFAULT_MARGIN, gate=DEFAULT_GATE, max_refine: int = DEFAULT_MAX_REFINE) -> Polynomial:
    """Deterministic (in ``seed``) monic depressed degree-``n`` polynomial with ``n`` distinct real roots."""
    return sample_state(n, seed, margin, gate, max_refine).poly
