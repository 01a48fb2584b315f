"""Certified real-root isolation and refinement.

Roots are represented by :class:`RealRoot`: a squarefree defining
polynomial plus an isolating interval with dyadic endpoints where the
polynomial takes opposite nonzero signs (or a single exact rational point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .enclosure import DEFAULT_MAX_REFINE, Enclosure, interval_eval
from .exceptions import NotIsolating, NotThreeRealRoots, Unresolved
from .poly import Polynomial, as_fraction, format_rational, gcd, squarefree_decomposition, squarefree_part
from .sturm import RootCounter

# sign decisions try plain refinement this many rounds before the exact zero test
_ZERO_TEST_AFTER = 4


@dataclass(frozen=True)
class RealRoot:
    """The unique root of ``poly`` in ``(lo, hi)``, or ``lo`` itself when ``lo == hi``."""

    poly: Polynomial
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @classmethod
    def exact(cls, x, poly: Optional[Polynomial] = None, multiplicity: int = 1) -> "RealRoot":
        x = as_fraction(x)
        if poly is None:
            poly = Polynomial([-x, 1])
        return cls(poly, x, x, multiplicity)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refined(self) -> "RealRoot":
        """One bisection step by exact sign evaluation."""
        if self.is_exact:
            return self
        m = (self.lo + self.hi) / 2
        sm = self.poly.sign_at(m)
        if sm == 0:
            return RealRoot(self.poly, m, m, self.multiplicity)
        if sm == self.poly.sign_at(self.lo):
            return RealRoot(self.poly, m, self.hi, self.multiplicity)
        return RealRoot(self.poly, self.lo, m, self.multiplicity)

    def refine_to(self, tol) -> "RealRoot":
        tol = as_fraction(tol)
        r = self
        while not r.is_exact and r.width > tol:
            r = r.refined()
        return r

    def rationalized(self) -> "RealRoot":
        """The exact root when it is rational, else ``self``.

        A rational root of an integer polynomial has the form ``m/L`` with
        ``L`` the leading coefficient, so once the interval is narrower than
        ``1/L`` there is at most one candidate to test.
        """
        if self.is_exact:
            return self
        L = abs(self.poly.integer_coeffs()[-1])
        r = self.refine_to(Fraction(1, 2 * L))
        if r.is_exact:
            return r
        m = math.floor(r.lo * L) + 1
        if Fraction(m, L) < r.hi and self.poly.sign_at(Fraction(m, L)) == 0:
            return RealRoot.exact(Fraction(m, L), multiplicity=self.multiplicity)
        return r

    def enclosure(self) -> Enclosure:
        if self.is_exact:
            return Enclosure(self.lo, self.lo)
        return Enclosure(self.lo, self.hi, lambda: self.refined().enclosure())

    def value_of(self, Q: Polynomial) -> Enclosure:
        """Refinable enclosure of ``Q(root)``."""
        lo, hi = interval_eval(Q, self.lo, self.hi)
        if lo == hi:
            return Enclosure(lo, hi)
        return Enclosure(lo, hi, lambda: self.refined().value_of(Q))

    def sign_of(self, Q: Polynomial, max_rounds: int = DEFAULT_MAX_REFINE, common: Optional[Polynomial] = None):
        """Exact sign of ``Q`` at this root; returns ``(sign, refined_root)``.

        Zero is certified algebraically: ``Q`` vanishes here iff the root is
        also a root of ``gcd(poly, Q)``.  ``common`` may supply that gcd.
        """
        if Q.is_zero():
            return 0, self
        r = self
        tested = False
        for i in range(max_rounds + 1):
            if r.is_exact:
                return Q.sign_at(r.lo), r
            lo, hi = interval_eval(Q, r.lo, r.hi)
            if lo > 0:
                return 1, r
            if hi < 0:
                return -1, r
            if not tested and i >= _ZERO_TEST_AFTER:
                tested = True
                g = common if common is not None else gcd(r.poly, Q)
                if g.degree >= 1 and r.is_root_of(g):
                    return 0, r
            r = r.refined()
        raise Unresolved(f"sign undecided after {max_rounds} refinements")

    def is_root_of(self, g: Polynomial) -> bool:
        """Whether this root is a root of ``g``, assuming ``g`` divides a squarefree ``poly``."""
        if self.is_exact:
            return g.sign_at(self.lo) == 0
        return g.sign_at(self.lo) * g.sign_at(self.hi) < 0

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __str__(self):
        if self.is_exact:
            return format_rational(self.lo)
        return f"({format_rational(self.lo)}, {format_rational(self.hi)})"


@dataclass(frozen=True)
class RootSet:
    """Sorted, pairwise disjoint isolating intervals for all distinct real roots."""

    roots: tuple[RealRoot, ...]
    source: Optional[Polynomial] = None

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    @property
    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        return [(r.lo, r.hi) for r in self.roots if not r.is_exact]

    @property
    def exact_roots(self) -> list[Fraction]:
        return [r.lo for r in self.roots if r.is_exact]

    @property
    def multiplicities(self) -> list[int]:
        return [r.multiplicity for r in self.roots]

    def refined_to(self, tol) -> "RootSet":
        return RootSet(tuple(r.refine_to(tol) for r in self.roots), self.source)

    def profile(self) -> dict:
        """``{root (Fraction or interval tuple): multiplicity}``."""
        return {(r.lo if r.is_exact else (r.lo, r.hi)): r.multiplicity for r in self.roots}


def cauchy_bound(P: Polynomial) -> Fraction:
    """Power of two strictly above every root modulus."""
    lc = abs(P.lc)
    m = max((abs(c) / lc for c in P.coeffs[:-1]), default=Fraction(0))
    bound = 1 + m
    k = max(0, math.ceil(math.log2(bound)) + 1) if bound > 1 else 1
    B = Fraction(2) ** k
    while B <= bound:
        B *= 2
    return B


def _isolate_squarefree(f: Polynomial, multiplicity: int) -> list[RealRoot]:
    if f.degree == 1:
        return [RealRoot.exact(-f[0] / f[1], f, multiplicity)]
    counter = RootCounter(f)
    B = cauchy_bound(f)
    out = []
    stack = [(-B, B, counter.count(-B, B))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            if f.sign_at(b) == 0:
                out.append(RealRoot(f, b, b, multiplicity))
                continue
            # the root is in (a, b); push a off a neighbouring exact root
            while f.sign_at(a) == 0:
                m = (a + b) / 2
                if f.sign_at(m) == 0:
                    a = b = m
                    break
                if counter.count(m, b) == 1:
                    a = m
                else:
                    b = m
            out.append(RealRoot(f, a, b, multiplicity))
            continue
        m = (a + b) / 2
        left = counter.count(a, m)
        stack.append((m, b, c - left))
        stack.append((a, m, left))
    return out


def _separate(roots: list[RealRoot]) -> list[RealRoot]:
    """Sort and refine until intervals of distinct roots are pairwise disjoint."""
    roots = list(roots)
    while True:
        roots.sort(key=lambda r: (r.lo, r.hi))
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            # open intervals may share an endpoint
            if a.hi <= b.lo:
                continue
            if a.width >= b.width:
                roots[i] = a.refined()
            else:
                roots[i + 1] = b.refined()
            break
        else:
            return roots


def isolate_real_roots(P: Polynomial) -> RootSet:
    """Isolate every distinct real root, with multiplicities from squarefree decomposition."""
    if P.degree < 1:
        return RootSet((), P)
    found = []
    for f, k in squarefree_decomposition(P):
        found.extend(_isolate_squarefree(f, k))
    return RootSet(tuple(_separate(found)), P)


def refine_root(P: Polynomial, iv, tol) -> tuple[Fraction, Fraction]:
    """Shrink ``iv = (lo, hi)`` to width ``<= tol`` keeping the same single root."""
    tol = as_fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(iv, RealRoot):
        lo, hi = iv.lo, iv.hi
    else:
        lo, hi = map(as_fraction, iv)
    f = squarefree_part(P)
    if lo == hi:
        if f.sign_at(lo) != 0:
            raise NotIsolating(f"{format_rational(lo)} is not a root")
        return lo, hi
    if lo > hi:
        raise NotIsolating("empty interval")
    at_lo = f.sign_at(lo) == 0
    at_hi = f.sign_at(hi) == 0
    inside = RootCounter(f).count(lo, hi) - at_hi
    total = inside + at_lo + at_hi
    if total != 1:
        raise NotIsolating(f"interval holds {total} distinct roots, expected 1")
    if at_lo:
        return lo, lo
    if at_hi:
        return hi, hi
    r = RealRoot(f, lo, hi).refine_to(tol)
    return r.lo, r.hi


def compare_roots(a: RealRoot, b: RealRoot, max_rounds: int = DEFAULT_MAX_REFINE) -> int:
    """Exact sign of ``a - b`` for two real algebraic numbers."""
    g = None
    for i in range(max_rounds + 1):
        if a.hi < b.lo or (a.hi == b.lo and not (a.is_exact and b.is_exact)):
            return -1
        if b.hi < a.lo or (b.hi == a.lo and not (a.is_exact and b.is_exact)):
            return 1
        if a.is_exact and b.is_exact:
            return 0
        if a.is_exact and not b.is_exact:
            return 0 if b.poly.sign_at(a.lo) == 0 else _step(a, b, max_rounds)
        if b.is_exact and not a.is_exact:
            return 0 if a.poly.sign_at(b.lo) == 0 else -_step(b, a, max_rounds)
        if i == _ZERO_TEST_AFTER:
            g = gcd(a.poly, b.poly)
            if g.degree >= 1 and a.is_root_of(g) and b.is_root_of(g):
                lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
                # g is squarefree; one root in the hull means a == b
                inside = RootCounter(g).count(lo, hi) - (g.sign_at(hi) == 0)
                if inside == 1:
                    return 0
        if a.width >= b.width:
            a = a.refined()
        else:
            b = b.refined()
    raise Unresolved("roots could not be ordered")


def _step(x: RealRoot, r: RealRoot, max_rounds: int) -> int:
    """Sign of exact ``x`` minus ``r`` when ``x`` is not a root of ``r.poly``."""
    for _ in range(max_rounds):
        if x.lo <= r.lo:
            return -1
        if x.lo >= r.hi:
            return 1
        r = r.refined()
    raise Unresolved("roots could not be ordered")


# -- trigonometric cubic roots ---------------------------------------------------


def _mpf_to_fraction(v) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(v)._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)


def cubic_roots_ordered(p, q, bits: int = 80) -> tuple[RealRoot, RealRoot, RealRoot]:
    """Ordered roots of ``x^3 + p x + q`` from Viete's trigonometric formula.

    The float-free guarantee comes from certifying each candidate enclosure
    with exact sign changes; precision is doubled until that succeeds.
    """
    p, q = as_fraction(p), as_fraction(q)
    if not (p < 0 and -4 * p**3 - 27 * q**2 > 0):
        raise NotThreeRealRoots("need p < 0 and -4p^3 - 27q^2 > 0")
    P = Polynomial([q, p, 0, 1])
    while True:
        with mpmath.workprec(bits + 20):
            mp, mq = mpmath.mpf(p.numerator) / p.denominator, mpmath.mpf(q.numerator) / q.denominator
            m = 2 * mpmath.sqrt(-mp / 3)
            phi = mpmath.acos(3 * mq / (mp * m))
            cands = sorted(m * mpmath.cos((phi - 2 * mpmath.pi * k) / 3) for k in range(3))
            mags = [_mpf_to_fraction(c) for c in cands]
        scale = 1 << bits
        slack = 2 + int(abs(mags[-1]) + abs(mags[0]))
        roots = []
        for c in mags:
            n = round(c * scale)
            lo, hi = Fraction(n - slack, scale), Fraction(n + slack, scale)
            slo, shi = P.sign_at(lo), P.sign_at(hi)
            if slo == 0:
                roots.append(RealRoot(P, lo, lo))
            elif shi == 0:
                roots.append(RealRoot(P, hi, hi))
            elif slo * shi < 0:
                roots.append(RealRoot(P, lo, hi))
            else:
                break
        if len(roots) == 3 and roots[0].hi < roots[1].lo and roots[1].hi < roots[2].lo:
            return tuple(roots)
        bits *= 2
        if bits > 1 << 16:
            raise Unresolved("trigonometric enclosure failed to certify")


def roots_of_squarefree(P: Polynomial) -> RootSet:
    """Isolation for a polynomial already known to be squarefree."""
    return RootSet(tuple(_separate(_isolate_squarefree(P, 1))), P)


# -- exact comparison of polynomial values at algebraic points -----------------


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Polynomial:
    """Lagrange interpolation through ``(x, y)`` pairs with distinct ``x``."""
    out = Polynomial()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        term = Polynomial.constant(yi)
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * Polynomial([-xj, 1]) / (xi - xj)
        out = out + term
    return out


def value_polynomial(f: Polynomial, Q: Polynomial) -> Polynomial:
    """Monic ``V(y) = prod (y - Q(a))`` over the complex roots ``a`` of ``f``.

    Built from resultants ``Res(f, y - Q)`` at ``deg f + 1`` sample points.
    """
    from .poly import resultant

    n = f.degree
    if Q.degree < 1:
        return Polynomial([-Q[0], 1]) ** n
    scale = f.lc ** Q.degree
    pts = [(Fraction(j), resultant(f, Polynomial.constant(j) - Q) / scale) for j in range(n + 1)]
    return interpolate(pts).monic()


def value_as_root(Q: Polynomial, a: RealRoot, max_rounds: int = DEFAULT_MAX_REFINE) -> RealRoot:
    """``Q(a)`` as an isolated root of its value polynomial."""
    if a.is_exact:
        return RealRoot.exact(Q(a.lo))
    cands = list(isolate_real_roots(value_polynomial(a.poly, Q)))
    for rho in [c for c in cands if c.is_exact]:
        if a.sign_of(Q - rho.lo, max_rounds)[0] == 0:
            return RealRoot(squarefree_part(rho.poly), rho.lo, rho.lo)
    cands = [c for c in cands if not c.is_exact]
    enc = a.value_of(Q)
    for _ in range(max_rounds):
        hits = [c for c in cands if not (c.hi < enc.lo or enc.hi < c.lo)]
        if len(hits) == 1:
            return hits[0]
        cands = [c.refined() if c in hits else c for c in cands]
        enc = enc.refined()
    raise Unresolved("could not locate value among algebraic candidates")


def compare_values(Q: Polynomial, a: RealRoot, b: RealRoot, max_rounds: int = DEFAULT_MAX_REFINE) -> int:
    """Exact sign of ``Q(a) - Q(b)``.

    Enclosures settle the generic case; ties are decided by locating both
    values among the roots of their value polynomials.
    """
    from .enclosure import compare

    try:
        return compare(a.value_of(Q), b.value_of(Q), min(max_rounds, 48))
    except Unresolved:
        pass
    return compare_roots(value_as_root(Q, a, max_rounds), value_as_root(Q, b, max_rounds), max_rounds)
