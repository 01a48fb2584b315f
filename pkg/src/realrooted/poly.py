"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored low-to-high (index ``i`` holds the coefficient of
``x**i``) as :class:`fractions.Fraction`, with trailing zeros stripped so that
equality is structural.  Everything here is exact; no floats are involved.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exceptions import DegreeTooSmall, DivisionByZeroPolynomial, ParseError

NEG_INF = float("-inf")

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(value)


class Polynomial:
    """Immutable polynomial over Q.

    >>> p = Polynomial([2, -3, 0, 1])
    >>> p.degree, p(1)
    (3, Fraction(0, 1))
    """

    __slots__ = ("coeffs", "_ints")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._ints = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, c, k: int) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, multiplicities: Iterable[int] | None = None) -> "Polynomial":
        roots = list(roots)
        mults = [1] * len(roots) if multiplicities is None else list(multiplicities)
        out = cls([1])
        for r, m in zip(roots, mults):
            out = out * cls([-as_fraction(r), 1]) ** m
        return out

    # -- basic properties -------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_depressed(self) -> bool:
        """Monic with a vanishing x^(n-1) coefficient."""
        n = self.degree
        return self.is_monic() and (n < 1 or self.coeffs[n - 1] == 0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _ZERO

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self):
        return pretty(self)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_fraction(c)
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return Polynomial(a / c for a in self.coeffs)

    def __pow__(self, k: int):
        out = Polynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        return euclid_div(self, other)

    def __floordiv__(self, other):
        return euclid_div(self, other)[0]

    def __mod__(self, other):
        return euclid_div(self, other)[1]

    def __call__(self, x):
        return evaluate(self, x)

    # -- calculus / transforms ---------------------------------------------

    def derivative(self) -> "Polynomial":
        return derivative(self)

    def integral(self) -> "Polynomial":
        """Antiderivative with zero constant term."""
        return Polynomial([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self / self.lc

    def shift(self, t) -> "Polynomial":
        """Return ``P(x + t)``."""
        t = as_fraction(t)
        out = Polynomial()
        lin = Polynomial([t, 1])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def compose(self, inner: "Polynomial") -> "Polynomial":
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    # -- fast sign evaluation ---------------------------------------------

    def integer_coeffs(self) -> tuple[int, ...]:
        """Primitive integer multiple of the coefficients (positive scale)."""
        if self._ints is None:
            if not self.coeffs:
                self._ints = ()
            else:
                den = 1
                for c in self.coeffs:
                    den = den * c.denominator // math.gcd(den, c.denominator)
                ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
                g = 0
                for v in ints:
                    g = math.gcd(g, v)
                self._ints = tuple(v // g for v in ints)
        return self._ints

    def sign_at(self, x) -> int:
        """Exact sign of ``P(x)``; ``x`` may be a rational or ``±inf``."""
        if not self.coeffs:
            return 0
        if isinstance(x, float):
            if x == math.inf:
                return _sgn(self.lc)
            if x == -math.inf:
                s = _sgn(self.lc)
                return s if self.degree % 2 == 0 else -s
            raise TypeError("only ±inf floats are accepted")
        x = as_fraction(x)
        a, b = x.numerator, x.denominator
        ints = self.integer_coeffs()
        acc = 0
        bpow = 1
        # homogenised Horner: sum c_i a^i b^(n-i), b > 0 keeps the sign
        for c in reversed(ints):
            acc = acc * a + c * bpow
            bpow *= b
        return (acc > 0) - (acc < 0)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


# -- free-function API --------------------------------------------------------


def evaluate(P: Polynomial, x) -> Fraction:
    """Exact value of ``P`` at ``x`` by Horner's rule."""
    x = as_fraction(x)
    acc = _ZERO
    for c in reversed(P.coeffs):
        acc = acc * x + c
    return acc


def derivative(P: Polynomial) -> Polynomial:
    return Polynomial(i * c for i, c in enumerate(P.coeffs) if i)


def euclid_div(A: Polynomial, B: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Return ``(Q, R)`` with ``A = Q*B + R`` and ``deg R < deg B``."""
    if B.is_zero():
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    rem = list(A.coeffs)
    db = B.degree
    if len(rem) - 1 < db:
        return Polynomial(), A
    inv = 1 / B.lc
    quo = [_ZERO] * (len(rem) - db)
    bcs = B.coeffs
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv
        quo[k] = c
        if c:
            for j in range(db + 1):
                rem[k + j] -= c * bcs[j]
    return Polynomial(quo), Polynomial(rem[:db])


@dataclass(frozen=True)
class DepressedForm:
    """Monic depressed polynomial plus the shift that produced it.

    ``poly(x + shift)`` equals the monic normalisation of the original.
    """

    poly: Polynomial
    shift: Fraction
    scale: Fraction = _ONE

    def restore(self) -> Polynomial:
        """Rebuild the original (non-monic) polynomial exactly."""
        return self.poly.shift(self.shift) * self.scale


def depress(P: Polynomial) -> DepressedForm:
    n = P.degree
    if n < 2:
        raise DegreeTooSmall(f"depress needs degree >= 2, got {n}")
    scale = P.lc
    M = P.monic()
    t = M[n - 1] / n
    # original x = y - t, so y = x + t
    return DepressedForm(M.shift(-t), t, scale)


def gcd(A: Polynomial, B: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    if A.is_zero() and B.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not B.is_zero():
        A, B = B, euclid_div(A, B)[1]
    return A.monic()


def resultant(A: Polynomial, B: Polynomial) -> Fraction:
    """Resultant via the Euclidean remainder sequence."""
    if A.is_zero() or B.is_zero():
        return _ZERO
    m, n = A.degree, B.degree
    if n == 0:
        return B.lc ** m
    if m == 0:
        return A.lc ** n
    R = euclid_div(A, B)[1]
    if R.is_zero():
        return _ZERO
    sign = -1 if (m * n) % 2 else 1
    return sign * B.lc ** (m - R.degree) * resultant(B, R)


def sylvester_matrix(A: Polynomial, B: Polynomial) -> list[list[Fraction]]:
    m, n = A.degree, B.degree
    size = m + n
    rows = []
    a_hi = list(reversed(A.coeffs))
    b_hi = list(reversed(B.coeffs))
    for i in range(n):
        rows.append([_ZERO] * i + a_hi + [_ZERO] * (size - i - m - 1))
    for i in range(m):
        rows.append([_ZERO] * i + b_hi + [_ZERO] * (size - i - n - 1))
    return rows


def determinant(M: Sequence[Sequence[Fraction]]) -> Fraction:
    """Gaussian elimination over Q."""
    a = [list(map(as_fraction, row)) for row in M]
    n = len(a)
    det = _ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return _ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                row, prow = a[r], a[col]
                for k in range(col, n):
                    row[k] -= f * prow[k]
    return det


def sylvester_resultant(A: Polynomial, B: Polynomial) -> Fraction:
    """Resultant as the Sylvester determinant (independent of :func:`resultant`)."""
    if A.is_zero() or B.is_zero():
        return _ZERO
    if A.degree == 0 and B.degree == 0:
        return _ONE
    return determinant(sylvester_matrix(A, B))


def discriminant(P: Polynomial, method: str = "euclid") -> Fraction:
    """``(-1)^(n(n-1)/2) * Res(P, P') / lc(P)``."""
    n = P.degree
    if n < 2:
        raise DegreeTooSmall(f"discriminant needs degree >= 2, got {n}")
    res = resultant if method == "euclid" else sylvester_resultant
    r = res(P, derivative(P))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / P.lc


def squarefree_part(P: Polynomial) -> Polynomial:
    if P.degree < 1:
        return P.monic()
    return euclid_div(P.monic(), gcd(P, derivative(P)))[0]


def squarefree_decomposition(P: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime ``(f_k, k)`` with
    ``P = lc * prod f_k**k``.  Constant factors are omitted."""
    if P.degree < 1:
        return []
    out = []
    f = P.monic()
    df = derivative(f)
    a = gcd(f, df)
    b = euclid_div(f, a)[0]
    c = euclid_div(df, a)[0]
    d = c - derivative(b)
    k = 1
    while b.degree >= 1:
        g = gcd(b, d) if not d.is_zero() else b.monic()
        if g.degree >= 1:
            out.append((g, k))
        b = euclid_div(b, g)[0]
        c = euclid_div(d, g)[0]
        d = c - derivative(b)
        k += 1
    return out


# -- text format --------------------------------------------------------------

_RAT_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(token: str) -> Fraction:
    tok = token.strip()
    if not _RAT_RE.match(tok):
        raise ParseError(f"not a rational 'int' or 'int/uint': {token!r}", 0)
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {token!r}", tok.index("/") + 1)
        return Fraction(int(num), int(den))
    return Fraction(int(tok))


def format_rational(x: Fraction) -> str:
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_poly(text: str, line: int | None = None) -> Polynomial:
    """Parse whitespace-separated low-to-high coefficients, e.g. ``"2 -3 0 1"``."""
    body = text.split("#", 1)[0]
    coeffs = []
    for m in re.finditer(r"\S+", body):
        try:
            coeffs.append(parse_rational(m.group()))
        except ParseError as exc:
            raise ParseError(str(exc.args[0]), m.start() + (exc.position or 0), line) from None
    if not coeffs:
        raise ParseError("empty coefficient list", 0, line)
    return Polynomial(coeffs)


def format_poly(P: Polynomial) -> str:
    if P.is_zero():
        return "0"
    return " ".join(format_rational(c) for c in P.coeffs)


def pretty(P: Polynomial, var: str = "x") -> str:
    """Human-readable high-to-low rendering, e.g. ``x^3 - 3*x + 2``."""
    if P.is_zero():
        return "0"
    parts = []
    for k in range(P.degree, -1, -1):
        c = P.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def read_corpus(lines: Iterable[str]):
    """Yield ``(line_no, Polynomial | ParseError)`` for each non-blank, non-comment line."""
    for no, raw in enumerate(lines, 1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        try:
            yield no, parse_poly(raw, line=no)
        except ParseError as exc:
            yield no, exc
