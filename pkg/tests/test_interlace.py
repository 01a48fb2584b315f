import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realrooted.enclosure import Status
from realrooted.exceptions import DegreeTooSmall, NotDepressed, NotMonic, SizeMismatch, ZeroAtDerivativeRoot
from realrooted.interlace import (
    DegeneracyKind,
    Verdict,
    a0_interval,
    certify_all_real,
    decompose,
    detect_degenerate,
    is_interlaced,
    required_signs,
    sign_alternation_check,
)
from realrooted.params import QuarticParams, QuinticParams
from realrooted.poly import Polynomial, discriminant, squarefree_part
from realrooted.roots import RealRoot, RootSet, isolate_real_roots, roots_of_squarefree
from realrooted.sturm import count_real_roots


def P3(p, q):
    return Polynomial([q, p, 0, 1])


def test_decompose_cubic():
    p, q = Fraction(-5, 2), Fraction(3)
    d = decompose(P3(p, q))
    assert d.R == Polynomial([-q, -Fraction(2, 3) * p])
    assert d.R0 == Polynomial([0, -Fraction(2, 3) * p])
    assert d.a0 == q


def test_decompose_quartic_and_quintic():
    p, q, r, s = Fraction(-3), Fraction(1, 2), Fraction(2), Fraction(-1, 5)
    d = decompose(QuarticParams(p, q, r).assemble())
    assert d.R == Polynomial([-4 * r, -3 * q, -p])
    assert d.R0 == Polynomial([0, -3 * q, -p])
    d = decompose(QuinticParams(p, q, r, s).assemble())
    assert d.R == -Polynomial([20 * s, 16 * r, 6 * q, Fraction(4, 3) * p])
    assert d.R0 == -Polynomial([0, 16 * r, 6 * q, Fraction(4, 3) * p])


def test_decompose_preconditions():
    with pytest.raises(DegreeTooSmall):
        decompose(Polynomial([1, 1]))
    with pytest.raises(NotMonic):
        decompose(Polynomial([1, 0, 2]))
    with pytest.raises(NotDepressed):
        decompose(Polynomial([1, 1, 1]))


def test_required_signs_positive_at_largest():
    assert required_signs(3) == (-1, 1)
    assert required_signs(4) == (1, -1, 1)
    assert required_signs(5) == (-1, 1, -1, 1)


def _crit(P):
    return roots_of_squarefree(decompose(P).P_nminus1)


def test_sign_alternation_cubic():
    P = P3(-3, 0)
    assert sign_alternation_check(decompose(P).R, _crit(P), 3)
    P = P3(-3, 2)
    with pytest.raises(ZeroAtDerivativeRoot) as info:
        sign_alternation_check(decompose(P).R, _crit(P), 3)
    assert info.value.index == 2
    P = P3(-3, 3)
    assert not sign_alternation_check(decompose(P).R, _crit(P), 3)
    with pytest.raises(SizeMismatch):
        sign_alternation_check(decompose(P).R, _crit(P), 4)


def _pins(enc, x):
    enc = enc.refine_to(Fraction(1, 10**30))
    return enc.lo <= x <= enc.hi


def test_a0_interval_cubic():
    P = P3(-3, 0)
    iv = a0_interval(decompose(P), _crit(P), 3)
    assert _pins(iv.lo, -2) and _pins(iv.hi, 2)


def test_a0_interval_quartic_boundary_at_zero():
    # x^3 - 3x lifted: x^4 - 6x^2 + a0 with a0 in ]0, 9[
    P4 = Polynomial([0, 0, -6, 0, 1])
    iv = a0_interval(decompose(P4), _crit(P4), 4)
    assert _pins(iv.lo, 0) and _pins(iv.hi, 9)
    assert iv.contains(0) is Status.BOUNDARY
    assert iv.contains(4) is Status.YES


def test_is_interlaced_examples():
    outer = isolate_real_roots(Polynomial([0, -1, 0, 1]))
    inner = isolate_real_roots(Polynomial([-1, 0, 3]))
    assert is_interlaced(outer, inner, strict=True)
    two = RootSet((RealRoot.exact(-1), RealRoot.exact(1)), Polynomial([-1, 0, 1]))
    assert not is_interlaced(two, RootSet((RealRoot.exact(2),), Polynomial([-2, 1])))
    with pytest.raises(SizeMismatch):
        is_interlaced(two, two)


def test_is_interlaced_agrees_with_sign_alternation():
    for p, q, r in [(-2, 0, Fraction(1, 4)), (-2, 0, Fraction(3, 2)), (-3, 1, 1), (-3, 1, 5), (-5, -1, 2)]:
        P4 = QuarticParams(p, q, r).assemble()
        d = decompose(P4)
        crit = _crit(P4)
        R2 = d.R
        if count_real_roots(R2) != 2:
            continue
        inner = roots_of_squarefree(R2)
        try:
            alt = sign_alternation_check(R2, crit, 4)
        except ZeroAtDerivativeRoot:
            continue
        assert is_interlaced(crit, inner, strict=True) == alt


@pytest.mark.parametrize(
    "coeffs,verdict",
    [
        ([1, -3, 0, 1], Verdict.ALL_REAL_DISTINCT),
        ([2, -3, 0, 1], Verdict.DEGENERATE),
        ([1, 0, 0, 1], Verdict.NOT_ALL_REAL),
        ([1, 0, -4, 0, 1], Verdict.ALL_REAL_DISTINCT),
        ([4, 0, -4, 0, 1], Verdict.DEGENERATE),
        ([-72, 60, 10, -15, 0, 1], Verdict.DEGENERATE),
        ([1, 0, 0, 0, 0, 1], Verdict.NOT_ALL_REAL),
        ([1, 0, 2, 0, 1], Verdict.NOT_ALL_REAL),
    ],
)
def test_certify_examples(coeffs, verdict):
    assert certify_all_real(Polynomial(coeffs)).verdict is verdict


def test_certify_two_doubles_profile():
    cert = certify_all_real(Polynomial([4, 0, -4, 0, 1]))
    assert cert.degeneracy.kind is DegeneracyKind.TWO_DOUBLES
    assert sorted(cert.degeneracy.profile().values()) == [2, 2]


def test_certify_normalises_input():
    P = Polynomial.from_roots([1, 2, 4]) * 3
    cert = certify_all_real(P)
    assert cert.all_real_distinct
    assert cert.form.restore() == P


def test_parity_rule_rejects_x4_minus_6x2_plus_4x_plus_5():
    # a range that skipped the largest critical point would accept this one
    P = Polynomial([5, 4, -6, 0, 1])
    assert count_real_roots(P) == 2
    cert = certify_all_real(P)
    assert cert.verdict is Verdict.NOT_ALL_REAL
    assert cert.failed_level == 4


def test_detect_degenerate_examples():
    d = detect_degenerate(Polynomial([2, -3, 0, 1]))
    assert d.kind is DegeneracyKind.ONE_DOUBLE and d.witnessed
    p = Fraction(-3)
    # r = -p^2/12, q^2 = -4p^3/27 -> triple root
    qp = QuarticParams(p, Fraction(2), -p**2 / 12)
    d = detect_degenerate(qp.assemble())
    assert d.kind is DegeneracyKind.TRIPLE and d.witnessed
    assert 3 in d.profile().values()
    d = detect_degenerate(QuinticParams(Fraction(-9, 2), 1, 3, Fraction(-18, 5)).assemble())
    assert d.kind is DegeneracyKind.TRIPLE_AND_DOUBLE
    assert d.profile() == {-3: 2, 2: 3}


def _oracle(P):
    return count_real_roots(P) == P.degree and squarefree_part(P).degree == P.degree


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.lists(st.integers(-40, 40), min_size=n, max_size=n)))
def test_certify_matches_sturm_oracle(cs):
    P = Polynomial(cs + [1])
    cert = certify_all_real(P)
    assert cert.verdict is not Verdict.HYPOTHESIS_UNRESOLVED
    assert cert.all_real_distinct == _oracle(P)
    if cert.verdict is Verdict.DEGENERATE:
        assert discriminant(P) == 0
        assert sum(isolate_real_roots(P).multiplicities) == P.degree


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 3)), min_size=1, max_size=4, unique_by=lambda t: t[0]))
def test_planted_real_roots(planted):
    roots = [r for r, _ in planted]
    mults = [k for _, k in planted]
    P = Polynomial.from_roots(roots, mults)
    if P.degree < 2:
        return
    cert = certify_all_real(P)
    if max(mults) == 1:
        assert cert.verdict is Verdict.ALL_REAL_DISTINCT
    else:
        assert cert.verdict is Verdict.DEGENERATE
        assert sorted(cert.degeneracy.multiplicities) == sorted(mults)


def test_random_real_rooted_with_rational_roots():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 8)
        roots = rng.sample(range(-50, 50), n)
        P = Polynomial.from_roots([Fraction(r, rng.randint(1, 4)) for r in roots])
        if squarefree_part(P).degree < n:
            continue
        assert certify_all_real(P).all_real_distinct
